#!/usr/bin/env python3
# Copyright 2026 The gazeq Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Authors the checked-in fixture sessions.

  fixtures/home-01      12 household queries; millisecond clock, pixel
                        coordinates, PGM frames, one audio-only query.
  fixtures/disambig-01  6 ambiguous queries; each scene holds several known
                        objects and the gaze stays on one of them.

Each session directory also gets a scene.json that the scene simulator
(tools/fixture_authoring/scene_backend.hpp) turns into backend responses.
Output is deterministic; rerunning rewrites identical files.
"""

import json
import os
import random
import struct
import sys

ROOT = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
PRONOUNS = {"this", "that", "these", "those", "it", "they", "them", "here", "there", "one", "ones"}


def dump(path, obj):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        f.write(json.dumps(obj, indent=1, sort_keys=False) + "\n")


def write_text(path, text):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        f.write(text)


def r3(v):
    return round(v, 3)


def expand(b, m):
    return [r3(max(0.0, b[0] - m)), r3(max(0.0, b[1] - m)), r3(min(1.0, b[2] + m)), r3(min(1.0, b[3] + m))]


def shrink(b, f):
    cx, cy = (b[0] + b[2]) / 2, (b[1] + b[3]) / 2
    hw, hh = (b[2] - b[0]) * f / 2, (b[3] - b[1]) * f / 2
    return [r3(cx - hw), r3(cy - hh), r3(cx + hw), r3(cy + hh)]


def center(b):
    return ((b[0] + b[2]) / 2, (b[1] + b[3]) / 2)


def pgm(width, height, rng, blur, objects):
    """Noise texture plus bright object rectangles, box-blurred `blur` times."""
    px = [[rng.random() * 0.6 for _ in range(width)] for _ in range(height)]
    for o in objects:
        b = o["bbox"]
        for y in range(int(b[1] * height), int(b[3] * height)):
            for x in range(int(b[0] * width), int(b[2] * width)):
                px[y][x] = 0.4 + px[y][x]
    for _ in range(blur):
        nxt = [[0.0] * width for _ in range(height)]
        for y in range(height):
            for x in range(width):
                s, n = 0.0, 0
                for dy in (-1, 0, 1):
                    for dx in (-1, 0, 1):
                        yy, xx = y + dy, x + dx
                        if 0 <= yy < height and 0 <= xx < width:
                            s += px[yy][xx]
                            n += 1
                nxt[y][x] = s / n
        px = nxt
    data = bytes(min(255, int(v * 255)) for row in px for v in row)
    return b"P5\n%d %d\n255\n" % (width, height) + data


# ---------------------------------------------------------------------------
# Scene objects: detector labels (best first) and a bbox in normalized units.

def obj(name, labels, bbox):
    return {"name": name, "labels": labels, "bbox": bbox}


HOME_QUERIES = [
    # (words, truth, target index, objects, caption, ocr)
    ("how many calories are in this", ["apple"], 0,
     [obj("apple", [["apple", 0.86], ["peach", 0.41], ["tomato", 0.22]], [0.40, 0.42, 0.55, 0.66]),
      obj("banana", [["banana", 0.91], ["plantain", 0.33]], [0.08, 0.55, 0.30, 0.72]),
      obj("mug", [["cup", 0.77], ["mug", 0.70], ["vase", 0.18]], [0.70, 0.38, 0.86, 0.68])],
     "A kitchen counter with fruit and a cup.", "Fuji"),
    ("what brand is that", ["sneaker"], 0,
     [obj("sneaker", [["sneaker", 0.83], ["shoe", 0.66], ["boot", 0.31]], [0.30, 0.60, 0.52, 0.82]),
      obj("backpack", [["backpack", 0.88], ["bag", 0.52]], [0.62, 0.20, 0.88, 0.70]),
      obj("umbrella", [["umbrella", 0.72], ["cane", 0.25]], [0.05, 0.10, 0.18, 0.80])],
     "A hallway floor with a shoe next to a backpack.", "RUNLITE"),
    ("can you tell me how to water it", ["plant"], 0,
     [obj("plant", [["potted plant", 0.81], ["vase", 0.37], ["bowl", 0.12]], [0.44, 0.18, 0.70, 0.70]),
      obj("lamp", [["lamp", 0.79], ["bottle", 0.21]], [0.08, 0.05, 0.26, 0.60]),
      obj("book", [["book", 0.84], ["notebook", 0.40]], [0.75, 0.62, 0.95, 0.80])],
     "A windowsill with a green potted plant beside a lamp.", ""),
    ("how much caffeine is in my cup of coffee", ["mug"], 0,
     [obj("mug", [["cup", 0.82], ["mug", 0.79], ["bowl", 0.20]], [0.46, 0.40, 0.62, 0.70]),
      obj("laptop", [["laptop", 0.93], ["keyboard", 0.44]], [0.05, 0.35, 0.40, 0.80]),
      obj("phone", [["cell phone", 0.74], ["remote control", 0.28]], [0.72, 0.60, 0.86, 0.75])],
     "A desk with a laptop, a cup of coffee and a phone.", "BEST DAD"),
    ("who wrote this", ["book"], 0,
     [obj("book", [["book", 0.90], ["notebook", 0.48], ["box", 0.12]], [0.36, 0.30, 0.60, 0.74]),
      obj("lamp", [["lamp", 0.81]], [0.70, 0.05, 0.90, 0.62]),
      obj("clock", [["clock", 0.76], ["plate", 0.20]], [0.06, 0.08, 0.22, 0.30])],
     "A bedside table with a book under a reading lamp.", "THE SILENT SEA"),
    ("how do i descale the kettle", ["kettle"], 0,
     [obj("kettle", [["kettle", 0.87], ["teapot", 0.58], ["vase", 0.10]], [0.42, 0.25, 0.64, 0.72]),
      obj("toaster", [["toaster", 0.85], ["microwave", 0.33]], [0.05, 0.40, 0.30, 0.75]),
      obj("mug", [["mug", 0.71], ["cup", 0.69]], [0.76, 0.50, 0.90, 0.74])],
     "A kitchen counter with an electric kettle and a toaster.", "BREWMASTER 3000"),
    ("is this ripe yet", ["avocado"], 0,
     [obj("avocado", [["avocado", 0.78], ["pear", 0.46], ["lime", 0.30]], [0.45, 0.46, 0.58, 0.66]),
      obj("lemon", [["lemon", 0.82], ["orange", 0.39]], [0.20, 0.50, 0.32, 0.64]),
      obj("bowl", [["bowl", 0.88]], [0.10, 0.40, 0.80, 0.85])],
     "A wooden bowl holding an avocado and a lemon.", ""),
    ("what time is it now", [], 0,
     [obj("clock", [["clock", 0.89], ["plate", 0.31]], [0.40, 0.15, 0.60, 0.45]),
      obj("plant", [["potted plant", 0.66]], [0.75, 0.40, 0.95, 0.85])],
     "A living room wall with a round clock.", "12 3 6 9"),
    ("how do i pair this with the tv", ["remote"], 0,
     [obj("remote", [["remote control", 0.80], ["remote", 0.62], ["cell phone", 0.35]], [0.44, 0.58, 0.56, 0.80]),
      obj("tv", [["tv", 0.95], ["monitor", 0.51]], [0.15, 0.05, 0.85, 0.50]),
      obj("mug", [["mug", 0.64]], [0.75, 0.62, 0.86, 0.82])],
     "A coffee table with a remote control in front of a television.", "SAMSUNG"),
    ("what's the price of these", ["headphones"], 0,
     [obj("headphones", [["headphones", 0.84], ["earmuffs", 0.29]], [0.38, 0.30, 0.62, 0.62]),
      obj("laptop", [["laptop", 0.90]], [0.02, 0.40, 0.30, 0.85]),
      obj("phone", [["cell phone", 0.70]], [0.72, 0.55, 0.84, 0.72])],
     "A desk with over-ear headphones next to a laptop.", "SONIQ"),
    ("how long should i cook the eggplant", ["eggplant"], 0,
     [obj("eggplant", [["aubergine", 0.79], ["eggplant", 0.74], ["zucchini", 0.35]], [0.40, 0.40, 0.62, 0.66]),
      obj("knife", [["knife", 0.82], ["spoon", 0.26]], [0.66, 0.52, 0.92, 0.60]),
      obj("board", [["cutting board", 0.86]], [0.20, 0.30, 0.80, 0.85])],
     "A cutting board with a purple aubergine and a knife.", ""),
    (None, ["umbrella"], 0,  # audio only
     [obj("umbrella", [["umbrella", 0.85], ["kite", 0.27]], [0.42, 0.15, 0.60, 0.85]),
      obj("coat", [["coat", 0.77], ["jacket", 0.64]], [0.05, 0.10, 0.30, 0.90]),
      obj("hat", [["hat", 0.74]], [0.70, 0.08, 0.88, 0.26])],
     "A coat rack with a folded umbrella, a coat and a hat.", ""),
]
HOME_AUDIO_WORDS = "where can i buy one of those"

HOME_SYNONYMS = [["mug", "cup"], ["sneaker", "shoe", "trainer"], ["remote", "remote control"],
                 ["aubergine", "eggplant"], ["plant", "potted plant"], ["phone", "cell phone"],
                 ["tv", "television"], ["board", "cutting board"],
                 ["apple"], ["banana"], ["backpack"], ["umbrella"], ["lamp"], ["book"], ["laptop"],
                 ["clock"], ["kettle"], ["toaster"], ["avocado"], ["lemon"], ["bowl"], ["headphones"],
                 ["knife"], ["coat"], ["hat"]]

DISAMBIG_QUERIES = [
    # (words, target index, objects); target sits under the frame center
    # except in queries 3 and 6.
    ("what is this", 0,
     [obj("apple", [["apple", 0.88], ["peach", 0.40]], [0.42, 0.40, 0.58, 0.62]),
      obj("banana", [["banana", 0.93]], [0.06, 0.55, 0.30, 0.72]),
      obj("orange", [["orange", 0.90], ["lemon", 0.35]], [0.70, 0.50, 0.84, 0.70])]),
    ("how much does this cost", 0,
     [obj("watch", [["watch", 0.84], ["bracelet", 0.40]], [0.44, 0.42, 0.60, 0.60]),
      obj("wallet", [["wallet", 0.89]], [0.10, 0.60, 0.30, 0.78]),
      obj("sunglasses", [["sunglasses", 0.91]], [0.68, 0.20, 0.90, 0.34])]),
    ("what is that made of", 0,
     [obj("vase", [["vase", 0.86], ["bottle", 0.44]], [0.10, 0.20, 0.26, 0.70]),
      obj("candle", [["candle", 0.82]], [0.44, 0.40, 0.58, 0.64]),
      obj("frame", [["picture frame", 0.88]], [0.66, 0.10, 0.92, 0.50])]),
    ("tell me about this one", 0,
     [obj("camera", [["camera", 0.90], ["binoculars", 0.30]], [0.40, 0.38, 0.62, 0.62]),
      obj("tripod", [["tripod", 0.79]], [0.70, 0.20, 0.86, 0.90]),
      obj("bag", [["bag", 0.83], ["backpack", 0.41]], [0.04, 0.50, 0.28, 0.88])]),
    ("is it good for kids", 0,
     [obj("teddy bear", [["teddy bear", 0.92]], [0.40, 0.36, 0.62, 0.70]),
      obj("ball", [["ball", 0.87]], [0.72, 0.66, 0.84, 0.82]),
      obj("blocks", [["blocks", 0.80], ["box", 0.33]], [0.06, 0.62, 0.26, 0.84])]),
    ("where is this from", 0,
     [obj("mask", [["mask", 0.81], ["face", 0.22]], [0.74, 0.20, 0.92, 0.46]),
      obj("rug", [["rug", 0.85], ["blanket", 0.31]], [0.30, 0.44, 0.70, 0.66]),
      obj("drum", [["drum", 0.83]], [0.05, 0.50, 0.22, 0.80])]),
]


# ---------------------------------------------------------------------------
# Timeline authoring


class Timeline:
    def __init__(self, rng):
        self.rng = rng
        self.fixations = []  # (id, t0, t1, x, y, query_id or None, relevant)
        self.cursor = 0.0

    def fixate(self, dur, point, qid, relevant):
        t0 = round(self.cursor + self.rng.uniform(0.03, 0.09), 3)
        t1 = round(t0 + dur, 3)
        fid = "f%04d" % (len(self.fixations) + 1)
        self.fixations.append([fid, t0, t1, point[0], point[1], qid, relevant])
        self.cursor = t1
        return self.fixations[-1]

    def idle(self, secs):
        self.cursor = round(self.cursor + secs, 3)


def jitter(rng, p, s=0.015):
    return (min(1.0, max(0.0, p[0] + rng.uniform(-s, s))), min(1.0, max(0.0, p[1] + rng.uniform(-s, s))))


def words_for(rng, text, t):
    out = []
    for w in text.split():
        d = round(rng.uniform(0.22, 0.48), 3)
        out.append({"text": w, "t_start": round(t, 3), "t_end": round(t + d, 3)})
        t = t + d + 0.08
    return out


def author_block(rng, tl, qid, T, words, objects, target, focused, relevant_flag=True):
    """Fixations for one query: wandering, a long startup look at the target,
    then looks back at it while pronouns are spoken. `focused` keeps every
    fixation in the window on the target except brief glances."""
    tgt = center(objects[target]["bbox"])
    others = [center(o["bbox"]) for i, o in enumerate(objects) if i != target] + [(0.5, 0.1), (0.1, 0.9)]
    startup = round(rng.uniform(2.5, 7.0), 3)
    # Pre-query wander up to the startup look.
    while tl.cursor < T - startup - 2.0:
        if focused:
            dur, p, rel = round(rng.uniform(0.9, 1.4), 3), jitter(rng, tgt), True
            if rng.random() < 0.3:
                dur, p, rel = round(rng.uniform(0.12, 0.2), 3), rng.choice(others), False
        else:
            dur, p, rel = round(rng.uniform(0.15, 0.6), 3), rng.choice(others), False
            if rng.random() < 0.12:
                dur, p, rel = round(rng.uniform(0.7, 0.8), 3), rng.choice(others), False
        tl.fixate(dur, jitter(rng, p), qid, rel and relevant_flag)
        tl.idle(rng.uniform(0.0, 0.4))
    tl.cursor = max(tl.cursor, T - startup - 0.06)
    tl.fixate(round(rng.uniform(1.0, 1.3), 3), jitter(rng, tgt), qid, relevant_flag)
    while tl.cursor < T - 0.5:
        if focused or rng.random() < 0.55:
            tl.fixate(round(rng.uniform(0.3, 0.9), 3), jitter(rng, tgt), qid, relevant_flag)
        else:
            tl.fixate(round(rng.uniform(0.15, 0.45), 3), jitter(rng, rng.choice(others)), qid, False)
        if tl.cursor > T - 0.2:
            break
    # Spoken period.
    for w in words:
        if tl.cursor >= w["t_end"] - 0.05:
            continue
        tl.cursor = max(tl.cursor, w["t_start"] - 0.1)
        if w["text"] in PRONOUNS or focused:
            tl.fixate(round(rng.uniform(0.35, 0.8), 3), jitter(rng, tgt), qid, relevant_flag)
        elif rng.random() < 0.5:
            tl.fixate(round(rng.uniform(0.15, 0.4), 3), jitter(rng, rng.choice(others)), qid, False)
    tl.idle(0.3)


def gaze_from(tl, rng, t_end, hz):
    out = []
    fi = 0
    n = int(t_end * hz)
    fx = tl.fixations
    for i in range(n + 1):
        t = round(i / hz, 3)
        while fi < len(fx) and fx[fi][2] < t:
            fi += 1
        if fi < len(fx) and fx[fi][1] <= t:
            x, y = jitter(rng, (fx[fi][3], fx[fi][4]), 0.004)
        else:
            x, y = rng.random(), rng.random()
        out.append((t, x, y, round(rng.uniform(0.8, 1.0), 2)))
    return out


def labels_for(tl, queries):
    """Every fixation inside a query's window is labeled for that query."""
    out = []
    for q in queries:
        lo, hi = q["t_start"] - 20.5, q["t_end"] + 0.5
        for f in tl.fixations:
            if f[2] >= lo and f[1] <= hi:
                out.append({"query": q["id"], "fixation": f[0], "relevant": 1 if (f[5] == q["id"] and f[6]) else 0})
    return out


# ---------------------------------------------------------------------------
# Sessions


def build_home(out):
    rng = random.Random(20240611)
    img_rng = random.Random(7)
    tl = Timeline(rng)
    queries, transcript, layouts = [], {}, []
    frames_dir = os.path.join(out, "frames")
    T = 24.0
    for i, (text, truth, target, objects, caption, ocr) in enumerate(HOME_QUERIES):
        qid = "q%02d" % (i + 1)
        spoken = text if text is not None else HOME_AUDIO_WORDS
        words = words_for(rng, spoken, T)
        tl.cursor = max(tl.cursor, T - 21.5)
        author_block(rng, tl, qid, T, words, objects, target, focused=False, relevant_flag=bool(truth))
        q = {"id": qid, "t_start": words[0]["t_start"], "t_end": words[-1]["t_end"]}
        if text is None:
            q["audio"] = "audio/%s.wav" % qid
        else:
            transcript[qid] = words
        queries.append(q)
        layouts.append({"t_from": round(T - 22.0, 3), "t_to": round(T + 10.0, 3), "caption": caption, "ocr": ocr,
                        "objects": objects, "audio_words": words if text is None else None, "qid": qid})
        T += 32.0
    end = T - 22.0

    origin_ms = 1718000000000  # device clock at session start
    scene_w, scene_h = 1280, 720
    # Frames at 1 fps, 32x18 PGM; blur varies so sharpness varies.
    frames = []
    for k in range(int(end)):
        t = float(k)
        lay = next((l for l in layouts if l["t_from"] <= t < l["t_to"]), None)
        blur = img_rng.choice([0, 1, 1, 2, 3])
        uri = "frames/%04d.pgm" % k
        data = pgm(32, 18, img_rng, blur, lay["objects"] if lay else [])
        os.makedirs(frames_dir, exist_ok=True)
        with open(os.path.join(out, uri), "wb") as f:
            f.write(data)
        frames.append((t, uri))

    gaze = gaze_from(tl, rng, end, 30)
    ms = lambda s: "%d" % round(origin_ms + s * 1000)
    px_x = lambda x: "%.1f" % (x * scene_w)
    px_y = lambda y: "%.1f" % (y * scene_h)
    write_text(os.path.join(out, "gaze.csv"),
               "t,x,y,confidence\n" + "".join("%s,%s,%s,%s\n" % (ms(t), px_x(x), px_y(y), c) for t, x, y, c in gaze))
    write_text(os.path.join(out, "fixations.csv"),
               "id,t_start,t_end,x,y\n" +
               "".join("%s,%s,%s,%s,%s\n" % (f[0], ms(f[1]), ms(f[2]), px_x(f[3]), px_y(f[4])) for f in tl.fixations))
    write_text(os.path.join(out, "frames.csv"),
               "t,uri,width,height\n" + "".join("%s,%s,%d,%d\n" % (ms(t), uri, scene_w, scene_h) for t, uri in frames))
    dump(os.path.join(out, "queries.json"),
         [dict(q, t_start=int(ms(q["t_start"])), t_end=int(ms(q["t_end"]))) for q in queries])
    dump(os.path.join(out, "transcript.json"),
         {qid: [{"text": w["text"], "t_start": int(ms(w["t_start"])), "t_end": int(ms(w["t_end"]))} for w in ws]
          for qid, ws in transcript.items()})
    dump(os.path.join(out, "labels.json"), labels_for(tl, [dict(q, t_end=q["t_end"]) for q in queries]))
    truth = {"q%02d" % (i + 1): q[1] for i, q in enumerate(HOME_QUERIES)}
    truth["synonyms"] = HOME_SYNONYMS
    dump(os.path.join(out, "truth.json"), truth)
    os.makedirs(os.path.join(out, "audio"), exist_ok=True)
    for l in layouts:
        if l["audio_words"]:
            with open(os.path.join(out, "audio", "%s.wav" % l["qid"]), "wb") as f:
                f.write(b"RIFF" + struct.pack("<I", 36) + b"WAVEfmt " + struct.pack("<IHHIIHH", 16, 1, 1, 16000, 32000, 2, 16)
                        + b"data" + struct.pack("<I", 0))
    write_text(os.path.join(out, "lexicon.txt"), "# extra pronoun-like words used in this household\nthat one\nyonder\n")
    dump(os.path.join(out, "manifest.json"), {
        "id": "home-01", "gaze": "gaze.csv", "fixations": "fixations.csv", "transcript": "transcript.json",
        "queries": "queries.json", "frames": "frames.csv", "labels": "labels.json", "truth": "truth.json",
        "lexicon": "lexicon.txt", "time_unit": "ms", "time_origin": origin_ms,
        "coordinates": "pixels", "scene_width": scene_w, "scene_height": scene_h})
    scene = {"session": "home-01", "layouts": [
        {"t_from": l["t_from"], "t_to": l["t_to"], "caption": l["caption"], "ocr": l["ocr"], "objects": l["objects"]}
        for l in layouts],
        "transcripts": {"%s.wav" % l["qid"]: l["audio_words"] for l in layouts if l["audio_words"]},
        "default_caption": "A hallway between rooms."}
    dump(os.path.join(out, "scene.json"), scene)


def build_disambig(out):
    rng = random.Random(99)
    tl = Timeline(rng)
    queries, transcript, layouts = [], {}, []
    T = 24.0
    for i, (text, target, objects) in enumerate(DISAMBIG_QUERIES):
        qid = "d%02d" % (i + 1)
        words = words_for(rng, text, T)
        tl.cursor = max(tl.cursor, T - 21.5)
        author_block(rng, tl, qid, T, words, objects, target, focused=True)
        queries.append({"id": qid, "t_start": words[0]["t_start"], "t_end": words[-1]["t_end"]})
        transcript[qid] = words
        layouts.append({"t_from": round(T - 22.0, 3), "t_to": round(T + 10.0, 3),
                        "caption": "A table with several items on it.", "ocr": "", "objects": objects})
        T += 32.0
    end = T - 22.0
    frames = [(k * 0.5, "frames/%04d.jpg" % k, round(rng.uniform(0.002, 0.04), 6)) for k in range(int(end * 2))]
    gaze = gaze_from(tl, rng, end, 30)
    f6 = lambda v: "%.6f" % v
    write_text(os.path.join(out, "gaze.csv"),
               "t,x,y,confidence\n" + "".join("%s,%s,%s,%s\n" % (f6(t), f6(x), f6(y), c) for t, x, y, c in gaze))
    write_text(os.path.join(out, "fixations.csv"),
               "id,t_start,t_end,x,y\n" +
               "".join("%s,%s,%s,%s,%s\n" % (f[0], f6(f[1]), f6(f[2]), f6(f[3]), f6(f[4])) for f in tl.fixations))
    write_text(os.path.join(out, "frames.csv"),
               "t,uri,width,height,sharpness\n" + "".join("%s,%s,1920,1080,%s\n" % (f6(t), u, s) for t, u, s in frames))
    dump(os.path.join(out, "queries.json"), queries)
    dump(os.path.join(out, "transcript.json"), transcript)
    dump(os.path.join(out, "labels.json"), labels_for(tl, queries))
    truth = {"d%02d" % (i + 1): [q[2][q[1]]["name"]] for i, q in enumerate(DISAMBIG_QUERIES)}
    names = sorted({o["name"] for q in DISAMBIG_QUERIES for o in q[2]})
    truth["synonyms"] = [["frame", "picture frame"]] + [[n] for n in names if n != "frame"]
    dump(os.path.join(out, "truth.json"), truth)
    dump(os.path.join(out, "manifest.json"), {
        "id": "disambig-01", "gaze": "gaze.csv", "fixations": "fixations.csv", "transcript": "transcript.json",
        "queries": "queries.json", "frames": "frames.csv", "labels": "labels.json", "truth": "truth.json"})
    dump(os.path.join(out, "scene.json"), {"session": "disambig-01", "layouts": layouts, "transcripts": {},
                                           "default_caption": "An empty table."})


def main():
    base = sys.argv[1] if len(sys.argv) > 1 else os.path.join(ROOT, "fixtures")
    build_home(os.path.join(base, "home-01"))
    build_disambig(os.path.join(base, "disambig-01"))


if __name__ == "__main__":
    main()
