// Copyright 2026 The gazeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include "fixture_authoring/scene_backend.hpp"
#include "gazeq/pipeline.hpp"
#include "gazeq/session.hpp"

namespace gazeq::authoring {

inline const std::vector<std::string>& fixture_sessions() {
  static const std::vector<std::string> names = {"home-01", "disambig-01"};
  return names;
}

/// Every role served by the scene simulator, recorded into `out`.
inline Backends scene_backends(const fs::path& scene, const fs::path& out) {
  auto sim = std::make_shared<SceneBackend>(scene);
  Backends b;
  for (Role r : kAllRoles) {
    BackendDescriptor d;
    d.role = r;
    d.kind = BackendKind::Fixture;
    d.fixture_dir = out;
    b.set(d, std::make_shared<RecordingBackend>(sim, nullptr, out));
  }
  return b;
}

/// Runs all variants over all queries of the shipped sessions. Returns the
/// number of fixture files in `out` afterwards.
inline std::size_t record_fixtures(const fs::path& root, const fs::path& out, std::uint64_t seed = 0) {
  for (Role r : kAllRoles) fs::remove_all(out / std::string(to_string(r)));
  for (const auto& name : fixture_sessions()) {
    Session s = load_session(root / name);
    Backends b = scene_backends(root / name / "scene.json", out);
    for (const auto& v : variant_names())
      for (const auto& q : s.queries) run_query(s, q.id, make_variant(v, seed), b);
  }
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(out))
    if (e.is_regular_file() && e.path().extension() == ".json") ++n;
  return n;
}

}  // namespace gazeq::authoring
