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

#include <cctype>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gazeq/error.hpp"
#include "gazeq/util.hpp"

namespace gazeq {

/// Grayscale image with intensities scaled to [0, 1].
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // row-major

  double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
};

namespace detail {

class PnmReader {
 public:
  explicit PnmReader(std::string_view data) : data_(data) {}

  long header_int() {
    skip_space_and_comments();
    long v = 0;
    bool any = false;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) {
      v = v * 10 + (data_[pos_++] - '0');
      any = true;
      if (v > 1'000'000) fail(ErrorKind::DecodeError, "PNM header value too large");
    }
    if (!any) fail(ErrorKind::DecodeError, "malformed PNM header");
    return v;
  }

  void skip_single_space() {
    if (pos_ >= data_.size() || !std::isspace(static_cast<unsigned char>(data_[pos_])))
      fail(ErrorKind::DecodeError, "malformed PNM header");
    ++pos_;
  }

  unsigned binary_sample(bool wide) {
    if (pos_ + (wide ? 2 : 1) > data_.size()) fail(ErrorKind::DecodeError, "truncated PNM raster");
    unsigned v = static_cast<unsigned char>(data_[pos_++]);
    if (wide) v = (v << 8) | static_cast<unsigned char>(data_[pos_++]);
    return v;
  }

  std::size_t pos_ = 0;
  std::string_view data_;

 private:
  void skip_space_and_comments() {
    while (pos_ < data_.size()) {
      char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }
};

}  // namespace detail

/// Decodes binary or ASCII PGM/PPM (P2, P3, P5, P6). Color is converted with
/// Rec. 601 luma weights.
inline GrayImage decode_pnm(std::string_view data) {
  if (data.size() < 2 || data[0] != 'P') fail(ErrorKind::DecodeError, "not a PNM image");
  const char kind = data[1];
  if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
    fail(ErrorKind::DecodeError, std::string("unsupported PNM variant P") + kind);
  detail::PnmReader rd(data);
  rd.pos_ = 2;
  GrayImage img;
  img.width = static_cast<int>(rd.header_int());
  img.height = static_cast<int>(rd.header_int());
  long maxval = rd.header_int();
  if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 65535)
    fail(ErrorKind::DecodeError, "invalid PNM dimensions");
  const bool color = (kind == '3' || kind == '6');
  const bool binary = (kind == '5' || kind == '6');
  const bool wide = maxval > 255;
  const std::size_t n = static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.reserve(n);
  if (binary) rd.skip_single_space();
  auto sample = [&]() -> double {
    long v = binary ? static_cast<long>(rd.binary_sample(wide)) : rd.header_int();
    if (v > maxval) fail(ErrorKind::DecodeError, "PNM sample exceeds maxval");
    return static_cast<double>(v) / static_cast<double>(maxval);
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (color) {
      double r = sample(), g = sample(), b = sample();
      img.pixels.push_back(0.299 * r + 0.587 * g + 0.114 * b);
    } else {
      img.pixels.push_back(sample());
    }
  }
  return img;
}

inline GrayImage load_image(const fs::path& path) {
  std::string data;
  try {
    data = read_file(path);
  } catch (const Error&) {
    fail(ErrorKind::DecodeError, "cannot read image " + path.string(), path.string());
  }
  try {
    return decode_pnm(data);
  } catch (Error& e) {
    fail(ErrorKind::DecodeError, path.string() + ": " + e.message(), path.string());
  }
}

/// Mean gradient energy: sum over pixels of (dx^2 + dy^2) divided by the
/// pixel count, with forward differences (zero past the last row/column).
inline double frame_sharpness(const GrayImage& img) {
  if (img.width <= 0 || img.height <= 0) fail(ErrorKind::DecodeError, "empty image");
  double total = 0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double v = img.at(x, y);
      double dx = (x + 1 < img.width) ? img.at(x + 1, y) - v : 0.0;
      double dy = (y + 1 < img.height) ? img.at(x, y + 1) - v : 0.0;
      total += dx * dx + dy * dy;
    }
  }
  return total / (static_cast<double>(img.width) * static_cast<double>(img.height));
}

inline double frame_sharpness(const fs::path& path) { return frame_sharpness(load_image(path)); }

}  // namespace gazeq
