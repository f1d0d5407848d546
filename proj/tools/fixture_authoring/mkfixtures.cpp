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

// Records backend fixtures for the shipped sessions by running every variant
// over every query against the scene simulator.
//
//   mkfixtures [--root fixtures] [--out fixtures/backends] [--seed 0]

#include <iostream>

#include <CLI11.hpp>

#include "fixture_authoring/record.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Record backend fixtures from scene descriptions", "mkfixtures"};
  std::string root = "fixtures";
  std::string out;
  std::uint64_t seed = 0;
  app.add_option("--root", root, "Directory holding the fixture sessions");
  app.add_option("--out", out, "Fixture output directory (default <root>/backends)");
  app.add_option("--seed", seed, "Run seed the fixtures cover");
  CLI11_PARSE(app, argc, argv);
  if (out.empty()) out = (gazeq::fs::path(root) / "backends").string();
  try {
    auto n = gazeq::authoring::record_fixtures(root, out, seed);
    std::cout << n << " fixture files in " << out << "\n";
  } catch (const gazeq::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
