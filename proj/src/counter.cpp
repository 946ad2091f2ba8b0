// Copyright 2026 The tdham Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tdham/counter.hpp"

#include <limits>

namespace tdham {

std::string_view label_name(Label l) {
  switch (l) {
    case Label::kZero:
      return "0";
    case Label::kOneL:
      return "1L";
    case Label::kOneR:
      return "1R";
    case Label::kTwoL:
      return "2L";
    case Label::kTwoR:
      return "2R";
  }
  return "?";
}

std::vector<Vertex> tail_path(const EliminationForest& t, Vertex u, bool inclusive) {
  std::vector<Vertex> path;
  for (Vertex v = inclusive ? u : t.parent(u); v != kNoParent; v = t.parent(v)) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::uint64_t call_bound(int n, int d) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t b = 2 * static_cast<std::uint64_t>(n);
  for (int i = 0; i < d; ++i) {
    if (b > kMax / 5) return kMax;
    b *= 5;
  }
  return b;
}

}  // namespace tdham
