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

#include "tdham/rings.hpp"

#include <limits>

namespace tdham {

Integer::Integer(const BigInt& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    small_ = static_cast<long long>(v);
  } else {
    big_ = std::make_unique<BigInt>(v);
  }
}

int residue_words(int bits) {
  if (bits < 1 || bits > kMaxResidueBits) {
    throw std::invalid_argument("unsupported residue width " + std::to_string(bits));
  }
  if (bits <= 64) return 1;
  if (bits <= 128) return 2;
  if (bits <= 256) return 4;
  return 8;
}

}  // namespace tdham
