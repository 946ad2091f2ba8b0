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

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

namespace tdham {

using BigInt = boost::multiprecision::cpp_int;

/// Integers modulo 2^bits stored in W 64-bit words, least significant first.
/// Everything wraps, so subtraction is plain two's complement.
template <int W>
class ResidueRing {
  static_assert(W >= 1);

 public:
  using value_type = std::conditional_t<W == 1, std::uint64_t, std::array<std::uint64_t, W>>;
  static constexpr int kWords = W;

  explicit ResidueRing(int bits) : bits_(bits) {
    if (bits < 1 || bits > 64 * W) {
      throw std::invalid_argument("residue width " + std::to_string(bits) + " does not fit " +
                                  std::to_string(W) + " words");
    }
    for (int i = 0; i < W; ++i) {
      const int used = std::clamp(bits - 64 * i, 0, 64);
      mask_[i] = used == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << used) - 1;
    }
  }

  int bits() const { return bits_; }
  friend bool operator==(const ResidueRing& a, const ResidueRing& b) { return a.bits_ == b.bits_; }

  value_type zero() const { return value_type{}; }
  value_type one() const { return from_int(1); }

  value_type from_int(long long x) const {
    value_type r{};
    const std::uint64_t low = static_cast<std::uint64_t>(x);
    if constexpr (W == 1) {
      r = low;
    } else {
      r[0] = low;
      const std::uint64_t fill = x < 0 ? ~std::uint64_t{0} : 0;
      for (int i = 1; i < W; ++i) r[i] = fill;
    }
    return reduce(r);
  }

  value_type from_integer(const BigInt& x) const {
    BigInt modulus = BigInt(1) << bits_;
    BigInt v = x % modulus;
    if (v < 0) v += modulus;
    value_type r{};
    if constexpr (W == 1) {
      r = static_cast<std::uint64_t>(v);
    } else {
      for (int i = 0; i < W; ++i) {
        r[i] = static_cast<std::uint64_t>(v & BigInt(~std::uint64_t{0}));
        v >>= 64;
      }
    }
    return r;
  }

  BigInt to_integer(const value_type& x) const {
    if constexpr (W == 1) {
      return BigInt(x);
    } else {
      BigInt r = 0;
      for (int i = W - 1; i >= 0; --i) r = (r << 64) | BigInt(x[i]);
      return r;
    }
  }

  bool is_zero(const value_type& x) const {
    if constexpr (W == 1) {
      return x == 0;
    } else {
      for (auto w : x) {
        if (w) return false;
      }
      return true;
    }
  }

  value_type add(const value_type& a, const value_type& b) const {
    if constexpr (W == 1) {
      return (a + b) & mask_[0];
    } else {
      value_type r;
      unsigned carry = 0;
      for (int i = 0; i < W; ++i) {
        unsigned __int128 s = static_cast<unsigned __int128>(a[i]) + b[i] + carry;
        r[i] = static_cast<std::uint64_t>(s);
        carry = static_cast<unsigned>(s >> 64);
      }
      return reduce(r);
    }
  }

  value_type neg(const value_type& a) const {
    if constexpr (W == 1) {
      return (~a + 1) & mask_[0];
    } else {
      value_type r;
      for (int i = 0; i < W; ++i) r[i] = ~a[i];
      return add(r, one());
    }
  }

  value_type sub(const value_type& a, const value_type& b) const { return add(a, neg(b)); }

  value_type mul(const value_type& a, const value_type& b) const {
    if constexpr (W == 1) {
      return (a * b) & mask_[0];
    } else {
      value_type r{};
      for (int i = 0; i < W; ++i) {
        if (!a[i]) continue;
        std::uint64_t carry = 0;
        for (int j = 0; i + j < W; ++j) {
          unsigned __int128 p = static_cast<unsigned __int128>(a[i]) * b[j] + r[i + j] + carry;
          r[i + j] = static_cast<std::uint64_t>(p);
          carry = static_cast<std::uint64_t>(p >> 64);
        }
      }
      return reduce(r);
    }
  }

  void add_to(value_type& acc, const value_type& x) const { acc = add(acc, x); }
  void add_mul_to(value_type& acc, const value_type& x, const value_type& y) const {
    acc = add(acc, mul(x, y));
  }

  std::string to_string(const value_type& x) const { return to_integer(x).str(); }

 private:
  value_type reduce(value_type r) const {
    if constexpr (W == 1) {
      return r & mask_[0];
    } else {
      for (int i = 0; i < W; ++i) r[i] &= mask_[i];
      return r;
    }
  }

  int bits_;
  // Words above the width are masked to zero, so values stay canonical.
  std::array<std::uint64_t, W> mask_{};
};

/// Exact integer that stays in a machine word until it overflows. The
/// representation is canonical: big_ is set only for values outside int64.
class Integer {
 public:
  Integer(long long v = 0) : small_(v) {}
  explicit Integer(const BigInt& v);
  Integer(const Integer& o) : small_(o.small_), big_(o.big_ ? std::make_unique<BigInt>(*o.big_) : nullptr) {}
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<BigInt>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && small_ == 0; }
  BigInt to_big() const { return big_ ? *big_ : BigInt(small_); }
  std::string str() const { return big_ ? big_->str() : std::to_string(small_); }

  friend bool operator==(const Integer& a, const Integer& b) {
    if (a.big_ || b.big_) return a.big_ && b.big_ && *a.big_ == *b.big_;
    return a.small_ == b.small_;
  }

  friend Integer operator+(const Integer& a, const Integer& b) {
    long long r;
    if (!a.big_ && !b.big_ && !__builtin_add_overflow(a.small_, b.small_, &r)) return r;
    return Integer(a.to_big() + b.to_big());
  }
  friend Integer operator-(const Integer& a, const Integer& b) {
    long long r;
    if (!a.big_ && !b.big_ && !__builtin_sub_overflow(a.small_, b.small_, &r)) return r;
    return Integer(a.to_big() - b.to_big());
  }
  friend Integer operator*(const Integer& a, const Integer& b) {
    long long r;
    if (!a.big_ && !b.big_ && !__builtin_mul_overflow(a.small_, b.small_, &r)) return r;
    return Integer(a.to_big() * b.to_big());
  }

 private:
  long long small_ = 0;
  std::unique_ptr<BigInt> big_;
};

/// Exact integers, used for verification.
class IntegerRing {
 public:
  using value_type = Integer;

  friend bool operator==(const IntegerRing&, const IntegerRing&) { return true; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long x) const { return x; }
  value_type from_integer(const BigInt& x) const { return Integer(x); }
  BigInt to_integer(const value_type& x) const { return x.to_big(); }
  bool is_zero(const value_type& x) const { return x.is_zero(); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type neg(const value_type& a) const { return Integer(0) - a; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  void add_to(value_type& acc, const value_type& x) const { acc = acc + x; }
  void add_mul_to(value_type& acc, const value_type& x, const value_type& y) const { acc = acc + x * y; }
  std::string to_string(const value_type& x) const { return x.str(); }
};

/// Runtime description of a coefficient ring.
struct CoefficientRing {
  enum class Mode { kResidue, kInteger };
  Mode mode = Mode::kInteger;
  int bits = 0;  // modulus exponent, residue mode only

  static CoefficientRing residue(int bits) { return {Mode::kResidue, bits}; }
  static CoefficientRing integer() { return {Mode::kInteger, 0}; }
};

/// Largest residue width supported by with_ring.
inline constexpr int kMaxResidueBits = 512;

/// Number of 64-bit words needed for the given width (1, 2, 4 or 8).
int residue_words(int bits);

/// Calls fn with a concrete ring object matching the descriptor. Every
/// instantiation of fn must return the same type.
template <class Fn>
decltype(auto) with_ring(const CoefficientRing& desc, Fn&& fn) {
  if (desc.mode == CoefficientRing::Mode::kInteger) return fn(IntegerRing{});
  switch (residue_words(desc.bits)) {
    case 1:
      return fn(ResidueRing<1>(desc.bits));
    case 2:
      return fn(ResidueRing<2>(desc.bits));
    case 4:
      return fn(ResidueRing<4>(desc.bits));
    default:
      return fn(ResidueRing<8>(desc.bits));
  }
}

}  // namespace tdham
