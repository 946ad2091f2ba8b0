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
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "tdham/rings.hpp"

namespace tdham {

/// Largest retained degree of each variable. Exponents are packed into one
/// 64-bit key, which bounds a below 2^31 and b, c below 2^15.
struct DegreeCaps {
  int a = 0;
  int b = 0;
  int c = 0;

  friend bool operator==(const DegreeCaps&, const DegreeCaps&) = default;
};

// Leaves trivially constructible elements uninitialized on resize; merge
// buffers are always fully overwritten before being read.
template <class T>
struct DefaultInitAllocator : std::allocator<T> {
  template <class U>
  struct rebind {
    using other = DefaultInitAllocator<U>;
  };
  DefaultInitAllocator() = default;
  template <class U>
  DefaultInitAllocator(const DefaultInitAllocator<U>&) noexcept {}

  template <class U>
  void construct(U* p) noexcept(std::is_nothrow_default_constructible_v<U>) {
    ::new (static_cast<void*>(p)) U;
  }
  template <class U, class... Args>
  void construct(U* p, Args&&... args) {
    std::allocator_traits<std::allocator<T>>::construct(static_cast<std::allocator<T>&>(*this), p,
                                                         std::forward<Args>(args)...);
  }
};

inline constexpr int kMaxCapA = (1 << 30) - 1;
inline constexpr int kMaxCapBC = (1 << 15) - 1;

/// Polynomial in alpha, beta, gamma with every term above a cap discarded.
///
/// Storage is a sorted vector of nonzero terms keyed by the packed exponent
/// triple, so lexicographic (a, b, c) order is key order. Keys add when
/// monomials multiply; the field widths leave room for one carry-free sum.
template <class Ring>
class TruncatedPoly3 {
 public:
  using Coeff = typename Ring::value_type;
  struct Term {
    std::uint64_t key;
    Coeff coeff;
  };
  using TermVector = std::vector<Term, DefaultInitAllocator<Term>>;

  static constexpr std::uint64_t pack(int a, int b, int c) {
    return (static_cast<std::uint64_t>(a) << 32) | (static_cast<std::uint64_t>(b) << 16) |
           static_cast<std::uint64_t>(c);
  }
  static constexpr int deg_a(std::uint64_t k) { return static_cast<int>(k >> 32); }
  static constexpr int deg_b(std::uint64_t k) { return static_cast<int>((k >> 16) & 0xffff); }
  static constexpr int deg_c(std::uint64_t k) { return static_cast<int>(k & 0xffff); }

  TruncatedPoly3(Ring ring, DegreeCaps caps) : ring_(std::move(ring)), caps_(caps) {
    if (caps.a < 0 || caps.b < 0 || caps.c < 0 || caps.a > kMaxCapA || caps.b > kMaxCapBC ||
        caps.c > kMaxCapBC) {
      throw std::invalid_argument("degree caps out of supported range");
    }
  }

  static TruncatedPoly3 monomial(Ring ring, DegreeCaps caps, int a, int b, int c, Coeff coeff) {
    TruncatedPoly3 p(std::move(ring), caps);
    if (a >= 0 && b >= 0 && c >= 0 && a <= caps.a && b <= caps.b && c <= caps.c &&
        !p.ring_.is_zero(coeff)) {
      p.terms_.push_back({pack(a, b, c), std::move(coeff)});
    }
    return p;
  }
  static TruncatedPoly3 one(Ring ring, DegreeCaps caps) {
    Coeff unit = ring.one();
    return monomial(std::move(ring), caps, 0, 0, 0, std::move(unit));
  }

  const Ring& ring() const { return ring_; }
  const DegreeCaps& caps() const { return caps_; }
  const TermVector& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  /// Throws std::out_of_range when (a, b, c) lies outside the caps.
  Coeff coeff(int a, int b, int c) const {
    if (a < 0 || b < 0 || c < 0 || a > caps_.a || b > caps_.b || c > caps_.c) {
      throw std::out_of_range("coefficient index (" + std::to_string(a) + "," + std::to_string(b) +
                              "," + std::to_string(c) + ") beyond caps");
    }
    const std::uint64_t k = pack(a, b, c);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const Term& t, std::uint64_t key) { return t.key < key; });
    if (it == terms_.end() || it->key != k) return ring_.zero();
    return it->coeff;
  }

  void clear() { terms_.clear(); }

  void scale(const Coeff& s) {
    if (ring_.is_zero(s)) {
      terms_.clear();
      return;
    }
    std::size_t out = 0;
    for (auto& t : terms_) {
      Coeff v = ring_.mul(t.coeff, s);
      if (!ring_.is_zero(v)) terms_[out++] = {t.key, std::move(v)};
    }
    terms_.resize(out);
  }

  /// this += s * q.
  void add_scaled(const TruncatedPoly3& q, const Coeff& s) {
    check_compatible(q);
    if (q.terms_.empty() || ring_.is_zero(s)) return;
    if (&q == this) {
      scale(ring_.add(ring_.one(), s));
      return;
    }
    TermVector& merged = scratch(terms_.size() + q.terms_.size());
    Term* out = merged.data();
    Term* i = terms_.data();
    Term* const i_end = i + terms_.size();
    const Term* j = q.terms_.data();
    const Term* const j_end = j + q.terms_.size();
    while (i != i_end && j != j_end) {
      if (i->key < j->key) {
        *out++ = std::move(*i++);
      } else if (j->key < i->key) {
        out->coeff = ring_.mul(j->coeff, s);
        if (!ring_.is_zero(out->coeff)) (out++)->key = j->key;
        ++j;
      } else {
        out->coeff = std::move(i->coeff);
        ring_.add_mul_to(out->coeff, j->coeff, s);
        if (!ring_.is_zero(out->coeff)) (out++)->key = i->key;
        ++i;
        ++j;
      }
    }
    for (; i != i_end; ++i) *out++ = std::move(*i);
    for (; j != j_end; ++j) {
      out->coeff = ring_.mul(j->coeff, s);
      if (!ring_.is_zero(out->coeff)) (out++)->key = j->key;
    }
    merged.resize(static_cast<std::size_t>(out - merged.data()));
    terms_.swap(merged);
  }

  /// this *= 1 + s * alpha^a beta^b gamma^c, in place.
  void mul_binomial(int a, int b, int c, const Coeff& s) {
    if (ring_.is_zero(s) || terms_.empty()) return;
    const std::uint64_t shift = pack(a, b, c);
    // Shifted terms past the caps are dropped; since shifting preserves
    // order, only those with every degree within range survive.
    const int amax = caps_.a - a;
    const int bmax = caps_.b - b;
    const int cmax = caps_.c - c;
    auto fits = [&](std::uint64_t k) { return deg_a(k) <= amax && deg_b(k) <= bmax && deg_c(k) <= cmax; };
    TermVector& merged = scratch(2 * terms_.size());
    Term* out = merged.data();
    const Term* i = terms_.data();
    const Term* const end = i + terms_.size();
    const Term* j = i;
    while (j != end && !fits(j->key)) ++j;
    while (j != end) {
      const std::uint64_t jk = j->key + shift;
      if (i != end && i->key < jk) {
        *out++ = *i++;
      } else if (i == end || jk < i->key) {
        out->coeff = ring_.mul(j->coeff, s);
        if (!ring_.is_zero(out->coeff)) (out++)->key = jk;
        do ++j;
        while (j != end && !fits(j->key));
      } else {
        out->coeff = i->coeff;
        ring_.add_mul_to(out->coeff, j->coeff, s);
        if (!ring_.is_zero(out->coeff)) (out++)->key = jk;
        ++i;
        do ++j;
        while (j != end && !fits(j->key));
      }
    }
    for (; i != end; ++i) *out++ = *i;
    merged.resize(static_cast<std::size_t>(out - merged.data()));
    terms_.swap(merged);
  }

  friend TruncatedPoly3 operator+(const TruncatedPoly3& p, const TruncatedPoly3& q) {
    TruncatedPoly3 r = p;
    r.add_scaled(q, r.ring_.one());
    return r;
  }
  friend TruncatedPoly3 operator-(const TruncatedPoly3& p, const TruncatedPoly3& q) {
    TruncatedPoly3 r = p;
    r.add_scaled(q, r.ring_.from_int(-1));
    return r;
  }
  friend TruncatedPoly3 operator*(const TruncatedPoly3& p, const TruncatedPoly3& q) {
    return multiply(p, q);
  }
  friend bool operator==(const TruncatedPoly3& p, const TruncatedPoly3& q) {
    if (!(p.caps_ == q.caps_) || p.terms_.size() != q.terms_.size()) return false;
    for (std::size_t i = 0; i < p.terms_.size(); ++i) {
      if (p.terms_[i].key != q.terms_[i].key || !(p.terms_[i].coeff == q.terms_[i].coeff)) {
        return false;
      }
    }
    return true;
  }

  static TruncatedPoly3 multiply(const TruncatedPoly3& p, const TruncatedPoly3& q) {
    p.check_compatible(q);
    TruncatedPoly3 r(p.ring_, p.caps_);
    if (p.terms_.empty() || q.terms_.empty()) return r;
    const Box bp = p.bounds();
    const Box bq = q.bounds();
    Box box{bp.a0 + bq.a0, std::min(bp.a1 + bq.a1, p.caps_.a), bp.b0 + bq.b0,
            std::min(bp.b1 + bq.b1, p.caps_.b), bp.c0 + bq.c0, std::min(bp.c1 + bq.c1, p.caps_.c)};
    if (box.a0 > box.a1 || box.b0 > box.b1 || box.c0 > box.c1) return r;
    const std::uint64_t volume = static_cast<std::uint64_t>(box.a1 - box.a0 + 1) *
                                 static_cast<std::uint64_t>(box.b1 - box.b0 + 1) *
                                 static_cast<std::uint64_t>(box.c1 - box.c0 + 1);
    const std::uint64_t pairs = static_cast<std::uint64_t>(p.terms_.size()) * q.terms_.size();
    if (volume <= 4 * pairs && volume <= (std::uint64_t{1} << 22)) {
      r.multiply_dense(p, q, box, volume);
    } else {
      r.multiply_sparse(p, q);
    }
    return r;
  }

  /// "a b c coeff" lines for the nonzero terms in lexicographic order.
  std::string debug_string() const {
    std::ostringstream out;
    for (const auto& t : terms_) {
      out << deg_a(t.key) << ' ' << deg_b(t.key) << ' ' << deg_c(t.key) << ' '
          << ring_.to_string(t.coeff) << '\n';
    }
    return out.str();
  }

 private:
  // Merge target reused across calls; swapped with terms_ after each merge.
  // Returns the buffer sized to n without copying its stale contents.
  static TermVector& scratch(std::size_t n) {
    thread_local TermVector buf;
    if (buf.capacity() < n) {
      buf.clear();
      buf.reserve(std::max<std::size_t>(n, 64));
    }
    buf.resize(n);
    return buf;
  }

  struct Box {
    int a0, a1, b0, b1, c0, c1;
  };

  bool within_caps(std::uint64_t k) const {
    return deg_a(k) <= caps_.a && deg_b(k) <= caps_.b && deg_c(k) <= caps_.c;
  }

  void check_compatible(const TruncatedPoly3& q) const {
    if (!(caps_ == q.caps_)) throw std::invalid_argument("polynomial caps differ");
    if (!(ring_ == q.ring_)) throw std::invalid_argument("polynomial rings differ");
  }

  Box bounds() const {
    Box b{deg_a(terms_.front().key), deg_a(terms_.back().key), caps_.b, 0, caps_.c, 0};
    for (const auto& t : terms_) {
      b.b0 = std::min(b.b0, deg_b(t.key));
      b.b1 = std::max(b.b1, deg_b(t.key));
      b.c0 = std::min(b.c0, deg_c(t.key));
      b.c1 = std::max(b.c1, deg_c(t.key));
    }
    return b;
  }

  void multiply_dense(const TruncatedPoly3& p, const TruncatedPoly3& q, const Box& box,
                      std::uint64_t volume) {
    static thread_local std::vector<Coeff> scratch;
    scratch.assign(volume, ring_.zero());
    const std::uint64_t nb = box.b1 - box.b0 + 1;
    const std::uint64_t nc = box.c1 - box.c0 + 1;
    for (const auto& s : p.terms_) {
      for (const auto& t : q.terms_) {
        const std::uint64_t k = s.key + t.key;
        const int a = deg_a(k);
        if (a > caps_.a) break;  // q is sorted by a first
        const int b = deg_b(k);
        const int c = deg_c(k);
        if (b > caps_.b || c > caps_.c) continue;
        const std::uint64_t idx = ((a - box.a0) * nb + (b - box.b0)) * nc + (c - box.c0);
        ring_.add_mul_to(scratch[idx], s.coeff, t.coeff);
      }
    }
    std::uint64_t idx = 0;
    for (int a = box.a0; a <= box.a1; ++a) {
      for (int b = box.b0; b <= box.b1; ++b) {
        for (int c = box.c0; c <= box.c1; ++c, ++idx) {
          if (!ring_.is_zero(scratch[idx])) terms_.push_back({pack(a, b, c), std::move(scratch[idx])});
        }
      }
    }
  }

  void multiply_sparse(const TruncatedPoly3& p, const TruncatedPoly3& q) {
    std::vector<Term> products;
    products.reserve(p.terms_.size() * q.terms_.size());
    for (const auto& s : p.terms_) {
      for (const auto& t : q.terms_) {
        const std::uint64_t k = s.key + t.key;
        if (deg_a(k) > caps_.a) break;
        if (!within_caps(k)) continue;
        products.push_back({k, ring_.mul(s.coeff, t.coeff)});
      }
    }
    std::sort(products.begin(), products.end(),
              [](const Term& x, const Term& y) { return x.key < y.key; });
    for (std::size_t i = 0; i < products.size();) {
      std::size_t j = i + 1;
      Coeff v = std::move(products[i].coeff);
      while (j < products.size() && products[j].key == products[i].key) {
        ring_.add_to(v, products[j].coeff);
        ++j;
      }
      if (!ring_.is_zero(v)) terms_.push_back({products[i].key, std::move(v)});
      i = j;
    }
  }

  Ring ring_;
  DegreeCaps caps_;
  TermVector terms_;
};

template <class Ring>
TruncatedPoly3<Ring> poly_monomial(const Ring& ring, DegreeCaps caps, int a, int b, int c,
                                   const typename Ring::value_type& coeff) {
  return TruncatedPoly3<Ring>::monomial(ring, caps, a, b, c, coeff);
}

template <class Ring>
TruncatedPoly3<Ring> poly_add(const TruncatedPoly3<Ring>& p, const TruncatedPoly3<Ring>& q) {
  return p + q;
}

template <class Ring>
TruncatedPoly3<Ring> poly_sub(const TruncatedPoly3<Ring>& p, const TruncatedPoly3<Ring>& q) {
  return p - q;
}

template <class Ring>
TruncatedPoly3<Ring> poly_scale(const TruncatedPoly3<Ring>& p, const typename Ring::value_type& s) {
  TruncatedPoly3<Ring> r = p;
  r.scale(s);
  return r;
}

template <class Ring>
TruncatedPoly3<Ring> poly_mul(const TruncatedPoly3<Ring>& p, const TruncatedPoly3<Ring>& q) {
  return p * q;
}

template <class Ring>
typename Ring::value_type poly_coeff(const TruncatedPoly3<Ring>& p, int a, int b, int c) {
  return p.coeff(a, b, c);
}

/// Re-expresses p over another ring through the integers, e.g. to reduce an
/// exact polynomial modulo 2^M. Caps are kept.
template <class To, class From>
TruncatedPoly3<To> convert_ring(const TruncatedPoly3<From>& p, const To& ring) {
  TruncatedPoly3<To> r(ring, p.caps());
  using P = TruncatedPoly3<From>;
  for (const auto& t : p.terms()) {
    r.add_scaled(TruncatedPoly3<To>::monomial(ring, p.caps(), P::deg_a(t.key), P::deg_b(t.key),
                                              P::deg_c(t.key), ring.one()),
                 ring.from_integer(p.ring().to_integer(t.coeff)));
  }
  return r;
}

/// Drops every term above the new caps.
template <class Ring>
TruncatedPoly3<Ring> truncate_to(const TruncatedPoly3<Ring>& p, DegreeCaps caps) {
  TruncatedPoly3<Ring> r(p.ring(), caps);
  using P = TruncatedPoly3<Ring>;
  for (const auto& t : p.terms()) {
    r.add_scaled(P::monomial(p.ring(), caps, P::deg_a(t.key), P::deg_b(t.key), P::deg_c(t.key),
                             p.ring().one()),
                 t.coeff);
  }
  return r;
}

}  // namespace tdham
