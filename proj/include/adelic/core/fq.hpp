#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "adelic/core/types.hpp"

namespace adelic {

// The finite field F_q, q = p^e < 2^16 (or any prime q < 2^31).
// Elements are encoded as integers sum d_i p^i, where d_i is the coefficient of
// x^i in F_p[x]/(g) and g is the first monic irreducible of degree e over F_p in
// lexicographic order (coefficient of x^{e-1} most significant).
class Fq {
 public:
  using Elem = std::uint32_t;

  struct Impl {
    std::uint32_t p = 0;
    unsigned e = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;  // over F_p, low to high, monic, degree e
    std::vector<std::uint32_t> exp;      // size 2(q-1), only when e > 1
    std::vector<std::uint32_t> log;
    std::vector<std::uint16_t> add_table;  // q*q, when e > 1 and q <= 256
    std::vector<std::uint32_t> neg;        // when e > 1
    std::vector<std::uint32_t> inv_table;  // when q <= 65536
  };

  Fq() = default;
  explicit Fq(std::uint32_t q);

  // Cached instance; identical tables for identical q.
  static Fq get(std::uint32_t q);

  std::uint32_t characteristic() const { return d_->p; }
  unsigned degree() const { return d_->e; }
  std::uint32_t order() const { return d_->q; }
  Int size() const { return Int(d_->q); }
  unsigned abs_degree() const { return d_->e; }
  bool is_prime_field() const { return d_->e == 1; }
  const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
  bool valid() const { return d_ != nullptr; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }
  bool is_unit(Elem a) const { return a != 0; }

  Elem add(Elem a, Elem b) const {
    if (d_->e == 1) {
      std::uint32_t s = a + b;
      return s >= d_->p ? s - d_->p : s;
    }
    if (!d_->add_table.empty()) return d_->add_table[a * d_->q + b];
    return add_slow(a, b);
  }
  Elem neg(Elem a) const {
    if (d_->e == 1) return a == 0 ? 0 : d_->p - a;
    return d_->neg[a];
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (d_->e == 1) return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % d_->p);
    if (a == 0 || b == 0) return 0;
    return d_->exp[d_->log[a] + d_->log[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t n) const;
  Elem pow(Elem a, const Int& n) const;
  Elem from_int(std::int64_t n) const;
  Elem frobenius(Elem a) const { return pow(a, d_->p); }  // a^p
  Elem sqrt_char2(Elem a) const;                           // a^{q/2}, char 2 only
  Elem random(Rng& rng) const;
  // A generator of the multiplicative group.
  Elem primitive() const;

  std::vector<std::uint32_t> fp_coords(Elem a) const;
  Elem from_fp_coords(const std::vector<std::uint32_t>& c) const;
  // The element x (class of the variable) as an F_p-algebra generator.
  Elem generator() const { return d_->e == 1 ? 1 : d_->p; }

  std::string to_string(Elem a) const { return std::to_string(a); }

  bool operator==(const Fq& o) const { return d_ == o.d_ || (d_ && o.d_ && d_->q == o.d_->q); }
  bool operator!=(const Fq& o) const { return !(*this == o); }

 private:
  Elem add_slow(Elem a, Elem b) const;
  std::shared_ptr<const Impl> impl_;
  const Impl* d_ = nullptr;
};

// Returns (p, e) with q = p^e, or throws std::invalid_argument.
std::pair<std::uint32_t, unsigned> prime_power_decompose(std::uint64_t q);
bool is_prime_u64(std::uint64_t n);
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);

}  // namespace adelic
