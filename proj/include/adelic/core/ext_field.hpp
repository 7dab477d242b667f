#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "adelic/core/fq.hpp"
#include "adelic/core/poly.hpp"

namespace adelic {

// F_{q^k} = F_q[z]/(g) for a monic irreducible g of degree k. Elements are
// coefficient vectors of length k in the power basis.
class ExtField {
 public:
  using Elem = std::vector<Fq::Elem>;

  ExtField() = default;
  // g monic irreducible over base (low to high); irreducibility is checked.
  ExtField(Fq base, std::vector<Fq::Elem> g, std::string var = "z");

  // F_{q^k} with the first monic irreducible of degree k in lexicographic order.
  static ExtField build(std::uint32_t q, unsigned k);
  // The first monic irreducible of degree k over F_q.
  static std::vector<Fq::Elem> first_irreducible(const Fq& base, unsigned k);

  const Fq& base() const { return d_->base; }
  unsigned degree() const { return d_->k; }
  const std::vector<Fq::Elem>& modulus() const { return d_->g; }
  const std::string& var() const { return d_->var; }
  std::uint32_t characteristic() const { return d_->base.characteristic(); }
  unsigned abs_degree() const { return d_->k * d_->base.degree(); }
  Int size() const;
  bool same(const ExtField& o) const;
  bool valid() const { return d_ != nullptr; }
  ExtField with_var(std::string var) const;

  Elem zero() const { return Elem(d_->k, 0); }
  Elem one() const {
    Elem e(d_->k, 0);
    e[0] = 1;
    return e;
  }
  Elem gen() const;
  Elem from_base(Fq::Elem c) const {
    Elem e(d_->k, 0);
    e[0] = c;
    return e;
  }
  Elem from_int(std::int64_t n) const { return from_base(d_->base.from_int(n)); }
  // Reduce an arbitrary polynomial in z.
  Elem from_poly(const std::vector<Fq::Elem>& f) const;
  bool is_zero(const Elem& a) const;
  bool is_one(const Elem& a) const { return equal(a, one()); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_unit(const Elem& a) const { return !is_zero(a); }
  bool in_base(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(Fq::Elem c, const Elem& a) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  Elem pow(const Elem& a, const Int& n) const { return ring_pow(*this, a, n); }
  Elem pow(const Elem& a, std::uint64_t n) const { return ring_pow(*this, a, n); }
  // a^q and a^{q^j}.
  Elem frob(const Elem& a) const;
  Elem frob_pow(const Elem& a, long j) const;
  Elem random(Rng& rng) const;
  // Matrix of a -> a^q: column j is the image of z^j (row-major k x k).
  const std::vector<Fq::Elem>& frob_matrix() const;
  // Matrix of a -> c*a (row-major, column j = c * z^j).
  std::vector<Fq::Elem> mul_matrix(const Elem& c) const;

  std::vector<std::uint32_t> fp_coords(const Elem& a) const;
  std::string to_string(const Elem& a) const;

 private:
  struct Impl {
    Fq base;
    unsigned k = 0;
    std::vector<Fq::Elem> g;
    std::string var;
    bool fast = false;  // prime base with p < 2^16: lazy reduction
    mutable std::once_flag frob_once;
    mutable std::vector<Fq::Elem> frob;
  };
  void reduce_wide(std::vector<std::uint64_t>& t, Elem& out) const;
  std::shared_ptr<const Impl> impl_;
  const Impl* d_ = nullptr;
};

}  // namespace adelic
