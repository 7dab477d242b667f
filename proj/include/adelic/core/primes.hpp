#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelic/core/ext_field.hpp"
#include "adelic/core/rings.hpp"

namespace adelic {

// A maximal ideal (pi) of A = F_q[T], pi monic irreducible.
struct PrimeOfA {
  std::vector<Fq::Elem> pi;
  int deg() const { return static_cast<int>(pi.size()) - 1; }
  bool operator==(const PrimeOfA& o) const { return pi == o.pi; }
};

// All monic irreducibles of degree <= bound in (degree, lexicographic) order.
std::vector<PrimeOfA> enumerate_primes(const Fq& k, int bound);
// Monic irreducibles of degree exactly d.
std::vector<std::vector<Fq::Elem>> monic_irreducibles(const Fq& k, int d);

// k_p = F_q[t]/(pi).
ExtField residue_field(const Fq& k, const PrimeOfA& p, const std::string& var = "t");
// Image of a in k_p.
ExtField::Elem reduce_mod_prime(const ExtField& kp, const std::vector<Fq::Elem>& a);

// A place of F_q(T): a prime, or infinity when pi is empty.
struct Place {
  std::optional<PrimeOfA> prime;
  static Place infinity() { return {}; }
  static Place at(PrimeOfA p) { return {std::move(p)}; }
  bool is_infinite() const { return !prime.has_value(); }
};

struct NewtonSegment {
  Rational slope{0};
  int length = 0;
  bool infinite = false;  // zero roots (valuation +infinity)
};

// Lower convex hull of (i, v(c_i)); slopes nondecreasing, lengths summing to deg f.
std::vector<NewtonSegment> newton_polygon(const RatFuncField& F, const std::vector<RatFunc>& coeffs, const Place& place);
std::vector<NewtonSegment> newton_polygon(const PolyRing<Fq>& A, const std::vector<std::vector<Fq::Elem>>& coeffs, const Place& place);

// Root valuations (-slope), with multiplicity, sorted ascending; infinite segments skipped.
std::vector<Rational> root_valuations(const std::vector<NewtonSegment>& segs);

}  // namespace adelic
