#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adelic/core/embedding.hpp"
#include "adelic/core/primes.hpp"
#include "adelic/core/rings.hpp"
#include "adelic/skew/skew_poly.hpp"

namespace adelic {

using APoly = std::vector<Fq::Elem>;  // element of A = F_q[T]

// A Drinfeld F_q[T]-module over a finite field kappa = F_{q^m}: T -> phi_T.
class DrinfeldModule {
 public:
  DrinfeldModule() = default;
  DrinfeldModule(ExtField kappa, SkewExt::Elem phiT, std::string name = "");

  const ExtField& kappa() const { return kappa_; }
  const Fq& fq() const { return kappa_.base(); }
  const SkewExt& skew() const { return S_; }
  const SkewExt::Elem& phiT() const { return phiT_; }
  const std::string& name() const { return name_; }
  int rank() const { return static_cast<int>(phiT_.size()) - 1; }
  unsigned m() const { return kappa_.degree(); }
  const ExtField::Elem& gamma() const { return phiT_[0]; }
  // Minimal polynomial of gamma over F_q, as a prime of A.
  const PrimeOfA& p0() const { return p0_; }

 private:
  ExtField kappa_;
  SkewExt S_;
  SkewExt::Elem phiT_;
  std::string name_;
  PrimeOfA p0_;
};

// A family over F_q(s) with coefficients in F_q[s].
struct DrinfeldFamily {
  Fq k;
  std::vector<APoly> phiT;  // polynomials in s, constant first
  std::string name;
  int rank() const { return static_cast<int>(phiT.size()) - 1; }
};

// Minimal polynomial over F_q of an element of an extension.
APoly min_poly_over_base(const ExtField& K, const ExtField::Elem& a);

SkewExt::Elem phi_of(const DrinfeldModule& phi, const APoly& a);
SkewRing<PolyRing<Fq>>::Elem phi_of(const DrinfeldFamily& fam, const APoly& a);

struct SpecializeResult {
  std::optional<DrinfeldModule> module;  // empty on bad reduction
  std::string place;                     // the place polynomial P(s), or the value
  bool bad_reduction = false;
};

// Reduction at the place P(s) (monic irreducible), kappa_x = F_q[s]/(P).
SpecializeResult specialize(const DrinfeldFamily& fam, const APoly& place);
// Substitution s -> alpha in a given finite field.
SpecializeResult specialize(const DrinfeldFamily& fam, const ExtField& K, const ExtField::Elem& alpha);

// F_q-basis of {u : deg u <= D, u phi_T = phi_T u}.
std::vector<SkewExt::Elem> endomorphisms_up_to(const DrinfeldModule& phi, int D);

struct FrobeniusElement {
  APoly a;         // phi_a = tau^m
  PrimeOfA pi0;
  int exponent = 0;  // a = unit * pi0^exponent
};
// Rank 1 only.
FrobeniusElement frobenius_as_element(const DrinfeldModule& phi);

struct IsogenyResult {
  SkewExt::Elem f;
  DrinfeldModule target;
  std::size_t kernel_dim = 0;
};
// H = sum over s in S of s(ker phi_a), f = annihilator(H), f phi_T = phi'_T f.
IsogenyResult isogeny_from_endomorphisms(const DrinfeldModule& phi, const std::vector<SkewExt::Elem>& S, const APoly& a);
IsogenyResult isogeny_from_endomorphism(const DrinfeldModule& phi, const SkewExt::Elem& s, const APoly& a);

class CharacteristicPrime : public std::invalid_argument {
 public:
  CharacteristicPrime() : std::invalid_argument("prime equals the characteristic p_0") {}
};
class ExtensionCapExceeded : public std::runtime_error {
 public:
  explicit ExtensionCapExceeded(const std::string& w) : std::runtime_error("torsion extension exceeds degree cap: " + w) {}
};

// Order of tau^m acting on kappa{tau}/kappa{tau}P by left multiplication, up to cap (0 if not found).
unsigned frobenius_order_mod(const DrinfeldModule& phi, const SkewExt::Elem& P, unsigned cap);

struct TorsionBasis {
  PrimeOfA p;
  int level = 1;
  ExtField L;
  Embedding emb;                     // kappa -> L
  std::vector<ExtField::Elem> basis;  // A/p^i-basis, size r
};

struct TorsionOptions {
  unsigned max_ext_degree = 240;
};

TorsionBasis torsion_basis(const DrinfeldModule& phi, const PrimeOfA& p, int level, const TorsionOptions& opt = {});
// x -> phi_a(x) on L.
ExtField::Elem act(const DrinfeldModule& phi, const Embedding& emb, const APoly& a, const ExtField::Elem& x);

using AQuot = PolyQuotRing<Fq>;
// Matrix of x -> x^{q^m} on the given basis (entries in A/p^i).
Matrix<APoly> frobenius_matrix_on(const DrinfeldModule& phi, const TorsionBasis& tb);
Matrix<APoly> frobenius_matrix_mod(const DrinfeldModule& phi, const PrimeOfA& p, int level, const TorsionOptions& opt = {});
AQuot quotient_ring(const Fq& k, const PrimeOfA& p, int level);

struct FrobeniusData {
  std::string place;
  int deg_x = 0;             // [kappa_x : F_q]
  std::vector<APoly> f;      // coefficients of X^0..X^n in A
  PrimeOfA p0;
  int n() const { return static_cast<int>(f.size()) - 1; }
};

// Motive method.
FrobeniusData charpoly_frobenius(const DrinfeldModule& phi);

struct CrtModulus {
  PrimeOfA p;
  int level = 1;
  unsigned ext_degree = 0;
};
struct TorsionCharpoly {
  std::vector<APoly> f;
  std::vector<CrtModulus> moduli;
};
// Independent torsion/CRT reconstruction.
TorsionCharpoly charpoly_frobenius_torsion(const DrinfeldModule& phi, const TorsionOptions& opt = {});
// Runs both and throws InvariantViolation on disagreement.
FrobeniusData charpoly_frobenius_checked(const DrinfeldModule& phi, const TorsionOptions& opt = {});

struct NewtonReport {
  bool ok = true;
  int n_x = 0;
  std::vector<std::string> violations;
  std::vector<NewtonSegment> at_infinity;
  std::vector<NewtonSegment> at_p0;
};
// Checks the valuation pattern at infinity, at p0 and at the given other primes, plus
// that the constant term has no prime factor besides p0, and the degree bounds.
NewtonReport newton_check(const FrobeniusData& fd, const Fq& k, const std::vector<PrimeOfA>& aux_primes = {});

// X^n + ... printed over A.
std::string frobenius_poly_to_string(const Fq& k, const std::vector<APoly>& f);

}  // namespace adelic
