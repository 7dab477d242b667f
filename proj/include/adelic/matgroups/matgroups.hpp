#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adelic/core/fq.hpp"
#include "adelic/core/matrix.hpp"
#include "adelic/core/rings.hpp"

namespace adelic {

using TRing = TruncRing<Fq>;
using TMat = Matrix<TRing::Elem>;
using KMat = Matrix<Fq::Elem>;

// n x n matrices over k[u]/(u^m), k of order <= 256.
struct MatComponent {
  Fq k;
  int n = 2;
  unsigned m = 1;
};

// Direct product of matrix groups, elements encoded as bytes: per component,
// entry (i, j) coefficient t at (i n + j) m + t.
class FlatGroup {
 public:
  FlatGroup() = default;
  explicit FlatGroup(std::vector<MatComponent> comps);

  const std::vector<MatComponent>& components() const { return comps_; }
  std::size_t len() const { return len_; }
  std::size_t offset(std::size_t c) const { return off_[c]; }
  void mul(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const;
  std::vector<std::uint8_t> identity() const;
  std::vector<std::uint8_t> encode(const std::vector<TMat>& mats) const;
  std::vector<TMat> decode(const std::uint8_t* e) const;

 private:
  std::vector<MatComponent> comps_;
  std::vector<std::size_t> off_;
  std::size_t len_ = 0;
  struct Tables {
    std::vector<std::uint8_t> add, mul;
  };
  std::vector<Tables> tab_;
};

// Insert-only set of fixed-length byte strings with open addressing.
class ElementSet {
 public:
  explicit ElementSet(std::size_t len = 0) : len_(len) {}
  std::size_t size() const { return n_; }
  std::size_t len() const { return len_; }
  const std::uint8_t* at(std::size_t i) const { return arena_.data() + i * len_; }
  // Returns true if newly inserted.
  bool insert(const std::uint8_t* e);
  bool contains(const std::uint8_t* e) const;

 private:
  std::uint64_t hash(const std::uint8_t* e) const;
  void grow();
  std::size_t len_;
  std::size_t n_ = 0;
  std::vector<std::uint8_t> arena_;
  std::vector<std::uint32_t> table_;  // index + 1, 0 = empty
};

struct CongruenceClosure {
  FlatGroup group;
  std::vector<std::vector<std::uint8_t>> gens;
  ElementSet elems;
  bool complete = false;
  std::size_t order() const { return elems.size(); }
};

CongruenceClosure closure(const FlatGroup& G, const std::vector<std::vector<std::uint8_t>>& gens, std::size_t cap = 50000000);
CongruenceClosure closure(const Fq& k, int n, unsigned m, const std::vector<TMat>& gens, std::size_t cap = 50000000);

// Transvection Id + c E_ij over k[u]/(u^m), c given by its u-coefficients.
TMat elementary(const TRing& R, int n, int i, int j, const TRing::Elem& c);
// Generators of SL_n(k): Id + t E_ij for i != j and t in an F_p-basis of k.
std::vector<KMat> sl_generators(const Fq& k, int n);
TMat lift_constant(const TRing& R, const KMat& g);

struct FiltrationLayer {
  int level = 0;
  std::size_t size = 0;
  unsigned fp_dim = 0;
  bool additive = false;  // size == p^fp_dim
  bool has_nonscalar = false;
  bool equals_sl = false;
  std::vector<KMat> basis;  // F_p-basis
};

struct FiltrationProfile {
  std::size_t h0_order = 0;
  std::size_t h0_det_one = 0;
  bool h0_contains_sl = false;
  std::vector<FiltrationLayer> layers;  // levels 1..m-1
};

FiltrationProfile filtration_profile(const CongruenceClosure& H);

struct StrongApproxVerdict {
  bool in_regime = false;  // |k| > 9
  bool hypotheses = false;
  bool h0_contains_sl = false;
  bool h1_nonscalar = false;
  bool complete = false;
  std::size_t order = 0;
  Int full_order = 0;
  bool full = false;
  bool consistent = false;  // hypotheses <=> full
  FiltrationProfile profile;
};

StrongApproxVerdict verify_strong_approx(const Fq& k, int n, unsigned m, const std::vector<TMat>& gens, std::size_t cap = 50000000);

struct BracketSpan {
  unsigned k_dim = 0;   // dimension of the k-span
  unsigned fp_dim = 0;  // dimension over F_p of the additive span
  unsigned sl_dim = 0;  // n^2 - 1
  bool full() const { return k_dim == sl_dim; }
};
// Span of [X, Y] for X, Y in sl_n(k).
BracketSpan bracket_span(int n, const Fq& k);
// Span of [X, Y] for X in gl_n(k), Y in sl_n(k).
BracketSpan bracket_span_gl_sl(int n, const Fq& k);

struct InvariantSubgroup {
  unsigned fp_dim = 0;
  std::vector<std::vector<std::uint32_t>> basis;  // F_p coordinates, reduced echelon form
  bool in_scalars = false;
  bool contains_sl = false;
  std::string label;  // "0", "c", "sl", "gl" when it is one of these
};

struct InvariantLattice {
  int n = 2;
  Fq k;
  bool in_regime = false;
  bool dichotomy = false;  // each member is in c or contains sl_n
  std::vector<InvariantSubgroup> members;
};
// Additive subgroups of gl_n(k) stable under conjugation by SL_n(k).
InvariantLattice invariant_subgroups(const Fq& k, int n);

// Sum over i, j of a_i / a_j, as Tr(g) Tr(g^{-1}).
template <RingContext R>
typename R::Elem tr_ad(const R& r, const Matrix<typename R::Elem>& g) {
  auto inv = mat_inverse(r, g);
  if (!inv) throw std::domain_error("tr_ad: matrix not invertible");
  return r.mul(mat_trace(r, g), mat_trace(r, *inv));
}
// From X^n + b_1 X^{n-1} + ... + b_n (low to high): b_1 b_{n-1} / b_n, b_0 = 1.
template <RingContext R>
typename R::Elem tr_ad_charpoly(const R& r, const std::vector<typename R::Elem>& cp) {
  const std::size_t n = cp.size() - 1;
  if (n < 1 || !r.is_unit(cp[0])) throw std::domain_error("tr_ad_charpoly: constant term not a unit");
  auto b1 = cp[n - 1];
  auto bn1 = cp[1];
  return r.mul(r.mul(b1, bn1), r.inv(cp[0]));
}

// tr_ad(g) == Tr(g)^2 det(g)^{-1} for g in GL_2 over a char-2 field.
bool char2_trad_identity(const Fq& k, const KMat& g);

// F_p-subalgebra of k[u]/(u^m) generated by the samples (with 1); returns its F_p-dimension.
unsigned subalgebra_dim(const TRing& R, const std::vector<TRing::Elem>& samples);
bool trace_criterion_1(const TRing& R, const std::vector<TRing::Elem>& samples);
// Char 2: samples must be squares (odd u-coefficients zero); true iff they generate {x^2}.
bool trace_criterion_2(const TRing& R, const std::vector<TRing::Elem>& samples);

// For h = gamma g_2 (1 + u x) with gamma in GL_2(k), g_2 = Id mod u^2, over k[u]/(u^3):
// the u^2-coefficient of Tr(g_2 - Id). Empty if h has no such decomposition.
std::optional<Fq::Elem> layer_two_trace(const TRing& R, const TMat& h);

enum class GoursatKind { Full, Graph, Other };
std::string to_string(GoursatKind k);

struct GoursatResult {
  GoursatKind kind = GoursatKind::Other;
  std::size_t order = 0;
  std::size_t proj1 = 0, proj2 = 0;
  std::size_t n1 = 0, n2 = 0;  // |H cap (G1 x 1)|, |H cap (1 x G2)|
  // Graph case: g2 = x Frob^j(g1) x^{-1} up to scalars on all generators.
  std::optional<unsigned> frob_power;
  std::optional<KMat> conjugator;
  std::vector<std::pair<KMat, KMat>> generator_images;
};
// H in SL_n(k1) x SL_n(k2) generated by pairs.
GoursatResult goursat_analyze(const Fq& k1, const Fq& k2, int n, const std::vector<std::pair<KMat, KMat>>& gens,
                              std::size_t cap = 50000000);

// q^{n(n-1)/2} prod_{i=2..n} (q^i - e^i), e = 1 (split) or -1 (twisted).
Int group_order(int n, std::uint64_t q, bool twisted = false);
// Exhaustive |SL_n(F_q)| (small only).
std::size_t count_sl(const Fq& k, int n);

struct FieldBoundReport {
  long pairs = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
// q' >= 2q implies order(n, q', e') > order(n, q, e) for all sign choices.
FieldBoundReport field_bound_check(int n, std::uint64_t q_max);

KMat kmat_mul(const Fq& k, const KMat& a, const KMat& b);
std::string kmat_to_string(const KMat& g);

}  // namespace adelic
