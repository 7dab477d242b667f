#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adelic/core/embedding.hpp"
#include "adelic/core/ext_field.hpp"
#include "adelic/core/fq.hpp"
#include "adelic/core/poly.hpp"

namespace adelic {

// a -> a^{q^j} on a coefficient ring.
template <class K>
struct Twist;

template <>
struct Twist<Fq> {
  static Fq::Elem apply(const Fq&, const Fq::Elem& a, long) { return a; }
  static std::uint32_t q(const Fq& k) { return k.order(); }
};

template <>
struct Twist<ExtField> {
  static ExtField::Elem apply(const ExtField& K, const ExtField::Elem& a, long j) { return K.frob_pow(a, j); }
  static std::uint32_t q(const ExtField& K) { return K.base().order(); }
};

// Integral coefficients F_q[s]: s -> s^{q^j}.
template <>
struct Twist<PolyRing<Fq>> {
  static std::vector<Fq::Elem> apply(const PolyRing<Fq>& P, const std::vector<Fq::Elem>& f, long j) {
    if (j == 0 || f.size() <= 1) return f;
    std::size_t step = 1;
    for (long i = 0; i < j; ++i) step *= P.base().order();
    std::vector<Fq::Elem> r((f.size() - 1) * step + 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i) r[i * step] = f[i];
    return r;
  }
  static std::uint32_t q(const PolyRing<Fq>& P) { return P.base().order(); }
};

// K{tau} with tau c = c^q tau. Elements: coefficients c_0..c_d, c_d != 0.
template <class K>
class SkewRing {
 public:
  using Coef = typename K::Elem;
  using Elem = std::vector<Coef>;

  SkewRing() = default;
  explicit SkewRing(K base) : K_(std::move(base)) {}

  const K& base() const { return K_; }
  std::uint32_t q() const { return Twist<K>::q(K_); }
  Coef twist(const Coef& c, long j) const { return Twist<K>::apply(K_, c, j); }

  void normalize(Elem& a) const {
    while (!a.empty() && K_.is_zero(a.back())) a.pop_back();
  }
  Elem from_coeffs(Elem a) const {
    normalize(a);
    return a;
  }
  Elem zero() const { return {}; }
  Elem one() const { return {K_.one()}; }
  Elem from_int(std::int64_t n) const { return constant(K_.from_int(n)); }
  Elem constant(const Coef& c) const { return K_.is_zero(c) ? Elem{} : Elem{c}; }
  Elem tau_pow(std::size_t k) const { return monomial(K_.one(), k); }
  Elem monomial(const Coef& c, std::size_t k) const {
    if (K_.is_zero(c)) return {};
    Elem a(k + 1, K_.zero());
    a[k] = c;
    return a;
  }
  int degree(const Elem& a) const { return static_cast<int>(a.size()) - 1; }
  bool is_zero(const Elem& a) const { return a.empty(); }
  bool equal(const Elem& a, const Elem& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!K_.equal(a[i], b[i])) return false;
    return true;
  }
  Coef lead(const Elem& a) const { return a.empty() ? K_.zero() : a.back(); }
  Coef coeff(const Elem& a, std::size_t i) const { return i < a.size() ? a[i] : K_.zero(); }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), K_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = K_.add(coeff(a, i), coeff(b, i));
    normalize(r);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), K_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = K_.sub(coeff(a, i), coeff(b, i));
    normalize(r);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(a.size(), K_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = K_.neg(a[i]);
    return r;
  }
  // Left scalar multiplication c * a.
  Elem scale(const Coef& c, const Elem& a) const {
    Elem r(a.size(), K_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = K_.mul(c, a[i]);
    normalize(r);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.empty() || b.empty()) return {};
    Elem r(a.size() + b.size() - 1, K_.zero());
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (K_.is_zero(b[j])) continue;
      Coef t = b[j];
      for (std::size_t i = 0; i < a.size(); ++i) {
        // tau^i b_j = b_j^{q^i} tau^i
        if (!K_.is_zero(a[i])) r[i + j] = K_.add(r[i + j], K_.mul(a[i], t));
        t = twist(t, 1);
      }
    }
    normalize(r);
    return r;
  }
  Elem pow(const Elem& a, std::uint64_t n) const {
    Elem out = one(), base = a;
    while (n) {
      if (n & 1) out = mul(out, base);
      n >>= 1;
      if (n) base = mul(base, base);
    }
    return out;
  }

  // a = quotient * b + remainder, deg remainder < deg b.
  std::pair<Elem, Elem> right_divmod(const Elem& a, const Elem& b) const {
    if (b.empty()) throw std::domain_error("right_divmod: division by zero");
    Elem r = a;
    Elem qt;
    const int db = degree(b);
    while (degree(r) >= db) {
      int d = degree(r) - db;
      Coef c = K_.mul(r.back(), K_.inv(twist(b.back(), d)));
      Elem term = monomial(c, static_cast<std::size_t>(d));
      qt = add(qt, term);
      r = sub(r, mul(term, b));
    }
    return {qt, r};
  }

  // Sum c_i x^{q^i} for x in the coefficient field itself.
  Coef eval(const Elem& a, const Coef& x) const {
    Coef acc = K_.zero();
    Coef xi = x;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!K_.is_zero(a[i])) acc = K_.add(acc, K_.mul(a[i], xi));
      if (i + 1 < a.size()) xi = twist(xi, 1);
    }
    return acc;
  }

  std::string to_string(const Elem& a, const std::string& var = "tau") const {
    if (a.empty()) return "0";
    std::string out;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (K_.is_zero(a[i])) continue;
      std::string c = K_.to_string(a[i]);
      if (c.find_first_of("+ ") != std::string::npos) c = "(" + c + ")";
      std::string term;
      if (i == 0)
        term = c;
      else
        term = (K_.equal(a[i], K_.one()) ? "" : c + "*") + var + (i > 1 ? "^" + std::to_string(i) : "");
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out;
  }

 private:
  K K_;
};

using SkewExt = SkewRing<ExtField>;

// Coefficient-wise image under an embedding kappa -> L.
SkewExt::Elem map_skew(const Embedding& e, const SkewExt::Elem& a);
// Coefficient-wise preimage; throws if a coefficient is outside the image.
SkewExt::Elem pull_back_skew(const Embedding& e, const SkewExt::Elem& a);

// Sum c_i x^{q^i} with c_i in kappa mapped into L through e, x in L.
ExtField::Elem eval_additive(const Embedding& e, const SkewExt::Elem& a, const ExtField::Elem& x);

// F_q-basis of {x in L : a(x) = 0}, a over L.
std::vector<ExtField::Elem> kernel_basis(const SkewExt& S, const SkewExt::Elem& a);

// Monic f of tau-degree dim span(W) with kernel exactly span(W). Throws
// std::invalid_argument("dependent input") if W is F_q-dependent.
SkewExt::Elem annihilator_of_subspace(const SkewExt& S, const std::vector<ExtField::Elem>& W);

// F_q-rank of a family of elements of L.
std::size_t fq_rank(const ExtField& L, const std::vector<ExtField::Elem>& W);
// F_q-basis extracted greedily (order preserved).
std::vector<ExtField::Elem> fq_basis(const ExtField& L, const std::vector<ExtField::Elem>& W);

}  // namespace adelic
