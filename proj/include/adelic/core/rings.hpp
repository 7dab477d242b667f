#pragma once

#include <string>
#include <vector>

#include "adelic/core/fq.hpp"
#include "adelic/core/poly.hpp"

namespace adelic {

// F[T]/(m) for a monic m over a field F; covers A/p^i.
template <FieldContext F>
class PolyQuotRing {
 public:
  using Poly = typename PolyRing<F>::Elem;
  using Elem = Poly;

  PolyQuotRing() = default;
  PolyQuotRing(PolyRing<F> P, Poly modulus) : P_(std::move(P)), m_(std::move(modulus)) {
    if (P_.degree(m_) < 1 || !P_.is_monic(m_)) throw std::invalid_argument("PolyQuotRing: modulus must be monic of positive degree");
  }

  const PolyRing<F>& poly_ring() const { return P_; }
  const Poly& modulus() const { return m_; }
  Elem reduce(const Poly& f) const { return P_.rem(f, m_); }

  Elem zero() const { return {}; }
  Elem one() const { return P_.one(); }
  Elem from_int(std::int64_t n) const { return P_.from_int(n); }
  bool is_zero(const Elem& a) const { return a.empty(); }
  bool equal(const Elem& a, const Elem& b) const { return P_.equal(a, b); }
  Elem add(const Elem& a, const Elem& b) const { return P_.add(a, b); }
  Elem sub(const Elem& a, const Elem& b) const { return P_.sub(a, b); }
  Elem neg(const Elem& a) const { return P_.neg(a); }
  Elem mul(const Elem& a, const Elem& b) const { return P_.rem(P_.mul(a, b), m_); }
  bool is_unit(const Elem& a) const { return !a.empty() && P_.degree(P_.gcd(a, m_)) == 0; }
  Elem inv(const Elem& a) const { return P_.inv_mod(a, m_); }
  std::string to_string(const Elem& a) const { return P_.to_string(a); }

 private:
  PolyRing<F> P_;
  Poly m_;
};

// k[u]/(u^m): a truncated discrete valuation ring of equal characteristic.
template <FieldContext F>
class TruncRing {
 public:
  using Coef = typename F::Elem;
  using Elem = std::vector<Coef>;

  TruncRing() = default;
  TruncRing(F k, unsigned m) : k_(std::move(k)), m_(m) {
    if (m < 1) throw std::invalid_argument("TruncRing: length must be >= 1");
  }

  const F& residue_field() const { return k_; }
  unsigned length() const { return m_; }

  Elem zero() const { return Elem(m_, k_.zero()); }
  Elem one() const { return constant(k_.one()); }
  Elem uniformizer() const {
    Elem e = zero();
    if (m_ > 1) e[1] = k_.one();
    return e;
  }
  Elem constant(const Coef& c) const {
    Elem e = zero();
    e[0] = c;
    return e;
  }
  Elem from_int(std::int64_t n) const { return constant(k_.from_int(n)); }
  Elem from_coeffs(std::vector<Coef> c) const {
    c.resize(m_, k_.zero());
    return c;
  }
  bool is_zero(const Elem& a) const {
    for (const auto& c : a)
      if (!k_.is_zero(c)) return false;
    return true;
  }
  bool equal(const Elem& a, const Elem& b) const {
    for (unsigned i = 0; i < m_; ++i)
      if (!k_.equal(a[i], b[i])) return false;
    return true;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = k_.add(a[i], b[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = k_.sub(a[i], b[i]);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(m_);
    for (unsigned i = 0; i < m_; ++i) r[i] = k_.neg(a[i]);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (unsigned i = 0; i < m_; ++i) {
      if (k_.is_zero(a[i])) continue;
      for (unsigned j = 0; i + j < m_; ++j) r[i + j] = k_.add(r[i + j], k_.mul(a[i], b[j]));
    }
    return r;
  }
  bool is_unit(const Elem& a) const { return !k_.is_zero(a[0]); }
  Elem inv(const Elem& a) const {
    if (!is_unit(a)) throw std::domain_error("TruncRing: inverse of non-unit");
    Coef c0 = k_.inv(a[0]);
    Elem r = zero();
    r[0] = c0;
    for (unsigned n = 1; n < m_; ++n) {
      Coef s = k_.zero();
      for (unsigned i = 1; i <= n; ++i) s = k_.add(s, k_.mul(a[i], r[n - i]));
      r[n] = k_.neg(k_.mul(c0, s));
    }
    return r;
  }
  // Index of the first nonzero coefficient; m for zero.
  unsigned valuation(const Elem& a) const {
    for (unsigned i = 0; i < m_; ++i)
      if (!k_.is_zero(a[i])) return i;
    return m_;
  }
  std::string to_string(const Elem& a) const {
    std::string out;
    for (unsigned i = 0; i < m_; ++i) {
      if (k_.is_zero(a[i])) continue;
      std::string c = k_.to_string(a[i]);
      if (c.find_first_of("+ ") != std::string::npos) c = "(" + c + ")";
      std::string term = i == 0 ? c : (k_.equal(a[i], k_.one()) ? "" : c + "*") + (i == 1 ? std::string("u") : "u^" + std::to_string(i));
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out.empty() ? "0" : out;
  }

 private:
  F k_;
  unsigned m_ = 1;
};

// Rational functions over F_q: num/den with den monic and gcd 1.
struct RatFunc {
  std::vector<Fq::Elem> num;
  std::vector<Fq::Elem> den;
};

class RatFuncField {
 public:
  using Poly = std::vector<Fq::Elem>;
  using Elem = RatFunc;

  RatFuncField() = default;
  explicit RatFuncField(Fq k, std::string var = "T") : P_(std::move(k), std::move(var)) {}

  const PolyRing<Fq>& poly_ring() const { return P_; }
  Elem make(Poly num, Poly den) const;
  Elem from_poly(Poly f) const { return {P_.from_coeffs(std::move(f)), P_.one()}; }

  Elem zero() const { return {{}, P_.one()}; }
  Elem one() const { return {P_.one(), P_.one()}; }
  Elem from_int(std::int64_t n) const { return {P_.from_int(n), P_.one()}; }
  bool is_zero(const Elem& a) const { return a.num.empty(); }
  bool equal(const Elem& a, const Elem& b) const { return a.num == b.num && a.den == b.den; }
  bool is_unit(const Elem& a) const { return !a.num.empty(); }
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  Elem neg(const Elem& a) const { return {P_.neg(a.num), a.den}; }
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  bool is_polynomial(const Elem& a) const { return a.den.size() == 1; }

  // v_pi; throws on zero.
  int valuation(const Elem& a, const Poly& pi) const;
  // v_infinity with v(T) = -1.
  int valuation_inf(const Elem& a) const;
  std::string to_string(const Elem& a) const;

 private:
  PolyRing<Fq> P_;
};

// Multiplicity of pi in f (f nonzero).
int poly_valuation(const PolyRing<Fq>& P, std::vector<Fq::Elem> f, const std::vector<Fq::Elem>& pi);

}  // namespace adelic
