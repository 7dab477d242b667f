#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "adelic/core/ring.hpp"

namespace adelic {

// Univariate polynomials over a ring context R. Coefficients low to high, no
// trailing zeros; the zero polynomial is the empty vector.
template <RingContext R>
class PolyRing {
 public:
  using Coef = typename R::Elem;
  using Elem = std::vector<Coef>;

  PolyRing() = default;
  explicit PolyRing(R base, std::string var = "T") : base_(std::move(base)), var_(std::move(var)) {}

  const R& base() const { return base_; }
  const std::string& var() const { return var_; }

  Elem zero() const { return {}; }
  Elem one() const { return {base_.one()}; }
  Elem x() const { return {base_.zero(), base_.one()}; }
  Elem constant(const Coef& c) const { return base_.is_zero(c) ? Elem{} : Elem{c}; }
  Elem monomial(const Coef& c, std::size_t k) const {
    if (base_.is_zero(c)) return {};
    Elem f(k + 1, base_.zero());
    f[k] = c;
    return f;
  }
  Elem from_int(std::int64_t n) const { return constant(base_.from_int(n)); }
  Elem from_coeffs(Elem c) const {
    normalize(c);
    return c;
  }

  void normalize(Elem& f) const {
    while (!f.empty() && base_.is_zero(f.back())) f.pop_back();
  }
  int degree(const Elem& f) const { return static_cast<int>(f.size()) - 1; }
  bool is_zero(const Elem& f) const { return f.empty(); }
  bool equal(const Elem& a, const Elem& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!base_.equal(a[i], b[i])) return false;
    return true;
  }
  Coef lead(const Elem& f) const { return f.empty() ? base_.zero() : f.back(); }
  Coef coeff(const Elem& f, std::size_t i) const { return i < f.size() ? f[i] : base_.zero(); }
  bool is_monic(const Elem& f) const { return !f.empty() && base_.equal(f.back(), base_.one()); }
  bool is_constant(const Elem& f) const { return f.size() <= 1; }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), base_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.size() && i < b.size())
        r[i] = base_.add(a[i], b[i]);
      else
        r[i] = i < a.size() ? a[i] : b[i];
    }
    normalize(r);
    return r;
  }
  Elem neg(const Elem& a) const {
    Elem r(a.size(), base_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base_.neg(a[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(std::max(a.size(), b.size()), base_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i < a.size() && i < b.size())
        r[i] = base_.sub(a[i], b[i]);
      else
        r[i] = i < a.size() ? a[i] : base_.neg(b[i]);
    }
    normalize(r);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    if (a.empty() || b.empty()) return {};
    Elem r(a.size() + b.size() - 1, base_.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (base_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = base_.add(r[i + j], base_.mul(a[i], b[j]));
    }
    normalize(r);
    return r;
  }
  Elem scale(const Coef& c, const Elem& f) const {
    Elem r(f.size(), base_.zero());
    for (std::size_t i = 0; i < f.size(); ++i) r[i] = base_.mul(c, f[i]);
    normalize(r);
    return r;
  }
  Elem shift(const Elem& f, std::size_t k) const {
    if (f.empty()) return {};
    Elem r(k, base_.zero());
    r.insert(r.end(), f.begin(), f.end());
    return r;
  }
  Elem truncate(const Elem& f, std::size_t n) const {
    Elem r(f.begin(), f.begin() + std::min(n, f.size()));
    normalize(r);
    return r;
  }
  Elem pow(const Elem& a, std::uint64_t n) const { return ring_pow(*this, a, n); }

  // Division with remainder; the leading coefficient of b must be a unit.
  std::pair<Elem, Elem> divmod(const Elem& a, const Elem& b) const {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Coef li = base_.inv(b.back());
    Elem r = a;
    if (r.size() < b.size()) return {Elem{}, r};
    Elem qt(r.size() - b.size() + 1, base_.zero());
    for (std::size_t k = r.size() - 1;; --k) {
      Coef c = base_.mul(r[k], li);
      std::size_t off = k + 1 - b.size();
      qt[off] = c;
      if (!base_.is_zero(c))
        for (std::size_t j = 0; j < b.size(); ++j) r[off + j] = base_.sub(r[off + j], base_.mul(c, b[j]));
      if (k + 1 == b.size()) break;
    }
    normalize(qt);
    r.resize(b.size() - 1);
    normalize(r);
    return {qt, r};
  }
  Elem rem(const Elem& a, const Elem& b) const {
    if (a.size() < b.size()) return a;
    return divmod(a, b).second;
  }
  Elem quo(const Elem& a, const Elem& b) const { return divmod(a, b).first; }
  bool divides(const Elem& b, const Elem& a) const { return rem(a, b).empty(); }

  Elem monic(const Elem& f) const {
    if (f.empty()) return f;
    return scale(base_.inv(f.back()), f);
  }
  Elem gcd(Elem a, Elem b) const {
    while (!b.empty()) {
      Elem r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // Returns (g, s, t) with s a + t b = g, g monic.
  std::tuple<Elem, Elem, Elem> xgcd(const Elem& a, const Elem& b) const {
    Elem r0 = a, r1 = b, s0 = one(), s1 = {}, t0 = {}, t1 = one();
    while (!r1.empty()) {
      auto [qq, rr] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(rr);
      Elem s2 = sub(s0, mul(qq, s1));
      Elem t2 = sub(t0, mul(qq, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.empty()) return {r0, s0, t0};
    Coef li = base_.inv(r0.back());
    return {scale(li, r0), scale(li, s0), scale(li, t0)};
  }
  // Inverse of a modulo m; throws when not coprime.
  Elem inv_mod(const Elem& a, const Elem& m) const {
    auto [g, s, t] = xgcd(rem(a, m), m);
    if (g.size() != 1) throw std::domain_error("polynomial not invertible modulo m");
    return rem(s, m);
  }
  Elem mulmod(const Elem& a, const Elem& b, const Elem& m) const { return rem(mul(a, b), m); }
  Elem powmod(Elem a, const Int& n, const Elem& m) const {
    Elem out = rem(one(), m);
    a = rem(a, m);
    std::size_t bits = n == 0 ? 0 : msb(n) + 1;
    for (std::size_t i = bits; i-- > 0;) {
      out = mulmod(out, out, m);
      if (bit_test(n, static_cast<unsigned>(i))) out = mulmod(out, a, m);
    }
    return out;
  }

  Coef eval(const Elem& f, const Coef& x) const {
    Coef r = base_.zero();
    for (std::size_t i = f.size(); i-- > 0;) r = base_.add(base_.mul(r, x), f[i]);
    return r;
  }
  Elem derivative(const Elem& f) const {
    if (f.size() <= 1) return {};
    Elem r(f.size() - 1, base_.zero());
    for (std::size_t i = 1; i < f.size(); ++i) r[i - 1] = base_.mul(base_.from_int(static_cast<std::int64_t>(i)), f[i]);
    normalize(r);
    return r;
  }
  // f(g)
  Elem compose(const Elem& f, const Elem& g) const {
    Elem r;
    for (std::size_t i = f.size(); i-- > 0;) r = add(mul(r, g), constant(f[i]));
    return r;
  }
  // f(g) mod m
  Elem compose_mod(const Elem& f, const Elem& g, const Elem& m) const {
    Elem r;
    for (std::size_t i = f.size(); i-- > 0;) r = add(mulmod(r, g, m), constant(f[i]));
    return r;
  }

  std::string to_string(const Elem& f) const { return to_string(f, var_); }
  std::string to_string(const Elem& f, const std::string& var) const {
    if (f.empty()) return "0";
    std::string out;
    for (std::size_t i = f.size(); i-- > 0;) {
      if (base_.is_zero(f[i])) continue;
      std::string c = base_.to_string(f[i]);
      bool one = base_.equal(f[i], base_.one());
      std::string term;
      if (i == 0) {
        term = c;
      } else {
        if (!one) term = wrap(c) + "*";
        term += var;
        if (i > 1) term += "^" + std::to_string(i);
      }
      if (!out.empty()) out += " + ";
      out += term;
    }
    return out;
  }

 private:
  static std::string wrap(const std::string& c) {
    if (c.find_first_of("+ ") != std::string::npos) return "(" + c + ")";
    return c;
  }
  R base_;
  std::string var_ = "T";
};

// Lexicographic order on polynomials: by degree, then coefficient codes from the
// top non-leading coefficient down. Coefficients must be integer-coded.
template <class Vec>
bool poly_less(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace adelic
