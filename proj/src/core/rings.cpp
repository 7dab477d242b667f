#include "adelic/core/rings.hpp"

namespace adelic {

int poly_valuation(const PolyRing<Fq>& P, std::vector<Fq::Elem> f, const std::vector<Fq::Elem>& pi) {
  if (f.empty()) throw std::domain_error("valuation of zero");
  int v = 0;
  for (;;) {
    auto [q, r] = P.divmod(f, pi);
    if (!r.empty()) return v;
    f = std::move(q);
    ++v;
  }
}

RatFunc RatFuncField::make(Poly num, Poly den) const {
  P_.normalize(num);
  P_.normalize(den);
  if (den.empty()) throw std::domain_error("RatFunc: zero denominator");
  if (num.empty()) return zero();
  Poly g = P_.gcd(num, den);
  num = P_.quo(num, g);
  den = P_.quo(den, g);
  auto li = P_.base().inv(den.back());
  return {P_.scale(li, num), P_.scale(li, den)};
}

RatFunc RatFuncField::add(const Elem& a, const Elem& b) const {
  if (a.den == b.den) return make(P_.add(a.num, b.num), a.den);
  return make(P_.add(P_.mul(a.num, b.den), P_.mul(b.num, a.den)), P_.mul(a.den, b.den));
}

RatFunc RatFuncField::mul(const Elem& a, const Elem& b) const {
  return make(P_.mul(a.num, b.num), P_.mul(a.den, b.den));
}

RatFunc RatFuncField::inv(const Elem& a) const {
  if (a.num.empty()) throw std::domain_error("RatFunc: inverse of zero");
  return make(a.den, a.num);
}

int RatFuncField::valuation(const Elem& a, const Poly& pi) const {
  if (a.num.empty()) throw std::domain_error("valuation of zero");
  int v = poly_valuation(P_, a.num, pi);
  if (a.den.size() > 1) v -= poly_valuation(P_, a.den, pi);
  return v;
}

int RatFuncField::valuation_inf(const Elem& a) const {
  if (a.num.empty()) throw std::domain_error("valuation of zero");
  return P_.degree(a.den) - P_.degree(a.num);
}

std::string RatFuncField::to_string(const Elem& a) const {
  std::string n = P_.to_string(a.num);
  if (a.den.size() == 1) return n;
  std::string d = P_.to_string(a.den);
  if (a.num.size() > 1 && n.find(" + ") != std::string::npos) n = "(" + n + ")";
  if (d.find_first_of(" *^") != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace adelic
