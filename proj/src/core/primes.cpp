#include "adelic/core/primes.hpp"

#include <algorithm>

#include "adelic/core/factor.hpp"

namespace adelic {

std::vector<std::vector<Fq::Elem>> monic_irreducibles(const Fq& k, int d) {
  std::vector<std::vector<Fq::Elem>> out;
  if (d < 1) return out;
  PolyRing<Fq> P(k);
  std::uint32_t q = k.order();
  std::vector<Fq::Elem> cand(d + 1, 0);
  cand[d] = 1;
  for (;;) {
    if (d == 1 || (cand[0] != 0 && is_irreducible(P, cand))) out.push_back(cand);
    int i = 0;
    while (i < d) {
      if (++cand[i] < q) break;
      cand[i] = 0;
      ++i;
    }
    if (i == d) break;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a, b); });
  return out;
}

std::vector<PrimeOfA> enumerate_primes(const Fq& k, int bound) {
  std::vector<PrimeOfA> out;
  for (int d = 1; d <= bound; ++d)
    for (auto& f : monic_irreducibles(k, d)) out.push_back({f});
  return out;
}

ExtField residue_field(const Fq& k, const PrimeOfA& p, const std::string& var) {
  return ExtField(k, p.pi, var);
}

ExtField::Elem reduce_mod_prime(const ExtField& kp, const std::vector<Fq::Elem>& a) {
  return kp.from_poly(a);
}

namespace {

std::vector<NewtonSegment> hull(const std::vector<std::pair<int, int>>& pts, int deg) {
  std::vector<NewtonSegment> out;
  if (pts.empty()) return out;
  int i0 = pts.front().first;
  if (i0 > 0) out.push_back({Rational(0), i0, true});
  std::vector<std::pair<int, int>> h;
  for (auto& pt : pts) {
    while (h.size() >= 2) {
      auto [x1, y1] = h[h.size() - 2];
      auto [x2, y2] = h[h.size() - 1];
      // drop middle point if it lies on or above the segment from (x1,y1) to pt
      long long cross = static_cast<long long>(x2 - x1) * (pt.second - y1) - static_cast<long long>(y2 - y1) * (pt.first - x1);
      if (cross <= 0)
        h.pop_back();
      else
        break;
    }
    h.push_back(pt);
  }
  for (std::size_t s = 0; s + 1 < h.size(); ++s) {
    int len = h[s + 1].first - h[s].first;
    out.push_back({Rational(h[s + 1].second - h[s].second, len), len, false});
  }
  (void)deg;
  return out;
}

}  // namespace

std::vector<NewtonSegment> newton_polygon(const RatFuncField& F, const std::vector<RatFunc>& coeffs, const Place& place) {
  std::vector<std::pair<int, int>> pts;
  int deg = -1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (F.is_zero(coeffs[i])) continue;
    int v = place.is_infinite() ? F.valuation_inf(coeffs[i]) : F.valuation(coeffs[i], place.prime->pi);
    pts.push_back({static_cast<int>(i), v});
    deg = static_cast<int>(i);
  }
  if (deg < 0) throw std::invalid_argument("newton_polygon: zero polynomial");
  return hull(pts, deg);
}

std::vector<NewtonSegment> newton_polygon(const PolyRing<Fq>& A, const std::vector<std::vector<Fq::Elem>>& coeffs, const Place& place) {
  RatFuncField F(A.base(), A.var());
  std::vector<RatFunc> c;
  for (auto& a : coeffs) c.push_back(F.from_poly(a));
  return newton_polygon(F, c, place);
}

std::vector<Rational> root_valuations(const std::vector<NewtonSegment>& segs) {
  std::vector<Rational> out;
  for (auto& s : segs) {
    if (s.infinite) continue;
    for (int i = 0; i < s.length; ++i) out.push_back(-s.slope);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace adelic
