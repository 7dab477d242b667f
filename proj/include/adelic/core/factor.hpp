#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "adelic/core/poly.hpp"

namespace adelic {

template <FiniteFieldContext F>
using FactorList = std::vector<std::pair<typename PolyRing<F>::Elem, int>>;

namespace detail {

// x^{|F|} mod f, computed by repeated squaring.
template <FiniteFieldContext F>
typename PolyRing<F>::Elem frob_x(const PolyRing<F>& P, const typename PolyRing<F>::Elem& f) {
  return P.powmod(P.x(), P.base().size(), f);
}

template <FiniteFieldContext F>
typename F::Elem pth_root(const F& K, const typename F::Elem& a) {
  Int e = K.size() / K.characteristic();
  return ring_pow(K, a, e);
}

template <FiniteFieldContext F>
void sort_factors(FactorList<F>& out) {
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
}

}  // namespace detail

// Ben-Or irreducibility test.
template <FiniteFieldContext F>
bool is_irreducible(const PolyRing<F>& P, const typename PolyRing<F>::Elem& f0) {
  using Poly = typename PolyRing<F>::Elem;
  int n = P.degree(f0);
  if (n <= 0) return false;
  if (n == 1) return true;
  Poly f = P.monic(f0);
  if (P.base().is_zero(f[0])) return false;
  Poly x = P.x();
  Poly xq = x;
  for (int i = 1; i <= n / 2; ++i) {
    xq = P.powmod(xq, P.base().size(), f);
    Poly g = P.gcd(f, P.sub(xq, x));
    if (P.degree(g) != 0) return false;
  }
  return true;
}

// Square-free decomposition: returns (g_i, i) with f = lc * prod g_i^i, g_i squarefree, pairwise coprime.
template <FiniteFieldContext F>
FactorList<F> squarefree_decomposition(const PolyRing<F>& P, const typename PolyRing<F>::Elem& f0) {
  using Poly = typename PolyRing<F>::Elem;
  const F& K = P.base();
  FactorList<F> out;
  Poly f = P.monic(f0);
  if (P.degree(f) <= 0) return out;
  std::uint32_t p = K.characteristic();
  Poly df = P.derivative(f);
  if (df.empty()) {
    // f = g(x^p)
    Poly g;
    for (std::size_t i = 0; i < f.size(); i += p) g.push_back(detail::pth_root(K, f[i]));
    P.normalize(g);
    for (auto& [h, m] : squarefree_decomposition(P, g)) out.push_back({h, m * static_cast<int>(p)});
    return out;
  }
  Poly c = P.gcd(f, df);
  Poly w = P.quo(f, c);
  int i = 1;
  while (P.degree(w) > 0) {
    Poly y = P.gcd(w, c);
    Poly z = P.quo(w, y);
    if (P.degree(z) > 0) out.push_back({P.monic(z), i});
    ++i;
    w = y;
    c = P.quo(c, y);
  }
  if (P.degree(c) > 0) {
    Poly g;
    for (std::size_t k = 0; k < c.size(); k += p) g.push_back(detail::pth_root(K, c[k]));
    P.normalize(g);
    for (auto& [h, m] : squarefree_decomposition(P, g)) out.push_back({h, m * static_cast<int>(p)});
  }
  return out;
}

// Distinct-degree factorization of a monic squarefree f: (g_d, d).
template <FiniteFieldContext F>
std::vector<std::pair<typename PolyRing<F>::Elem, int>> distinct_degree(const PolyRing<F>& P, typename PolyRing<F>::Elem f) {
  using Poly = typename PolyRing<F>::Elem;
  std::vector<std::pair<Poly, int>> out;
  Poly x = P.x();
  Poly h = x;
  int d = 0;
  while (P.degree(f) >= 2 * (d + 1)) {
    ++d;
    h = P.powmod(h, P.base().size(), f);
    Poly g = P.gcd(f, P.sub(h, x));
    if (P.degree(g) > 0) {
      out.push_back({g, d});
      f = P.quo(f, g);
      h = P.rem(h, f);
    }
  }
  if (P.degree(f) > 0) out.push_back({P.monic(f), P.degree(f)});
  return out;
}

// Cantor-Zassenhaus equal-degree splitting of a monic squarefree product of degree-d irreducibles.
template <FiniteFieldContext F>
std::vector<typename PolyRing<F>::Elem> equal_degree(const PolyRing<F>& P, const typename PolyRing<F>::Elem& f, int d, Rng& rng) {
  using Poly = typename PolyRing<F>::Elem;
  const F& K = P.base();
  int n = P.degree(f);
  if (n <= d) return {f};
  std::vector<Poly> todo{f}, done;
  bool char2 = K.characteristic() == 2;
  Int qd = 1;
  for (int i = 0; i < d; ++i) qd *= K.size();
  Int half = (qd - 1) / 2;
  unsigned trace_len = K.abs_degree() * static_cast<unsigned>(d);
  while (!todo.empty()) {
    Poly g = todo.back();
    todo.pop_back();
    if (P.degree(g) == d) {
      done.push_back(g);
      continue;
    }
    for (;;) {
      Poly h;
      for (int i = 0; i < P.degree(g); ++i) h.push_back(K.random(rng));
      P.normalize(h);
      if (P.degree(h) <= 0) continue;
      Poly t;
      if (char2) {
        Poly s = h;
        t = h;
        for (unsigned i = 1; i < trace_len; ++i) {
          s = P.mulmod(s, s, g);
          t = P.add(t, s);
        }
      } else {
        t = P.sub(P.powmod(h, half, g), P.one());
      }
      Poly u = P.gcd(g, t);
      if (P.degree(u) > 0 && P.degree(u) < P.degree(g)) {
        todo.push_back(u);
        todo.push_back(P.quo(g, u));
        break;
      }
    }
  }
  return done;
}

// Full factorization into monic irreducibles with multiplicity, sorted.
template <FiniteFieldContext F>
FactorList<F> factor_unipoly(const PolyRing<F>& P, const typename PolyRing<F>::Elem& f, std::uint64_t seed = 0) {
  if (f.empty()) throw std::invalid_argument("factor_unipoly: zero polynomial");
  Rng rng(seed);
  FactorList<F> out;
  for (auto& [g, mult] : squarefree_decomposition(P, f))
    for (auto& [h, d] : distinct_degree(P, g))
      for (auto& irr : equal_degree(P, h, d, rng)) out.push_back({P.monic(irr), mult});
  // merge equal factors (possible across p-th power branches)
  detail::sort_factors<F>(out);
  FactorList<F> merged;
  for (auto& e : out) {
    if (!merged.empty() && P.equal(merged.back().first, e.first))
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  return merged;
}

// Roots in F with multiplicity (each listed once per multiplicity), sorted.
template <FiniteFieldContext F>
std::vector<typename F::Elem> roots_with_multiplicity(const PolyRing<F>& P, const typename PolyRing<F>::Elem& f, std::uint64_t seed = 0) {
  std::vector<typename F::Elem> out;
  for (auto& [g, m] : factor_unipoly(P, f, seed)) {
    if (P.degree(g) != 1) continue;
    auto r = P.base().neg(g[0]);
    for (int i = 0; i < m; ++i) out.push_back(r);
  }
  return out;
}

}  // namespace adelic
