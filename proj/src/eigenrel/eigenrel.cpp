#include "adelic/eigenrel/eigenrel.hpp"

#include <numeric>

#include "adelic/core/factor.hpp"

namespace adelic {

namespace {

// Calls fn on every ordered k-tuple of distinct indices in [0, n).
template <class Fn>
void for_each_arrangement(int n, int k, Fn&& fn) {
  std::vector<int> idx;
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(idx.size()) == k) {
      fn(idx);
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      idx.push_back(i);
      self(self);
      idx.pop_back();
      used[i] = false;
    }
  };
  rec(rec);
}

}  // namespace

EigenRelReport f_value(const ExtField& F, const std::vector<ExtField::Elem>& cp) {
  const int n = static_cast<int>(cp.size()) - 1;
  if (n < 2) throw std::invalid_argument("f_value: degree must be >= 2");
  if (!F.is_one(cp.back())) throw std::invalid_argument("f_value: polynomial must be monic");
  if (F.is_zero(cp[0])) throw std::invalid_argument("f_value: zero constant term");
  PolyRing<ExtField> P(F);
  unsigned l = 1;
  for (auto& [g, e] : factor_unipoly(P, cp)) l = std::lcm(l, static_cast<unsigned>(P.degree(g)));

  EigenRelReport rep;
  rep.split = ExtField::build(F.base().order(), F.degree() * l);
  const ExtField& L = rep.split;
  Embedding emb(F, L);
  PolyRing<ExtField>::Elem cpl;
  for (auto& c : cp) cpl.push_back(emb.apply(c));
  rep.roots = roots_with_multiplicity(PolyRing<ExtField>(L), cpl);
  if (static_cast<int>(rep.roots.size()) != n) throw InvariantViolation("f_value: polynomial did not split");
  const auto& a = rep.roots;

  ExtField::Elem v = L.one();
  auto take = [&](const ExtField::Elem& factor, bool& flag) {
    if (L.is_zero(factor)) flag = true;
    v = L.mul(v, factor);
  };
  for_each_arrangement(n, 2, [&](const std::vector<int>& i) { take(L.sub(a[i[0]], a[i[1]]), rep.flag_a); });
  for_each_arrangement(n, 3, [&](const std::vector<int>& i) {
    take(L.sub(L.mul(a[i[0]], a[i[1]]), L.mul(a[i[2]], a[i[2]])), rep.flag_b);
  });
  for_each_arrangement(n, 4, [&](const std::vector<int>& i) {
    take(L.sub(L.mul(a[i[0]], a[i[1]]), L.mul(a[i[2]], a[i[3]])), rep.flag_c);
  });
  for_each_arrangement(n, 6, [&](const std::vector<int>& i) {
    take(L.sub(L.mul(L.mul(a[i[0]], a[i[1]]), a[i[2]]), L.mul(L.mul(a[i[3]], a[i[4]]), a[i[5]])), rep.flag_d);
  });
  rep.value_split = v;
  rep.value = emb.preimage(v);
  if (!rep.value) throw InvariantViolation("f_value: symmetric product outside the base field");
  return rep;
}

namespace {

using Mono = std::vector<int>;
using MPoly = std::map<Mono, Int>;

MPoly mp_mul(const MPoly& x, const MPoly& y) {
  MPoly out;
  for (auto& [mx, cx] : x)
    for (auto& [my, cy] : y) {
      Mono m(mx.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = mx[i] + my[i];
      auto& c = out[m];
      c += cx * cy;
      if (c == 0) out.erase(m);
    }
  return out;
}

void mp_axpy(MPoly& x, const Int& c, const MPoly& y) {
  for (auto& [m, cy] : y) {
    auto& t = x[m];
    t += c * cy;
    if (t == 0) x.erase(m);
  }
}

MPoly mp_var(int n, int i, int e = 1) {
  Mono m(n, 0);
  m[i] = e;
  return {{m, Int(1)}};
}

MPoly mp_const(int n, Int c) { return {{Mono(n, 0), c}}; }

MPoly mp_sub(const MPoly& x, const MPoly& y) {
  MPoly out = x;
  mp_axpy(out, Int(-1), y);
  return out;
}

MPoly mp_pow(const MPoly& x, int e, int n) {
  MPoly out = mp_const(n, 1);
  for (int i = 0; i < e; ++i) out = mp_mul(out, x);
  return out;
}

IntPoly build_symbolic(int n) {
  // product in the roots
  MPoly prod = mp_const(n, 1);
  auto mul_all = [&](int k, auto&& factor) { for_each_arrangement(n, k, [&](const std::vector<int>& i) { prod = mp_mul(prod, factor(i)); }); };
  mul_all(2, [&](const std::vector<int>& i) { return mp_sub(mp_var(n, i[0]), mp_var(n, i[1])); });
  mul_all(3, [&](const std::vector<int>& i) { return mp_sub(mp_mul(mp_var(n, i[0]), mp_var(n, i[1])), mp_var(n, i[2], 2)); });
  mul_all(4, [&](const std::vector<int>& i) {
    return mp_sub(mp_mul(mp_var(n, i[0]), mp_var(n, i[1])), mp_mul(mp_var(n, i[2]), mp_var(n, i[3])));
  });
  // elementary symmetric polynomials e_1..e_n
  std::vector<MPoly> e(n + 1);
  for (int k = 1; k <= n; ++k) {
    e[k] = {};
    for_each_arrangement(n, k, [&](const std::vector<int>& i) {
      if (!std::is_sorted(i.begin(), i.end())) return;
      Mono m(n, 0);
      for (int j : i) m[j] = 1;
      e[k][m] = 1;
    });
  }
  // reduce: leading monomial a_1 >= ... >= a_n becomes prod e_k^{a_k - a_{k+1}}
  IntPoly out;
  out.nvars = n;
  while (!prod.empty()) {
    auto [lead, c] = *prod.rbegin();
    Mono d(n, 0);
    MPoly term = mp_const(n, 1);
    for (int k = 1; k <= n; ++k) {
      d[k - 1] = lead[k - 1] - (k < n ? lead[k] : 0);
      if (d[k - 1] < 0) throw InvariantViolation("symbolic_f: product is not symmetric");
      term = mp_mul(term, mp_pow(e[k], d[k - 1], n));
    }
    mp_axpy(prod, -c, term);
    // e_k = (-1)^k b_k
    int sign_exp = 0;
    for (int k = 1; k <= n; ++k) sign_exp += k * d[k - 1];
    out.terms[d] += sign_exp % 2 ? Int(-c) : c;
  }
  return out;
}

}  // namespace

std::string IntPoly::to_string(const std::string& var) const {
  std::string s;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [m, c] = *it;
    if (c == 0) continue;
    Int a = c < 0 ? Int(-c) : c;
    s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    std::string mono;
    for (int k = 0; k < nvars; ++k) {
      if (!m[k]) continue;
      if (!mono.empty()) mono += "*";
      mono += var + std::to_string(k + 1);
      if (m[k] > 1) mono += "^" + std::to_string(m[k]);
    }
    if (mono.empty())
      s += a.str();
    else
      s += (a == 1 ? "" : a.str() + "*") + mono;
  }
  return s.empty() ? "0" : s;
}

const IntPoly& symbolic_f(int n) {
  static const IntPoly f2 = build_symbolic(2);
  static const IntPoly f3 = build_symbolic(3);
  if (n == 2) return f2;
  if (n == 3) return f3;
  throw std::out_of_range("symbolic_f: n must be 2 or 3");
}

ExtField::Elem eval_symbolic(const ExtField& F, const IntPoly& f, const std::vector<ExtField::Elem>& cp) {
  const int n = f.nvars;
  if (static_cast<int>(cp.size()) != n + 1) throw std::invalid_argument("eval_symbolic: degree mismatch");
  const Int p = F.characteristic();
  ExtField::Elem acc = F.zero();
  for (auto& [m, c] : f.terms) {
    Int r = c % p;
    if (r < 0) r += p;
    ExtField::Elem t = F.from_int(static_cast<std::int64_t>(r));
    for (int k = 1; k <= n; ++k)
      if (m[k - 1]) t = F.mul(t, F.pow(cp[n - k], static_cast<std::uint64_t>(m[k - 1])));
    acc = F.add(acc, t);
  }
  return acc;
}

Matrix<ExtField::Elem> random_matrix(const ExtField& L, int n, Rng& rng) {
  Matrix<ExtField::Elem> g(n, n, L.zero());
  for (auto& x : g.a) x = L.random(rng);
  return g;
}

Matrix<ExtField::Elem> mat_pow(const ExtField& L, Matrix<ExtField::Elem> g, std::uint64_t N) {
  auto out = mat_identity(L, g.rows);
  while (N) {
    if (N & 1) out = mat_mul(L, out, g);
    N >>= 1;
    if (N) g = mat_mul(L, g, g);
  }
  return out;
}

NonvanishingResult nonvanishing_search(const ExtField& L, int n, std::uint64_t N, int budget, std::uint64_t seed,
                                       const MatSampler& sampler) {
  if (N < 1) throw std::invalid_argument("nonvanishing_search: N must be >= 1");
  Rng rng(seed);
  NonvanishingResult res;
  for (int t = 0; t < budget; ++t) {
    auto g = sampler ? sampler(rng) : random_matrix(L, n, rng);
    if (L.is_zero(mat_det(L, g))) continue;
    ++res.tried;
    auto cp = charpoly_mat(L, mat_pow(L, g, N));
    if (!f_value(L, cp).is_zero()) {
      res.witness = g;
      return res;
    }
  }
  return res;
}

}  // namespace adelic
