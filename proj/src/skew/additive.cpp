#include "adelic/core/matrix.hpp"
#include "adelic/skew/skew_poly.hpp"

namespace adelic {

SkewExt::Elem map_skew(const Embedding& e, const SkewExt::Elem& a) {
  SkewExt::Elem out;
  out.reserve(a.size());
  for (const auto& c : a) out.push_back(e.apply(c));
  return out;
}

SkewExt::Elem pull_back_skew(const Embedding& e, const SkewExt::Elem& a) {
  SkewExt::Elem out;
  out.reserve(a.size());
  for (const auto& c : a) {
    auto pre = e.preimage(c);
    if (!pre) throw InvariantViolation("coefficient outside the embedded subfield");
    out.push_back(*pre);
  }
  return out;
}

ExtField::Elem eval_additive(const Embedding& e, const SkewExt::Elem& a, const ExtField::Elem& x) {
  const ExtField& L = e.dst();
  ExtField::Elem acc = L.zero();
  ExtField::Elem xi = x;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!e.src().is_zero(a[i])) acc = L.add(acc, L.mul(e.apply(a[i]), xi));
    if (i + 1 < a.size()) xi = L.frob(xi);
  }
  return acc;
}

std::vector<ExtField::Elem> kernel_basis(const SkewExt& S, const SkewExt::Elem& a) {
  if (a.empty()) throw std::invalid_argument("kernel_basis: zero polynomial");
  const ExtField& L = S.base();
  const unsigned N = L.degree();
  Matrix<Fq::Elem> M(N, N, 0);
  for (unsigned j = 0; j < N; ++j) {
    ExtField::Elem x = L.zero();
    x[j] = 1;
    auto y = S.eval(a, x);
    for (unsigned i = 0; i < N; ++i) M(i, j) = y[i];
  }
  return nullspace(L.base(), M);
}

SkewExt::Elem annihilator_of_subspace(const SkewExt& S, const std::vector<ExtField::Elem>& W) {
  const ExtField& L = S.base();
  SkewExt::Elem f = S.one();
  std::uint32_t q = S.q();
  for (const auto& w : W) {
    auto v = S.eval(f, w);
    if (L.is_zero(v)) throw std::invalid_argument("annihilator_of_subspace: dependent input");
    auto c = L.pow(v, std::uint64_t(q - 1));
    SkewExt::Elem factor{L.neg(c), L.one()};
    f = S.mul(factor, f);
  }
  return f;
}

std::vector<ExtField::Elem> fq_basis(const ExtField& L, const std::vector<ExtField::Elem>& W) {
  const unsigned N = L.degree();
  const Fq& K = L.base();
  std::vector<ExtField::Elem> out;
  // incremental echelon form
  std::vector<ExtField::Elem> rows;
  std::vector<unsigned> piv;
  for (const auto& w : W) {
    ExtField::Elem v = w;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (v[piv[r]]) {
        auto c = v[piv[r]];
        for (unsigned i = 0; i < N; ++i) v[i] = K.sub(v[i], K.mul(c, rows[r][i]));
      }
    }
    unsigned p = N;
    for (unsigned i = 0; i < N; ++i)
      if (v[i]) {
        p = i;
        break;
      }
    if (p == N) continue;
    auto inv = K.inv(v[p]);
    for (unsigned i = 0; i < N; ++i) v[i] = K.mul(inv, v[i]);
    rows.push_back(v);
    piv.push_back(p);
    out.push_back(w);
  }
  return out;
}

std::size_t fq_rank(const ExtField& L, const std::vector<ExtField::Elem>& W) { return fq_basis(L, W).size(); }

}  // namespace adelic
