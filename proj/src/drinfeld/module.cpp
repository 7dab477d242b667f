#include "adelic/drinfeld/module.hpp"

#include "adelic/core/factor.hpp"
#include "adelic/core/matrix.hpp"

namespace adelic {

DrinfeldModule::DrinfeldModule(ExtField kappa, SkewExt::Elem phiT, std::string name)
    : kappa_(std::move(kappa)), S_(kappa_), phiT_(S_.from_coeffs(std::move(phiT))), name_(std::move(name)) {
  if (phiT_.size() < 2) throw std::invalid_argument("DrinfeldModule: phi_T must have tau-degree >= 1");
  for (const auto& c : phiT_)
    if (c.size() != kappa_.degree()) throw FieldMismatch("phi_T coefficient not in the base field");
  p0_ = PrimeOfA{min_poly_over_base(kappa_, phiT_[0])};
}

APoly min_poly_over_base(const ExtField& K, const ExtField::Elem& a) {
  const Fq& k = K.base();
  const unsigned N = K.degree();
  std::vector<ExtField::Elem> pw{K.one()};
  for (unsigned d = 1; d <= N; ++d) {
    pw.push_back(K.mul(pw.back(), a));
    Matrix<Fq::Elem> M(N, d, 0);
    for (unsigned j = 0; j < d; ++j)
      for (unsigned i = 0; i < N; ++i) M(i, j) = pw[j][i];
    auto c = mat_solve(k, M, pw[d]);
    if (c) {
      APoly f(d + 1);
      for (unsigned i = 0; i < d; ++i) f[i] = k.neg((*c)[i]);
      f[d] = 1;
      return f;
    }
  }
  throw InvariantViolation("minimal polynomial degree exceeds field degree");
}

SkewExt::Elem phi_of(const DrinfeldModule& phi, const APoly& a) {
  const SkewExt& S = phi.skew();
  const ExtField& K = phi.kappa();
  SkewExt::Elem acc;
  for (std::size_t i = a.size(); i-- > 0;) acc = S.add(S.mul(acc, phi.phiT()), S.constant(K.from_base(a[i])));
  return acc;
}

SkewRing<PolyRing<Fq>>::Elem phi_of(const DrinfeldFamily& fam, const APoly& a) {
  PolyRing<Fq> Ps(fam.k, "s");
  SkewRing<PolyRing<Fq>> S(Ps);
  auto phiT = S.from_coeffs(fam.phiT);
  SkewRing<PolyRing<Fq>>::Elem acc;
  for (std::size_t i = a.size(); i-- > 0;) acc = S.add(S.mul(acc, phiT), S.constant(Ps.constant(a[i])));
  return acc;
}

namespace {

void check_family(const DrinfeldFamily& fam) {
  if (fam.phiT.size() < 2) throw std::invalid_argument("family: phi_T must have tau-degree >= 1");
  if (fam.phiT[0].size() > 1) throw std::invalid_argument("family: constant coefficient must be constant in s");
}

}  // namespace

SpecializeResult specialize(const DrinfeldFamily& fam, const APoly& place) {
  check_family(fam);
  PolyRing<Fq> Ps(fam.k, "s");
  SpecializeResult out;
  out.place = Ps.to_string(place);
  ExtField K(fam.k, place, "s");
  SkewExt::Elem c;
  for (const auto& f : fam.phiT) c.push_back(K.from_poly(f));
  if (K.is_zero(c.back())) {
    out.bad_reduction = true;
    return out;
  }
  out.module = DrinfeldModule(K, c, fam.name + "@" + out.place);
  return out;
}

SpecializeResult specialize(const DrinfeldFamily& fam, const ExtField& K, const ExtField::Elem& alpha) {
  check_family(fam);
  if (!(K.base() == fam.k)) throw FieldMismatch("specialization field is not an extension of the family's F_q");
  SpecializeResult out;
  out.place = K.to_string(alpha);
  PolyRing<ExtField> PK(K);
  SkewExt::Elem c;
  for (const auto& f : fam.phiT) {
    PolyRing<ExtField>::Elem g;
    for (auto x : f) g.push_back(K.from_base(x));
    c.push_back(PK.eval(g, alpha));
  }
  if (K.is_zero(c.back())) {
    out.bad_reduction = true;
    return out;
  }
  out.module = DrinfeldModule(K, c, fam.name + "@" + out.place);
  return out;
}

std::vector<SkewExt::Elem> endomorphisms_up_to(const DrinfeldModule& phi, int D) {
  if (D < 0) throw std::invalid_argument("endomorphisms_up_to: D must be >= 0");
  const SkewExt& S = phi.skew();
  const ExtField& K = phi.kappa();
  const unsigned m = K.degree();
  const int r = phi.rank();
  const std::size_t rows = static_cast<std::size_t>(D + r + 1) * m;
  const std::size_t cols = static_cast<std::size_t>(D + 1) * m;
  Matrix<Fq::Elem> M(rows, cols, 0);
  for (int k = 0; k <= D; ++k)
    for (unsigned t = 0; t < m; ++t) {
      ExtField::Elem e = K.zero();
      e[t] = 1;
      auto u = S.monomial(e, k);
      auto c = S.sub(S.mul(u, phi.phiT()), S.mul(phi.phiT(), u));
      for (std::size_t l = 0; l < c.size(); ++l)
        for (unsigned i = 0; i < m; ++i) M(l * m + i, k * m + t) = c[l][i];
    }
  std::vector<SkewExt::Elem> out;
  for (auto& v : nullspace(K.base(), M)) {
    SkewExt::Elem u(D + 1, K.zero());
    for (int k = 0; k <= D; ++k)
      for (unsigned t = 0; t < m; ++t) u[k][t] = v[k * m + t];
    out.push_back(S.from_coeffs(u));
  }
  return out;
}

FrobeniusElement frobenius_as_element(const DrinfeldModule& phi) {
  if (phi.rank() != 1) throw std::invalid_argument("frobenius_as_element: rank 1 only");
  const ExtField& K = phi.kappa();
  const SkewExt& S = phi.skew();
  const unsigned m = K.degree();
  const Fq& k = K.base();
  Matrix<Fq::Elem> M((m + 1) * m, m + 1, 0);
  SkewExt::Elem pw = S.one();
  for (unsigned e = 0; e <= m; ++e) {
    for (std::size_t l = 0; l < pw.size(); ++l)
      for (unsigned i = 0; i < m; ++i) M(l * m + i, e) = pw[l][i];
    pw = S.mul(pw, phi.phiT());
  }
  std::vector<Fq::Elem> rhs((m + 1) * m, 0);
  rhs[m * m] = 1;
  auto sol = mat_solve(k, M, rhs);
  if (!sol) throw InvariantViolation("no a in A with phi_a = tau^m");
  PolyRing<Fq> A(k);
  FrobeniusElement out;
  out.a = A.from_coeffs(*sol);
  auto fac = factor_unipoly(A, out.a);
  if (fac.size() != 1 || fac[0].first != phi.p0().pi) throw InvariantViolation("Frobenius element is not a power of p0");
  out.pi0 = phi.p0();
  out.exponent = fac[0].second;
  if (out.exponent * phi.p0().deg() != static_cast<int>(m)) throw InvariantViolation("Frobenius element has the wrong degree");
  return out;
}

IsogenyResult isogeny_from_endomorphisms(const DrinfeldModule& phi, const std::vector<SkewExt::Elem>& Sgens, const APoly& a) {
  const SkewExt& S = phi.skew();
  const ExtField& K = phi.kappa();
  for (const auto& s : Sgens)
    if (!S.equal(S.mul(s, phi.phiT()), S.mul(phi.phiT(), s))) throw std::invalid_argument("isogeny: element does not commute with phi_T");
  PolyRing<Fq> A(K.base());
  if (A.is_zero(a)) throw std::invalid_argument("isogeny: a must be nonzero");
  if (A.divides(phi.p0().pi, a)) throw std::invalid_argument("isogeny: inseparable kernel (p0 divides a)");
  auto Pa = phi_of(phi, a);
  unsigned cap = 240 / K.degree();
  unsigned j = frobenius_order_mod(phi, Pa, cap);
  if (!j) throw ExtensionCapExceeded("isogeny kernel field");
  auto L = ExtField::build(K.base().order(), K.degree() * j);
  Embedding emb(K, L);
  SkewExt SL(L);
  auto ker = kernel_basis(SL, map_skew(emb, Pa));
  if (ker.size() != static_cast<std::size_t>(phi.rank() * A.degree(a))) throw InvariantViolation("kernel of phi_a has the wrong dimension");
  std::vector<ExtField::Elem> H;
  for (const auto& s : Sgens)
    for (const auto& x : ker) H.push_back(eval_additive(emb, s, x));
  H = fq_basis(L, H);
  // A-stable by construction; close anyway
  for (;;) {
    auto ext = H;
    for (const auto& h : H) ext.push_back(act(phi, emb, A.x(), h));
    ext = fq_basis(L, ext);
    if (ext.size() == H.size()) break;
    H = ext;
  }
  auto fL = annihilator_of_subspace(SL, H);
  auto f = pull_back_skew(emb, fL);
  auto [phiT2, rem] = S.right_divmod(S.mul(f, phi.phiT()), f);
  if (!rem.empty()) throw InvariantViolation("f phi_T is not right divisible by f");
  DrinfeldModule target(K, phiT2, phi.name() + "'");
  for (const APoly& b : {A.x(), a, A.from_coeffs({1, 1, 1})}) {
    if (!S.equal(S.mul(f, phi_of(phi, b)), S.mul(phi_of(target, b), f))) throw InvariantViolation("isogeny relation fails");
  }
  return {f, target, H.size()};
}

IsogenyResult isogeny_from_endomorphism(const DrinfeldModule& phi, const SkewExt::Elem& s, const APoly& a) {
  return isogeny_from_endomorphisms(phi, {s}, a);
}

ExtField::Elem act(const DrinfeldModule& phi, const Embedding& emb, const APoly& a, const ExtField::Elem& x) {
  return eval_additive(emb, phi_of(phi, a), x);
}

}  // namespace adelic
