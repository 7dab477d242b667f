#include <algorithm>

#include "adelic/core/factor.hpp"
#include "adelic/core/matrix.hpp"
#include "adelic/drinfeld/module.hpp"

namespace adelic {

unsigned frobenius_order_mod(const DrinfeldModule& phi, const SkewExt::Elem& P, unsigned cap) {
  const SkewExt& S = phi.skew();
  const unsigned m = phi.m();
  SkewExt::Elem r = S.one();
  for (unsigned k = 1; k <= cap; ++k) {
    // tau^m c = c tau^m on kappa
    SkewExt::Elem shifted(m, phi.kappa().zero());
    shifted.insert(shifted.end(), r.begin(), r.end());
    r = S.right_divmod(shifted, P).second;
    if (S.equal(r, S.one())) return k;
  }
  return 0;
}

AQuot quotient_ring(const Fq& k, const PrimeOfA& p, int level) {
  PolyRing<Fq> A(k);
  return AQuot(A, A.pow(p.pi, static_cast<std::uint64_t>(level)));
}

TorsionBasis torsion_basis(const DrinfeldModule& phi, const PrimeOfA& p, int level, const TorsionOptions& opt) {
  if (p.pi == phi.p0().pi) throw CharacteristicPrime();
  if (level < 1) throw std::invalid_argument("torsion_basis: level must be >= 1");
  PolyRing<Fq> A(phi.fq());
  const unsigned m = phi.m();
  const int r = phi.rank();
  const int d = p.deg();
  auto P = phi_of(phi, A.pow(p.pi, level));
  unsigned j = frobenius_order_mod(phi, P, std::max(1u, opt.max_ext_degree / m));
  if (!j) throw ExtensionCapExceeded(A.to_string(p.pi) + " level " + std::to_string(level));
  TorsionBasis tb;
  tb.p = p;
  tb.level = level;
  tb.L = ExtField::build(phi.fq().order(), m * j);
  tb.emb = Embedding(phi.kappa(), tb.L);
  SkewExt SL(tb.L);
  auto ker = kernel_basis(SL, map_skew(tb.emb, P));
  if (ker.size() != static_cast<std::size_t>(r * d * level)) throw InvariantViolation("torsion has the wrong F_q-dimension");
  auto lower = A.pow(p.pi, level - 1);
  std::vector<ExtField::Elem> Y;
  for (const auto& x : ker) {
    if (static_cast<int>(tb.basis.size()) == r) break;
    auto y = act(phi, tb.emb, lower, x);
    auto cand = Y;
    ExtField::Elem z = y;
    for (int e = 0; e < d; ++e) {
      cand.push_back(z);
      z = act(phi, tb.emb, A.x(), z);
    }
    cand = fq_basis(tb.L, cand);
    if (cand.size() == Y.size() + d) {
      Y = cand;
      tb.basis.push_back(x);
    }
  }
  if (static_cast<int>(tb.basis.size()) != r) throw InvariantViolation("could not find a torsion module basis");
  return tb;
}

Matrix<APoly> frobenius_matrix_on(const DrinfeldModule& phi, const TorsionBasis& tb) {
  const ExtField& L = tb.L;
  const Fq& k = phi.fq();
  PolyRing<Fq> A(k);
  const int r = phi.rank();
  const int D = tb.p.deg() * tb.level;
  const unsigned N = L.degree();
  Matrix<Fq::Elem> B(N, static_cast<std::size_t>(r) * D, 0);
  for (int kk = 0; kk < r; ++kk) {
    ExtField::Elem v = tb.basis[kk];
    for (int e = 0; e < D; ++e) {
      for (unsigned i = 0; i < N; ++i) B(i, kk * D + e) = v[i];
      v = act(phi, tb.emb, A.x(), v);
    }
  }
  Matrix<APoly> F(r, r, APoly{});
  for (int j = 0; j < r; ++j) {
    auto y = L.frob_pow(tb.basis[j], phi.m());
    auto c = mat_solve(k, B, y);
    if (!c) throw InvariantViolation("Frobenius image outside the torsion span");
    for (int kk = 0; kk < r; ++kk) {
      APoly a(c->begin() + kk * D, c->begin() + (kk + 1) * D);
      F(kk, j) = A.from_coeffs(a);
    }
  }
  return F;
}

Matrix<APoly> frobenius_matrix_mod(const DrinfeldModule& phi, const PrimeOfA& p, int level, const TorsionOptions& opt) {
  return frobenius_matrix_on(phi, torsion_basis(phi, p, level, opt));
}

namespace {

using KT = PolyRing<ExtField>;

KT::Elem twist_poly(const ExtField& K, const KT::Elem& f, long j) {
  KT::Elem g;
  g.reserve(f.size());
  for (const auto& c : f) g.push_back(K.frob_pow(c, j));
  return g;
}

}  // namespace

FrobeniusData charpoly_frobenius(const DrinfeldModule& phi) {
  const ExtField& K = phi.kappa();
  const int r = phi.rank();
  const unsigned m = K.degree();
  KT R(K);
  const auto& g = phi.phiT();
  auto gr_inv = K.inv(g[r]);
  // matrix of left multiplication by tau (semilinear) on the basis 1, tau, ..., tau^{r-1}
  Matrix<KT::Elem> Amat(r, r, KT::Elem{});
  for (int i = 0; i + 1 < r; ++i) Amat(i + 1, i) = R.one();
  Amat(0, r - 1) = R.from_coeffs({K.neg(K.mul(gr_inv, g[0])), gr_inv});
  for (int i = 1; i < r; ++i) Amat(i, r - 1) = R.constant(K.neg(K.mul(gr_inv, g[i])));
  Matrix<KT::Elem> M = Amat;
  for (unsigned j = 1; j < m; ++j) {
    Matrix<KT::Elem> Aj = Amat;
    for (auto& e : Aj.a) e = twist_poly(K, e, j);
    M = mat_mul(R, M, Aj);
  }
  auto cp = charpoly_mat(R, M);
  FrobeniusData fd;
  fd.place = phi.name();
  fd.deg_x = static_cast<int>(m);
  fd.p0 = phi.p0();
  PolyRing<Fq> A(phi.fq());
  for (const auto& c : cp) {
    APoly a;
    for (const auto& x : c) {
      if (!K.in_base(x)) throw InvariantViolation("charpoly coefficient outside F_q[T]");
      a.push_back(x[0]);
    }
    fd.f.push_back(A.from_coeffs(a));
  }
  return fd;
}

TorsionCharpoly charpoly_frobenius_torsion(const DrinfeldModule& phi, const TorsionOptions& opt) {
  const Fq& k = phi.fq();
  PolyRing<Fq> A(k);
  const unsigned m = phi.m();
  const int n = phi.rank();
  const int need = static_cast<int>(m) + 1;
  const unsigned cap_j = std::max(1u, opt.max_ext_degree / m);
  std::vector<CrtModulus> sched;
  int total = 0;
  for (auto& p : enumerate_primes(k, 4)) {
    if (total >= need) break;
    if (p.pi == phi.p0().pi) continue;
    unsigned j = frobenius_order_mod(phi, phi_of(phi, p.pi), cap_j);
    if (!j) continue;
    sched.push_back({p, 1, m * j});
    total += p.deg();
  }
  for (int level = 2; level <= 6 && total < need; ++level) {
    for (auto& cm : sched) {
      if (total >= need) break;
      if (cm.level != level - 1) continue;
      unsigned j = frobenius_order_mod(phi, phi_of(phi, A.pow(cm.p.pi, level)), cap_j);
      if (!j) continue;
      cm.level = level;
      cm.ext_degree = m * j;
      total += cm.p.deg();
    }
  }
  if (total < need) throw ExtensionCapExceeded("not enough primes for CRT reconstruction");

  std::vector<APoly> residue(n + 1);
  APoly modulus = A.one();
  for (auto& cm : sched) {
    auto tb = torsion_basis(phi, cm.p, cm.level, opt);
    auto F = frobenius_matrix_on(phi, tb);
    auto Q = quotient_ring(k, cm.p, cm.level);
    auto cp = charpoly_mat(Q, F);
    const auto& mi = Q.modulus();
    for (int j = 0; j <= n; ++j) {
      APoly aj = j < static_cast<int>(cp.size()) ? cp[j] : APoly{};
      // x = r + M * ((aj - r) * M^{-1} mod mi)
      auto t = A.rem(A.mul(A.sub(aj, A.rem(residue[j], mi)), A.inv_mod(modulus, mi)), mi);
      residue[j] = A.add(residue[j], A.mul(modulus, t));
    }
    modulus = A.mul(modulus, mi);
  }
  for (int j = 0; j <= n; ++j) {
    int bound = (static_cast<int>(m) * (n - j) + n - 1) / n;
    if (A.degree(residue[j]) > bound) throw InvariantViolation("CRT coefficient exceeds the degree bound");
  }
  return {residue, sched};
}

FrobeniusData charpoly_frobenius_checked(const DrinfeldModule& phi, const TorsionOptions& opt) {
  auto fd = charpoly_frobenius(phi);
  auto tc = charpoly_frobenius_torsion(phi, opt);
  if (tc.f != fd.f) throw InvariantViolation("motive and torsion charpolys disagree");
  return fd;
}

NewtonReport newton_check(const FrobeniusData& fd, const Fq& k, const std::vector<PrimeOfA>& aux_primes) {
  NewtonReport rep;
  PolyRing<Fq> A(k);
  const int n = fd.n();
  const int m = fd.deg_x;
  auto fail = [&](const std::string& s) {
    rep.ok = false;
    rep.violations.push_back(s);
  };
  if (n < 1 || fd.f.back() != APoly{1}) {
    fail("not monic of positive degree");
    return rep;
  }
  for (int j = 1; j <= n; ++j) {
    int bound = (j * m + n - 1) / n;
    if (A.degree(fd.f[n - j]) > bound) fail("coefficient of X^" + std::to_string(n - j) + " exceeds degree bound");
  }
  if (fd.f[0].empty()) {
    fail("zero constant term");
    return rep;
  }
  // (a): constant term is a unit away from p0, so all roots are units there
  for (auto& [g, e] : factor_unipoly(A, fd.f[0]))
    if (g != fd.p0.pi) fail("(a) constant term divisible by " + A.to_string(g));
  for (const auto& p : aux_primes) {
    if (p.pi == fd.p0.pi) continue;
    for (auto& v : root_valuations(newton_polygon(A, fd.f, Place::at(p))))
      if (v != Rational(0)) fail("(a) nonzero slope at " + A.to_string(p.pi));
  }
  // (b)
  rep.at_infinity = newton_polygon(A, fd.f, Place::infinity());
  Rational vinf(-m, n);
  for (auto& v : root_valuations(rep.at_infinity))
    if (v != vinf) fail("(b) root valuation at infinity " + rational_to_string(v) + " != " + rational_to_string(vinf));
  // (c)
  rep.at_p0 = newton_polygon(A, fd.f, Place::at(fd.p0));
  auto vals = root_valuations(rep.at_p0);
  int zeros = static_cast<int>(std::count(vals.begin(), vals.end(), Rational(0)));
  rep.n_x = n - zeros;
  if (rep.n_x < 1) {
    fail("(c) no positive valuation at p0");
  } else {
    if (m % fd.p0.deg() != 0) fail("(c) deg p0 does not divide deg x");
    Rational expect(m / fd.p0.deg(), rep.n_x);
    for (auto& v : vals)
      if (v != Rational(0) && v != expect) fail("(c) root valuation at p0 " + rational_to_string(v) + " != " + rational_to_string(expect));
  }
  return rep;
}

std::string frobenius_poly_to_string(const Fq& k, const std::vector<APoly>& f) {
  PolyRing<Fq> A(k, "T");
  std::string out;
  for (std::size_t i = f.size(); i-- > 0;) {
    if (f[i].empty()) continue;
    std::string c = A.to_string(f[i]);
    std::string term;
    if (i == 0) {
      term = c;
    } else {
      if (f[i] != APoly{1}) term = (c.find_first_of("+ ") != std::string::npos ? "(" + c + ")" : c) + "*";
      term += "X";
      if (i > 1) term += "^" + std::to_string(i);
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace adelic
