#include "adelic/surjcert/surjcert.hpp"

#include <algorithm>

#include "adelic/core/factor.hpp"
#include "adelic/core/fp_span.hpp"
#include "adelic/eigenrel/eigenrel.hpp"
#include "json.hpp"

namespace adelic {

namespace {

// Dimension of the F_p-subalgebra generated by gens (with one).
template <class E, class Mul, class Coords>
std::size_t algebra_dim(std::uint32_t p, std::size_t d, const E& one, const std::vector<E>& gens, Mul mul, Coords coords) {
  FpSpan span(p, d);
  std::vector<E> queue{one};
  span.add(coords(one));
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto& g : gens) {
      E y = mul(queue[i], g);
      if (span.add(coords(y))) queue.push_back(std::move(y));
    }
  return span.dim();
}

PrimeOfA characteristic_of(const DrinfeldFamily& fam) {
  Fq::Elem g = fam.phiT[0].empty() ? 0 : fam.phiT[0][0];
  return PrimeOfA{{fam.k.neg(g), fam.k.one()}};
}

}  // namespace

// ---------------------------------------------------------------------------
// sweep and samples

SweepResult collect_frobenius(const DrinfeldFamily& fam, const SweepOptions& opt) {
  SweepResult out;
  for (int d = 1; d <= opt.place_degree_bound; ++d)
    for (auto& P : monic_irreducibles(fam.k, d)) {
      auto sp = specialize(fam, P);
      if (sp.bad_reduction) {
        out.bad_places.push_back(sp.place);
        continue;
      }
      FrobeniusData fd;
      try {
        fd = opt.cross_check ? charpoly_frobenius_checked(*sp.module) : charpoly_frobenius(*sp.module);
      } catch (const InvariantViolation& e) {
        out.anomalies.push_back(sp.place + ": " + e.what());
        continue;
      }
      fd.place = sp.place;
      auto nr = newton_check(fd, fam.k, opt.aux_primes);
      if (!nr.ok)
        for (auto& v : nr.violations) out.anomalies.push_back(sp.place + ": " + v);
      out.data.push_back(std::move(fd));
    }
  return out;
}

bool in_A0(const Fq& k, const RatFunc& x, const PrimeOfA& p0) {
  PolyRing<Fq> A(k);
  auto den = x.den;
  while (A.degree(den) > 0) {
    auto [q, r] = A.divmod(den, p0.pi);
    if (!r.empty()) return false;
    den = q;
  }
  return true;
}

TraceSample trad_of(const Fq& k, const FrobeniusData& fd) {
  const int n = fd.n();
  if (n < 1) throw std::invalid_argument("trad_of: empty charpoly");
  RatFuncField F(k);
  PolyRing<Fq> A(k);
  TraceSample s;
  s.place = fd.place;
  s.deg_x = fd.deg_x;
  s.trad = F.make(A.mul(fd.f[n - 1], fd.f[1]), fd.f[0]);
  if (!in_A0(k, s.trad, fd.p0))
    throw InvariantViolation("trad_of: denominator not a power of p0 at " + fd.place);
  return s;
}

ExtField::Elem reduce_sample(const ExtField& kp, const Fq&, const RatFunc& x) {
  auto den = kp.from_poly(x.den);
  if (kp.is_zero(den)) throw std::domain_error("reduce_sample: denominator vanishes mod p");
  return kp.div(kp.from_poly(x.num), den);
}

bool residual_trace_surjectivity(const Fq& k, const std::vector<TraceSample>& samples, const PrimeOfA& p) {
  auto kp = residue_field(k, p);
  std::vector<ExtField::Elem> imgs;
  for (auto& s : samples) imgs.push_back(reduce_sample(kp, k, s.trad));
  auto dim = algebra_dim(
      k.characteristic(), kp.abs_degree(), kp.one(), imgs, [&](auto& a, auto& b) { return kp.mul(a, b); },
      [&](auto& a) { return kp.fp_coords(a); });
  return dim == kp.abs_degree();
}

bool pairwise_trace_surjectivity(const Fq& k, const std::vector<TraceSample>& samples, const PrimeOfA& p1,
                                 const PrimeOfA& p2) {
  if (p1 == p2) throw std::invalid_argument("pairwise_trace_surjectivity: primes must differ");
  auto k1 = residue_field(k, p1), k2 = residue_field(k, p2);
  using Pair = std::pair<ExtField::Elem, ExtField::Elem>;
  std::vector<Pair> imgs;
  for (auto& s : samples) imgs.emplace_back(reduce_sample(k1, k, s.trad), reduce_sample(k2, k, s.trad));
  auto dim = algebra_dim(
      k.characteristic(), k1.abs_degree() + k2.abs_degree(), Pair{k1.one(), k2.one()}, imgs,
      [&](const Pair& a, const Pair& b) { return Pair{k1.mul(a.first, b.first), k2.mul(a.second, b.second)}; },
      [&](const Pair& a) {
        auto c = k1.fp_coords(a.first);
        auto d = k2.fp_coords(a.second);
        c.insert(c.end(), d.begin(), d.end());
        return c;
      });
  return dim == k1.abs_degree() + k2.abs_degree();
}

// ---------------------------------------------------------------------------
// pi-adic expansion

PiAdicExpansion::PiAdicExpansion(const Fq& k, const PrimeOfA& p, unsigned m) : k_(k), p_(p), m_(m) {
  if (p.deg() < 1) throw std::invalid_argument("PiAdicExpansion: bad prime");
  PolyRing<Fq> A(k);
  pim_ = A.one();
  for (unsigned i = 0; i < m; ++i) pim_ = A.mul(pim_, p.pi);
  std::uint64_t Q = 1;
  for (int i = 0; i < p.deg(); ++i) Q *= k.order();
  if (Q >= (1u << 16)) throw std::invalid_argument("PiAdicExpansion: residue field too large");
  K_ = Fq::get(static_cast<std::uint32_t>(Q));
  R_ = TRing(K_, m);
  // F_q -> K: send the generator of F_q over F_p to a root of its modulus
  Fq::Elem r = 1;
  if (k.degree() > 1) {
    const auto& g = k.modulus();
    bool found = false;
    for (Fq::Elem c = 0; c < Q && !found; ++c) {
      Fq::Elem v = 0, pw = 1;
      for (auto coef : g) {
        v = K_.add(v, K_.mul(K_.from_int(coef), pw));
        pw = K_.mul(pw, c);
      }
      if (v == 0) r = c, found = true;
    }
    if (!found) throw InvariantViolation("PiAdicExpansion: no embedding of F_q");
  }
  iota_.resize(k.order());
  for (Fq::Elem c = 0; c < k.order(); ++c) {
    auto d = k.fp_coords(c);
    Fq::Elem v = 0, pw = 1;
    for (auto di : d) {
      v = K_.add(v, K_.mul(K_.from_int(di), pw));
      pw = K_.mul(pw, r);
    }
    iota_[c] = v;
  }
  bool found = false;
  for (Fq::Elem c = 0; c < Q && !found; ++c) {
    Fq::Elem v = 0, pw = 1;
    for (auto coef : p.pi) {
      v = K_.add(v, K_.mul(iota_[coef], pw));
      pw = K_.mul(pw, c);
    }
    if (v == 0) tau_ = c, found = true;
  }
  if (!found) throw InvariantViolation("PiAdicExpansion: prime has no root in its residue field");
}

Fq::Elem PiAdicExpansion::to_residue(const APoly& a) const {
  Fq::Elem v = 0, pw = 1;
  for (auto c : a) {
    v = K_.add(v, K_.mul(iota_[c], pw));
    pw = K_.mul(pw, tau_);
  }
  return v;
}

APoly PiAdicExpansion::teichmuller(const APoly& y) const {
  PolyRing<Fq> A(k_);
  Int e = K_.size();
  while (e < m_) e *= K_.size();
  return A.powmod(y, e, pim_);
}

TRing::Elem PiAdicExpansion::expand(const APoly& a) const {
  PolyRing<Fq> A(k_);
  auto cur = A.rem(a, pim_);
  TRing::Elem out = R_.zero();
  for (unsigned i = 0; i < m_; ++i) {
    auto r = A.rem(cur, p_.pi);
    out[i] = to_residue(r);
    cur = A.sub(cur, teichmuller(r));
    auto [q, rem] = A.divmod(cur, p_.pi);
    if (!rem.empty()) throw InvariantViolation("PiAdicExpansion: digit not divisible by pi");
    cur = q;
  }
  return out;
}

TRing::Elem PiAdicExpansion::expand(const RatFunc& x) const {
  auto den = expand(x.den);
  if (!R_.is_unit(den)) throw std::domain_error("PiAdicExpansion: denominator vanishes mod p");
  return R_.mul(expand(x.num), R_.inv(den));
}

std::string to_string(DepthMode m) { return m == DepthMode::Full ? "full" : "squares"; }

bool depth2_generation(const Fq& k, const std::vector<TraceSample>& samples, const PrimeOfA& p, DepthMode mode) {
  PiAdicExpansion E(k, p, mode == DepthMode::Full ? 2 : 3);
  std::vector<TRing::Elem> xs;
  for (auto& s : samples) xs.push_back(E.expand(s.trad));
  return mode == DepthMode::Full ? trace_criterion_1(E.ring(), xs) : trace_criterion_2(E.ring(), xs);
}

// ---------------------------------------------------------------------------
// eigenvalue relation witnesses

std::optional<APoly> f_value_in_A(const Fq& k, const FrobeniusData& fd, unsigned c) {
  const int n = fd.n();
  if (n != 2 && n != 3) return std::nullopt;
  PolyRing<Fq> A(k);
  Matrix<APoly> C(n, n, APoly{});
  for (int i = 0; i + 1 < n; ++i) C(i + 1, i) = A.one();
  for (int i = 0; i < n; ++i) C(i, n - 1) = A.neg(fd.f[i]);
  auto M = mat_identity(A, n);
  for (unsigned t = 0; t < c; ++t) M = mat_mul(A, M, C);
  auto cp = charpoly_mat(A, M);
  const auto& f = symbolic_f(n);
  const Int p = k.characteristic();
  APoly acc;
  for (auto& [mono, coef] : f.terms) {
    Int r = coef % p;
    if (r < 0) r += p;
    APoly t = A.constant(k.from_int(static_cast<std::int64_t>(r)));
    for (int j = 1; j <= n; ++j)
      for (int e = 0; e < mono[j - 1]; ++e) t = A.mul(t, cp[n - j]);
    acc = A.add(acc, t);
  }
  return acc;
}

ExtField::Elem f_value_mod_prime(const Fq& k, const FrobeniusData& fd, unsigned c, const PrimeOfA& p) {
  auto kp = residue_field(k, p);
  const int n = fd.n();
  Matrix<ExtField::Elem> C(n, n, kp.zero());
  for (int i = 0; i + 1 < n; ++i) C(i + 1, i) = kp.one();
  for (int i = 0; i < n; ++i) C(i, n - 1) = kp.neg(kp.from_poly(fd.f[i]));
  auto cp = charpoly_mat(kp, mat_pow(kp, C, c));
  return *f_value(kp, cp).value;
}

std::optional<FWitness> f_nonvanishing_scan(const Fq& k, const std::vector<FrobeniusData>& data, unsigned c,
                                            const PrimeOfA& p) {
  auto kp = residue_field(k, p);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& fd = data[i];
    if (fd.n() < 2) continue;
    if (fd.p0 == p) throw CharacteristicPrime();
    FWitness w{i, fd.place, f_value_in_A(k, fd, c)};
    bool nonzero = w.a ? !kp.is_zero(kp.from_poly(*w.a)) : !kp.is_zero(f_value_mod_prime(k, fd, c, p));
    if (nonzero) return w;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// trace field

namespace {

bool poly_is_square(const Fq& k, const APoly& f) {
  if (f.empty()) return true;
  PolyRing<Fq> A(k);
  auto lc = f.back();
  if (k.characteristic() != 2 && !k.is_one(k.pow(lc, static_cast<std::uint64_t>((k.order() - 1) / 2)))) return false;
  for (auto& [g, e] : squarefree_decomposition(A, A.monic(f)))
    if (A.degree(g) > 0 && e % 2) return false;
  return true;
}

}  // namespace

bool is_square(const Fq& k, const RatFunc& x) {
  if (x.num.empty()) return true;
  PolyRing<Fq> A(k);
  return poly_is_square(k, A.mul(x.num, x.den));
}

std::string to_string(TradField t) {
  switch (t) {
    case TradField::F:
      return "F";
    case TradField::FSquared:
      return "F2";
    default:
      return "undetermined";
  }
}

TradField trad_field_detect(const Fq& k, const std::vector<TraceSample>& samples) {
  if (samples.empty()) return TradField::Undetermined;
  for (auto& s : samples)
    if (!is_square(k, s.trad)) return TradField::F;
  return TradField::FSquared;
}

// ---------------------------------------------------------------------------
// certification

std::string to_string(PrimeStatus s) {
  switch (s) {
    case PrimeStatus::Certified:
      return "CERTIFIED";
    case PrimeStatus::Excluded:
      return "EXCLUDED";
    default:
      return "EVIDENCE";
  }
}

std::size_t CertificateReport::certified() const {
  return std::count_if(primes.begin(), primes.end(), [](auto& e) { return e.status == PrimeStatus::Certified; });
}

CertificateReport certify(const DrinfeldFamily& fam, const CertifyOptions& opt) {
  const Fq& k = fam.k;
  PolyRing<Fq> A(k, "T");
  CertificateReport rep;
  rep.family = family_to_string(fam);
  rep.seed = opt.seed;
  rep.place_degree_bound = opt.place_degree_bound;
  rep.prime_degree_bound = opt.prime_degree_bound;
  rep.p0 = characteristic_of(fam);

  std::vector<PrimeOfA> primes;
  if (opt.prime_degree_bound >= 1) primes = enumerate_primes(k, opt.prime_degree_bound);
  std::vector<PrimeOfA> good;
  for (auto& p : primes)
    if (!(p == rep.p0)) good.push_back(p);

  SweepOptions so;
  so.place_degree_bound = opt.place_degree_bound;
  so.cross_check = opt.cross_check;
  so.aux_primes = good;
  auto sweep = collect_frobenius(fam, so);
  rep.places_good = sweep.data.size();
  rep.places_bad = sweep.bad_places.size();
  rep.anomalies = sweep.anomalies;
  rep.newton_ok = sweep.anomalies.empty();

  for (auto& fd : sweep.data) {
    try {
      rep.samples.push_back(trad_of(k, fd));
    } catch (const InvariantViolation& e) {
      rep.samples_in_A0 = false;
      rep.anomalies.push_back(e.what());
    }
  }
  rep.trad_field = trad_field_detect(k, rep.samples);
  if (opt.mode)
    rep.mode = *opt.mode;
  else
    rep.mode = (rep.trad_field == TradField::FSquared && k.characteristic() == 2 && fam.rank() == 2) ? DepthMode::Squares
                                                                                                    : DepthMode::Full;
  // the squares route uses places of even residue degree only
  std::vector<TraceSample> depth_samples;
  for (auto& s : rep.samples)
    if (rep.mode == DepthMode::Full || s.deg_x % 2 == 0) depth_samples.push_back(s);

  for (auto& p : primes) {
    PrimeEntry e;
    e.p = p;
    e.pi = A.to_string(p.pi);
    e.deg = p.deg();
    e.mode = rep.mode;
    if (p == rep.p0) {
      e.status = PrimeStatus::Excluded;
      e.exclusion = "characteristic";
      rep.primes.push_back(std::move(e));
      continue;
    }
    e.residual = residual_trace_surjectivity(k, rep.samples, p);
    e.depth2 = depth2_generation(k, depth_samples, p, rep.mode);
    e.witness = f_nonvanishing_scan(k, sweep.data, opt.c, p);
    if (e.witness && e.witness->a)
      for (auto& p2 : good) {
        auto kp2 = residue_field(k, p2);
        if (!kp2.equal(kp2.from_poly(*e.witness->a), f_value_mod_prime(k, sweep.data[e.witness->index], opt.c, p2)))
          e.witness_consistent = false;
      }
    if (std::find(opt.exclusions.begin(), opt.exclusions.end(), p) != opt.exclusions.end())
      e.exclusion = "user";
    else if (boost::multiprecision::pow(Int(k.order()), static_cast<unsigned>(p.deg())) <= 9)
      e.exclusion = "residue field of order <= 9";
    if (!e.exclusion.empty())
      e.status = PrimeStatus::Excluded;
    else
      e.status = (e.residual && e.depth2 && e.witness) ? PrimeStatus::Certified : PrimeStatus::Evidence;
    rep.primes.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < good.size(); ++i)
    for (std::size_t j = i + 1; j < good.size(); ++j)
      rep.pairs.push_back({A.to_string(good[i].pi), A.to_string(good[j].pi),
                           pairwise_trace_surjectivity(k, rep.samples, good[i], good[j])});
  return rep;
}

std::string ratfunc_to_string(const Fq& k, const RatFunc& x) {
  PolyRing<Fq> A(k, "T");
  auto wrap = [](const std::string& s) { return s.find(' ') == std::string::npos ? s : "(" + s + ")"; };
  if (A.degree(x.den) == 0 && k.is_one(x.den[0])) return A.to_string(x.num);
  return wrap(A.to_string(x.num)) + "/" + wrap(A.to_string(x.den));
}

std::string family_to_string(const DrinfeldFamily& fam) {
  PolyRing<Fq> S(fam.k, "s");
  std::string out;
  for (std::size_t i = 0; i < fam.phiT.size(); ++i) {
    if (fam.phiT[i].empty()) continue;
    auto c = S.to_string(fam.phiT[i]);
    std::string term;
    if (i == 0)
      term = c;
    else {
      bool one = fam.phiT[i].size() == 1 && fam.phiT[i][0] == 1;
      if (!one) term = (c.find(' ') == std::string::npos ? c : "(" + c + ")") + "*";
      term += i == 1 ? "tau" : "tau^" + std::to_string(i);
    }
    out += (out.empty() ? "" : " + ") + term;
  }
  return "F_" + std::to_string(fam.k.order()) + ": phi_T = " + (out.empty() ? "0" : out);
}

DrinfeldFamily reference_family() {
  DrinfeldFamily fam;
  fam.k = Fq::get(3);
  fam.phiT = {{}, {0, 1}, {1}};
  fam.name = "ref-F3-rank2";
  return fam;
}

std::string report_to_json(const Fq& k, const CertificateReport& rep) {
  using nlohmann::ordered_json;
  PolyRing<Fq> A(k, "T");
  ordered_json j;
  j["family"] = rep.family;
  j["seed"] = rep.seed;
  j["sweep"] = {{"place_degree_bound", rep.place_degree_bound},
                {"places_good", rep.places_good},
                {"places_bad", rep.places_bad}};
  j["trad_field"] = to_string(rep.trad_field);
  j["primes"] = ordered_json::array();
  for (auto& e : rep.primes) {
    ordered_json p;
    p["pi"] = e.pi;
    p["deg"] = e.deg;
    p["status"] = to_string(e.status);
    p["residual"] = e.residual;
    p["depth2"] = e.depth2;
    p["f_witness"] = e.witness ? ordered_json(e.witness->place) : ordered_json(nullptr);
    p["route"] = e.status == PrimeStatus::Certified ? ordered_json(to_string(e.mode)) : ordered_json(nullptr);
    p["exclusion"] = e.exclusion.empty() ? ordered_json(nullptr) : ordered_json(e.exclusion);
    p["f_value"] = (e.witness && e.witness->a) ? ordered_json(A.to_string(*e.witness->a)) : ordered_json(nullptr);
    p["f_value_consistent"] = e.witness_consistent;
    j["primes"].push_back(std::move(p));
  }
  j["pairs"] = ordered_json::array();
  for (auto& pe : rep.pairs) j["pairs"].push_back({{"p1", pe.p1}, {"p2", pe.p2}, {"pairwise", pe.pairwise}});
  j["prime_degree_bound"] = rep.prime_degree_bound;
  j["p0"] = A.to_string(rep.p0.pi);
  j["route"] = to_string(rep.mode);
  j["samples_in_A0"] = rep.samples_in_A0;
  j["newton_ok"] = rep.newton_ok;
  j["anomalies"] = rep.anomalies;
  j["samples"] = ordered_json::array();
  for (auto& s : rep.samples)
    j["samples"].push_back({{"place", s.place}, {"deg", s.deg_x}, {"trad", ratfunc_to_string(k, s.trad)}});
  return j.dump(2) + "\n";
}

}  // namespace adelic
