#include "adelic/core/ext_field.hpp"

#include <map>

#include "adelic/core/factor.hpp"

namespace adelic {

ExtField::ExtField(Fq base, std::vector<Fq::Elem> g, std::string var) {
  PolyRing<Fq> P(base);
  P.normalize(g);
  if (g.size() < 2 || g.back() != 1) throw std::invalid_argument("ExtField: modulus must be monic of degree >= 1");
  if (!is_irreducible(P, g)) throw std::invalid_argument("ExtField: modulus is reducible");
  auto impl = std::make_shared<Impl>();
  impl->base = base;
  impl->k = static_cast<unsigned>(g.size() - 1);
  impl->g = std::move(g);
  impl->var = std::move(var);
  impl->fast = base.is_prime_field() && base.characteristic() < 65536;
  impl_ = impl;
  d_ = impl_.get();
}

std::vector<Fq::Elem> ExtField::first_irreducible(const Fq& base, unsigned k) {
  PolyRing<Fq> P(base);
  std::uint32_t q = base.order();
  std::vector<Fq::Elem> cand(k + 1, 0);
  cand[k] = 1;
  if (k == 1) return cand;
  // Odometer over (c_0, ..., c_{k-1}) with c_{k-1} most significant.
  for (;;) {
    if (cand[0] != 0 && is_irreducible(P, cand)) return cand;
    unsigned i = 0;
    while (i < k) {
      if (++cand[i] < q) break;
      cand[i] = 0;
      ++i;
    }
    if (i == k) throw InvariantViolation("no irreducible polynomial found");
  }
}

ExtField ExtField::build(std::uint32_t q, unsigned k) {
  if (k == 0) throw std::invalid_argument("build_extension: degree must be >= 1");
  Fq base = Fq::get(q);
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, unsigned>, ExtField> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({q, k});
    if (it != cache.end()) return it->second;
  }
  ExtField F(base, first_irreducible(base, k));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(q, k), F);
  return F;
}

ExtField ExtField::with_var(std::string var) const {
  ExtField out;
  auto impl = std::make_shared<Impl>();
  impl->base = d_->base;
  impl->k = d_->k;
  impl->g = d_->g;
  impl->var = std::move(var);
  impl->fast = d_->fast;
  out.impl_ = impl;
  out.d_ = out.impl_.get();
  return out;
}

Int ExtField::size() const {
  Int s = 1;
  for (unsigned i = 0; i < d_->k; ++i) s *= d_->base.order();
  return s;
}

bool ExtField::same(const ExtField& o) const {
  if (d_ == o.d_) return true;
  if (!d_ || !o.d_) return false;
  return d_->base == o.d_->base && d_->g == o.d_->g;
}

ExtField::Elem ExtField::gen() const {
  std::vector<Fq::Elem> x{0, 1};
  return from_poly(x);
}

ExtField::Elem ExtField::from_poly(const std::vector<Fq::Elem>& f) const {
  PolyRing<Fq> P(d_->base);
  auto r = P.rem(P.from_coeffs(f), d_->g);
  Elem e(d_->k, 0);
  for (std::size_t i = 0; i < r.size(); ++i) e[i] = r[i];
  return e;
}

bool ExtField::is_zero(const Elem& a) const {
  for (auto c : a)
    if (c) return false;
  return true;
}

bool ExtField::in_base(const Elem& a) const {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i]) return false;
  return true;
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem r(d_->k);
  const Fq& K = d_->base;
  for (unsigned i = 0; i < d_->k; ++i) r[i] = K.add(a[i], b[i]);
  return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem r(d_->k);
  const Fq& K = d_->base;
  for (unsigned i = 0; i < d_->k; ++i) r[i] = K.sub(a[i], b[i]);
  return r;
}

ExtField::Elem ExtField::neg(const Elem& a) const {
  Elem r(d_->k);
  const Fq& K = d_->base;
  for (unsigned i = 0; i < d_->k; ++i) r[i] = K.neg(a[i]);
  return r;
}

ExtField::Elem ExtField::scale(Fq::Elem c, const Elem& a) const {
  Elem r(d_->k);
  const Fq& K = d_->base;
  for (unsigned i = 0; i < d_->k; ++i) r[i] = K.mul(c, a[i]);
  return r;
}

void ExtField::reduce_wide(std::vector<std::uint64_t>& t, Elem& out) const {
  const unsigned k = d_->k;
  const std::uint64_t p = d_->base.characteristic();
  const auto& g = d_->g;
  for (std::size_t i = t.size(); i-- > k;) {
    std::uint64_t c = t[i] % p;
    if (!c) continue;
    std::size_t off = i - k;
    for (unsigned j = 0; j < k; ++j)
      if (g[j]) t[off + j] += c * (p - g[j]);
  }
  out.assign(k, 0);
  for (unsigned i = 0; i < k && i < t.size(); ++i) out[i] = static_cast<Fq::Elem>(t[i] % p);
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  const unsigned k = d_->k;
  if (k == 1) return {d_->base.mul(a[0], b[0])};
  Elem out;
  if (d_->fast) {
    std::vector<std::uint64_t> t(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
      std::uint64_t ai = a[i];
      if (!ai) continue;
      std::uint64_t* ti = t.data() + i;
      for (unsigned j = 0; j < k; ++j) ti[j] += ai * b[j];
    }
    reduce_wide(t, out);
    return out;
  }
  const Fq& K = d_->base;
  std::vector<Fq::Elem> t(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    if (!a[i]) continue;
    for (unsigned j = 0; j < k; ++j) t[i + j] = K.add(t[i + j], K.mul(a[i], b[j]));
  }
  const auto& g = d_->g;
  for (std::size_t i = t.size(); i-- > k;) {
    Fq::Elem c = t[i];
    if (!c) continue;
    std::size_t off = i - k;
    for (unsigned j = 0; j < k; ++j) t[off + j] = K.sub(t[off + j], K.mul(c, g[j]));
  }
  t.resize(k);
  return t;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("ExtField: inverse of zero");
  if (d_->k == 1) return {d_->base.inv(a[0])};
  PolyRing<Fq> P(d_->base);
  auto s = P.inv_mod(P.from_coeffs(a), d_->g);
  Elem e(d_->k, 0);
  for (std::size_t i = 0; i < s.size(); ++i) e[i] = s[i];
  return e;
}

const std::vector<Fq::Elem>& ExtField::frob_matrix() const {
  std::call_once(d_->frob_once, [this] {
    const unsigned k = d_->k;
    std::vector<Fq::Elem> M(static_cast<std::size_t>(k) * k, 0);
    PolyRing<Fq> P(d_->base);
    auto xq = P.powmod(P.x(), Int(d_->base.order()), d_->g);
    Elem col = one();
    Elem xqe(k, 0);
    for (std::size_t i = 0; i < xq.size(); ++i) xqe[i] = xq[i];
    for (unsigned j = 0; j < k; ++j) {
      for (unsigned i = 0; i < k; ++i) M[static_cast<std::size_t>(i) * k + j] = col[i];
      col = mul(col, xqe);
    }
    d_->frob = std::move(M);
  });
  return d_->frob;
}

ExtField::Elem ExtField::frob(const Elem& a) const {
  const unsigned k = d_->k;
  if (k == 1) return a;
  const auto& M = frob_matrix();
  Elem out(k, 0);
  if (d_->fast) {
    const std::uint64_t p = d_->base.characteristic();
    for (unsigned i = 0; i < k; ++i) {
      const Fq::Elem* row = M.data() + static_cast<std::size_t>(i) * k;
      std::uint64_t s = 0;
      for (unsigned j = 0; j < k; ++j) s += static_cast<std::uint64_t>(row[j]) * a[j];
      out[i] = static_cast<Fq::Elem>(s % p);
    }
    return out;
  }
  const Fq& K = d_->base;
  for (unsigned i = 0; i < k; ++i) {
    Fq::Elem s = 0;
    for (unsigned j = 0; j < k; ++j) s = K.add(s, K.mul(M[static_cast<std::size_t>(i) * k + j], a[j]));
    out[i] = s;
  }
  return out;
}

ExtField::Elem ExtField::frob_pow(const Elem& a, long j) const {
  long k = d_->k;
  j %= k;
  if (j < 0) j += k;
  Elem r = a;
  for (long i = 0; i < j; ++i) r = frob(r);
  return r;
}

std::vector<Fq::Elem> ExtField::mul_matrix(const Elem& c) const {
  const unsigned k = d_->k;
  std::vector<Fq::Elem> M(static_cast<std::size_t>(k) * k, 0);
  Elem col = c;
  Elem z = gen();
  for (unsigned j = 0; j < k; ++j) {
    for (unsigned i = 0; i < k; ++i) M[static_cast<std::size_t>(i) * k + j] = col[i];
    col = mul(col, z);
  }
  return M;
}

ExtField::Elem ExtField::random(Rng& rng) const {
  Elem e(d_->k);
  for (auto& c : e) c = d_->base.random(rng);
  return e;
}

std::vector<std::uint32_t> ExtField::fp_coords(const Elem& a) const {
  std::vector<std::uint32_t> out;
  out.reserve(abs_degree());
  for (auto c : a) {
    auto d = d_->base.fp_coords(c);
    out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

std::string ExtField::to_string(const Elem& a) const {
  PolyRing<Fq> P(d_->base, d_->var);
  return P.to_string(P.from_coeffs(a));
}

}  // namespace adelic
