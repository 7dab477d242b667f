#include "adelic/core/fq.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace adelic {

namespace {

using SmallPoly = std::vector<std::int64_t>;

void trim(SmallPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    std::int64_t qq = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
  }
  return ((t % p) + p) % p;
}

SmallPoly pmod(SmallPoly a, const SmallPoly& b, std::int64_t p) {
  trim(a);
  std::int64_t lc_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    std::int64_t c = a.back() * lc_inv % p;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

SmallPoly pmulmod(const SmallPoly& a, const SmallPoly& b, const SmallPoly& m, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  SmallPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return pmod(r, m, p);
}

SmallPoly ppowmod(SmallPoly a, std::uint64_t n, const SmallPoly& m, std::int64_t p) {
  SmallPoly r{1};
  a = pmod(a, m, p);
  while (n) {
    if (n & 1) r = pmulmod(r, a, m, p);
    a = pmulmod(a, a, m, p);
    n >>= 1;
  }
  return r;
}

SmallPoly pgcd(SmallPoly a, SmallPoly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    SmallPoly r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool small_irreducible(const SmallPoly& g, std::int64_t p) {
  int e = static_cast<int>(g.size()) - 1;
  SmallPoly x{0, 1};
  SmallPoly xp = x;
  for (int i = 1; i <= e / 2; ++i) {
    xp = ppowmod(xp, static_cast<std::uint64_t>(p), g, p);
    SmallPoly d = xp;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    trim(d);
    if (pgcd(g, d, p).size() != 1) return false;
  }
  return true;
}

std::shared_ptr<const Fq::Impl> make_impl(std::uint32_t q) {
  auto [p, e] = prime_power_decompose(q);
  if (e > 1 && q > 65536) throw std::invalid_argument("Fq: non-prime q must be < 2^16");
  auto impl = std::make_shared<Fq::Impl>();
  impl->p = p;
  impl->e = e;
  impl->q = q;
  if (e == 1) {
    impl->modulus = {0, 1};
    if (q <= 65536) {
      impl->inv_table.assign(q, 0);
      for (std::uint32_t a = 1; a < q; ++a) impl->inv_table[a] = static_cast<std::uint32_t>(inv_mod(a, p));
    }
    return impl;
  }
  // First monic irreducible of degree e in lexicographic order.
  std::uint64_t count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  SmallPoly g;
  for (std::uint64_t code = 0; code < count; ++code) {
    SmallPoly cand(e + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < e; ++i) {
      cand[i] = static_cast<std::int64_t>(c % p);
      c /= p;
    }
    cand[e] = 1;
    if (cand[0] == 0) continue;
    if (small_irreducible(cand, p)) {
      g = cand;
      break;
    }
  }
  for (auto c : g) impl->modulus.push_back(static_cast<std::uint32_t>(c));

  auto encode = [&](const SmallPoly& f) {
    std::uint32_t v = 0, w = 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      v += static_cast<std::uint32_t>(f[i]) * w;
      w *= p;
    }
    return v;
  };
  auto decode = [&](std::uint32_t v) {
    SmallPoly f(e, 0);
    for (unsigned i = 0; i < e; ++i) {
      f[i] = v % p;
      v /= p;
    }
    trim(f);
    return f;
  };

  auto pf = prime_factors_u64(q - 1);
  std::uint32_t prim = 0;
  for (std::uint32_t cand = 2; cand < q && prim == 0; ++cand) {
    SmallPoly a = decode(cand);
    bool ok = true;
    for (auto r : pf) {
      SmallPoly t = ppowmod(a, (q - 1) / r, g, p);
      if (t.size() == 1 && t[0] == 1) {
        ok = false;
        break;
      }
    }
    if (ok) prim = cand;
  }
  impl->exp.assign(2 * (q - 1), 0);
  impl->log.assign(q, 0);
  SmallPoly cur{1};
  SmallPoly gen = decode(prim);
  for (std::uint32_t i = 0; i < q - 1; ++i) {
    std::uint32_t v = encode(cur);
    impl->exp[i] = v;
    impl->exp[i + q - 1] = v;
    impl->log[v] = i;
    cur = pmulmod(cur, gen, g, p);
  }
  impl->neg.assign(q, 0);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t v = a, r = 0, w = 1;
    for (unsigned i = 0; i < e; ++i) {
      std::uint32_t d = v % p;
      v /= p;
      r += ((p - d) % p) * w;
      w *= p;
    }
    impl->neg[a] = r;
  }
  impl->inv_table.assign(q, 0);
  for (std::uint32_t a = 1; a < q; ++a) impl->inv_table[a] = impl->exp[(q - 1 - impl->log[a]) % (q - 1)];
  if (q <= 256) {
    impl->add_table.assign(static_cast<std::size_t>(q) * q, 0);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        std::uint32_t x = a, y = b, r = 0, w = 1;
        for (unsigned i = 0; i < e; ++i) {
          r += ((x % p + y % p) % p) * w;
          x /= p;
          y /= p;
          w *= p;
        }
        impl->add_table[a * q + b] = static_cast<std::uint16_t>(r);
      }
  }
  return impl;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::pair<std::uint32_t, unsigned> prime_power_decompose(std::uint64_t q) {
  if (q < 2) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  auto f = prime_factors_u64(q);
  if (f.size() != 1 || f[0] >= (1ull << 31)) throw std::invalid_argument("not a prime power: " + std::to_string(q));
  unsigned e = 0;
  while (q > 1) {
    q /= f[0];
    ++e;
  }
  return {static_cast<std::uint32_t>(f[0]), e};
}

Fq::Fq(std::uint32_t q) : impl_(make_impl(q)), d_(impl_.get()) {}

Fq Fq::get(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, Fq> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  Fq f(q);
  cache.emplace(q, f);
  return f;
}

Fq::Elem Fq::add_slow(Elem a, Elem b) const {
  std::uint32_t p = d_->p, r = 0, w = 1;
  for (unsigned i = 0; i < d_->e; ++i) {
    r += ((a % p + b % p) % p) * w;
    a /= p;
    b /= p;
    w *= p;
  }
  return r;
}

Fq::Elem Fq::inv(Elem a) const {
  if (a == 0) throw std::domain_error("Fq: inverse of zero");
  if (!d_->inv_table.empty()) return d_->inv_table[a];
  return static_cast<Elem>(inv_mod(a, d_->p));
}

Fq::Elem Fq::pow(Elem a, std::uint64_t n) const {
  Elem r = 1;
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

Fq::Elem Fq::pow(Elem a, const Int& n) const {
  if (a == 0) return n == 0 ? 1 : 0;
  Int r = n % (d_->q - 1);
  return pow(a, static_cast<std::uint64_t>(r));
}

Fq::Elem Fq::from_int(std::int64_t n) const {
  std::int64_t p = d_->p;
  return static_cast<Elem>(((n % p) + p) % p);
}

Fq::Elem Fq::sqrt_char2(Elem a) const {
  if (d_->p != 2) throw std::domain_error("Fq::sqrt_char2 needs characteristic 2");
  return pow(a, d_->q / 2);
}

Fq::Elem Fq::random(Rng& rng) const {
  std::uniform_int_distribution<std::uint32_t> dist(0, d_->q - 1);
  return dist(rng);
}

Fq::Elem Fq::primitive() const {
  if (d_->e > 1) return d_->exp[1];
  if (d_->q == 2) return 1;
  auto pf = prime_factors_u64(d_->q - 1);
  for (Elem c = 2; c < d_->q; ++c) {
    bool ok = true;
    for (auto r : pf)
      if (pow(c, (d_->q - 1) / r) == 1) {
        ok = false;
        break;
      }
    if (ok) return c;
  }
  return 1;
}

std::vector<std::uint32_t> Fq::fp_coords(Elem a) const {
  std::vector<std::uint32_t> out(d_->e);
  for (unsigned i = 0; i < d_->e; ++i) {
    out[i] = a % d_->p;
    a /= d_->p;
  }
  return out;
}

Fq::Elem Fq::from_fp_coords(const std::vector<std::uint32_t>& c) const {
  Elem v = 0, w = 1;
  for (unsigned i = 0; i < d_->e; ++i) {
    v += (i < c.size() ? c[i] % d_->p : 0) * w;
    w *= d_->p;
  }
  return v;
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

}  // namespace adelic
