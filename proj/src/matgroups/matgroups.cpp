#include "adelic/matgroups/matgroups.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <map>
#include <set>
#include <sstream>

#include "adelic/core/fp_span.hpp"

namespace adelic {

// ---------------------------------------------------------------------------
// flat encoding

FlatGroup::FlatGroup(std::vector<MatComponent> comps) : comps_(std::move(comps)) {
  for (auto& c : comps_) {
    if (c.k.order() > 256) throw std::invalid_argument("FlatGroup: residue field must have order <= 256");
    if (c.n < 1 || c.m < 1) throw std::invalid_argument("FlatGroup: bad component shape");
    if (c.m > 32) throw std::invalid_argument("FlatGroup: truncation length must be <= 32");
    off_.push_back(len_);
    len_ += static_cast<std::size_t>(c.n) * c.n * c.m;
    const std::uint32_t q = c.k.order();
    Tables t;
    t.add.resize(q * q);
    t.mul.resize(q * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        t.add[a * q + b] = static_cast<std::uint8_t>(c.k.add(a, b));
        t.mul[a * q + b] = static_cast<std::uint8_t>(c.k.mul(a, b));
      }
    tab_.push_back(std::move(t));
  }
}

void FlatGroup::mul(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out) const {
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    const int n = comps_[c].n;
    const unsigned m = comps_[c].m;
    const std::uint32_t q = comps_[c].k.order();
    const auto& add = tab_[c].add;
    const auto& mu = tab_[c].mul;
    const std::uint8_t* A = a + off_[c];
    const std::uint8_t* B = b + off_[c];
    std::uint8_t* O = out + off_[c];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::array<std::uint8_t, 32> acc{};
        for (int l = 0; l < n; ++l) {
          const std::uint8_t* x = A + (i * n + l) * m;
          const std::uint8_t* y = B + (l * n + j) * m;
          for (unsigned s = 0; s < m; ++s) {
            if (!x[s]) continue;
            const std::uint32_t row = x[s] * q;
            for (unsigned t = 0; s + t < m; ++t) acc[s + t] = add[acc[s + t] * q + mu[row + y[t]]];
          }
        }
        std::memcpy(O + (i * n + j) * m, acc.data(), m);
      }
  }
}

std::vector<std::uint8_t> FlatGroup::identity() const {
  std::vector<std::uint8_t> e(len_, 0);
  for (std::size_t c = 0; c < comps_.size(); ++c)
    for (int i = 0; i < comps_[c].n; ++i) e[off_[c] + (i * comps_[c].n + i) * comps_[c].m] = 1;
  return e;
}

std::vector<std::uint8_t> FlatGroup::encode(const std::vector<TMat>& mats) const {
  if (mats.size() != comps_.size()) throw std::invalid_argument("FlatGroup::encode: component count mismatch");
  std::vector<std::uint8_t> e(len_, 0);
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    const int n = comps_[c].n;
    const unsigned m = comps_[c].m;
    if (static_cast<int>(mats[c].rows) != n || static_cast<int>(mats[c].cols) != n)
      throw std::invalid_argument("FlatGroup::encode: matrix size mismatch");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& x = mats[c](i, j);
        for (unsigned t = 0; t < m; ++t) {
          auto v = t < x.size() ? x[t] : 0u;
          if (v >= comps_[c].k.order()) throw std::invalid_argument("FlatGroup::encode: coefficient out of range");
          e[off_[c] + (i * n + j) * m + t] = static_cast<std::uint8_t>(v);
        }
      }
  }
  return e;
}

std::vector<TMat> FlatGroup::decode(const std::uint8_t* e) const {
  std::vector<TMat> out;
  for (std::size_t c = 0; c < comps_.size(); ++c) {
    const int n = comps_[c].n;
    const unsigned m = comps_[c].m;
    TMat g(n, n, TRing::Elem(m, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (unsigned t = 0; t < m; ++t) g(i, j)[t] = e[off_[c] + (i * n + j) * m + t];
    out.push_back(std::move(g));
  }
  return out;
}

// ---------------------------------------------------------------------------
// element set

std::uint64_t ElementSet::hash(const std::uint8_t* e) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len_; ++i) h = (h ^ e[i]) * 0x100000001b3ULL;
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 32);
}

void ElementSet::grow() {
  std::size_t cap = table_.empty() ? 1024 : table_.size() * 2;
  std::vector<std::uint32_t> t(cap, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t pos = hash(at(i)) & (cap - 1);
    while (t[pos]) pos = (pos + 1) & (cap - 1);
    t[pos] = static_cast<std::uint32_t>(i + 1);
  }
  table_ = std::move(t);
}

bool ElementSet::contains(const std::uint8_t* e) const {
  if (table_.empty()) return false;
  const std::size_t mask = table_.size() - 1;
  for (std::size_t pos = hash(e) & mask; table_[pos]; pos = (pos + 1) & mask)
    if (!std::memcmp(at(table_[pos] - 1), e, len_)) return true;
  return false;
}

bool ElementSet::insert(const std::uint8_t* e) {
  if ((n_ + 1) * 2 > table_.size()) grow();
  const std::size_t mask = table_.size() - 1;
  std::size_t pos = hash(e) & mask;
  for (; table_[pos]; pos = (pos + 1) & mask)
    if (!std::memcmp(at(table_[pos] - 1), e, len_)) return false;
  if (n_ >= 0xffffffffu) throw std::length_error("ElementSet: too many elements");
  arena_.insert(arena_.end(), e, e + len_);
  table_[pos] = static_cast<std::uint32_t>(++n_);
  return true;
}

// ---------------------------------------------------------------------------
// closure

CongruenceClosure closure(const FlatGroup& G, const std::vector<std::vector<std::uint8_t>>& gens, std::size_t cap) {
  CongruenceClosure H;
  H.group = G;
  H.gens = gens;
  H.elems = ElementSet(G.len());
  for (auto& g : gens)
    if (g.size() != G.len()) throw std::invalid_argument("closure: generator has wrong encoding length");
  auto id = G.identity();
  H.elems.insert(id.data());
  std::vector<std::uint8_t> cur(G.len()), next(G.len());
  for (std::size_t i = 0; i < H.elems.size(); ++i) {
    std::memcpy(cur.data(), H.elems.at(i), G.len());
    for (auto& g : gens) {
      G.mul(cur.data(), g.data(), next.data());
      if (H.elems.insert(next.data()) && H.elems.size() > cap) return H;
    }
  }
  H.complete = true;
  return H;
}

CongruenceClosure closure(const Fq& k, int n, unsigned m, const std::vector<TMat>& gens, std::size_t cap) {
  TRing R(k, m);
  FlatGroup G({MatComponent{k, n, m}});
  std::vector<std::vector<std::uint8_t>> enc;
  for (auto& g : gens) {
    if (!R.is_unit(mat_det(R, g))) throw std::invalid_argument("closure: generator not invertible");
    enc.push_back(G.encode({g}));
  }
  return closure(G, enc, cap);
}

TMat elementary(const TRing& R, int n, int i, int j, const TRing::Elem& c) {
  auto g = mat_identity(R, n);
  g(i, j) = R.add(g(i, j), R.from_coeffs(c));
  return g;
}

std::vector<KMat> sl_generators(const Fq& k, int n) {
  std::vector<KMat> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (unsigned b = 0; b < k.degree(); ++b) {
        std::vector<std::uint32_t> c(k.degree(), 0);
        c[b] = 1;
        auto g = mat_identity(k, n);
        g(i, j) = k.from_fp_coords(c);
        out.push_back(std::move(g));
      }
    }
  return out;
}

TMat lift_constant(const TRing& R, const KMat& g) {
  TMat out(g.rows, g.cols, R.zero());
  for (std::size_t i = 0; i < g.a.size(); ++i) out.a[i] = R.constant(g.a[i]);
  return out;
}

KMat kmat_mul(const Fq& k, const KMat& a, const KMat& b) { return mat_mul(k, a, b); }

std::string kmat_to_string(const KMat& g) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < g.rows; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < g.cols; ++j) os << (j ? ", " : "") << g(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// F_p linear algebra

namespace {

std::vector<std::uint32_t> kmat_coords(const Fq& k, const KMat& X) {
  std::vector<std::uint32_t> v;
  v.reserve(X.a.size() * k.degree());
  for (auto x : X.a) {
    auto c = k.fp_coords(x);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

bool is_scalar(const Fq& k, const KMat& X) {
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j)
      if (i == j ? !k.equal(X(i, j), X(0, 0)) : !k.is_zero(X(i, j))) return false;
  return true;
}

KMat unit_matrix(const Fq& k, int n, int i, int j, Fq::Elem c) {
  KMat X(n, n, k.zero());
  X(i, j) = c;
  return X;
}

// F_p-basis of sl_n(k): E_ij (i != j) and E_ii - E_{i+1,i+1}, times an F_p-basis of k.
std::vector<KMat> sl_fp_basis(const Fq& k, int n) {
  std::vector<KMat> out;
  for (unsigned b = 0; b < k.degree(); ++b) {
    std::vector<std::uint32_t> c(k.degree(), 0);
    c[b] = 1;
    auto t = k.from_fp_coords(c);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) out.push_back(unit_matrix(k, n, i, j, t));
    for (int i = 0; i + 1 < n; ++i) {
      auto X = unit_matrix(k, n, i, i, t);
      X(i + 1, i + 1) = k.neg(t);
      out.push_back(std::move(X));
    }
  }
  return out;
}

std::vector<KMat> gl_fp_basis(const Fq& k, int n) {
  std::vector<KMat> out;
  for (unsigned b = 0; b < k.degree(); ++b) {
    std::vector<std::uint32_t> c(k.degree(), 0);
    c[b] = 1;
    auto t = k.from_fp_coords(c);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.push_back(unit_matrix(k, n, i, j, t));
  }
  return out;
}

KMat bracket(const Fq& k, const KMat& X, const KMat& Y) { return mat_sub(k, mat_mul(k, X, Y), mat_mul(k, Y, X)); }

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// filtration

FiltrationProfile filtration_profile(const CongruenceClosure& H) {
  if (!H.complete) throw std::invalid_argument("filtration_profile: closure incomplete");
  const auto& comps = H.group.components();
  if (comps.size() != 1) throw std::invalid_argument("filtration_profile: single component only");
  const Fq& k = comps[0].k;
  const int n = comps[0].n;
  const unsigned m = comps[0].m;
  const std::size_t nn = static_cast<std::size_t>(n) * n;

  FiltrationProfile prof;
  ElementSet h0(nn);
  std::vector<std::uint8_t> buf(nn);
  for (std::size_t s = 0; s < H.elems.size(); ++s) {
    const std::uint8_t* e = H.elems.at(s);
    for (std::size_t x = 0; x < nn; ++x) buf[x] = e[x * m];
    h0.insert(buf.data());
  }
  prof.h0_order = h0.size();
  for (std::size_t s = 0; s < h0.size(); ++s) {
    KMat g(n, n, 0);
    for (std::size_t x = 0; x < nn; ++x) g.a[x] = h0.at(s)[x];
    if (k.is_one(mat_det(k, g))) ++prof.h0_det_one;
  }
  prof.h0_contains_sl = Int(prof.h0_det_one) == group_order(n, k.order());

  for (unsigned i = 1; i < m; ++i) {
    FiltrationLayer L;
    L.level = static_cast<int>(i);
    ElementSet layer(nn);
    for (std::size_t s = 0; s < H.elems.size(); ++s) {
      const std::uint8_t* e = H.elems.at(s);
      bool congruent = true;
      for (std::size_t x = 0; x < nn && congruent; ++x) {
        const bool diag = x % (n + 1) == 0;
        for (unsigned t = 0; t < i; ++t)
          if (e[x * m + t] != ((t == 0 && diag) ? 1 : 0)) {
            congruent = false;
            break;
          }
      }
      if (!congruent) continue;
      for (std::size_t x = 0; x < nn; ++x) buf[x] = e[x * m + i];
      layer.insert(buf.data());
    }
    L.size = layer.size();
    FpSpan span(k.characteristic(), nn * k.degree());
    bool traceless = true;
    for (std::size_t s = 0; s < layer.size(); ++s) {
      KMat X(n, n, 0);
      for (std::size_t x = 0; x < nn; ++x) X.a[x] = layer.at(s)[x];
      if (!is_scalar(k, X)) L.has_nonscalar = true;
      if (!k.is_zero(mat_trace(k, X))) traceless = false;
      if (span.add(kmat_coords(k, X))) L.basis.push_back(X);
    }
    L.fp_dim = static_cast<unsigned>(span.dim());
    L.additive = Int(L.size) == boost::multiprecision::pow(Int(k.characteristic()), L.fp_dim);
    L.equals_sl = traceless && L.fp_dim == (nn - 1) * k.degree();
    prof.layers.push_back(std::move(L));
  }
  return prof;
}

StrongApproxVerdict verify_strong_approx(const Fq& k, int n, unsigned m, const std::vector<TMat>& gens, std::size_t cap) {
  TRing R(k, m);
  for (auto& g : gens)
    if (!R.equal(mat_det(R, g), R.one())) throw std::invalid_argument("verify_strong_approx: generator not in SL_n");
  StrongApproxVerdict v;
  v.in_regime = k.order() > 9;
  auto H = closure(k, n, m, gens, cap);
  v.complete = H.complete;
  v.order = H.order();
  v.full_order = group_order(n, k.order()) *
                 boost::multiprecision::pow(Int(k.order()), static_cast<unsigned>((n * n - 1) * (m - 1)));
  if (!H.complete) return v;
  v.profile = filtration_profile(H);
  v.h0_contains_sl = v.profile.h0_contains_sl;
  v.h1_nonscalar = m < 2 || v.profile.layers[0].has_nonscalar;
  v.hypotheses = v.h0_contains_sl && v.h1_nonscalar;
  v.full = Int(v.order) == v.full_order;
  v.consistent = v.hypotheses == v.full;
  return v;
}

// ---------------------------------------------------------------------------
// Lie algebra facts

namespace {

BracketSpan span_of_brackets(const Fq& k, int n, const std::vector<KMat>& xs, const std::vector<KMat>& ys) {
  BracketSpan out;
  out.sl_dim = static_cast<unsigned>(n * n - 1);
  FpSpan fp(k.characteristic(), static_cast<std::size_t>(n) * n * k.degree());
  Matrix<Fq::Elem> rows(0, static_cast<std::size_t>(n) * n, 0);
  for (auto& X : xs)
    for (auto& Y : ys) {
      auto B = bracket(k, X, Y);
      if (fp.add(kmat_coords(k, B))) {
        rows.a.insert(rows.a.end(), B.a.begin(), B.a.end());
        ++rows.rows;
      }
    }
  out.fp_dim = static_cast<unsigned>(fp.dim());
  out.k_dim = rows.rows ? static_cast<unsigned>(mat_rank(k, rows)) : 0;
  return out;
}

}  // namespace

BracketSpan bracket_span(int n, const Fq& k) {
  auto b = sl_fp_basis(k, n);
  return span_of_brackets(k, n, b, b);
}

BracketSpan bracket_span_gl_sl(int n, const Fq& k) { return span_of_brackets(k, n, gl_fp_basis(k, n), sl_fp_basis(k, n)); }

// ---------------------------------------------------------------------------
// invariant subgroups

namespace {

using Key = std::vector<std::uint32_t>;  // flattened reduced echelon rows

// Linear maps X -> x X x^{-1} on gl_n(k) over F_p, as images of the basis vectors.
std::vector<std::vector<std::vector<std::uint32_t>>> conjugation_action(const Fq& k, int n) {
  auto basis = gl_fp_basis(k, n);
  // reorder so that coordinate index = entry * e + b matches kmat_coords
  const unsigned e = k.degree();
  const std::size_t d = basis.size();
  std::vector<KMat> ordered(d);
  for (unsigned b = 0; b < e; ++b)
    for (int x = 0; x < n * n; ++x) ordered[x * e + b] = basis[b * n * n + x];
  std::vector<std::vector<std::vector<std::uint32_t>>> maps;
  for (auto& g : sl_generators(k, n)) {
    auto ginv = *mat_inverse(k, g);
    std::vector<std::vector<std::uint32_t>> cols;
    for (auto& X : ordered) cols.push_back(kmat_coords(k, mat_mul(k, mat_mul(k, g, X), ginv)));
    maps.push_back(std::move(cols));
  }
  return maps;
}

Key span_key(const FpSpan& s) {
  Key key;
  for (auto& r : s.rows()) key.insert(key.end(), r.begin(), r.end());
  return key;
}

// Generic spinning over F_p.
std::set<Key> cyclic_submodules_generic(std::uint32_t p, std::size_t d,
                                        const std::vector<std::vector<std::vector<std::uint32_t>>>& maps) {
  std::set<Key> out;
  std::vector<std::uint32_t> v(d, 0);
  // projective points: first nonzero coordinate equal to 1
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::fill(v.begin(), v.end(), 0);
    v[lead] = 1;
    while (true) {
      FpSpan W(p, d);
      std::vector<std::vector<std::uint32_t>> queue{v};
      W.add(v);
      for (std::size_t qi = 0; qi < queue.size(); ++qi)
        for (auto& M : maps) {
          std::vector<std::uint32_t> img(d, 0);
          for (std::size_t j = 0; j < d; ++j) {
            if (!queue[qi][j]) continue;
            for (std::size_t i = 0; i < d; ++i)
              img[i] = static_cast<std::uint32_t>((img[i] + static_cast<std::uint64_t>(queue[qi][j]) * M[j][i]) % p);
          }
          if (W.add(img)) queue.push_back(std::move(img));
        }
      out.insert(span_key(W));
      // next tail
      std::size_t t = lead + 1;
      while (t < d && v[t] == p - 1) v[t++] = 0;
      if (t == d) break;
      ++v[t];
    }
  }
  return out;
}

// F_2 with d <= 64: bit vectors.
std::set<Key> cyclic_submodules_f2(std::size_t d, const std::vector<std::vector<std::vector<std::uint32_t>>>& maps) {
  std::vector<std::vector<std::uint64_t>> cols(maps.size(), std::vector<std::uint64_t>(d, 0));
  for (std::size_t g = 0; g < maps.size(); ++g)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t i = 0; i < d; ++i)
        if (maps[g][j][i]) cols[g][j] |= std::uint64_t(1) << i;
  auto lowbit = [](std::uint64_t x) { return static_cast<std::size_t>(__builtin_ctzll(x)); };
  std::set<Key> out;
  const std::uint64_t top = d == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << d) - 1;
  std::vector<std::uint64_t> rows;
  std::vector<std::uint64_t> queue;
  for (std::uint64_t v = 1; v != 0 && v <= top; ++v) {
    rows.clear();
    queue.clear();
    auto add = [&](std::uint64_t x) {
      for (auto r : rows)
        if (x >> lowbit(r) & 1) x ^= r;
      if (!x) return false;
      for (auto& r : rows)
        if (r >> lowbit(x) & 1) r ^= x;
      rows.push_back(x);
      return true;
    };
    add(v);
    queue.push_back(v);
    for (std::size_t qi = 0; qi < queue.size(); ++qi)
      for (auto& C : cols) {
        std::uint64_t img = 0, x = queue[qi];
        while (x) {
          img ^= C[lowbit(x)];
          x &= x - 1;
        }
        if (add(img)) queue.push_back(img);
      }
    std::sort(rows.begin(), rows.end(), [&](std::uint64_t a, std::uint64_t b) { return lowbit(a) < lowbit(b); });
    Key key;
    for (auto r : rows)
      for (std::size_t i = 0; i < d; ++i) key.push_back(static_cast<std::uint32_t>(r >> i & 1));
    out.insert(std::move(key));
    if (v == top) break;
  }
  return out;
}

FpSpan span_from_key(std::uint32_t p, std::size_t d, const Key& key) {
  FpSpan s(p, d);
  for (std::size_t i = 0; i < key.size(); i += d) s.add(Key(key.begin() + i, key.begin() + i + d));
  return s;
}

}  // namespace

InvariantLattice invariant_subgroups(const Fq& k, int n) {
  const std::uint32_t p = k.characteristic();
  const std::size_t d = static_cast<std::size_t>(n) * n * k.degree();
  long double points = 1;
  for (std::size_t i = 0; i < d; ++i) points *= p;
  if (points > 4.0e6L) throw std::invalid_argument("invariant_subgroups: gl_n(k) too large");
  auto maps = conjugation_action(k, n);
  std::set<Key> lattice = (p == 2 && d <= 64) ? cyclic_submodules_f2(d, maps) : cyclic_submodules_generic(p, d, maps);
  lattice.insert(Key{});
  // close under sums
  std::vector<Key> todo(lattice.begin(), lattice.end());
  std::vector<Key> all = todo;
  while (!todo.empty()) {
    std::vector<Key> fresh;
    for (auto& a : todo)
      for (auto& b : all) {
        auto s = span_from_key(p, d, a);
        for (std::size_t i = 0; i < b.size(); i += d) s.add(Key(b.begin() + i, b.begin() + i + d));
        auto key = span_key(s);
        if (lattice.insert(key).second) fresh.push_back(std::move(key));
      }
    all.insert(all.end(), fresh.begin(), fresh.end());
    todo = std::move(fresh);
  }

  InvariantLattice out;
  out.n = n;
  out.k = k;
  out.in_regime = k.order() > 9;
  out.dichotomy = true;
  std::vector<std::vector<std::uint32_t>> sl_coords;
  for (auto& X : sl_fp_basis(k, n)) sl_coords.push_back(kmat_coords(k, X));
  std::vector<std::vector<std::uint32_t>> c_coords;
  for (unsigned b = 0; b < k.degree(); ++b) {
    std::vector<std::uint32_t> c(k.degree(), 0);
    c[b] = 1;
    c_coords.push_back(kmat_coords(k, mat_scale(k, k.from_fp_coords(c), mat_identity(k, n))));
  }
  FpSpan c_span(p, d);
  for (auto& v : c_coords) c_span.add(v);
  FpSpan sl_span(p, d);
  for (auto& v : sl_coords) sl_span.add(v);

  std::vector<Key> sorted(lattice.begin(), lattice.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const Key& a, const Key& b) { return a.size() < b.size(); });
  for (auto& key : sorted) {
    InvariantSubgroup s;
    auto W = span_from_key(p, d, key);
    s.fp_dim = static_cast<unsigned>(W.dim());
    s.basis = W.rows();
    s.in_scalars = std::all_of(s.basis.begin(), s.basis.end(), [&](auto& v) { return c_span.contains(v); });
    s.contains_sl = std::all_of(sl_coords.begin(), sl_coords.end(), [&](auto& v) { return W.contains(v); });
    if (s.fp_dim == 0)
      s.label = "0";
    else if (s.in_scalars && s.fp_dim == c_span.dim())
      s.label = "c";
    else if (s.contains_sl && s.fp_dim == sl_span.dim())
      s.label = "sl";
    else if (s.fp_dim == d)
      s.label = "gl";
    if (!s.in_scalars && !s.contains_sl) out.dichotomy = false;
    out.members.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// traces

bool char2_trad_identity(const Fq& k, const KMat& g) {
  if (k.characteristic() != 2) throw std::invalid_argument("char2_trad_identity: characteristic must be 2");
  if (g.rows != 2 || g.cols != 2) throw std::invalid_argument("char2_trad_identity: 2x2 only");
  auto det = mat_det(k, g);
  auto tr = mat_trace(k, g);
  return k.equal(tr_ad(k, g), k.div(k.mul(tr, tr), det));
}

namespace {

std::vector<std::uint32_t> trunc_coords(const TRing& R, const TRing::Elem& x) {
  std::vector<std::uint32_t> v;
  for (unsigned i = 0; i < R.length(); ++i) {
    auto c = R.residue_field().fp_coords(i < x.size() ? x[i] : 0);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

}  // namespace

unsigned subalgebra_dim(const TRing& R, const std::vector<TRing::Elem>& samples) {
  const Fq& k = R.residue_field();
  FpSpan span(k.characteristic(), static_cast<std::size_t>(R.length()) * k.degree());
  std::vector<TRing::Elem> queue{R.one()};
  span.add(trunc_coords(R, R.one()));
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto& s : samples) {
      auto y = R.mul(queue[i], R.from_coeffs(s));
      if (span.add(trunc_coords(R, y))) queue.push_back(std::move(y));
    }
  return static_cast<unsigned>(span.dim());
}

bool trace_criterion_1(const TRing& R, const std::vector<TRing::Elem>& samples) {
  if (R.length() < 2) throw std::invalid_argument("trace_criterion_1: length must be >= 2");
  if (samples.empty()) return false;
  return subalgebra_dim(R, samples) == R.length() * R.residue_field().degree();
}

bool trace_criterion_2(const TRing& R, const std::vector<TRing::Elem>& samples) {
  const Fq& k = R.residue_field();
  if (k.characteristic() != 2) throw std::invalid_argument("trace_criterion_2: characteristic must be 2");
  if (samples.empty()) return false;
  for (auto& s : samples)
    for (unsigned i = 1; i < R.length(); i += 2)
      if (i < s.size() && s[i]) return false;  // not a square
  return subalgebra_dim(R, samples) == k.degree() * ((R.length() + 1) / 2);
}

std::optional<Fq::Elem> layer_two_trace(const TRing& R, const TMat& h) {
  if (R.length() != 3) throw std::invalid_argument("layer_two_trace: length must be 3");
  const Fq& k = R.residue_field();
  const std::size_t n = h.rows;
  KMat g0(n, n, 0);
  for (std::size_t i = 0; i < h.a.size(); ++i) g0.a[i] = h.a[i][0];
  auto g0inv = mat_inverse(k, g0);
  if (!g0inv) return std::nullopt;
  auto y = mat_mul(R, lift_constant(R, *g0inv), h);
  KMat y1(n, n, 0);
  for (std::size_t i = 0; i < y.a.size(); ++i) y1.a[i] = y.a[i][1];
  if (!is_scalar(k, y1)) return std::nullopt;
  auto x = R.from_coeffs({k.one(), y1(0, 0)});
  auto g2 = mat_scale(R, R.inv(x), y);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g2(i, j)[0] != (i == j ? 1u : 0u) || g2(i, j)[1] != 0)
        throw InvariantViolation("layer_two_trace: residual factor not congruent to Id mod u^2");
  return mat_trace(R, mat_sub(R, g2, mat_identity(R, n)))[2];
}

// ---------------------------------------------------------------------------
// Goursat

std::string to_string(GoursatKind k) {
  switch (k) {
    case GoursatKind::Full:
      return "full";
    case GoursatKind::Graph:
      return "graph";
    default:
      return "other";
  }
}

namespace {

KMat frob_mat(const Fq& k, const KMat& g, unsigned j) {
  KMat out = g;
  for (auto& x : out.a)
    for (unsigned t = 0; t < j; ++t) x = k.frobenius(x);
  return out;
}

// a == c b for some c in k^*
bool proportional(const Fq& k, const KMat& a, const KMat& b) {
  std::optional<Fq::Elem> c;
  for (std::size_t i = 0; i < a.a.size(); ++i) {
    if (k.is_zero(b.a[i])) {
      if (!k.is_zero(a.a[i])) return false;
      continue;
    }
    auto r = k.div(a.a[i], b.a[i]);
    if (c && !k.equal(*c, r)) return false;
    c = r;
  }
  return c && !k.is_zero(*c);
}

}  // namespace

GoursatResult goursat_analyze(const Fq& k1, const Fq& k2, int n, const std::vector<std::pair<KMat, KMat>>& gens,
                              std::size_t cap) {
  FlatGroup G({MatComponent{k1, n, 1}, MatComponent{k2, n, 1}});
  TRing R1(k1, 1), R2(k2, 1);
  std::vector<std::vector<std::uint8_t>> enc;
  for (auto& [a, b] : gens) {
    if (!k1.is_one(mat_det(k1, a)) || !k2.is_one(mat_det(k2, b)))
      throw std::invalid_argument("goursat_analyze: generator not in SL_n x SL_n");
    enc.push_back(G.encode({lift_constant(R1, a), lift_constant(R2, b)}));
  }
  auto H = closure(G, enc, cap);
  if (!H.complete) throw std::length_error("goursat_analyze: closure cap exceeded");
  GoursatResult res;
  res.order = H.order();
  res.generator_images = gens;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  ElementSet p1(nn), p2(nn);
  auto id = G.identity();
  for (std::size_t s = 0; s < H.order(); ++s) {
    const std::uint8_t* e = H.elems.at(s);
    p1.insert(e);
    p2.insert(e + nn);
    if (!std::memcmp(e + nn, id.data() + nn, nn)) ++res.n1;
    if (!std::memcmp(e, id.data(), nn)) ++res.n2;
  }
  res.proj1 = p1.size();
  res.proj2 = p2.size();
  const Int o1 = group_order(n, k1.order()), o2 = group_order(n, k2.order());
  if (Int(res.proj1) != o1 || Int(res.proj2) != o2) return res;
  if (Int(res.order) == o1 * o2) {
    res.kind = GoursatKind::Full;
    return res;
  }
  // N_i inside the center: |N_i| divides the number of scalar matrices of determinant 1
  auto central = [&](std::size_t comp, const Fq& k) {
    for (std::size_t s = 0; s < H.order(); ++s) {
      const std::uint8_t* e = H.elems.at(s);
      const std::uint8_t* other = comp == 0 ? e + nn : e;
      const std::uint8_t* idother = comp == 0 ? id.data() + nn : id.data();
      if (std::memcmp(other, idother, nn)) continue;
      KMat g(n, n, 0);
      for (std::size_t x = 0; x < nn; ++x) g.a[x] = (comp == 0 ? e : e + nn)[x];
      if (!is_scalar(k, g)) return false;
    }
    return true;
  };
  if (!central(0, k1) || !central(1, k2)) return res;
  res.kind = GoursatKind::Graph;
  if (k1 != k2) return res;
  // recover g2 = x Frob^j(g1) x^{-1} mod scalars
  const Fq& k = k1;
  const std::uint64_t total = ipow(k.order(), static_cast<unsigned>(nn));
  for (unsigned j = 0; j < k.degree(); ++j) {
    std::vector<std::pair<KMat, KMat>> tw;
    for (auto& [a, b] : gens) tw.emplace_back(frob_mat(k, a, j), b);
    for (std::uint64_t code = 0; code < total; ++code) {
      KMat x(n, n, 0);
      std::uint64_t c = code;
      for (auto& v : x.a) {
        v = static_cast<Fq::Elem>(c % k.order());
        c /= k.order();
      }
      if (k.is_zero(mat_det(k, x))) continue;
      bool ok = true;
      for (auto& [fa, b] : tw)
        if (!proportional(k, mat_mul(k, b, x), mat_mul(k, x, fa))) {
          ok = false;
          break;
        }
      if (ok) {
        res.frob_power = j;
        res.conjugator = x;
        return res;
      }
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// orders

Int group_order(int n, std::uint64_t q, bool twisted) {
  if (n < 1) throw std::invalid_argument("group_order: n must be >= 1");
  Int Q(q);
  Int r = boost::multiprecision::pow(Q, static_cast<unsigned>(n * (n - 1) / 2));
  for (int i = 2; i <= n; ++i) {
    Int eps = (twisted && i % 2) ? Int(-1) : Int(1);
    r *= boost::multiprecision::pow(Q, static_cast<unsigned>(i)) - eps;
  }
  return r;
}

std::size_t count_sl(const Fq& k, int n) {
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const std::uint64_t total = ipow(k.order(), static_cast<unsigned>(nn));
  if (total > 50000000ULL) throw std::invalid_argument("count_sl: too large");
  std::size_t cnt = 0;
  KMat g(n, n, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& v : g.a) {
      v = static_cast<Fq::Elem>(c % k.order());
      c /= k.order();
    }
    if (k.is_one(mat_det(k, g))) ++cnt;
  }
  return cnt;
}

namespace {

bool is_prime_power(std::uint64_t q) {
  if (q < 2) return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p) ++p;
  if (q % p) return true;  // q prime
  while (q % p == 0) q /= p;
  return q == 1;
}

}  // namespace

FieldBoundReport field_bound_check(int n, std::uint64_t q_max) {
  if (n < 2) throw std::invalid_argument("field_bound_check: n must be >= 2");
  FieldBoundReport rep;
  for (std::uint64_t q = 2; q <= q_max; ++q) {
    if (!is_prime_power(q)) continue;
    for (std::uint64_t q2 = 2 * q; q2 <= q_max; ++q2) {
      if (!is_prime_power(q2)) continue;
      ++rep.pairs;
      for (bool t1 : {false, true})
        for (bool t2 : {false, true})
          if (group_order(n, q2, t2) <= group_order(n, q, t1))
            rep.violations.push_back("n=" + std::to_string(n) + " q=" + std::to_string(q) + (t1 ? "(tw)" : "") +
                                     " q'=" + std::to_string(q2) + (t2 ? "(tw)" : ""));
    }
  }
  return rep;
}

}  // namespace adelic
