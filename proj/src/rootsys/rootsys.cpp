#include "adelic/rootsys/rootsys.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

namespace adelic {

namespace {

const Rational kZero(0);

QVec qadd(const QVec& x, const QVec& y) {
  QVec z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

bool is_zero_vec(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == kZero; });
}

std::size_t qrank(std::vector<QVec> rows) {
  std::size_t rank = 0;
  if (rows.empty()) return 0;
  const std::size_t n = rows[0].size();
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == kZero) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == kZero) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t j = col; j < n; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

QVec unit(int n, int i, Rational c = Rational(1)) {
  QVec v(n, kZero);
  v[i] = c;
  return v;
}

}  // namespace

RootSystem::RootSystem(std::string label, std::vector<CoordBlock> blocks, std::vector<QVec> roots)
    : label_(std::move(label)), blocks_(std::move(blocks)) {
  for (auto& b : blocks_) {
    coords_ = std::max(coords_, b.offset + b.size);
    rank_ += b.quotient ? b.size - 1 : b.size;
  }
  std::set<QVec> seen;
  for (auto& r : roots) {
    auto c = canonical(r);
    if (is_zero_vec(c)) throw std::invalid_argument("RootSystem: zero root");
    if (seen.insert(c).second) roots_.push_back(c);
  }
  for (auto& r : roots_) {
    QVec neg(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    if (!seen.count(neg)) throw std::invalid_argument("RootSystem: not closed under negation");
  }
  type_a_ = label_.size() >= 2 && label_[0] == 'A' && label_.find('x') == std::string::npos && blocks_.size() == 1 && blocks_[0].quotient &&
            static_cast<int>(roots_.size()) == (coords_) * (coords_ - 1);
}

QVec RootSystem::canonical(QVec v) const {
  for (auto& b : blocks_) {
    if (!b.quotient) continue;
    Rational last = v[b.offset + b.size - 1];
    if (last == kZero) continue;
    for (int i = 0; i < b.size; ++i) v[b.offset + i] -= last;
  }
  return v;
}

Rational RootSystem::inner(const QVec& x, const QVec& y) const {
  Rational s(0);
  for (auto& b : blocks_) {
    if (!b.quotient) {
      for (int i = 0; i < b.size; ++i) s += x[b.offset + i] * y[b.offset + i];
      continue;
    }
    // inner product of the projections to the sum-zero hyperplane
    Rational mx(0), my(0);
    for (int i = 0; i < b.size; ++i) {
      mx += x[b.offset + i];
      my += y[b.offset + i];
    }
    mx /= b.size;
    my /= b.size;
    for (int i = 0; i < b.size; ++i) s += (x[b.offset + i] - mx) * (y[b.offset + i] - my);
  }
  return s;
}

QVec RootSystem::reflect(const QVec& alpha, const QVec& x) const {
  Rational f = Rational(2) * inner(x, alpha) / inner(alpha, alpha);
  QVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - f * alpha[i];
  return canonical(out);
}

QVec RootSystem::basis_vector(int i) const { return canonical(unit(coords_, i)); }

std::vector<std::pair<int, int>> RootSystem::orthogonal_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < roots_.size(); ++i)
    for (std::size_t j = 0; j < roots_.size(); ++j)
      if (inner(roots_[i], roots_[j]) == kZero) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

RootSystem root_system_A(int l) {
  if (l < 1) throw std::invalid_argument("A_l needs l >= 1");
  const int n = l + 1;
  std::vector<QVec> roots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) roots.push_back(qadd(unit(n, i), unit(n, j, Rational(-1))));
  return RootSystem("A" + std::to_string(l), {{0, n, true}}, roots);
}

namespace {

std::vector<QVec> long_pairs(int n) {
  std::vector<QVec> roots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1}) roots.push_back(qadd(unit(n, i, Rational(si)), unit(n, j, Rational(sj))));
  return roots;
}

}  // namespace

RootSystem root_system_B(int n) {
  auto roots = long_pairs(n);
  for (int i = 0; i < n; ++i)
    for (int s : {1, -1}) roots.push_back(unit(n, i, Rational(s)));
  return RootSystem("B" + std::to_string(n), {{0, n, false}}, roots);
}

RootSystem root_system_C(int n) {
  auto roots = long_pairs(n);
  for (int i = 0; i < n; ++i)
    for (int s : {2, -2}) roots.push_back(unit(n, i, Rational(s)));
  return RootSystem("C" + std::to_string(n), {{0, n, false}}, roots);
}

RootSystem root_system_D(int n) { return RootSystem("D" + std::to_string(n), {{0, n, false}}, long_pairs(n)); }

RootSystem root_system_G2() {
  std::vector<QVec> roots;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      roots.push_back(qadd(unit(3, i), unit(3, j, Rational(-1))));
    }
  for (int i = 0; i < 3; ++i)
    for (int s : {1, -1}) {
      QVec v(3, Rational(-s));
      v[i] = Rational(2 * s);
      roots.push_back(v);
    }
  return RootSystem("G2", {{0, 3, true}}, roots);
}

RootSystem product(const RootSystem& x, const RootSystem& y) {
  std::vector<CoordBlock> blocks = x.blocks();
  for (auto b : y.blocks()) {
    b.offset += x.coords();
    blocks.push_back(b);
  }
  const int n = x.coords() + y.coords();
  std::vector<QVec> roots;
  for (auto& r : x.roots()) {
    QVec v(n, kZero);
    std::copy(r.begin(), r.end(), v.begin());
    roots.push_back(v);
  }
  for (auto& r : y.roots()) {
    QVec v(n, kZero);
    std::copy(r.begin(), r.end(), v.begin() + x.coords());
    roots.push_back(v);
  }
  return RootSystem(x.label() + "x" + y.label(), blocks, roots);
}

std::vector<RootSystem> root_system_catalog() {
  auto a1 = root_system_A(1);
  return {root_system_A(1), root_system_A(2), root_system_A(3), root_system_A(4), root_system_B(2),
          root_system_B(3), root_system_C(3), root_system_D(4), root_system_G2(),  product(a1, a1),
          product(a1, root_system_A(2)), product(product(a1, a1), a1)};
}

RootSystem root_system_by_label(const std::string& label) {
  for (auto& s : root_system_catalog())
    if (s.label() == label) return s;
  throw std::invalid_argument("unknown root system " + label);
}

WeightOrbit weyl_orbit(const RootSystem& sys, const QVec& lambda, std::size_t cap) {
  if (static_cast<int>(lambda.size()) != sys.coords()) throw std::invalid_argument("weyl_orbit: dimension mismatch");
  WeightOrbit out;
  out.base = sys.canonical(lambda);
  std::set<QVec> seen{out.base};
  std::vector<QVec> todo{out.base};
  while (!todo.empty()) {
    QVec v = std::move(todo.back());
    todo.pop_back();
    for (auto& r : sys.roots()) {
      auto w = sys.reflect(r, v);
      if (seen.insert(w).second) {
        if (seen.size() > cap) throw std::length_error("weyl_orbit: orbit exceeds cap");
        todo.push_back(std::move(w));
      }
    }
  }
  out.elems.assign(seen.begin(), seen.end());
  return out;
}

Conditions check_conditions(const RootSystem& sys, const WeightOrbit& orbit, bool compute_c) {
  Conditions c;
  const auto& S = orbit.elems;
  const std::size_t n = S.size();
  c.a = qrank(S) == static_cast<std::size_t>(sys.rank());
  // distinct pairs with a common sum are automatically disjoint
  std::set<QVec> sums;
  c.b = true;
  for (std::size_t i = 0; i < n && c.b; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (!sums.insert(qadd(S[i], S[j])).second) {
        c.b = false;
        break;
      }
  if (!compute_c) return c;
  c.c = true;
  std::map<QVec, std::vector<std::array<std::size_t, 3>>> triples;
  for (std::size_t i = 0; i < n && c.c; ++i)
    for (std::size_t j = i + 1; j < n && c.c; ++j)
      for (std::size_t k = j + 1; k < n && c.c; ++k) {
        auto& list = triples[qadd(qadd(S[i], S[j]), S[k])];
        for (auto& t : list) {
          bool disjoint = true;
          for (auto x : t) disjoint = disjoint && x != i && x != j && x != k;
          if (disjoint) {
            c.c = false;
            break;
          }
        }
        list.push_back({i, j, k});
      }
  return c;
}

bool orthogonal_pair_property(const RootSystem& sys, const WeightOrbit& orbit) {
  const auto& R = sys.roots();
  for (auto [i, j] : sys.orthogonal_pairs())
    for (auto& l : orbit.elems)
      if (sys.inner(l, R[i]) != kZero && sys.inner(l, R[j]) != kZero) return false;
  return true;
}

bool is_scaled_basis_orbit(const RootSystem& sys, const WeightOrbit& orbit) {
  if (!sys.is_type_A()) return false;
  const int n = sys.coords();
  if (static_cast<int>(orbit.elems.size()) != n) return false;
  // c is read off an element of the form c e_i with i < l
  for (auto& s : orbit.elems) {
    int nz = 0;
    Rational c;
    for (auto& x : s)
      if (x != kZero) {
        ++nz;
        c = x;
      }
    if (nz != 1) continue;
    std::vector<QVec> expect;
    for (int i = 0; i < n; ++i) expect.push_back(sys.canonical(unit(n, i, c)));
    std::sort(expect.begin(), expect.end());
    return expect == orbit.elems;
  }
  return false;
}

std::size_t MainTheoremReport::counterexample_count() const {
  std::size_t n = 0;
  for (auto& s : systems) n += s.counterexamples.size();
  return n;
}

MainTheoremReport verify_main_theorem(const std::vector<RootSystem>& catalog, int box) {
  MainTheoremReport rep;
  rep.box = box;
  for (const auto& sys : catalog) {
    SystemVerdict v;
    v.system = sys.label();
    std::vector<int> free;
    {
      std::vector<bool> fixed(sys.coords(), false);
      for (auto& b : sys.blocks())
        if (b.quotient) fixed[b.offset + b.size - 1] = true;
      for (int i = 0; i < sys.coords(); ++i)
        if (!fixed[i]) free.push_back(i);
    }
    std::set<QVec> covered;
    std::vector<int> digits(free.size(), -box);
    for (;;) {
      QVec lam(sys.coords(), kZero);
      for (std::size_t i = 0; i < free.size(); ++i) lam[free[i]] = Rational(digits[i]);
      if (!is_zero_vec(lam)) {
        ++v.vectors;
        if (!covered.count(lam)) {
          auto orbit = weyl_orbit(sys, lam);
          covered.insert(orbit.elems.begin(), orbit.elems.end());
          ++v.orbits;
          auto cond = check_conditions(sys, orbit, false);
          if (cond.a && cond.b) {
            cond = check_conditions(sys, orbit, true);
            ++v.orbits_ab;
            if (cond.c) ++v.orbits_abc;
            auto fail = [&](const std::string& why) { v.counterexamples.push_back({sys.label(), lam, cond, why}); };
            if (!sys.is_type_A()) {
              fail("(a)+(b) orbit outside simple type A");
            } else {
              const int l = sys.rank();
              if ((l != 2 || cond.c) && !is_scaled_basis_orbit(sys, orbit)) fail("orbit is not {c e_i}");
            }
          }
          if (cond.b) {
            ++v.lemma_checks;
            if (!orthogonal_pair_property(sys, orbit)) v.counterexamples.push_back({sys.label(), lam, cond, "orthogonal root pair property fails"});
          }
        }
      }
      std::size_t pos = 0;
      while (pos < digits.size() && digits[pos] == box) digits[pos++] = -box;
      if (pos == digits.size()) break;
      ++digits[pos];
    }
    rep.systems.push_back(std::move(v));
  }
  return rep;
}

std::string qvec_to_string(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += rational_to_string(v[i]);
  }
  return s + ")";
}

}  // namespace adelic
