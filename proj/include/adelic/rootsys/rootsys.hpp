#pragma once

#include <string>
#include <vector>

#include "adelic/core/types.hpp"

namespace adelic {

using QVec = std::vector<Rational>;

// A block of coordinates: either euclidean R^size, or R^size modulo the
// diagonal with the section "last coordinate of the block is 0".
struct CoordBlock {
  int offset = 0;
  int size = 0;
  bool quotient = false;
};

class RootSystem {
 public:
  RootSystem() = default;
  RootSystem(std::string label, std::vector<CoordBlock> blocks, std::vector<QVec> roots);

  const std::string& label() const { return label_; }
  int coords() const { return coords_; }
  int rank() const { return rank_; }  // dim E
  const std::vector<CoordBlock>& blocks() const { return blocks_; }
  const std::vector<QVec>& roots() const { return roots_; }
  // Simple type A_l (a single quotient block with l + 1 coordinates and roots e_i - e_j).
  bool is_type_A() const { return type_a_; }

  QVec canonical(QVec v) const;
  Rational inner(const QVec& x, const QVec& y) const;
  QVec reflect(const QVec& alpha, const QVec& x) const;
  // Standard basis vector e_i of the ambient coordinates, canonicalized.
  QVec basis_vector(int i) const;
  // Ordered pairs of roots (a, b) with <a, b> = 0.
  std::vector<std::pair<int, int>> orthogonal_pairs() const;

 private:
  std::string label_;
  std::vector<CoordBlock> blocks_;
  std::vector<QVec> roots_;
  int coords_ = 0;
  int rank_ = 0;
  bool type_a_ = false;
};

RootSystem root_system_A(int l);
RootSystem root_system_B(int n);
RootSystem root_system_C(int n);
RootSystem root_system_D(int n);
RootSystem root_system_G2();
RootSystem product(const RootSystem& x, const RootSystem& y);
// A1..A4, B2, B3, C3, D4, G2, A1xA1, A1xA2, A1xA1xA1.
std::vector<RootSystem> root_system_catalog();
RootSystem root_system_by_label(const std::string& label);

struct WeightOrbit {
  QVec base;
  std::vector<QVec> elems;  // sorted lexicographically
};

WeightOrbit weyl_orbit(const RootSystem& sys, const QVec& lambda, std::size_t cap = 100000);

struct Conditions {
  bool a = false;  // S spans E
  bool b = false;  // no distinct l1..l4 with l1 + l2 = l3 + l4
  bool c = false;  // no distinct l1..l6 with l1 + l2 + l3 = l4 + l5 + l6
};
// (c) is enumerated only when compute_c is set; otherwise it is reported false.
Conditions check_conditions(const RootSystem& sys, const WeightOrbit& orbit, bool compute_c = true);

// For orbits with (b): every element is orthogonal to one root of each orthogonal pair.
bool orthogonal_pair_property(const RootSystem& sys, const WeightOrbit& orbit);

// Orbit equal to {c e_i : 0 <= i <= l} for a single c != 0 (type A only).
bool is_scaled_basis_orbit(const RootSystem& sys, const WeightOrbit& orbit);

struct Counterexample {
  std::string system;
  QVec lambda;
  Conditions cond;
  std::string reason;
};

struct SystemVerdict {
  std::string system;
  long vectors = 0;
  long orbits = 0;
  long orbits_ab = 0;   // satisfying (a) and (b)
  long orbits_abc = 0;  // satisfying (a), (b) and (c)
  long lemma_checks = 0;
  std::vector<Counterexample> counterexamples;
};

struct MainTheoremReport {
  int box = 3;
  std::vector<SystemVerdict> systems;
  std::size_t counterexample_count() const;
};

// Scans all nonzero canonical vectors in [-box, box]^coords, one representative per orbit.
MainTheoremReport verify_main_theorem(const std::vector<RootSystem>& catalog, int box = 3);

std::string qvec_to_string(const QVec& v);

}  // namespace adelic
