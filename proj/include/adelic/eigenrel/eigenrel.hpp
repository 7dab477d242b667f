#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adelic/core/embedding.hpp"
#include "adelic/core/matrix.hpp"

namespace adelic {

// Value of the eigenvalue-relation product on the roots of a monic polynomial.
struct EigenRelReport {
  ExtField split;                       // field containing all roots
  std::vector<ExtField::Elem> roots;    // with multiplicity
  ExtField::Elem value_split;           // product, in split
  std::optional<ExtField::Elem> value;  // the same value in the input field
  bool flag_a = false;  // a_i = a_j
  bool flag_b = false;  // a_i a_j = a_k^2
  bool flag_c = false;  // a_i a_j = a_k a_l
  bool flag_d = false;  // a_i a_j a_k = a_l a_m a_n
  bool any_flag() const { return flag_a || flag_b || flag_c || flag_d; }
  bool is_zero() const { return !value || value->empty() || std::all_of(value->begin(), value->end(), [](auto c) { return c == 0; }); }
};

// cp: monic, coefficients low to high in F, degree n >= 2, nonzero constant term.
EigenRelReport f_value(const ExtField& F, const std::vector<ExtField::Elem>& cp);

// Polynomial with integer coefficients in b_1..b_n; key = exponent vector.
struct IntPoly {
  int nvars = 0;
  std::map<std::vector<int>, Int> terms;
  std::string to_string(const std::string& var = "b") const;
};

// f as a polynomial in the charpoly coefficients b_k (cp = X^n + b_1 X^{n-1} + ... + b_n); n in {2, 3}.
const IntPoly& symbolic_f(int n);
ExtField::Elem eval_symbolic(const ExtField& F, const IntPoly& f, const std::vector<ExtField::Elem>& cp);

using MatSampler = std::function<Matrix<ExtField::Elem>(Rng&)>;
Matrix<ExtField::Elem> random_matrix(const ExtField& L, int n, Rng& rng);
Matrix<ExtField::Elem> mat_pow(const ExtField& L, Matrix<ExtField::Elem> g, std::uint64_t N);

struct NonvanishingResult {
  std::optional<Matrix<ExtField::Elem>> witness;
  int tried = 0;  // invertible samples examined
};
// Searches for invertible g with f(g^N) != 0.
NonvanishingResult nonvanishing_search(const ExtField& L, int n, std::uint64_t N, int budget, std::uint64_t seed = 0,
                                       const MatSampler& sampler = {});

}  // namespace adelic
