#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "adelic/drinfeld/module.hpp"

namespace adelic {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double limit_seconds = 0;  // a run over the limit fails
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<bool(std::string&)> run;  // fills the detail line
};

const std::vector<Criterion>& acceptance_criteria();
// Runs the selected criteria (all when empty) in order, printing one line each as it finishes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& which = {}, std::ostream* out = nullptr);
std::string format_result(const CriterionResult& r);

// The charpoly cross-validation corpus: fixed seed, q in {2,3,4,5}, ranks 1..3, base degree <= 4.
std::vector<DrinfeldModule> charpoly_corpus();

}  // namespace adelic
