#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adelic/drinfeld/module.hpp"

namespace adelic {

// Raised for malformed module files; where() is "line L, column C" or "field NAME".
class ModuleParseError : public std::runtime_error {
 public:
  ModuleParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// The on-disk module description. Coefficient strings are kept verbatim.
struct ModuleSpec {
  std::uint32_t q = 0;
  std::string base;                             // "finite" or "rational"
  std::variant<unsigned, std::string> m_or_var;  // extension degree, or the base variable
  int rank = 0;
  std::vector<std::string> phiT;  // constant first
  std::string name;
};

ModuleSpec parse_module_spec(const std::string& text);
// Two-space indented, fixed key order, trailing newline.
std::string module_spec_to_json(const ModuleSpec& spec);

// Sparse "c*s^k+..." polynomial over F_q; elements of F_q are their integer codes.
APoly parse_sparse_poly(const Fq& k, const std::string& text, const std::string& var = "s");
// Canonical form: descending degree, unit coefficients dropped, "0" for zero.
std::string sparse_poly_to_string(const APoly& f, const std::string& var = "s");

// base "rational": a family over F_q(s).
DrinfeldFamily to_family(const ModuleSpec& spec);
// base "finite": a module over F_{q^m} = F_q[s]/(g), g the modulus chosen by ExtField::build.
DrinfeldModule to_module(const ModuleSpec& spec);
ModuleSpec spec_of(const DrinfeldFamily& fam, const std::string& var = "s");

}  // namespace adelic
