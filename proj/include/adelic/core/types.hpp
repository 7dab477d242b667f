#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace adelic {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;
using Rng = std::mt19937_64;

// Raised when an internal cross-check fails. Never expected on correct input.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error("invariant violation: " + what) {}
};

class FieldMismatch : public std::invalid_argument {
 public:
  explicit FieldMismatch(const std::string& what) : std::invalid_argument("field mismatch: " + what) {}
};

std::string rational_to_string(const Rational& r);

}  // namespace adelic
