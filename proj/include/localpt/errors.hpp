#pragma once

#include <stdexcept>
#include <string>

namespace localpt {

struct DivisionByZero : std::runtime_error {
  DivisionByZero() : std::runtime_error("division by zero") {}
};

struct SpecializationPole : std::runtime_error {
  SpecializationPole() : std::runtime_error("denominator vanishes under substitution") {}
};

struct NonInvertibleConstantTerm : std::runtime_error {
  explicit NonInvertibleConstantTerm(const std::string& what = "constant term is zero")
      : std::runtime_error(what) {}
};

struct IncompatibleVarSets : std::runtime_error {
  IncompatibleVarSets() : std::runtime_error("incompatible variable sets") {}
};

struct UnknownVariable : std::runtime_error {
  explicit UnknownVariable(const std::string& name) : std::runtime_error("unknown variable " + name) {}
};

struct AdmissibilityError : std::runtime_error {
  explicit AdmissibilityError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrix : std::runtime_error {
  SingularMatrix() : std::runtime_error("singular matrix") {}
};

struct MalformedIntegrand : std::runtime_error {
  explicit MalformedIntegrand(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace localpt
