#pragma once

#include <stdexcept>
#include <string>

namespace qb {

enum class Err {
  NON_SYMMETRIZABLE,
  BAD_CARTAN,
  DIVISION_BY_ZERO,
  OUT_OF_RANGE,
  FLAVOR_MISMATCH,
  SAME_INDEX,
  WEIGHT_MIXED,
  HEIGHT_LIMIT,
  DEGENERATE_GRAM,
  IDENTITY_VIOLATION,
  NOT_HOMOGENEOUS,
  WRONG_DATUM,
  UNSAFE_REGION,
  NOT_A_SUBMODULE,
  INCONSISTENT_MODULE,
  PARSE_ERROR,
  UNKNOWN_INDEX,
  USAGE,
};

const char* err_name(Err e);

class EngineError : public std::runtime_error {
 public:
  EngineError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw EngineError(code, what); }

}  // namespace qb
