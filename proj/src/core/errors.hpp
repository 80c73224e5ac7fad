#pragma once

#include <stdexcept>
#include <string>

namespace condlab {

enum class Errc {
  invalid_argument,
  impossible_history,
  outside_support,
  unsupported_dimension,
  empty_sample,
  enumeration_too_large,
  pole_at_one,
  precondition_violated,
  argument_mismatch,
  invalid_config,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace condlab
