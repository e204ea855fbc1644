#pragma once

#include <stdexcept>
#include <string>

namespace irrev {

enum class errc {
  invalid_argument,
  space_mismatch,
  grid_mismatch,
  off_lattice,
  precondition,
  not_hermitian,
  dimension_mismatch,
};

inline const char* to_string(errc e) {
  switch (e) {
    case errc::invalid_argument: return "invalid argument";
    case errc::space_mismatch: return "space tag mismatch";
    case errc::grid_mismatch: return "grid mismatch";
    case errc::off_lattice: return "time not on the dual lattice";
    case errc::precondition: return "precondition violated";
    case errc::not_hermitian: return "operator is not Hermitian";
    case errc::dimension_mismatch: return "dimension mismatch";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace irrev
