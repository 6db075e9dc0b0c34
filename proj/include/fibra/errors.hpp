#pragma once

#include <stdexcept>
#include <string>

namespace fibra {

enum class ErrorKind {
  InvalidInput,
  DegenerateModel,
  BadPlace,
  NotPrincipal,
  HenselFails,
  HypothesisViolated,
  NotRegular,
  RamifiedBasePoint,
  CriticalFiber,
  NoDegreeOnePlace,
};

inline const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateModel: return "DegenerateModel";
    case ErrorKind::BadPlace: return "BadPlace";
    case ErrorKind::NotPrincipal: return "NotPrincipal";
    case ErrorKind::HenselFails: return "HenselFails";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::RamifiedBasePoint: return "RamifiedBasePoint";
    case ErrorKind::CriticalFiber: return "CriticalFiber";
    case ErrorKind::NoDegreeOnePlace: return "NoDegreeOnePlace";
  }
  return "Unknown";
}

/// Process exit code for the CLI; one code per error kind.
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return 2;
    case ErrorKind::DegenerateModel: return 3;
    case ErrorKind::BadPlace: return 4;
    case ErrorKind::NotPrincipal: return 5;
    case ErrorKind::HenselFails: return 6;
    case ErrorKind::HypothesisViolated: return 7;
    case ErrorKind::NotRegular: return 8;
    case ErrorKind::RamifiedBasePoint: return 9;
    case ErrorKind::CriticalFiber: return 10;
    case ErrorKind::NoDegreeOnePlace: return 11;
  }
  return 70;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fibra
