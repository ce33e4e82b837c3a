#ifndef RELCON_ERRORS_HPP
#define RELCON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relcon {

/// Failure categories. The CLI maps each category to a process exit code.
enum class ErrorKind {
  config,      // ParseError, SchemaError
  assumption,  // AssumptionViolated, BadDelta, BadParams
  infeasible,  // OutOfRange, NoSolution, NoRoot, NoContract, TrivialContract
  cap          // CapExceeded
};

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return 1;
    case ErrorKind::assumption: return 2;
    case ErrorKind::infeasible: return 3;
    case ErrorKind::cap: return 4;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define RELCON_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(Kind, #Name, what) {} \
  };

RELCON_DEFINE_ERROR(ParseError, ErrorKind::config)
RELCON_DEFINE_ERROR(AssumptionViolated, ErrorKind::assumption)
RELCON_DEFINE_ERROR(BadDelta, ErrorKind::assumption)
RELCON_DEFINE_ERROR(BadParams, ErrorKind::assumption)
RELCON_DEFINE_ERROR(OutOfRange, ErrorKind::infeasible)
RELCON_DEFINE_ERROR(NoSolution, ErrorKind::infeasible)
RELCON_DEFINE_ERROR(NoRoot, ErrorKind::infeasible)
RELCON_DEFINE_ERROR(NoContract, ErrorKind::infeasible)
RELCON_DEFINE_ERROR(TrivialContract, ErrorKind::infeasible)
RELCON_DEFINE_ERROR(CapExceeded, ErrorKind::cap)

#undef RELCON_DEFINE_ERROR

/// Schema violation; key() names the offending configuration key.
class SchemaError : public Error {
 public:
  SchemaError(std::string key, const std::string& what)
      : Error(ErrorKind::config, "SchemaError", what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace relcon

#endif  // RELCON_ERRORS_HPP
