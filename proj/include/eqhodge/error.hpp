#pragma once

#include <stdexcept>
#include <string>

namespace eqhodge {

/// Failure raised by any operation in the library. Carries the module and
/// operation names so callers (the CLI in particular) can report where a
/// check failed.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string operation, const std::string& what)
      : std::runtime_error(module + "::" + operation + ": " + what),
        module_(std::move(module)),
        operation_(std::move(operation)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string module_;
  std::string operation_;
};

}  // namespace eqhodge
