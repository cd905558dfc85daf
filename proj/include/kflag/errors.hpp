#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kflag {

/// Whether an error stems from bad input (exit code 1) or from a failed
/// computation (exit code 2).
enum class ErrorCategory { Input, Computation };

class Error : public std::runtime_error {
 public:
  Error(std::string kind, ErrorCategory category, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)), category_(category) {}

  /// Machine-readable error class, e.g. "syntax_error".
  const std::string& kind() const noexcept { return kind_; }
  ErrorCategory category() const noexcept { return category_; }

 private:
  std::string kind_;
  ErrorCategory category_;
};

#define KFLAG_DEFINE_ERROR(Name, tag, category)                                   \
  class Name : public Error {                                                     \
   public:                                                                        \
    explicit Name(const std::string& message) : Error(tag, category, message) {}  \
  };

KFLAG_DEFINE_ERROR(ModeError, "mode_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(UnitError, "unit_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(ArgumentError, "argument_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(UnsupportedError, "unsupported_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(ValidationError, "validation_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(SemanticError, "semantic_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(BindingError, "binding_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(SchemaError, "schema_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(IoError, "io_error", ErrorCategory::Input)
KFLAG_DEFINE_ERROR(EvaluationError, "evaluation_error", ErrorCategory::Computation)
KFLAG_DEFINE_ERROR(ResourceError, "resource_error", ErrorCategory::Computation)
KFLAG_DEFINE_ERROR(SizeError, "size_error", ErrorCategory::Computation)
KFLAG_DEFINE_ERROR(InternalError, "internal_error", ErrorCategory::Computation)

#undef KFLAG_DEFINE_ERROR

/// Parse failure with a source position and the set of tokens that would
/// have been accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::vector<std::string> expected, const std::string& found);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

}  // namespace kflag
