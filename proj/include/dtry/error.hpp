#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dtry {

enum class ErrorCode {
  BadName,
  BadPath,
  PrefixConflict,
  Syntax,
  DuplicatePath,
  EmptySubdir,
  NotACategory,
  NotComposable,
  InvalidMorphism,
};

/// Stable textual form used in diagnostics, e.g. "E_PREFIX_CONFLICT".
std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace dtry
