#pragma once

#include "dtry/dtry.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtry::formats {

struct Diagnostic {
  ErrorCode code;
  std::size_t line;  // 1-based
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// "LINE:CODE:MESSAGE"
std::string to_string(const Diagnostic& d);

template <class T>
struct ParseResult {
  std::optional<Dtry<T>> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
};

// ---------------------------------------------------------------------------
// Flat format
//
//   line    := path ws* '=' ws* value
//   comment := '#' .*          (first column only)
//
// Blank lines are skipped, a trailing CR is dropped, and the value is the
// rest of the line with surrounding blanks removed. Values are opaque
// strings. The root path is written as the empty string ("= 5").

struct FlatEntry {
  std::size_t line;
  Path path;
  std::string value;
};

struct FlatDocument {
  std::vector<FlatEntry> entries;
  std::vector<Diagnostic> diagnostics;  // syntax and path errors only
};

/// Line-level parse; does not look at how keys relate to each other.
FlatDocument read_flat_document(std::string_view text);

/// Duplicate keys and every prefix-related pair of keys, reported at the
/// later of the two lines. Works on the key list alone.
std::vector<Diagnostic> check_keys(const std::vector<FlatEntry>& entries);

ParseResult<std::string> parse_flat(std::string_view text);

/// True if `value` survives a write/read cycle: no CR/LF and no leading or
/// trailing blanks.
bool is_flat_value(std::string_view value);

/// Canonical form: one line per complete path, lex order, LF-terminated.
/// Throws std::invalid_argument for a value rejected by is_flat_value.
std::string emit_flat(const Dtry<std::string>& d);

// ---------------------------------------------------------------------------
// Nested format: JSON, objects are nodes and everything else is a leaf.
// The empty top-level object is the empty directory.

using Scalar = nlohmann::json;

ParseResult<Scalar> parse_nested(std::string_view text);

/// Keys in byte order, two-space indent, no trailing newline.
std::string emit_nested(const Dtry<Scalar>& d);

// ---------------------------------------------------------------------------
// Conversion between leaf types.
//
// A flat value that is the canonical JSON spelling of a number, boolean,
// null or array becomes that JSON value; anything else becomes a string.
// Every flat value converts losslessly. A string leaf whose text would read
// back as something else (e.g. the string "2") has no flat spelling.

Scalar scalar_from_flat(const std::string& value);
std::optional<std::string> flat_from_scalar(const Scalar& value);

Dtry<Scalar> to_nested(const Dtry<std::string>& d);
/// Throws Error(Syntax) naming the first path whose value has no flat form.
Dtry<std::string> to_flat(const Dtry<Scalar>& d);

}  // namespace dtry::formats
