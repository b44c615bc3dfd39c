#pragma once

#include "dtry/error.hpp"

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dtry {

/// A single path segment: nonempty, drawn from [A-Za-z0-9_].
///
/// Names order by the bytes of their text; that order is the fixed linear
/// order on symbols from which the lexicographic path order is derived.
class Name {
public:
  /// Throws Error(BadName) naming the first offending character index.
  explicit Name(std::string text);

  const std::string& str() const { return text_; }

  friend bool operator==(const Name&, const Name&) = default;
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) {
    return a.text_.compare(b.text_) <=> 0;
  }

private:
  std::string text_;
};

bool is_name_char(char c);
Name parse_name(std::string_view text);

/// A finite sequence of names. The empty path is the root.
class Path {
public:
  Path() = default;
  explicit Path(std::vector<Name> segments) : segments_(std::move(segments)) {}
  Path(std::initializer_list<Name> segments) : segments_(segments) {}

  const std::vector<Name>& segments() const { return segments_; }
  std::size_t size() const { return segments_.size(); }
  bool empty() const { return segments_.empty(); }
  const Name& operator[](std::size_t i) const { return segments_[i]; }
  const Name& front() const { return segments_.front(); }

  /// Path without its first segment. Requires !empty().
  Path tail() const;
  /// First n segments.
  Path take(std::size_t n) const;

  friend bool operator==(const Path&, const Path&) = default;
  /// Lexicographic: segment-wise by name bytes, proper prefixes first.
  friend std::strong_ordering operator<=>(const Path& a, const Path& b);

private:
  std::vector<Name> segments_;
};

using PathSet = std::set<Path>;

/// Splits on '.'. The empty string is the root path; "." and "a..b" are
/// rejected with Error(BadPath) carrying the segment index.
Path parse_path(std::string_view text);
std::string to_string(const Path& p);

Path concat(const Path& p, const Path& q);
Path operator/(const Name& head, const Path& rest);

bool is_prefix(const Path& p, const Path& q);
bool is_prefix_free(const PathSet& s);

std::strong_ordering lex_cmp(const Path& p, const Path& q);

}  // namespace dtry
