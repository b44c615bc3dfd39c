#include "dtry/names.hpp"

#include <algorithm>
#include <iterator>

namespace dtry {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadName: return "E_BAD_NAME";
    case ErrorCode::BadPath: return "E_BAD_PATH";
    case ErrorCode::PrefixConflict: return "E_PREFIX_CONFLICT";
    case ErrorCode::Syntax: return "E_SYNTAX";
    case ErrorCode::DuplicatePath: return "E_DUPLICATE_PATH";
    case ErrorCode::EmptySubdir: return "E_EMPTY_SUBDIR";
    case ErrorCode::NotACategory: return "E_NOT_A_CATEGORY";
    case ErrorCode::NotComposable: return "E_NOT_COMPOSABLE";
    case ErrorCode::InvalidMorphism: return "E_INVALID_MORPHISM";
  }
  return "E_UNKNOWN";
}

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

namespace {

// Index of the first character that disqualifies `text` as a name, or npos.
std::size_t first_bad_char(std::string_view text) {
  if (text.empty()) return 0;
  auto it = std::find_if_not(text.begin(), text.end(), is_name_char);
  return it == text.end() ? std::string_view::npos
                          : static_cast<std::size_t>(it - text.begin());
}

}  // namespace

Name::Name(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw Error(ErrorCode::BadName, "empty name");
  if (auto i = first_bad_char(text_); i != std::string_view::npos) {
    throw Error(ErrorCode::BadName, "invalid character at index " +
                                        std::to_string(i) + " in name '" +
                                        text_ + "'");
  }
}

Name parse_name(std::string_view text) { return Name(std::string(text)); }

Path Path::tail() const {
  return Path(std::vector<Name>(std::next(segments_.begin()), segments_.end()));
}

Path Path::take(std::size_t n) const {
  n = std::min(n, segments_.size());
  return Path(std::vector<Name>(segments_.begin(),
                                segments_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::strong_ordering operator<=>(const Path& a, const Path& b) {
  return std::lexicographical_compare_three_way(
      a.segments_.begin(), a.segments_.end(), b.segments_.begin(),
      b.segments_.end());
}

Path parse_path(std::string_view text) {
  std::vector<Name> segments;
  if (text.empty()) return Path{};
  std::size_t index = 0;
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    auto seg = text.substr(start, dot == std::string_view::npos ? dot : dot - start);
    if (seg.empty()) {
      throw Error(ErrorCode::BadPath,
                  "empty segment " + std::to_string(index) + " in path '" +
                      std::string(text) + "'");
    }
    if (auto i = first_bad_char(seg); i != std::string_view::npos) {
      throw Error(ErrorCode::BadPath,
                  "invalid character at index " + std::to_string(i) +
                      " of segment " + std::to_string(index) + " in path '" +
                      std::string(text) + "'");
    }
    segments.emplace_back(std::string(seg));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
    ++index;
  }
  return Path(std::move(segments));
}

std::string to_string(const Path& p) {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += '.';
    out += p[i].str();
  }
  return out;
}

Path concat(const Path& p, const Path& q) {
  std::vector<Name> segments;
  segments.reserve(p.size() + q.size());
  segments.insert(segments.end(), p.segments().begin(), p.segments().end());
  segments.insert(segments.end(), q.segments().begin(), q.segments().end());
  return Path(std::move(segments));
}

Path operator/(const Name& head, const Path& rest) {
  return concat(Path{head}, rest);
}

bool is_prefix(const Path& p, const Path& q) {
  return p.size() <= q.size() &&
         std::equal(p.segments().begin(), p.segments().end(),
                    q.segments().begin());
}

bool is_prefix_free(const PathSet& s) {
  // In lex order every path lying between p and an extension of p also
  // extends p, so adjacent pairs suffice.
  for (auto it = s.begin(); it != s.end(); ++it) {
    auto next = std::next(it);
    if (next != s.end() && is_prefix(*it, *next)) return false;
  }
  return true;
}

std::strong_ordering lex_cmp(const Path& p, const Path& q) { return p <=> q; }

}  // namespace dtry
