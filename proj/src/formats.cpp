#include "dtry/formats.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <stdexcept>

namespace dtry::formats {

std::string to_string(const Diagnostic& d) {
  return std::to_string(d.line) + ":" + std::string(code_name(d.code)) + ":" + d.message;
}

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

void sort_by_line(std::vector<Diagnostic>& diags) {
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Flat

FlatDocument read_flat_document(std::string_view text) {
  FlatDocument doc;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (trim(line).empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      doc.diagnostics.push_back({ErrorCode::Syntax, line_no, "expected 'path = value'"});
      continue;
    }
    try {
      Path p = parse_path(trim(line.substr(0, eq)));
      doc.entries.push_back({line_no, std::move(p), std::string(trim(line.substr(eq + 1)))});
    } catch (const Error& e) {
      doc.diagnostics.push_back({e.code(), line_no, e.what()});
    }
  }
  return doc;
}

std::vector<Diagnostic> check_keys(const std::vector<FlatEntry>& entries) {
  std::vector<Diagnostic> diags;
  std::map<Path, std::size_t> first_line;
  for (const auto& e : entries) {
    auto [it, fresh] = first_line.emplace(e.path, e.line);
    if (!fresh) {
      diags.push_back({ErrorCode::DuplicatePath, e.line,
                       "duplicate path '" + to_string(e.path) + "' (first defined on line " +
                           std::to_string(it->second) + ")"});
    }
  }
  for (const auto& [longer, longer_line] : first_line) {
    for (std::size_t n = 0; n < longer.size(); ++n) {
      auto shorter = first_line.find(longer.take(n));
      if (shorter == first_line.end()) continue;
      bool longer_is_later = longer_line >= shorter->second;
      const Path& later = longer_is_later ? longer : shorter->first;
      const Path& earlier = longer_is_later ? shorter->first : longer;
      diags.push_back({ErrorCode::PrefixConflict, std::max(shorter->second, longer_line),
                       "path '" + to_string(later) + "' conflicts with '" +
                           to_string(earlier) + "' (line " +
                           std::to_string(std::min(shorter->second, longer_line)) + ")"});
    }
  }
  sort_by_line(diags);
  return diags;
}

ParseResult<std::string> parse_flat(std::string_view text) {
  auto doc = read_flat_document(text);
  ParseResult<std::string> result;
  result.diagnostics = std::move(doc.diagnostics);
  auto key_diags = check_keys(doc.entries);
  result.diagnostics.insert(result.diagnostics.end(), key_diags.begin(), key_diags.end());
  sort_by_line(result.diagnostics);
  if (!result.diagnostics.empty()) return result;

  PathMap<std::string> m;
  for (auto& e : doc.entries) m.emplace(std::move(e.path), std::move(e.value));
  result.value = from_path_map(m);
  return result;
}

bool is_flat_value(std::string_view value) {
  if (value.find_first_of("\r\n") != std::string_view::npos) return false;
  return trim(value).size() == value.size();
}

std::string emit_flat(const Dtry<std::string>& d) {
  std::string out;
  for_each_path(d, [&](const Path& p, const std::string& v) {
    if (!is_flat_value(v)) {
      throw std::invalid_argument("value at '" + to_string(p) +
                                  "' cannot be written as a flat line");
    }
    out += to_string(p);
    if (!p.empty()) out += ' ';
    out += '=';
    if (!v.empty()) {
      out += ' ';
      out += v;
    }
    out += '\n';
  });
  return out;
}

// ---------------------------------------------------------------------------
// Nested

namespace {

// Forward iterator over a buffer that publishes how far the JSON lexer has
// read, so SAX callbacks can be mapped back to source lines.
class TrackingIterator {
public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  TrackingIterator() = default;
  TrackingIterator(const char* p, const char** cursor) : p_(p), cursor_(cursor) {}

  reference operator*() const { return *p_; }
  TrackingIterator& operator++() {
    ++p_;
    if (cursor_) *cursor_ = p_;
    return *this;
  }
  TrackingIterator operator++(int) {
    auto old = *this;
    ++*this;
    return old;
  }
  bool operator==(const TrackingIterator& o) const { return p_ == o.p_; }

private:
  const char* p_ = nullptr;
  const char** cursor_ = nullptr;
};

class LineIndex {
public:
  explicit LineIndex(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') newlines_.push_back(i);
    }
    last_line_ = newlines_.size() + ((text.empty() || text.back() == '\n') ? 0 : 1);
    if (last_line_ == 0) last_line_ = 1;
  }

  /// 1-based line containing byte `offset`, clamped to the document.
  std::size_t line_of(std::size_t offset) const {
    auto line = static_cast<std::size_t>(
                    std::lower_bound(newlines_.begin(), newlines_.end(), offset) -
                    newlines_.begin()) +
                1;
    return std::min(line, last_line_);
  }

private:
  std::vector<std::size_t> newlines_;
  std::size_t last_line_ = 1;
};

// Checks the directory structure of a JSON text without building it.
class StructureChecker : public nlohmann::json_sax<Scalar> {
public:
  StructureChecker(std::string_view text, const char** cursor)
      : begin_(text.data()), cursor_(cursor), lines_(text) {}

  std::vector<Diagnostic> diagnostics;

  bool null() override { return true; }
  bool boolean(bool) override { return true; }
  bool number_integer(number_integer_t) override { return true; }
  bool number_unsigned(number_unsigned_t) override { return true; }
  bool number_float(number_float_t, const string_t&) override { return true; }
  bool string(string_t&) override { return true; }
  bool binary(binary_t&) override { return true; }

  bool start_object(std::size_t) override {
    frames_.push_back({in_leaf(), current_line(), {}});
    return true;
  }

  bool key(string_t& k) override {
    auto& f = frames_.back();
    if (f.leaf) return true;
    std::size_t line = current_line();
    try {
      parse_name(k);
    } catch (const Error& e) {
      diagnostics.push_back({ErrorCode::BadName, line, e.what()});
    }
    if (!f.keys.insert(k).second) {
      diagnostics.push_back({ErrorCode::DuplicatePath, line, "duplicate key '" + k + "'"});
    }
    return true;
  }

  bool end_object() override {
    const auto& f = frames_.back();
    if (!f.leaf && f.keys.empty() && frames_.size() > 1) {
      diagnostics.push_back(
          {ErrorCode::EmptySubdir, f.open_line, "empty object below the root"});
    }
    frames_.pop_back();
    return true;
  }

  bool start_array(std::size_t) override {
    frames_.push_back({true, current_line(), {}});
    return true;
  }
  bool end_array() override {
    frames_.pop_back();
    return true;
  }

  bool parse_error(std::size_t position, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    std::string msg = ex.what();
    // Drop the library's "[json.exception.parse_error.101] " tag.
    if (auto close = msg.find("] "); msg.rfind("[json.", 0) == 0 && close != std::string::npos) {
      msg.erase(0, close + 2);
    }
    diagnostics.push_back(
        {ErrorCode::Syntax, lines_.line_of(position == 0 ? 0 : position - 1), msg});
    return false;
  }

private:
  struct Frame {
    bool leaf;  // part of a leaf value (inside an array)
    std::size_t open_line;
    std::set<std::string> keys;
  };

  bool in_leaf() const { return !frames_.empty() && frames_.back().leaf; }

  std::size_t current_line() const {
    auto consumed = static_cast<std::size_t>(*cursor_ - begin_);
    return lines_.line_of(consumed == 0 ? 0 : consumed - 1);
  }

  const char* begin_;
  const char** cursor_;
  LineIndex lines_;
  std::vector<Frame> frames_;
};

DtryNE<Scalar> node_from_json(const Scalar& j) {
  if (!j.is_object()) return DtryNE<Scalar>::leaf(j);
  NonEmptyRecord<DtryNE<Scalar>>::Map children;
  for (const auto& [k, v] : j.items()) children.emplace(Name(k), node_from_json(v));
  return DtryNE<Scalar>::node(*NonEmptyRecord<DtryNE<Scalar>>::coerce(std::move(children)));
}

Scalar json_from_node(const DtryNE<Scalar>& d) {
  if (d.is_leaf()) return d.value();
  Scalar obj = Scalar::object();
  for (const auto& [k, child] : d.children().entries()) obj[k.str()] = json_from_node(child);
  return obj;
}

}  // namespace

ParseResult<Scalar> parse_nested(std::string_view text) {
  ParseResult<Scalar> result;
  const char* cursor = text.data();
  StructureChecker checker(text, &cursor);
  TrackingIterator first(text.data(), &cursor);
  TrackingIterator last(text.data() + text.size(), nullptr);
  Scalar::sax_parse(first, last, &checker);
  result.diagnostics = std::move(checker.diagnostics);
  sort_by_line(result.diagnostics);
  if (!result.diagnostics.empty()) return result;

  auto j = Scalar::parse(text.begin(), text.end());
  if (j.is_object() && j.empty()) {
    result.value = Dtry<Scalar>();
  } else {
    result.value = Dtry<Scalar>(node_from_json(j));
  }
  return result;
}

std::string emit_nested(const Dtry<Scalar>& d) {
  if (!d.root()) return "{}";
  return json_from_node(*d.root()).dump(2);
}

// ---------------------------------------------------------------------------
// Leaf conversion

Scalar scalar_from_flat(const std::string& value) {
  auto j = Scalar::parse(value, nullptr, /*allow_exceptions=*/false);
  if (!j.is_discarded() && !j.is_object() && !j.is_string() && j.dump() == value) return j;
  return Scalar(value);
}

std::optional<std::string> flat_from_scalar(const Scalar& value) {
  if (value.is_object()) return std::nullopt;
  if (value.is_string()) {
    const auto& s = value.get_ref<const std::string&>();
    if (!is_flat_value(s) || !scalar_from_flat(s).is_string()) return std::nullopt;
    return s;
  }
  std::string text = value.dump();
  auto back = scalar_from_flat(text);
  if (back.is_string() || back.dump() != text) return std::nullopt;
  return text;
}

Dtry<Scalar> to_nested(const Dtry<std::string>& d) {
  return map_values([](const std::string& v) { return scalar_from_flat(v); }, d);
}

Dtry<std::string> to_flat(const Dtry<Scalar>& d) {
  PathMap<std::string> m;
  for_each_path(d, [&](const Path& p, const Scalar& v) {
    auto text = flat_from_scalar(v);
    if (!text) {
      throw Error(ErrorCode::Syntax,
                  "value at '" + to_string(p) + "' has no flat spelling: " + v.dump());
    }
    m.emplace_hint(m.end(), p, std::move(*text));
  });
  return from_path_map(m);
}

}  // namespace dtry::formats
