#include "dtry/cli.hpp"

#include "dtry/formats.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace dtry::cli {

namespace {

using formats::Diagnostic;
using formats::Scalar;

enum class Format { Flat, Nested };

const std::map<std::string, Format> kFormats{{"flat", Format::Flat}, {"nested", Format::Nested}};

struct IoFailure {
  std::string what;
};

// Reported as a diagnostic-free exit 1.
struct BadInput {
  std::string what;
};

struct Session {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  std::map<std::string, std::string> cache;  // "-" may be named more than once

  const std::string& read(const std::string& file) {
    if (auto it = cache.find(file); it != cache.end()) return it->second;
    std::ostringstream buf;
    if (file == "-") {
      buf << in.rdbuf();
    } else {
      std::ifstream f(file, std::ios::binary);
      if (!f) throw IoFailure{"cannot open '" + file + "'"};
      buf << f.rdbuf();
      if (f.bad()) throw IoFailure{"cannot read '" + file + "'"};
    }
    return cache.emplace(file, buf.str()).first->second;
  }

  void report(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags) err << formats::to_string(d) << '\n';
  }
};

Format detect(const std::optional<Format>& forced, const std::string& file) {
  if (forced) return *forced;
  constexpr std::string_view ext = ".json";
  if (file.size() >= ext.size() && file.compare(file.size() - ext.size(), ext.size(), ext) == 0) {
    return Format::Nested;
  }
  return Format::Flat;
}

// A parsed document in whichever leaf type its format uses.
using Document = std::variant<Dtry<std::string>, Dtry<Scalar>>;

std::optional<Document> load(Session& s, const std::string& file, Format fmt) {
  const auto& text = s.read(file);
  if (fmt == Format::Flat) {
    auto r = formats::parse_flat(text);
    s.report(r.diagnostics);
    if (!r.ok()) return std::nullopt;
    return Document(std::move(*r.value));
  }
  auto r = formats::parse_nested(text);
  s.report(r.diagnostics);
  if (!r.ok()) return std::nullopt;
  return Document(std::move(*r.value));
}

Dtry<std::string> as_flat(const Document& doc) {
  if (auto* flat = std::get_if<Dtry<std::string>>(&doc)) return *flat;
  return formats::to_flat(std::get<Dtry<Scalar>>(doc));
}

Dtry<Scalar> as_nested(const Document& doc) {
  if (auto* nested = std::get_if<Dtry<Scalar>>(&doc)) return *nested;
  return formats::to_nested(std::get<Dtry<std::string>>(doc));
}

std::string bare(const std::string& v) { return v; }
std::string bare(const Scalar& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

int cmd_validate(Session& s, const std::string& file, std::optional<Format> fmt) {
  return load(s, file, detect(fmt, file)) ? Ok : Invalid;
}

int cmd_convert(Session& s, const std::string& file, std::optional<Format> from, Format to) {
  auto doc = load(s, file, detect(from, file));
  if (!doc) return Invalid;
  if (to == Format::Flat) {
    s.out << formats::emit_flat(as_flat(*doc));
  } else {
    s.out << formats::emit_nested(as_nested(*doc)) << '\n';
  }
  return Ok;
}

int cmd_get(Session& s, const std::string& path_text, const std::string& file,
            std::optional<Format> fmt) {
  Path path;
  try {
    path = parse_path(path_text);
  } catch (const Error& e) {
    s.report({{e.code(), 0, e.what()}});
    return Invalid;
  }
  auto doc = load(s, file, detect(fmt, file));
  if (!doc) return Invalid;
  return std::visit(
      [&](const auto& d) -> int {
        auto sub = lookup_path(path, d);
        if (!sub) {
          s.err << "dtry: path '" << path_text << "' not found\n";
          return NotFound;
        }
        if (sub->root() && sub->root()->is_leaf()) {
          s.out << bare(sub->root()->value()) << '\n';
        } else {
          s.out << formats::emit_flat(as_flat(Document(*sub)));
        }
        return Ok;
      },
      *doc);
}

int cmd_merge(Session& s, const std::vector<std::string>& specs, std::optional<Format> fmt) {
  NonEmptyRecord<Dtry<std::string>>::Map parts;
  for (const auto& spec : specs) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw BadInput{"expected NAME=FILE, got '" + spec + "'"};
    std::optional<Name> name;
    try {
      name = parse_name(spec.substr(0, eq));
    } catch (const Error& e) {
      s.report({{e.code(), 0, e.what()}});
      return Invalid;
    }
    if (parts.count(*name)) throw BadInput{"prefix '" + name->str() + "' given twice"};
    auto file = spec.substr(eq + 1);
    auto doc = load(s, file, detect(fmt, file));
    if (!doc) return Invalid;
    parts.emplace(std::move(*name), as_flat(*doc));
  }
  auto record = NonEmptyRecord<Dtry<std::string>>::coerce(std::move(parts));
  if (!record) throw BadInput{"merge needs at least one --prefix"};
  s.out << formats::emit_flat(merge_disjoint(*record));
  return Ok;
}

int cmd_check(Session& s, const std::string& file, std::optional<Format> fmt) {
  const auto& text = s.read(file);
  if (detect(fmt, file) == Format::Nested) {
    auto r = formats::parse_nested(text);
    s.report(r.diagnostics);
    return r.diagnostics.empty() ? Ok : Invalid;
  }
  // Works on the key list alone; no directory is built.
  auto doc = formats::read_flat_document(text);
  auto diags = std::move(doc.diagnostics);
  auto key_diags = formats::check_keys(doc.entries);
  diags.insert(diags.end(), key_diags.begin(), key_diags.end());
  std::stable_sort(diags.begin(), diags.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  s.report(diags);
  return diags.empty() ? Ok : Invalid;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Validate, convert, query and merge directory files.", "dtry"};
  app.require_subcommand(1);

  std::optional<Format> format;
  std::optional<Format> from;
  Format to = Format::Flat;
  std::string file = "-";
  std::string path;
  std::vector<std::string> prefixes;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "Input format (default: by extension, .json is nested)")
        ->transform(CLI::CheckedTransformer(kFormats));
  };

  auto* validate = app.add_subcommand("validate", "Check that a file is a valid directory");
  add_format(validate);
  validate->add_option("file", file, "Input file, - for stdin")->required();

  auto* convert = app.add_subcommand("convert", "Rewrite a file in canonical form");
  convert->add_option("--from", from, "Input format (default: by extension)")
      ->transform(CLI::CheckedTransformer(kFormats));
  convert->add_option("--to", to, "Output format")
      ->required()
      ->transform(CLI::CheckedTransformer(kFormats));
  convert->add_option("file", file, "Input file, - for stdin")->required();

  auto* get = app.add_subcommand("get", "Print the subdirectory or value at a path");
  add_format(get);
  get->add_option("path", path, "Dotted path, empty for the root")->required();
  get->add_option("file", file, "Input file, - for stdin")->required();

  auto* merge = app.add_subcommand("merge", "Combine files, each under its own name");
  add_format(merge);
  merge->add_option("--prefix", prefixes, "NAME=FILE, repeatable")->required();

  auto* check = app.add_subcommand("check", "Check the key list for duplicates and prefixes");
  add_format(check);
  check->add_option("file", file, "Input file, - for stdin")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : Invalid;
  }

  Session s{in, out, err, {}};
  try {
    if (*validate) return cmd_validate(s, file, format);
    if (*convert) return cmd_convert(s, file, from, to);
    if (*get) return cmd_get(s, path, file, format);
    if (*merge) return cmd_merge(s, prefixes, format);
    if (*check) return cmd_check(s, file, format);
  } catch (const IoFailure& e) {
    err << "dtry: " << e.what << '\n';
    return IoError;
  } catch (const BadInput& e) {
    err << "dtry: " << e.what << '\n';
    return Invalid;
  } catch (const Error& e) {
    err << "0:" << code_name(e.code()) << ':' << e.what() << '\n';
    return Invalid;
  } catch (const std::invalid_argument& e) {
    err << "dtry: " << e.what() << '\n';
    return Invalid;
  }
  return Invalid;
}

}  // namespace dtry::cli
