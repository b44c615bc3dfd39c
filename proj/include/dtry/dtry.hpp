#pragma once

// Directories: finite tries whose complete paths form a prefix-free set.
//
//   DtryNE<T> ::= Leaf T | Node (NonEmptyRecord<DtryNE<T>>)
//   Dtry<T>   ::= optional DtryNE<T>
//
// Empty directories can only appear at the top level, so a directory is
// determined by its map from complete paths to values.

#include "dtry/names.hpp"

#include <cassert>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace dtry {

/// Raised when a path would be a prefix of (or equal to) another one.
class PrefixConflict : public Error {
public:
  PrefixConflict(Path existing, Path inserted)
      : Error(ErrorCode::PrefixConflict,
              "path '" + to_string(inserted) + "' conflicts with '" +
                  to_string(existing) + "'"),
        existing_(std::move(existing)),
        inserted_(std::move(inserted)) {}

  const Path& existing() const { return existing_; }
  const Path& inserted() const { return inserted_; }

private:
  Path existing_;
  Path inserted_;
};

template <class T>
using PathMap = std::map<Path, T>;

// ---------------------------------------------------------------------------
// NonEmptyRecord

template <class T>
class NonEmptyRecord {
public:
  using Map = std::map<Name, T>;

  /// nullopt iff `entries` is empty.
  static std::optional<NonEmptyRecord> coerce(Map entries) {
    if (entries.empty()) return std::nullopt;
    return NonEmptyRecord(std::move(entries));
  }

  static NonEmptyRecord singleton(Name key, T value) {
    Map m;
    m.emplace(std::move(key), std::move(value));
    return NonEmptyRecord(std::move(m));
  }

  /// Adds or replaces one entry.
  NonEmptyRecord insert(Name key, T value) const {
    Map m = entries_;
    m.insert_or_assign(std::move(key), std::move(value));
    return NonEmptyRecord(std::move(m));
  }

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  const T* find(const Name& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  template <class F>
  auto map(F&& f) const {
    using U = std::decay_t<std::invoke_result_t<F&, const T&>>;
    typename NonEmptyRecord<U>::Map out;
    for (const auto& [k, v] : entries_) out.emplace_hint(out.end(), k, f(v));
    return NonEmptyRecord<U>(std::move(out));
  }

  friend bool operator==(const NonEmptyRecord&, const NonEmptyRecord&) = default;

private:
  template <class>
  friend class NonEmptyRecord;

  explicit NonEmptyRecord(Map entries) : entries_(std::move(entries)) {
    assert(!entries_.empty());
  }

  Map entries_;
};

// ---------------------------------------------------------------------------
// DtryNE: the free monad on NonEmptyRecord

template <class T>
class DtryNE {
public:
  using Record = NonEmptyRecord<DtryNE>;

  static DtryNE leaf(T value) {
    return DtryNE(std::make_shared<const Rep>(std::in_place_index<0>, std::move(value)));
  }
  static DtryNE node(Record children) {
    return DtryNE(std::make_shared<const Rep>(std::in_place_index<1>, std::move(children)));
  }

  bool is_leaf() const { return rep_->v.index() == 0; }
  const T& value() const { return std::get<0>(rep_->v); }
  const Record& children() const { return std::get<1>(rep_->v); }

  friend bool operator==(const DtryNE& a, const DtryNE& b) {
    return a.rep_ == b.rep_ || a.rep_->v == b.rep_->v;
  }

private:
  struct Rep;
  explicit DtryNE(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  std::shared_ptr<const Rep> rep_;
};

template <class T>
struct DtryNE<T>::Rep {
  template <std::size_t I, class A>
  Rep(std::in_place_index_t<I> tag, A&& a) : v(tag, std::forward<A>(a)) {}
  std::variant<T, Record> v;
};

// ---------------------------------------------------------------------------
// Dtry: Maybe of a non-empty directory

template <class T>
class Dtry {
public:
  using value_type = T;

  Dtry() = default;
  explicit Dtry(std::optional<DtryNE<T>> root) : root_(std::move(root)) {}
  explicit Dtry(DtryNE<T> root) : root_(std::move(root)) {}

  static Dtry empty() { return Dtry(); }
  static Dtry leaf(T value) { return Dtry(DtryNE<T>::leaf(std::move(value))); }

  const std::optional<DtryNE<T>>& root() const { return root_; }
  bool is_empty() const { return !root_.has_value(); }

  friend bool operator==(const Dtry&, const Dtry&) = default;

private:
  std::optional<DtryNE<T>> root_;
};

namespace detail {

template <class T>
struct is_dtry : std::false_type {};
template <class T>
struct is_dtry<Dtry<T>> : std::true_type {};

template <class T, class F>
void walk(const DtryNE<T>& d, std::vector<Name>& stack, F& visit) {
  if (d.is_leaf()) {
    visit(stack, d.value());
    return;
  }
  for (const auto& [k, child] : d.children().entries()) {
    stack.push_back(k);
    walk(child, stack, visit);
    stack.pop_back();
  }
}

// Lex-least complete path below `d`, appended to `stack`.
template <class T>
Path first_path(const DtryNE<T>& d, std::vector<Name> stack) {
  const DtryNE<T>* cur = &d;
  while (!cur->is_leaf()) {
    const auto& first = *cur->children().entries().begin();
    stack.push_back(first.first);
    cur = &first.second;
  }
  return Path(std::move(stack));
}

}  // namespace detail

/// Visits (path, value) for every complete path, in lex order.
template <class T, class F>
void for_each_path(const Dtry<T>& d, F&& visit) {
  if (!d.root()) return;
  std::vector<Name> stack;
  auto adapter = [&](const std::vector<Name>& segs, const T& v) {
    visit(Path(segs), v);
  };
  detail::walk(*d.root(), stack, adapter);
}

template <class T>
Dtry<T> prefix(const Name& key, const Dtry<T>& d) {
  if (!d.root()) return d;
  return Dtry<T>(DtryNE<T>::node(NonEmptyRecord<DtryNE<T>>::singleton(key, *d.root())));
}

template <class T>
DtryNE<T> singleton_ne(const Path& p, T value) {
  auto d = DtryNE<T>::leaf(std::move(value));
  for (auto it = p.segments().rbegin(); it != p.segments().rend(); ++it) {
    d = DtryNE<T>::node(NonEmptyRecord<DtryNE<T>>::singleton(*it, std::move(d)));
  }
  return d;
}

template <class T>
Dtry<T> singleton(const Path& p, T value) {
  return Dtry<T>(singleton_ne(p, std::move(value)));
}

/// The subdirectory rooted at `p`. A complete path yields a leaf directory;
/// stepping through a leaf or a missing key yields nullopt.
template <class T>
std::optional<Dtry<T>> lookup_path(const Path& p, const Dtry<T>& d) {
  if (p.empty()) return d;
  if (!d.root()) return std::nullopt;
  const DtryNE<T>* cur = &*d.root();
  for (const auto& seg : p.segments()) {
    if (cur->is_leaf()) return std::nullopt;
    cur = cur->children().find(seg);
    if (!cur) return std::nullopt;
  }
  return Dtry<T>(*cur);
}

/// Value at a complete path, if any.
template <class T>
const T* lookup_value(const Path& p, const Dtry<T>& d) {
  if (!d.root()) return nullptr;
  const DtryNE<T>* cur = &*d.root();
  for (const auto& seg : p.segments()) {
    if (cur->is_leaf()) return nullptr;
    cur = cur->children().find(seg);
    if (!cur) return nullptr;
  }
  return cur->is_leaf() ? &cur->value() : nullptr;
}

namespace detail {

template <class T>
DtryNE<T> insert_ne(const Path& p, std::size_t depth, T& value, const DtryNE<T>& d) {
  if (d.is_leaf()) throw PrefixConflict(p.take(depth), p);
  if (depth == p.size()) throw PrefixConflict(first_path(d, p.segments()), p);
  const Name& key = p[depth];
  if (const auto* child = d.children().find(key)) {
    return DtryNE<T>::node(d.children().insert(key, insert_ne(p, depth + 1, value, *child)));
  }
  Path rest(std::vector<Name>(p.segments().begin() + static_cast<std::ptrdiff_t>(depth) + 1,
                              p.segments().end()));
  return DtryNE<T>::node(d.children().insert(key, singleton_ne(rest, std::move(value))));
}

}  // namespace detail

/// Adds one binding. Throws PrefixConflict if `p` already exists, is a
/// prefix of an existing path, or has an existing path as a prefix.
template <class T>
Dtry<T> insert(const Path& p, T value, const Dtry<T>& d) {
  if (!d.root()) return singleton(p, std::move(value));
  return Dtry<T>(detail::insert_ne(p, 0, value, *d.root()));
}

// ---------------------------------------------------------------------------
// Functor

template <class F, class T>
auto map_values_ne(F&& f, const DtryNE<T>& d)
    -> DtryNE<std::decay_t<std::invoke_result_t<F&, const T&>>> {
  using U = std::decay_t<std::invoke_result_t<F&, const T&>>;
  if (d.is_leaf()) return DtryNE<U>::leaf(f(d.value()));
  return DtryNE<U>::node(
      d.children().map([&](const DtryNE<T>& child) { return map_values_ne(f, child); }));
}

template <class F, class T>
auto map_values(F&& f, const Dtry<T>& d)
    -> Dtry<std::decay_t<std::invoke_result_t<F&, const T&>>> {
  using U = std::decay_t<std::invoke_result_t<F&, const T&>>;
  if (!d.root()) return Dtry<U>();
  return Dtry<U>(map_values_ne(f, *d.root()));
}

// ---------------------------------------------------------------------------
// Distributive law NonEmptyRecord . optional -> optional . NonEmptyRecord

template <class T>
std::optional<NonEmptyRecord<T>> filter_nothings(const NonEmptyRecord<std::optional<T>>& r) {
  typename NonEmptyRecord<T>::Map kept;
  for (const auto& [k, v] : r.entries()) {
    if (v) kept.emplace_hint(kept.end(), k, *v);
  }
  return NonEmptyRecord<T>::coerce(std::move(kept));
}

/// Drops absent leaves, deleting every subtree that becomes empty.
template <class T>
std::optional<DtryNE<T>> distrib(const DtryNE<std::optional<T>>& d) {
  if (d.is_leaf()) {
    if (!d.value()) return std::nullopt;
    return DtryNE<T>::leaf(*d.value());
  }
  auto inner = d.children().map(
      [](const DtryNE<std::optional<T>>& child) { return distrib(child); });
  auto kept = filter_nothings(inner);
  if (!kept) return std::nullopt;
  return DtryNE<T>::node(std::move(*kept));
}

// ---------------------------------------------------------------------------
// Monad

/// Multiplication of the free monad: grafts inner trees at the leaves.
template <class T>
DtryNE<T> join_ne(const DtryNE<DtryNE<T>>& dd) {
  if (dd.is_leaf()) return dd.value();
  return DtryNE<T>::node(
      dd.children().map([](const DtryNE<DtryNE<T>>& child) { return join_ne(child); }));
}

template <class T>
Dtry<T> flatten(const Dtry<Dtry<T>>& dd) {
  if (!dd.root()) return Dtry<T>();
  auto unwrapped = map_values_ne([](const Dtry<T>& d) { return d.root(); }, *dd.root());
  auto swapped = distrib(unwrapped);
  if (!swapped) return Dtry<T>();
  return Dtry<T>(join_ne(*swapped));
}

template <class T, class F>
auto bind(const Dtry<T>& d, F&& f) {
  using R = std::decay_t<std::invoke_result_t<F&, const T&>>;
  static_assert(detail::is_dtry<R>::value, "bind requires a function returning a Dtry");
  return flatten(map_values(std::forward<F>(f), d));
}

/// Keeps the leaves satisfying `pred`; subdirectories that end up empty are
/// removed, so the result may be the empty directory.
template <class T, class Pred>
Dtry<T> filter(Pred&& pred, const Dtry<T>& d) {
  if (!d.root()) return d;
  auto marked = map_values_ne(
      [&](const T& v) -> std::optional<T> {
        if (pred(v)) return v;
        return std::nullopt;
      },
      *d.root());
  return Dtry<T>(distrib(marked));
}

/// Combines named directories, each reachable under its own name.
template <class T>
Dtry<T> merge_disjoint(const NonEmptyRecord<Dtry<T>>& ds) {
  auto outer = DtryNE<Dtry<T>>::node(
      ds.map([](const Dtry<T>& d) { return DtryNE<Dtry<T>>::leaf(d); }));
  return flatten(Dtry<Dtry<T>>(outer));
}

// ---------------------------------------------------------------------------
// Path maps

template <class T>
PathMap<T> path_map(const Dtry<T>& d) {
  PathMap<T> out;
  for_each_path(d, [&](Path p, const T& v) { out.emplace_hint(out.end(), std::move(p), v); });
  return out;
}

template <class T>
PathSet path_set(const Dtry<T>& d) {
  PathSet out;
  for_each_path(d, [&](Path p, const T&) { out.emplace_hint(out.end(), std::move(p)); });
  return out;
}

/// Inverse of path_map on prefix-free maps. Keys are inserted in lex order;
/// the first conflict found is reported as PrefixConflict(earlier, later).
template <class T>
Dtry<T> from_path_map(const PathMap<T>& m) {
  Dtry<T> out;
  for (const auto& [p, v] : m) out = insert(p, v, out);
  return out;
}

template <class T>
std::size_t leaf_count(const Dtry<T>& d) {
  std::size_t n = 0;
  for_each_path(d, [&](const Path&, const T&) { ++n; });
  return n;
}

namespace detail {

template <class T>
bool well_formed_ne(const DtryNE<T>& d) {
  if (d.is_leaf()) return true;
  if (d.children().size() == 0) return false;
  for (const auto& [k, child] : d.children().entries()) {
    if (!well_formed_ne(child)) return false;
  }
  return true;
}

}  // namespace detail

/// Deep check of the representation invariant: no Node has zero children.
template <class T>
bool well_formed(const Dtry<T>& d) {
  return !d.root() || detail::well_formed_ne(*d.root());
}

}  // namespace dtry
