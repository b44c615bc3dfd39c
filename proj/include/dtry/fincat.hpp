#pragma once

// Directory-indexed families of objects in a category, and their morphisms.
//
// An object of Dtry(C) is a directory of objects of C. A morphism pairs an
// index map between complete paths with one morphism of C per path. Three
// flavours are supported:
//
//   General  index: src paths -> dst paths, f1(p): X(p) -> Y(f0 p)
//   Iso      as General, with a bijective index map
//   Product  index: dst paths -> src paths, f1(q): X(f0 q) -> Y(q)

#include "dtry/dtry.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace dtry::cat {

/// Composition is diagrammatic: compose(f, g) is "f then g" and is defined
/// iff cod(f) == dom(g).
template <class C>
concept Category = requires(const C& c, const typename C::Object& x,
                            const typename C::Morphism& f) {
  { c.dom(f) } -> std::convertible_to<typename C::Object>;
  { c.cod(f) } -> std::convertible_to<typename C::Object>;
  { c.identity(x) } -> std::convertible_to<typename C::Morphism>;
  { c.compose(f, f) } -> std::same_as<std::optional<typename C::Morphism>>;
  { c.has_object(x) } -> std::same_as<bool>;
  { c.has_morphism(f) } -> std::same_as<bool>;
};

/// A category that can list each hom-set.
template <class C>
concept EnumerableCategory = Category<C> && requires(const C& c, const typename C::Object& x) {
  { c.hom(x, x) } -> std::same_as<std::vector<typename C::Morphism>>;
};

// ---------------------------------------------------------------------------
// Finite categories given by tables

struct ObjectId {
  std::string value;
  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

struct MorphismId {
  std::string value;
  friend auto operator<=>(const MorphismId&, const MorphismId&) = default;
};

struct MorphismEntry {
  MorphismId id;
  ObjectId dom;
  ObjectId cod;
};

struct CompositionEntry {
  MorphismId first;
  MorphismId second;
  MorphismId result;
};

struct FinCatTables {
  std::vector<ObjectId> objects;
  std::vector<MorphismEntry> morphisms;
  std::map<ObjectId, MorphismId> identities;
  std::vector<CompositionEntry> compositions;  // identity cases may be omitted
};

class FinCat {
public:
  using Object = ObjectId;
  using Morphism = MorphismId;

  /// Stores the tables as given; see validate_fincat.
  explicit FinCat(FinCatTables tables);

  /// Parses the JSON table format and validates the result.
  static FinCat from_json(std::string_view text);

  ObjectId dom(const MorphismId& f) const;
  ObjectId cod(const MorphismId& f) const;
  MorphismId identity(const ObjectId& x) const;
  std::optional<MorphismId> compose(const MorphismId& f, const MorphismId& g) const;
  bool has_object(const ObjectId& x) const { return objects_.count(x) > 0; }
  bool has_morphism(const MorphismId& f) const { return ends_.count(f) > 0; }
  std::vector<MorphismId> hom(const ObjectId& x, const ObjectId& y) const;

  const std::set<ObjectId>& objects() const { return objects_; }
  std::vector<MorphismId> morphisms() const;

private:
  friend void validate_fincat(const FinCat& c);

  std::set<ObjectId> objects_;
  std::map<MorphismId, std::pair<ObjectId, ObjectId>> ends_;
  std::map<ObjectId, MorphismId> identities_;
  std::map<std::pair<MorphismId, MorphismId>, MorphismId> composites_;
  std::vector<std::string> table_errors_;
};

/// Exhaustive check of typing, identity and associativity laws. Throws
/// Error(NotACategory) naming the offending morphisms.
void validate_fincat(const FinCat& c);

// ---------------------------------------------------------------------------
// The skeleton of FinSet: objects are n = {0..n-1}, morphisms are tables.

struct FinFunction {
  std::size_t dom = 0;
  std::size_t cod = 0;
  std::vector<std::size_t> table;  // table[i] < cod, table.size() == dom

  friend auto operator<=>(const FinFunction&, const FinFunction&) = default;
};

class FinSetSkel {
public:
  using Object = std::size_t;
  using Morphism = FinFunction;

  std::size_t dom(const FinFunction& f) const { return f.dom; }
  std::size_t cod(const FinFunction& f) const { return f.cod; }
  FinFunction identity(std::size_t n) const;
  std::optional<FinFunction> compose(const FinFunction& f, const FinFunction& g) const;
  bool has_object(std::size_t) const { return true; }
  bool has_morphism(const FinFunction& f) const;
  /// All n^m functions m -> n, in lexicographic table order.
  std::vector<FinFunction> hom(std::size_t m, std::size_t n) const;

  /// The full subcategory on 0..max_size as explicit tables.
  static FinCat truncated(std::size_t max_size);
  static std::string morphism_label(const FinFunction& f);
};

// ---------------------------------------------------------------------------
// Strict algebras

/// An unbiased strict monoidal structure on a category: n-ary tensor on
/// objects and morphisms, its unit, and the symmetry that moves factor i to
/// position perm[i].
template <Category C>
struct StrictAlgebra {
  using Object = typename C::Object;
  using Morphism = typename C::Morphism;

  C cat;
  std::function<Object(const std::vector<Object>&)> tensor_obj;
  std::function<Morphism(const std::vector<Morphism>&)> tensor_mor;
  Object unit_obj;
  std::function<Morphism(const std::vector<Object>&, const std::vector<std::size_t>&)> permute;
};

/// Disjoint union on FinSetSkel: sizes add, functions are block sums.
StrictAlgebra<FinSetSkel> coproduct_algebra();

// ---------------------------------------------------------------------------
// Dtry(C)

enum class Variant { General, Iso, Product };

std::string_view variant_name(Variant v);

using Unit = std::monostate;

template <Category C>
class DtryObj {
public:
  using Object = typename C::Object;

  DtryObj() = default;
  explicit DtryObj(Dtry<Object> family) : family_(std::move(family)) {}

  const Dtry<Object>& family() const { return family_; }
  Dtry<Unit> shape() const {
    return map_values([](const Object&) { return Unit{}; }, family_);
  }
  PathSet paths() const { return path_set(family_); }
  std::size_t size() const { return leaf_count(family_); }

  /// Object at a complete path, or nullptr.
  const Object* at(const Path& p) const { return lookup_value(p, family_); }

  friend bool operator==(const DtryObj&, const DtryObj&) = default;

private:
  Dtry<Object> family_;
};

template <Category C>
class DtryMor {
public:
  using Object = typename C::Object;
  using Morphism = typename C::Morphism;

  /// Validates every invariant of the variant against `cat`; throws
  /// Error(InvalidMorphism) otherwise.
  DtryMor(const C& cat, Variant variant, DtryObj<C> src, DtryObj<C> dst,
          std::map<Path, Path> index, std::map<Path, Morphism> components);

  Variant variant() const { return variant_; }
  const DtryObj<C>& src() const { return src_; }
  const DtryObj<C>& dst() const { return dst_; }
  /// f0. Keyed by source paths, or by destination paths for Product.
  const std::map<Path, Path>& index() const { return index_; }
  /// f1, keyed like index().
  const std::map<Path, Morphism>& components() const { return components_; }

  friend bool operator==(const DtryMor&, const DtryMor&) = default;

private:
  Variant variant_;
  DtryObj<C> src_;
  DtryObj<C> dst_;
  std::map<Path, Path> index_;
  std::map<Path, Morphism> components_;
};

namespace detail {

[[noreturn]] inline void bad_morphism(const std::string& why) {
  throw Error(ErrorCode::InvalidMorphism, why);
}

}  // namespace detail

template <Category C>
DtryMor<C>::DtryMor(const C& cat, Variant variant, DtryObj<C> src, DtryObj<C> dst,
                    std::map<Path, Path> index, std::map<Path, Morphism> components)
    : variant_(variant),
      src_(std::move(src)),
      dst_(std::move(dst)),
      index_(std::move(index)),
      components_(std::move(components)) {
  const bool forward = variant_ != Variant::Product;
  const DtryObj<C>& from = forward ? src_ : dst_;
  const DtryObj<C>& to = forward ? dst_ : src_;

  for (const auto* obj : {&src_, &dst_}) {
    for_each_path(obj->family(), [&](const Path& p, const Object& x) {
      if (!cat.has_object(x)) detail::bad_morphism("unknown object at '" + to_string(p) + "'");
    });
  }

  if (index_.size() != from.size() || components_.size() != from.size()) {
    detail::bad_morphism("index map and components must cover every path of the " +
                         std::string(forward ? "source" : "target"));
  }
  std::set<Path> image;
  for (const auto& [p, q] : index_) {
    const Object* x = from.at(p);
    const Object* y = to.at(q);
    if (!x) detail::bad_morphism("index map defined at unknown path '" + to_string(p) + "'");
    if (!y) detail::bad_morphism("index map sends '" + to_string(p) + "' to unknown path '" +
                                 to_string(q) + "'");
    auto it = components_.find(p);
    if (it == components_.end()) {
      detail::bad_morphism("missing component at '" + to_string(p) + "'");
    }
    const Morphism& f = it->second;
    if (!cat.has_morphism(f)) detail::bad_morphism("unknown morphism at '" + to_string(p) + "'");
    // General/Iso: X(p) -> Y(f0 p).  Product: X(f0 q) -> Y(q).
    const Object& want_dom = forward ? *x : *y;
    const Object& want_cod = forward ? *y : *x;
    if (!(cat.dom(f) == want_dom) || !(cat.cod(f) == want_cod)) {
      detail::bad_morphism("component at '" + to_string(p) + "' has the wrong type");
    }
    image.insert(q);
  }
  if (variant_ == Variant::Iso && (image.size() != index_.size() || to.size() != from.size())) {
    detail::bad_morphism("index map of an iso morphism must be a bijection");
  }
}

template <Category C>
DtryMor<C> identity_mor(const C& cat, const DtryObj<C>& x, Variant variant) {
  std::map<Path, Path> index;
  std::map<Path, typename C::Morphism> components;
  for_each_path(x.family(), [&](const Path& p, const typename C::Object& obj) {
    index.emplace_hint(index.end(), p, p);
    components.emplace_hint(components.end(), p, cat.identity(obj));
  });
  return DtryMor<C>(cat, variant, x, x, std::move(index), std::move(components));
}

/// f then g. Throws Error(NotComposable) if the variants differ or f's
/// target is not g's source.
template <Category C>
DtryMor<C> compose_mor(const C& cat, const DtryMor<C>& f, const DtryMor<C>& g) {
  if (f.variant() != g.variant()) {
    throw Error(ErrorCode::NotComposable, "cannot compose " +
                                              std::string(variant_name(f.variant())) +
                                              " with " + std::string(variant_name(g.variant())));
  }
  if (!(f.dst() == g.src())) {
    throw Error(ErrorCode::NotComposable, "target of the first morphism is not the source of "
                                          "the second");
  }
  std::map<Path, Path> index;
  std::map<Path, typename C::Morphism> components;
  auto compose_or_throw = [&](const auto& a, const auto& b) {
    auto ab = cat.compose(a, b);
    if (!ab) throw Error(ErrorCode::NotComposable, "component morphisms do not compose");
    return *ab;
  };
  if (f.variant() != Variant::Product) {
    for (const auto& [p, fp] : f.index()) {
      const Path& gp = g.index().at(fp);
      index.emplace_hint(index.end(), p, gp);
      components.emplace_hint(components.end(), p,
                              compose_or_throw(f.components().at(p), g.components().at(fp)));
    }
  } else {
    for (const auto& [q, gq] : g.index()) {
      index.emplace_hint(index.end(), q, f.index().at(gq));
      components.emplace_hint(components.end(), q,
                              compose_or_throw(f.components().at(gq), g.components().at(q)));
    }
  }
  return DtryMor<C>(cat, f.variant(), f.src(), g.dst(), std::move(index), std::move(components));
}

template <Category C>
DtryObj<C> mu_obj(const Dtry<DtryObj<C>>& dd) {
  return DtryObj<C>(flatten(map_values([](const DtryObj<C>& x) { return x.family(); }, dd)));
}

/// Flattens a directory of morphisms. All entries must have `variant`;
/// otherwise throws Error(NotComposable). The variant is passed explicitly
/// so the empty directory has a well-defined result.
template <Category C>
DtryMor<C> mu_mor(const C& cat, const Dtry<DtryMor<C>>& dm, Variant variant) {
  std::map<Path, Path> index;
  std::map<Path, typename C::Morphism> components;
  for_each_path(dm, [&](const Path& outer, const DtryMor<C>& m) {
    if (m.variant() != variant) {
      throw Error(ErrorCode::NotComposable,
                  "morphism at '" + to_string(outer) + "' is " +
                      std::string(variant_name(m.variant())) + ", expected " +
                      std::string(variant_name(variant)));
    }
    for (const auto& [a, b] : m.index()) {
      index.emplace(concat(outer, a), concat(outer, b));
      components.emplace(concat(outer, a), m.components().at(a));
    }
  });
  auto src = mu_obj(map_values([](const DtryMor<C>& m) { return m.src(); }, dm));
  auto dst = mu_obj(map_values([](const DtryMor<C>& m) { return m.dst(); }, dm));
  return DtryMor<C>(cat, variant, std::move(src), std::move(dst), std::move(index),
                    std::move(components));
}

/// The family indexed by complete paths, in lex order.
template <Category C>
std::vector<std::pair<Path, typename C::Object>> path_family(const DtryObj<C>& x) {
  std::vector<std::pair<Path, typename C::Object>> out;
  for_each_path(x.family(), [&](Path p, const typename C::Object& obj) {
    out.emplace_back(std::move(p), obj);
  });
  return out;
}

/// A balanced binary tree with exactly n complete paths: subtrees "l" and
/// "r" hold ceil(n/2) and floor(n/2) leaves.
Dtry<Unit> shape_with_n_leaves(std::size_t n);

/// Every Dtry(C) morphism src -> dst of the given variant, in a fixed order.
template <EnumerableCategory C>
std::vector<DtryMor<C>> enumerate_morphisms(const C& cat, const DtryObj<C>& src,
                                            const DtryObj<C>& dst, Variant variant) {
  using Morphism = typename C::Morphism;
  const bool forward = variant != Variant::Product;
  auto from = path_family(forward ? src : dst);
  auto to = path_family(forward ? dst : src);

  std::vector<DtryMor<C>> out;
  std::vector<std::size_t> choice(from.size(), 0);
  auto next_choice = [&]() {
    for (std::size_t i = 0; i < choice.size(); ++i) {
      if (++choice[i] < to.size()) return true;
      choice[i] = 0;
    }
    return false;
  };
  if (!from.empty() && to.empty()) return out;
  do {
    if (variant == Variant::Iso) {
      std::set<std::size_t> seen(choice.begin(), choice.end());
      if (seen.size() != choice.size() || from.size() != to.size()) continue;
    }
    std::vector<std::vector<Morphism>> homs;
    for (std::size_t i = 0; i < from.size(); ++i) {
      const auto& x = from[i].second;
      const auto& y = to[choice[i]].second;
      homs.push_back(forward ? cat.hom(x, y) : cat.hom(y, x));
    }
    if (std::any_of(homs.begin(), homs.end(), [](const auto& h) { return h.empty(); })) continue;
    std::vector<std::size_t> pick(homs.size(), 0);
    while (true) {
      std::map<Path, Path> index;
      std::map<Path, Morphism> components;
      for (std::size_t i = 0; i < from.size(); ++i) {
        index.emplace(from[i].first, to[choice[i]].first);
        components.emplace(from[i].first, homs[i][pick[i]]);
      }
      out.emplace_back(cat, variant, src, dst, std::move(index), std::move(components));
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < homs[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  } while (next_choice());
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation in a strict algebra

/// Tensor of the family in lex order; the empty directory gives the unit.
template <Category C>
typename C::Object algebra_eval_obj(const StrictAlgebra<C>& alg, const DtryObj<C>& x) {
  std::vector<typename C::Object> factors;
  for (auto& [p, obj] : path_family(x)) factors.push_back(std::move(obj));
  return alg.tensor_obj(factors);
}

/// For an Iso morphism: the tensor of its components (source lex order)
/// followed by the symmetry that moves source position i to the lex position
/// of f0(p_i) among the target paths.
template <Category C>
typename C::Morphism algebra_eval_mor(const StrictAlgebra<C>& alg, const DtryMor<C>& m) {
  if (m.variant() != Variant::Iso) {
    throw Error(ErrorCode::InvalidMorphism, "only iso morphisms can be evaluated");
  }
  std::map<Path, std::size_t> target_pos;
  for (const auto& [q, obj] : path_family(m.dst())) target_pos.emplace(q, target_pos.size());

  std::vector<typename C::Morphism> parts;
  std::vector<typename C::Object> moved;
  std::vector<std::size_t> perm;
  for (const auto& [p, q] : m.index()) {
    const auto& f = m.components().at(p);
    parts.push_back(f);
    moved.push_back(alg.cat.cod(f));
    perm.push_back(target_pos.at(q));
  }
  auto result = alg.cat.compose(alg.tensor_mor(parts), alg.permute(moved, perm));
  if (!result) throw Error(ErrorCode::NotComposable, "algebra symmetry does not compose");
  return *result;
}

}  // namespace dtry::cat
