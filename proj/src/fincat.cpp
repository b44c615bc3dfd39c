#include "dtry/fincat.hpp"

#include <json.hpp>

#include <numeric>

namespace dtry::cat {

namespace {

[[noreturn]] void not_a_category(const std::string& why) {
  throw Error(ErrorCode::NotACategory, why);
}

std::string triple(const MorphismId& f, const MorphismId& g, const MorphismId& h) {
  return "(" + f.value + ", " + g.value + ", " + h.value + ")";
}

}  // namespace

FinCat::FinCat(FinCatTables tables) {
  for (auto& x : tables.objects) {
    if (!objects_.insert(x).second) table_errors_.push_back("duplicate object '" + x.value + "'");
  }
  for (auto& m : tables.morphisms) {
    if (!ends_.emplace(m.id, std::pair{m.dom, m.cod}).second) {
      table_errors_.push_back("duplicate morphism '" + m.id.value + "'");
    }
  }
  identities_ = std::move(tables.identities);
  for (auto& c : tables.compositions) {
    auto [it, fresh] = composites_.emplace(std::pair{c.first, c.second}, c.result);
    if (!fresh && it->second != c.result) {
      table_errors_.push_back("composite of (" + c.first.value + ", " + c.second.value +
                              ") listed twice");
    }
  }
  // Composites with identities may be left out of the table.
  for (const auto& [f, ends] : ends_) {
    if (auto id = identities_.find(ends.first); id != identities_.end()) {
      composites_.emplace(std::pair{id->second, f}, f);
    }
    if (auto id = identities_.find(ends.second); id != identities_.end()) {
      composites_.emplace(std::pair{f, id->second}, f);
    }
  }
}

ObjectId FinCat::dom(const MorphismId& f) const { return ends_.at(f).first; }
ObjectId FinCat::cod(const MorphismId& f) const { return ends_.at(f).second; }
MorphismId FinCat::identity(const ObjectId& x) const { return identities_.at(x); }

std::optional<MorphismId> FinCat::compose(const MorphismId& f, const MorphismId& g) const {
  auto it = composites_.find({f, g});
  if (it == composites_.end()) return std::nullopt;
  return it->second;
}

std::vector<MorphismId> FinCat::hom(const ObjectId& x, const ObjectId& y) const {
  std::vector<MorphismId> out;
  for (const auto& [f, ends] : ends_) {
    if (ends.first == x && ends.second == y) out.push_back(f);
  }
  return out;
}

std::vector<MorphismId> FinCat::morphisms() const {
  std::vector<MorphismId> out;
  for (const auto& [f, ends] : ends_) out.push_back(f);
  return out;
}

void validate_fincat(const FinCat& c) {
  if (!c.table_errors_.empty()) not_a_category(c.table_errors_.front());

  for (const auto& [f, ends] : c.ends_) {
    if (!c.has_object(ends.first) || !c.has_object(ends.second)) {
      not_a_category("morphism '" + f.value + "' has an unknown endpoint");
    }
  }
  for (const auto& x : c.objects_) {
    auto id = c.identities_.find(x);
    if (id == c.identities_.end()) not_a_category("object '" + x.value + "' has no identity");
    if (!c.has_morphism(id->second) || c.dom(id->second) != x || c.cod(id->second) != x) {
      not_a_category("identity of '" + x.value + "' is not an endomorphism of it");
    }
  }
  for (const auto& [x, id] : c.identities_) {
    if (!c.has_object(x)) not_a_category("identity listed for unknown object '" + x.value + "'");
  }

  for (const auto& [fg, h] : c.composites_) {
    const auto& [f, g] = fg;
    if (!c.has_morphism(f) || !c.has_morphism(g) || !c.has_morphism(h)) {
      not_a_category("composition entry " + triple(f, g, h) + " names an unknown morphism");
    }
    if (c.cod(f) != c.dom(g)) {
      not_a_category("composition entry " + triple(f, g, h) + " composes non-adjacent morphisms");
    }
    if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g)) {
      not_a_category("composition entry " + triple(f, g, h) + " has the wrong type");
    }
  }

  const auto all = c.morphisms();
  for (const auto& f : all) {
    for (const auto& g : all) {
      if (c.cod(f) != c.dom(g)) continue;
      if (!c.compose(f, g)) {
        not_a_category("no composite for (" + f.value + ", " + g.value + ")");
      }
    }
  }
  for (const auto& f : all) {
    if (*c.compose(c.identity(c.dom(f)), f) != f || *c.compose(f, c.identity(c.cod(f))) != f) {
      not_a_category("identity law fails at '" + f.value + "'");
    }
  }
  for (const auto& f : all) {
    for (const auto& g : all) {
      if (c.cod(f) != c.dom(g)) continue;
      const auto fg = *c.compose(f, g);
      for (const auto& h : all) {
        if (c.cod(g) != c.dom(h)) continue;
        if (*c.compose(fg, h) != *c.compose(f, *c.compose(g, h))) {
          not_a_category("associativity fails at " + triple(f, g, h));
        }
      }
    }
  }
}

FinCat FinCat::from_json(std::string_view text) {
  FinCatTables t;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& x : j.at("objects")) t.objects.push_back({x.get<std::string>()});
    for (const auto& m : j.at("morphisms")) {
      t.morphisms.push_back({{m.at("id").get<std::string>()},
                             {m.at("dom").get<std::string>()},
                             {m.at("cod").get<std::string>()}});
    }
    for (const auto& [x, id] : j.at("identities").items()) {
      t.identities.emplace(ObjectId{x}, MorphismId{id.get<std::string>()});
    }
    if (j.contains("compose")) {
      for (const auto& e : j.at("compose")) {
        t.compositions.push_back({{e.at("first").get<std::string>()},
                                  {e.at("second").get<std::string>()},
                                  {e.at("result").get<std::string>()}});
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Syntax, std::string("malformed category table: ") + e.what());
  }
  FinCat c(std::move(t));
  validate_fincat(c);
  return c;
}

// ---------------------------------------------------------------------------
// FinSetSkel

FinFunction FinSetSkel::identity(std::size_t n) const {
  FinFunction f{n, n, std::vector<std::size_t>(n)};
  std::iota(f.table.begin(), f.table.end(), std::size_t{0});
  return f;
}

std::optional<FinFunction> FinSetSkel::compose(const FinFunction& f, const FinFunction& g) const {
  if (f.cod != g.dom) return std::nullopt;
  FinFunction h{f.dom, g.cod, {}};
  h.table.reserve(f.dom);
  for (auto i : f.table) h.table.push_back(g.table[i]);
  return h;
}

bool FinSetSkel::has_morphism(const FinFunction& f) const {
  return f.table.size() == f.dom &&
         std::all_of(f.table.begin(), f.table.end(), [&](std::size_t i) { return i < f.cod; });
}

std::vector<FinFunction> FinSetSkel::hom(std::size_t m, std::size_t n) const {
  std::vector<FinFunction> out;
  if (m > 0 && n == 0) return out;
  FinFunction f{m, n, std::vector<std::size_t>(m, 0)};
  while (true) {
    out.push_back(f);
    // Odometer with the last entry fastest, giving lexicographic order.
    std::size_t i = m;
    while (i > 0 && ++f.table[i - 1] == n) f.table[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

std::string FinSetSkel::morphism_label(const FinFunction& f) {
  std::string s = std::to_string(f.dom) + "->" + std::to_string(f.cod) + ":[";
  for (std::size_t i = 0; i < f.table.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f.table[i]);
  }
  return s + "]";
}

FinCat FinSetSkel::truncated(std::size_t max_size) {
  FinSetSkel skel;
  FinCatTables t;
  auto obj = [](std::size_t n) { return ObjectId{std::to_string(n)}; };
  for (std::size_t m = 0; m <= max_size; ++m) {
    t.objects.push_back(obj(m));
    t.identities.emplace(obj(m), MorphismId{morphism_label(skel.identity(m))});
    for (std::size_t n = 0; n <= max_size; ++n) {
      for (const auto& f : skel.hom(m, n)) {
        t.morphisms.push_back({{morphism_label(f)}, obj(m), obj(n)});
        for (std::size_t k = 0; k <= max_size; ++k) {
          for (const auto& g : skel.hom(n, k)) {
            t.compositions.push_back(
                {{morphism_label(f)}, {morphism_label(g)}, {morphism_label(*skel.compose(f, g))}});
          }
        }
      }
    }
  }
  return FinCat(std::move(t));
}

StrictAlgebra<FinSetSkel> coproduct_algebra() {
  StrictAlgebra<FinSetSkel> alg;
  alg.unit_obj = 0;
  alg.tensor_obj = [](const std::vector<std::size_t>& sizes) {
    return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  };
  alg.tensor_mor = [](const std::vector<FinFunction>& fs) {
    FinFunction sum;
    for (const auto& f : fs) {
      for (auto i : f.table) sum.table.push_back(sum.cod + i);
      sum.dom += f.dom;
      sum.cod += f.cod;
    }
    return sum;
  };
  alg.permute = [](const std::vector<std::size_t>& sizes, const std::vector<std::size_t>& perm) {
    const std::size_t k = sizes.size();
    std::vector<std::size_t> at_position(k);  // inverse of perm
    for (std::size_t i = 0; i < k; ++i) at_position.at(perm.at(i)) = i;
    std::vector<std::size_t> target_offset(k);
    std::size_t offset = 0;
    for (std::size_t j = 0; j < k; ++j) {
      target_offset[at_position[j]] = offset;
      offset += sizes[at_position[j]];
    }
    FinFunction f{offset, offset, {}};
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t o = 0; o < sizes[i]; ++o) f.table.push_back(target_offset[i] + o);
    }
    return f;
  };
  return alg;
}

// ---------------------------------------------------------------------------

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::General: return "general";
    case Variant::Iso: return "iso";
    case Variant::Product: return "product";
  }
  return "?";
}

namespace {

DtryNE<Unit> balanced(std::size_t n) {
  if (n == 1) return DtryNE<Unit>::leaf(Unit{});
  NonEmptyRecord<DtryNE<Unit>>::Map children;
  children.emplace(Name("l"), balanced((n + 1) / 2));
  children.emplace(Name("r"), balanced(n / 2));
  return DtryNE<Unit>::node(*NonEmptyRecord<DtryNE<Unit>>::coerce(std::move(children)));
}

}  // namespace

Dtry<Unit> shape_with_n_leaves(std::size_t n) {
  if (n == 0) return Dtry<Unit>();
  return Dtry<Unit>(balanced(n));
}

}  // namespace dtry::cat
