#include "dtry/names.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace dtry;
using dtry::testing::Rng;

namespace {

Path P(std::string_view s) { return parse_path(s); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Syntax;
}

// Reference definition straight from "no distinct pair is prefix-related".
bool prefix_free_pairwise(const PathSet& s) {
  for (const auto& p : s) {
    for (const auto& q : s) {
      if (p != q && is_prefix(p, q)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("parse_name") {
  CHECK(parse_name("oscillator").str() == "oscillator");
  CHECK(parse_name("thermal_capacity").str() == "thermal_capacity");
  CHECK(code_of([] { parse_name(""); }) == ErrorCode::BadName);
  CHECK(code_of([] { parse_name("a.b"); }) == ErrorCode::BadName);
  CHECK(code_of([] { parse_name("a b"); }) == ErrorCode::BadName);

  try {
    parse_name("ab-c");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
}

TEST_CASE("parse_path") {
  auto p = P("oscillator.mass.momentum");
  REQUIRE(p.size() == 3);
  CHECK(p[0].str() == "oscillator");
  CHECK(p[2].str() == "momentum");
  CHECK(P("").empty());
  CHECK(code_of([] { parse_path("a..b"); }) == ErrorCode::BadPath);
  CHECK(code_of([] { parse_path("."); }) == ErrorCode::BadPath);
  CHECK(code_of([] { parse_path("a."); }) == ErrorCode::BadPath);
  CHECK(code_of([] { parse_path("a.b$"); }) == ErrorCode::BadPath);
  try {
    parse_path("a..b");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("segment 1") != std::string::npos);
  }
  CHECK(to_string(P("a.b.c")) == "a.b.c");
  CHECK(to_string(Path{}) == "");
}

TEST_CASE("concat") {
  CHECK(concat(P("a"), P("b.c")) == P("a.b.c"));
  CHECK(concat(Path{}, P("x.y")) == P("x.y"));
  CHECK(concat(P("x.y"), Path{}) == P("x.y"));
  CHECK(concat(concat(P("a"), P("b")), P("c")) == concat(P("a"), concat(P("b"), P("c"))));
}

TEST_CASE("is_prefix") {
  CHECK(is_prefix(P("a"), P("a.b")));
  CHECK(is_prefix(Path{}, P("q.r")));
  CHECK(is_prefix(P("a.b"), P("a.b")));
  CHECK_FALSE(is_prefix(P("a.b"), P("a.c")));
  CHECK_FALSE(is_prefix(P("a.b"), P("a")));
}

TEST_CASE("is_prefix_free") {
  CHECK(is_prefix_free({P("a.x"), P("a.y"), P("b")}));
  CHECK(is_prefix_free({}));
  CHECK(is_prefix_free({P("a.b")}));
  CHECK(is_prefix_free({Path{}}));
  CHECK_FALSE(is_prefix_free({P("a"), P("a.b")}));
  CHECK_FALSE(is_prefix_free({Path{}, P("z")}));
  // The conflicting pair need not be adjacent in the input, only in lex order.
  CHECK_FALSE(is_prefix_free({P("a"), P("a.a"), P("a.b.c"), P("b")}));
}

TEST_CASE("lex_cmp") {
  CHECK(lex_cmp(P("a.b"), P("a.c")) < 0);
  CHECK(lex_cmp(P("a"), P("a.b")) < 0);
  CHECK(lex_cmp(P("a.b"), P("a.b")) == 0);
  CHECK(lex_cmp(Path{}, P("a")) < 0);
  CHECK(lex_cmp(P("B"), P("a")) < 0);  // byte order: uppercase first
  CHECK(lex_cmp(P("a.z"), P("b")) < 0);
}

TEST_CASE("property: lex_cmp is a total order") {
  Rng rng(dtry::testing::kSeed);
  for (int i = 0; i < 10000; ++i) {
    auto p = dtry::testing::random_path(rng, 4, 3);
    auto q = dtry::testing::random_path(rng, 4, 3);
    auto r = dtry::testing::random_path(rng, 4, 3);
    auto pq = lex_cmp(p, q);
    auto qp = lex_cmp(q, p);
    REQUIRE((pq < 0) == (qp > 0));
    REQUIRE((pq == 0) == (p == q));
    if (pq <= 0 && lex_cmp(q, r) <= 0) REQUIRE(lex_cmp(p, r) <= 0);
    // Proper prefixes come first.
    if (is_prefix(p, q) && p != q) REQUIRE(pq < 0);
  }
}

TEST_CASE("property: mutual prefixes are equal") {
  Rng rng(dtry::testing::kSeed + 1);
  for (int i = 0; i < 10000; ++i) {
    auto p = dtry::testing::random_path(rng, 3, 2);
    auto q = dtry::testing::random_path(rng, 3, 2);
    if (is_prefix(p, q) && is_prefix(q, p)) REQUIRE(p == q);
  }
}

TEST_CASE("property: is_prefix_free agrees with the pairwise definition") {
  Rng rng(dtry::testing::kSeed + 2);
  int free_count = 0;
  for (int i = 0; i < 2000; ++i) {
    PathSet s;
    for (auto n = dtry::testing::uniform(rng, 0, 32); n > 0; --n) {
      s.insert(dtry::testing::random_path(rng, 4, 3));
    }
    bool expected = prefix_free_pairwise(s);
    free_count += expected;
    REQUIRE(is_prefix_free(s) == expected);
  }
  CHECK(free_count > 0);
}
