#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wordmap/distribution.hpp"
#include "wordmap/errors.hpp"
#include "wordmap/free_word.hpp"

using namespace wordmap;

namespace {

std::vector<Letter> L(std::initializer_list<std::pair<int, std::int64_t>> xs) {
  std::vector<Letter> out;
  for (auto [v, e] : xs) out.push_back({v, e});
  return out;
}

/// Free reduction by cancelling randomly chosen adjacent inverse pairs of unit letters.
std::vector<Letter> reduce_in_random_order(std::vector<Letter> letters, std::mt19937_64& rng) {
  std::vector<Letter> units;
  for (const auto& l : letters)
    for (std::int64_t i = 0; i < std::abs(l.exp); ++i) units.push_back({l.var, l.exp > 0 ? 1 : -1});
  for (;;) {
    std::vector<std::size_t> spots;
    for (std::size_t i = 0; i + 1 < units.size(); ++i)
      if (units[i].var == units[i + 1].var && units[i].exp == -units[i + 1].exp) spots.push_back(i);
    if (spots.empty()) break;
    const std::size_t i = spots[std::uniform_int_distribution<std::size_t>(0, spots.size() - 1)(rng)];
    units.erase(units.begin() + static_cast<std::ptrdiff_t>(i), units.begin() + static_cast<std::ptrdiff_t>(i) + 2);
  }
  std::vector<Letter> merged;
  for (const auto& u : units) {
    if (!merged.empty() && merged.back().var == u.var)
      merged.back().exp += u.exp;
    else
      merged.push_back(u);
  }
  return merged;
}

std::vector<FreeWord> test_words() {
  std::vector<FreeWord> out;
  for (const char* s : {"x1", "x1^2", "x1 x2 x1", "[x1,x2]", "x1^2 [x1,x2]", "x1^3 x2^-1 x1",
                        "[x1,x2,x2]", "x2 x1^-1 x2^3 x1^2", "(x1 x2)^3", "[x1^2,x2] x2^4", "x1^-1 x2^2 x1 x2^-2"})
    out.push_back(parse_word(s));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) out.push_back(oracle::random_word(rng, 2, 6));
  return out;
}

}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse_word("[x1,x2]").letters() == L({{1, 1}, {2, 1}, {1, -1}, {2, -1}}));
  CHECK(parse_word("x1 x1^-1").empty());
  // [[x1,x2],x3] = x1 x2 x1^-1 x2^-1 x3 x2 x1 x2^-1 x1^-1 x3^-1, reduced by hand
  CHECK(parse_word("[x1,x2,x3]").letters() ==
        L({{1, 1}, {2, 1}, {1, -1}, {2, -1}, {3, 1}, {2, 1}, {1, 1}, {2, -1}, {1, -1}, {3, -1}}));
  CHECK(parse_word("[x1,x2,x3]") == parse_word("[[x1,x2],x3]"));
  CHECK(parse_word("x1^2x2").letters() == L({{1, 2}, {2, 1}}));
  CHECK(parse_word("(x1 x2)^2").letters() == L({{1, 1}, {2, 1}, {1, 1}, {2, 1}}));
  CHECK(parse_word("[x1,x2]^-1") == parse_word("x2 x1 x2^-1 x1^-1"));
  CHECK(parse_word("1").empty());
  CHECK(parse_word("x1 x1").letters() == L({{1, 2}}));
  CHECK(parse_word("x3").arity() == 3);
}

TEST_CASE("parse errors carry the position") {
  auto position = [](const char* text) -> std::size_t {
    try {
      parse_word(text);
    } catch (const ParseError& e) {
      return e.position();
    }
    return 999;
  };
  CHECK(position("x") == 1);
  CHECK(position("x1^") == 3);
  CHECK(position("(x1") == 3);
  CHECK(position("[x1]") == 3);
  CHECK(position("y1") == 0);
  CHECK(position("x1 x0") == 3);
  CHECK(position("") == 0);
  CHECK(position("x1 )") == 3);
  CHECK_THROWS_AS(parse_word("x2000000"), ParseError);
}

TEST_CASE("length guard") {
  CHECK_THROWS_AS(word_power(parse_word("x1 x2"), 6000), PreconditionError);
  CHECK(word_power(parse_word("x1"), 20000).letters() == L({{1, 20000}}));
}

TEST_CASE("render") {
  CHECK(render(FreeWord{}) == "1");
  CHECK(render(parse_word("x1^2 x2^-1")) == "x1^2 x2^-1");
  CHECK(render(parse_word("[x1,x2]")) == "x1 x2 x1^-1 x2^-1");
}

TEST_CASE("invert, power, commutator") {
  const auto w = parse_word("x1^2 x2^-1");
  CHECK(render(invert(w)) == "x2 x1^-2");
  CHECK(concat(w, invert(w)).empty());
  CHECK(word_power(w, 0).empty());
  CHECK(word_power(w, -2) == concat(invert(w), invert(w)));
  CHECK(word_power(parse_word("x1 x2 x1^-1"), 3) == parse_word("x1 x2^3 x1^-1"));
  CHECK(word_commutator(parse_word("x1"), parse_word("x2")) == parse_word("[x1,x2]"));
}

TEST_CASE("abelianized exponents") {
  CHECK(abelianized_exponents(parse_word("[x1,x2]")) == std::vector<std::int64_t>{0, 0});
  CHECK(abelianized_exponents(parse_word("x1^2 [x1,x2]")) == std::vector<std::int64_t>{2, 0});
  CHECK(abelianized_exponents(parse_word("x1^3 x2^-1 x1")) == std::vector<std::int64_t>{4, -1});
  CHECK(abelianized_exponents(FreeWord::from_letters({}, 3)) == std::vector<std::int64_t>{0, 0, 0});
}

TEST_CASE("collect_split examples") {
  auto c = collect_split(parse_word("x1^2"));
  CHECK(c.exponents == std::vector<std::int64_t>{2});
  CHECK(c.kappa.empty());

  c = collect_split(parse_word("[x1,x2]"));
  CHECK(c.exponents == std::vector<std::int64_t>{0, 0});
  CHECK(c.kappa == parse_word("[x1,x2]"));

  c = collect_split(parse_word("x1 x2 x1"));
  CHECK(c.exponents == std::vector<std::int64_t>{2, 1});
  // (x1^2 x2)^-1 x1 x2 x1
  CHECK(c.kappa == parse_word("x2^-1 x1^-1 x2 x1"));
  CHECK(abelianized_exponents(c.kappa) == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("pad_arity") {
  const auto w = parse_word("x1^2");
  const auto padded = pad_arity(w, 3);
  CHECK(padded.arity() == 3);
  CHECK(padded.letters() == w.letters());
  CHECK(padded.variables() == std::vector<int>{1});
  CHECK_THROWS_AS(pad_arity(parse_word("x2"), 1), PreconditionError);
}

TEST_CASE("round trip parse(render(w)) = w") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto w = oracle::random_word(rng, 4, 12, 5);
    CHECK(parse_word(render(w)).letters() == w.letters());
  }
}

TEST_CASE("free reduction is confluent") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> var(1, 3), len(0, 14), ex(-2, 2);
  for (int i = 0; i < 500; ++i) {
    std::vector<Letter> raw;
    const int n = len(rng);
    for (int j = 0; j < n; ++j) {
      int e = ex(rng);
      if (e == 0) e = 1;
      raw.push_back({var(rng), e});
    }
    CHECK(FreeWord::from_letters(raw).letters() == reduce_in_random_order(raw, rng));
  }
}

TEST_CASE("abelianization is a homomorphism") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto u = oracle::random_word(rng, 3, 8), v = oracle::random_word(rng, 3, 8);
    auto eu = abelianized_exponents(FreeWord::from_letters(u.letters(), 3));
    const auto ev = abelianized_exponents(FreeWord::from_letters(v.letters(), 3));
    const auto uv = abelianized_exponents(FreeWord::from_letters(concat(u, v).letters(), 3));
    for (std::size_t j = 0; j < 3; ++j) eu[j] += ev[j];
    CHECK(eu == uv);
  }
}

TEST_CASE("w = (x1^e1 ... xk^ek) kappa on groups of order at most 16") {
  for (const auto& g : oracle::family_instances(16)) {
    CAPTURE(label(g));
    for (const auto& w0 : test_words()) {
      const FreeWord w = FreeWord::from_letters(w0.letters(), 2);
      const auto split = collect_split(w);
      const FreeWord recombined = concat(exponent_prefix(split.exponents), split.kappa);
      CHECK(recombined == w);
      bool ok = true;
      for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j) {
          const std::vector<Element> t{g.element(i), g.element(j)};
          Element lhs = evaluate(g, w, t);
          Element rhs = multiply(g, evaluate(g, exponent_prefix(split.exponents), t), evaluate(g, split.kappa, t));
          ok = ok && lhs == rhs;
        }
      CHECK(ok);
    }
  }
}
