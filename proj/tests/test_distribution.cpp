#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "wordmap/distribution.hpp"
#include "wordmap/errors.hpp"

using namespace wordmap;

namespace {

Presentation D(int n) { return make_family(Family::Dihedral, 2, n); }
Presentation Q(int n) { return make_family(Family::GeneralisedQuaternion, 2, n); }
Presentation SD(int n) { return make_family(Family::Semidihedral, 2, n); }

/// Counts by naive evaluation of every tuple.
std::vector<std::uint64_t> naive_counts(const Presentation& g, const FreeWord& w, int k) {
  std::vector<std::uint64_t> counts(g.order(), 0);
  std::vector<std::size_t> digits(static_cast<std::size_t>(k), 0);
  std::vector<Element> t(static_cast<std::size_t>(k));
  for (;;) {
    for (std::size_t i = 0; i < digits.size(); ++i) t[i] = g.element(digits[i]);
    ++counts[g.index(oracle::naive_evaluate(g, w, t))];
    std::size_t i = digits.size();
    while (i > 0 && ++digits[i - 1] == g.order()) digits[--i] = 0;
    if (i == 0) break;
  }
  return counts;
}

std::vector<Presentation> groups_up_to(std::uint64_t max_order) {
  auto out = oracle::family_instances(max_order);
  for (const auto& g : oracle::custom_instances())
    if (g.order() <= max_order) out.push_back(g);
  return out;
}

}  // namespace

TEST_CASE("evaluate examples") {
  const auto d8 = D(2);
  const std::vector<Element> t{{1, 0}, {0, 1}};
  CHECK(evaluate(d8, parse_word("[x1,x2]"), t) == Element{2, 0});
  for (const auto& g : groups_up_to(64))
    for (const auto& x : elements(g)) {
      const std::vector<Element> one{x};
      CHECK(evaluate(g, parse_word("x1"), one) == x);
      CHECK(evaluate(g, FreeWord{}, one) == kIdentity);
    }
}

TEST_CASE("distribution examples") {
  for (const auto& g : groups_up_to(64)) {
    const auto d = distribution_exhaustive(g, parse_word("x1"), 1);
    CHECK(d.image_size() == g.order());
    CHECK(d.min_count() == 1);
    CHECK(d.probability(kIdentity) == Rational(1, g.order()));
  }
  const auto q8 = distribution_exhaustive(Q(2), parse_word("x1^2"), 1);
  CHECK(q8.count(kIdentity) == 2);
  CHECK(q8.count({2, 0}) == 6);
  CHECK(q8.image_size() == 2);

  const auto d8 = distribution_exhaustive(D(2), parse_word("[x1,x2]"), 2);
  for (const auto& g : d8.support()) CHECK((g == kIdentity || g == Element{2, 0}));
  CHECK(d8.total() == 64);
}

TEST_CASE("exhaustive counts match naive evaluation") {
  std::mt19937_64 rng(3);
  for (const auto& g : groups_up_to(16)) {
    CAPTURE(label(g));
    for (int i = 0; i < 6; ++i) {
      const auto w = oracle::random_word(rng, 2, 5);
      CAPTURE(render(w));
      CHECK(distribution_exhaustive(g, w, 2).counts() == naive_counts(g, w, 2));
    }
  }
}

TEST_CASE("coset split examples") {
  CHECK(distribution_coset_split(D(2), parse_word("[x1,x2]"), 2) ==
        distribution_exhaustive(D(2), parse_word("[x1,x2]"), 2));
  const auto uniform = distribution_coset_split(D(3), parse_word("x1"), 1);
  CHECK(uniform.image_size() == 16);
  CHECK(uniform.min_count() == 1);
  CHECK(distribution_coset_split(SD(3), parse_word("x1^2 x2^2"), 2) ==
        distribution_exhaustive(SD(3), parse_word("x1^2 x2^2"), 2));
}

TEST_CASE("coset split equals exhaustive on random words, including m > 1") {
  std::mt19937_64 rng(17);
  for (const auto& g : groups_up_to(81)) {
    CAPTURE(label(g));
    for (int i = 0; i < 12; ++i) {
      const auto w = oracle::random_word(rng, 3, 7);
      const int k = g.order() > 32 ? 2 : 3;
      if (w.arity() > k) continue;
      CAPTURE(render(w));
      CHECK(distribution_coset_split(g, w, k) == distribution_exhaustive(g, w, k));
    }
  }
}

TEST_CASE("total mass and worker invariance") {
  std::mt19937_64 rng(23);
  for (const auto& g : groups_up_to(32)) {
    const auto w = oracle::random_word(rng, 2, 6);
    const auto d1 = distribution_exhaustive(g, w, 2, {.workers = 1});
    const auto d3 = distribution_exhaustive(g, w, 2, {.workers = 3});
    CHECK(d1 == d3);
    CHECK(std::accumulate(d1.counts().begin(), d1.counts().end(), std::uint64_t{0}) == g.order() * g.order());
    CHECK(distribution_coset_split(g, w, 2, {.workers = 4}) == d1);
  }
}

TEST_CASE("counts are conjugation invariant") {
  std::mt19937_64 rng(29);
  for (const auto& g : groups_up_to(32)) {
    CAPTURE(label(g));
    for (int i = 0; i < 4; ++i) {
      const auto w = oracle::random_word(rng, 2, 6);
      const auto d = distribution_exhaustive(g, w, 2);
      bool ok = true;
      for (const auto& x : elements(g))
        for (const auto& h : elements(g))
          ok = ok && d.count(x) == d.count(multiply(g, multiply(g, h, x), inverse(g, h)));
      CHECK(ok);
    }
  }
}

TEST_CASE("padding multiplies every count by |G|") {
  std::mt19937_64 rng(31);
  for (const auto& g : groups_up_to(32)) {
    const auto w = oracle::random_word(rng, 2, 6);
    const auto d = distribution_exhaustive(g, w, 2);
    const auto padded = distribution_exhaustive(g, pad_arity(w, 3), 3);
    bool ok = true;
    for (const auto& x : elements(g)) {
      ok = ok && padded.count(x) == g.order() * d.count(x);
      ok = ok && padded.probability(x) == d.probability(x);
    }
    CHECK(ok);
  }
}

TEST_CASE("budget") {
  CHECK_THROWS_AS(distribution_exhaustive(D(5), parse_word("x1 x2 x3 x4 x5"), 5, {.max_evals = 1000}),
                  BudgetExceeded);
  CHECK_THROWS_AS(tuple_space_size(64, 4, 1000), BudgetExceeded);
  CHECK(tuple_space_size(8, 2, 64) == 64);
  CHECK_THROWS_AS(distribution_exhaustive(D(2), parse_word("x3"), 2), PreconditionError);
}

TEST_CASE("quotient pushforward") {
  CHECK(quotient_pushforward_check(D(3), center_z(D(3)), parse_word("x1^2"), 1));
  CHECK(quotient_pushforward_check(Q(2), center_z(Q(2)), parse_word("[x1,x2]"), 2));
  for (const auto& g : groups_up_to(64))
    if (g.n() >= 2) CHECK(quotient_pushforward_check(g, center_z(g), parse_word("x1"), 1));

  // M(2,3) has centre <a^2> of order 4
  const auto m = make_family(Family::Modular2, 2, 3);
  CHECK(quotient_pushforward_check(m, {2, 0}, parse_word("x1"), 1));
  CHECK(quotient_pushforward_check(m, {2, 0}, parse_word("x1^2 x2^3"), 2));
  CHECK_THROWS_AS(quotient_pushforward_check(D(3), {2, 0}, parse_word("x1"), 1), PreconditionError);
  CHECK_THROWS_AS(quotient_pushforward_check(D(3), {0, 1}, parse_word("x1"), 1), PreconditionError);
}
