#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "wordmap/errors.hpp"
#include "wordmap/io.hpp"
#include "wordmap/verifier.hpp"

using namespace wordmap;

namespace {

Presentation D(int n) { return make_family(Family::Dihedral, 2, n); }
Presentation Q(int n) { return make_family(Family::GeneralisedQuaternion, 2, n); }

}  // namespace

TEST_CASE("image location") {
  CHECK(locate_image(distribution_exhaustive(D(2), parse_word("x1"), 1)) == ImageLocation::FullGroup);
  CHECK(locate_image(distribution_exhaustive(D(2), parse_word("[x1,x1]"), 1)) == ImageLocation::Trivial);
  CHECK(locate_image(distribution_exhaustive(Q(2), parse_word("x1^2"), 1)) == ImageLocation::InZNontrivial);
  CHECK(locate_image(distribution_exhaustive(D(3), parse_word("x1^2"), 1)) == ImageLocation::InANotZ);
  // squares in C8 x C2 that are not in <a>: none, so use a custom m = 2 group
  const auto g = Presentation::make(2, 2, 2, 0, 3);
  CHECK(locate_image(distribution_exhaustive(g, parse_word("x1^2"), 1)) == ImageLocation::OutsideA);
}

TEST_CASE("dichotomy examples") {
  auto observed = [](const Presentation& g, const char* w) {
    const auto r = dichotomy_check(g, parse_word(w));
    CHECK(r.applicable);
    CHECK(r.pass);
    return r.observed.value();
  };
  CHECK(observed(D(2), "x1") == Alternative::FullGroup);
  CHECK(observed(D(2), "[x1,x2]") == Alternative::SubsetOfA);
  CHECK(observed(Q(2), "x1^2") == Alternative::SubsetOfA);
  CHECK(dichotomy_check(D(2), parse_word("x1^3 x2^2")).predicted == Alternative::FullGroup);
  CHECK(dichotomy_check(D(2), parse_word("x1^4 x2^6")).exponent_gcd == 2);
  CHECK(dichotomy_check(D(2), parse_word("[x1,x2]")).exponent_gcd == 0);

  const auto g = Presentation::make(2, 2, 2, 0, 3);  // b^2 not in <a>
  const auto r = dichotomy_check(g, parse_word("x1^2"));
  CHECK_FALSE(r.applicable);
  CHECK_FALSE(r.pass);
}

TEST_CASE("amit_ashurst_check examples") {
  const auto q8 = amit_ashurst_check(Q(2), parse_word("x1^2"), 1);
  CHECK(q8.pass);
  CHECK(q8.min_probability == Rational(1, 4));
  CHECK(q8.bound == Rational(1, 8));

  for (const auto& g : oracle::family_instances(64)) {
    const auto r = amit_ashurst_check(g, parse_word("x1"), 1);
    CHECK(r.pass);
    CHECK(r.min_probability == r.bound);
  }

  const auto d16 = distribution_exhaustive(D(3), parse_word("[x1,x2]"), 2);
  const auto r = amit_ashurst_check(parse_word("[x1,x2]"), d16);
  CHECK(r.pass);
  const auto image = d16.support();
  std::set<Element> support(image.begin(), image.end());
  CHECK(support == std::set<Element>{{0, 0}, {2, 0}, {4, 0}, {6, 0}});
  CHECK(d16.min_count() * 16 >= d16.total());
}

TEST_CASE("z_word_polynomial_extract examples") {
  const auto z = z_word_polynomial_extract(Q(2), parse_word("x1^2"), 1);
  CHECK(z.well_defined);
  CHECK(z.degree <= 2);
  CHECK(z.degree_within_class);
  CHECK(z.effective_variables == std::vector<int>{1});
  CHECK(z.num_vars_effective == 2);
  // x^2 = a^2 unless x = 1 or a^2: q = abar + bbar + abar*bbar over F_2
  CHECK(z.polynomial == FpPolynomial::from_terms(2, 2, {{{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}}));

  CHECK_THROWS_AS(z_word_polynomial_extract(D(2), parse_word("[x1,x1]"), 1), PreconditionError);
  CHECK_THROWS_AS(z_word_polynomial_extract(D(3), parse_word("x1^2"), 1), PreconditionError);

  const auto d16 = z_word_polynomial_extract(D(3), parse_word("[x1,x2,x2]"), 2, {}, {.exhaustive_lifts = true});
  CHECK(d16.well_defined);
  CHECK(d16.degree <= 3);
  CHECK(d16.nilpotency_class == 3);
  CHECK(d16.lift_checks == 256);
}

TEST_CASE("lift sampling is reproducible") {
  ZExtractOptions options{.lift_samples = 5, .seed = 99};
  const auto a = z_word_polynomial_extract(D(4), parse_word("[x1,x2]^4"), 2, {}, options);
  const auto b = z_word_polynomial_extract(D(4), parse_word("[x1,x2]^4"), 2, {}, options);
  CHECK(a.polynomial == b.polynomial);
  CHECK(a.lift_checks == b.lift_checks);
  CHECK(a.well_defined);
}

TEST_CASE("z_word_probability_bound_check examples") {
  const auto b = z_word_probability_bound_check(Q(2), parse_word("x1^2"), 1);
  CHECK(b.pass);
  CHECK(b.padded_arity == 2);
  REQUIRE(b.rows.size() == 2);
  CHECK(b.rows[1].probability == Rational(6, 8));
  CHECK(b.rows[1].probability >= b.class_bound);
  CHECK(b.class_bound == Rational(1, 4));
  for (const auto& row : b.rows) CHECK(row.count_identity);

  const auto padded = z_word_probability_bound_check(Q(2), pad_arity(parse_word("x1^2"), 2), 2);
  CHECK(padded.pass);
  CHECK(padded.rows[1].probability == Rational(6, 8));

  for (const char* w : {"[x1,x2]^4", "[x1,x2,x2]^2", "x1^8", "[x1,x2,x1,x2]"}) {
    CAPTURE(w);
    const auto r = z_word_probability_bound_check(D(4), parse_word(w), 2);
    CHECK(r.pass);
  }
}

TEST_CASE("intersection_lemma_check examples") {
  const auto r = intersection_lemma_check(D(3), parse_word("x1^2"), 1);
  CHECK(r.applicable);
  CHECK(r.pass);
  CHECK(r.z_proper_subset);
  CHECK(r.comparisons > 0);

  CHECK_FALSE(intersection_lemma_check(D(3), parse_word("x1"), 1).applicable);
  const auto q16 = intersection_lemma_check(Q(3), parse_word("[x1,x2] x2^4"), 2);
  if (q16.applicable) CHECK(q16.pass);
  CHECK(intersection_lemma_check(Q(3), parse_word("[x1,x2]"), 2).pass);
}

TEST_CASE("fibre equalities on the families") {
  std::mt19937_64 rng(61);
  int applicable = 0;
  for (const auto& g : oracle::family_instances(64)) {
    for (int i = 0; i < 30; ++i) {
      const auto w = oracle::random_word(rng, 2, 6);
      const auto r = intersection_lemma_check(g, w, 2);
      if (!r.applicable) continue;
      ++applicable;
      CAPTURE(label(g));
      CAPTURE(render(w));
      CHECK(r.pass);
    }
  }
  CHECK(applicable > 20);
}

TEST_CASE("gen_words") {
  const auto two = gen_words({.mode = WordGenMode::Exhaustive, .k_max = 2, .len_max = 2});
  CHECK(two.size() == 16);
  CHECK(render(two.front()) == "x1");
  std::set<std::vector<Letter>> distinct;
  for (const auto& w : two) distinct.insert(w.letters());
  CHECK(distinct.size() == 16);

  // 2k (2k-1)^{L-1} reduced words of each length L
  CHECK(gen_words({.mode = WordGenMode::Exhaustive, .k_max = 2, .len_max = 4}).size() == 4 + 12 + 36 + 108);
  CHECK(gen_words({.mode = WordGenMode::Exhaustive, .k_max = 1, .len_max = 3}).size() == 6);

  const WordGenSpec random{.mode = WordGenMode::Random, .k_max = 3, .len_max = 10, .count = 200, .seed = 4};
  const auto a = gen_words(random), b = gen_words(random);
  CHECK(a == b);
  CHECK(a.size() == 200);
  for (const auto& w : a) {
    CHECK(w.length() <= 10);
    CHECK(w.length() >= 1);
    CHECK(w.arity() <= 3);
  }
  auto other = random;
  other.seed = 5;
  CHECK(gen_words(other) != a);
  CHECK_THROWS_AS(gen_words({.k_max = 0, .len_max = 2}), PreconditionError);
}

TEST_CASE("scan campaign") {
  CampaignConfig config;
  config.groups = oracle::family_instances(32);
  config.words = {{.mode = WordGenMode::Exhaustive, .k_max = 2, .len_max = 3},
                  {.mode = WordGenMode::Random, .k_max = 3, .len_max = 6, .count = 20, .seed = 1}};
  config.checks.insert("quotient");
  const auto serial = scan_campaign(config);
  CHECK(serial.pass());
  CHECK(serial.rows.size() == config.groups.size() * (4 + 12 + 36 + 20));
  for (const auto& g : serial.groups) {
    CHECK(g.equality_witness);
    CHECK(*g.min_probability == Rational(1, g.group.order()));
    CHECK(g.z_words == g.z_words_equal_z);
  }
  CHECK(serial.checks.at("zbound").pass > 0);
  CHECK(serial.checks.at("intersection").pass > 0);
  CHECK(serial.checks.at("quotient").fail == 0);

  config.workers = 3;
  const auto parallel = scan_campaign(config);
  CHECK(to_json(parallel).dump() == to_json(serial).dump());
  CHECK(campaign_csv(parallel) == campaign_csv(serial));

  config.workers = 1;
  config.coset_split = true;
  CHECK(to_json(scan_campaign(config)).dump() == to_json(serial).dump());
}

TEST_CASE("campaign budget") {
  CampaignConfig config;
  config.groups = {D(5)};
  config.words = {{.mode = WordGenMode::Exhaustive, .k_max = 2, .len_max = 1}};
  config.engine.max_evals = 100;
  const auto report = scan_campaign(config);
  CHECK(report.budget_exceeded == 2);
}
