#include "wordmap/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

#include "wordmap/arith.hpp"
#include "wordmap/errors.hpp"

namespace wordmap {

namespace {

/// Uniform draw from [0, bound) by rejection; identical on every platform,
/// unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

Element z_power(const Presentation& group, std::int64_t i) {
  return {mod(i * (group.a_order() / group.p()), group.a_order()), 0};
}

std::int64_t z_exponent(const Presentation& group, Element x) {
  return x.alpha / (group.a_order() / group.p());
}

std::uint64_t upow(std::int64_t base, std::int64_t exp) {
  std::uint64_t out = 1;
  for (std::int64_t i = 0; i < exp; ++i) out = checked_mul(out, static_cast<std::uint64_t>(base));
  return out;
}

}  // namespace

std::string_view to_string(ImageLocation location) {
  switch (location) {
    case ImageLocation::FullGroup: return "FULL_GROUP";
    case ImageLocation::InANotZ: return "IN_A_NOT_Z";
    case ImageLocation::InZNontrivial: return "IN_Z_NONTRIVIAL";
    case ImageLocation::Trivial: return "TRIVIAL";
    case ImageLocation::OutsideA: return "OUTSIDE_A";
  }
  return "TRIVIAL";
}

std::string_view to_string(Alternative alternative) {
  return alternative == Alternative::FullGroup ? "FULL_GROUP" : "SUBSET_OF_A";
}

ImageLocation locate_image(const Distribution& dist) {
  const Presentation& group = dist.group();
  const auto image = dist.support();
  if (image.size() == group.order()) return ImageLocation::FullGroup;
  if (image.size() == 1 && image.front() == kIdentity) return ImageLocation::Trivial;
  if (std::all_of(image.begin(), image.end(), [&](Element g) { return in_z(group, g); }))
    return ImageLocation::InZNontrivial;
  if (std::all_of(image.begin(), image.end(), [](Element g) { return in_a(g); }))
    return ImageLocation::InANotZ;
  return ImageLocation::OutsideA;
}

// ---------------------------------------------------------------------------

DichotomyResult dichotomy_check(const Presentation& group, const FreeWord& word,
                                const Distribution& dist) {
  DichotomyResult result;
  std::int64_t d = 0;
  for (std::int64_t e : abelianized_exponents(word)) d = std::gcd(d, std::llabs(e));
  result.exponent_gcd = d;
  result.predicted = d % group.p() != 0 ? Alternative::FullGroup : Alternative::SubsetOfA;

  if (!in_a(power(group, generator_b(group), group.p()))) {
    result.reason = "b^p is not in <a>";
    return result;
  }
  result.applicable = true;

  const auto image = dist.support();
  if (image.size() == group.order())
    result.observed = Alternative::FullGroup;
  else if (std::all_of(image.begin(), image.end(), [](Element g) { return in_a(g); }))
    result.observed = Alternative::SubsetOfA;

  result.pass = result.observed.has_value() && *result.observed == result.predicted;
  if (!result.observed)
    result.reason = "image is neither G nor inside <a>";
  else if (!result.pass)
    result.reason = "gcd prediction disagrees with the observed image";
  return result;
}

DichotomyResult dichotomy_check(const Presentation& group, const FreeWord& word,
                                const EngineOptions& options) {
  return dichotomy_check(group, word, distribution_exhaustive(group, word, word.arity(), options));
}

// ---------------------------------------------------------------------------

VerificationReport amit_ashurst_check(const FreeWord& word, const Distribution& dist) {
  VerificationReport report;
  report.group = dist.group();
  report.word = word;
  report.arity = dist.arity();
  report.image_size = dist.image_size();
  report.image_location = locate_image(dist);
  report.min_probability = Rational(dist.min_count(), dist.total());
  report.bound = Rational(1, dist.group_order());
  report.pass = report.min_probability >= report.bound;
  return report;
}

VerificationReport amit_ashurst_check(const Presentation& group, const FreeWord& word, int arity,
                                      const EngineOptions& options) {
  return amit_ashurst_check(word, distribution_exhaustive(group, word, arity, options));
}

// ---------------------------------------------------------------------------

ZPolynomialResult z_word_polynomial_extract(const Presentation& group, const FreeWord& word,
                                            int arity, const Distribution& dist,
                                            const ZExtractOptions& options) {
  if (locate_image(dist) != ImageLocation::InZNontrivial)
    throw PreconditionError("z_word_polynomial_extract requires 1 != G_w inside Z (image is " +
                            std::string(to_string(locate_image(dist))) + ")");
  const auto p = static_cast<int>(group.p());
  ZPolynomialResult result;
  result.effective_variables = word.variables();
  const auto e = result.effective_variables.size();
  result.num_vars_effective = static_cast<int>(2 * e);
  result.num_vars_full = 2 * arity;

  const std::uint64_t points = point_space_size(p, result.num_vars_effective);
  std::vector<Element> tuple(static_cast<std::size_t>(arity), kIdentity);
  auto place = [&](const std::vector<int>& point) {
    for (std::size_t j = 0; j < e; ++j)
      tuple[static_cast<std::size_t>(result.effective_variables[j] - 1)] = {point[j], point[e + j]};
  };

  std::vector<int> table(points);
  for (std::uint64_t i = 0; i < points; ++i) {
    place(point_from_index(p, result.num_vars_effective, i));
    table[i] = static_cast<int>(z_exponent(group, evaluate(group, word, tuple)));
  }

  result.well_defined = true;
  if (options.exhaustive_lifts) {
    const std::uint64_t total = tuple_space_size(group.order(), static_cast<int>(e), std::uint64_t{1} << 24);
    std::vector<int> point(2 * e);
    for (std::uint64_t t = 0; t < total && result.well_defined; ++t) {
      std::uint64_t rest = t;
      std::uint64_t index = 0;
      for (std::size_t j = e; j-- > 0;) {
        const Element g = group.element(rest % group.order());
        rest /= group.order();
        tuple[static_cast<std::size_t>(result.effective_variables[j] - 1)] = g;
        point[j] = static_cast<int>(g.alpha % p);
        point[e + j] = static_cast<int>(g.beta % p);
      }
      for (int c : point) index = index * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(c);
      ++result.lift_checks;
      if (z_exponent(group, evaluate(group, word, tuple)) != table[index]) result.well_defined = false;
    }
  } else {
    std::mt19937_64 rng(options.seed);
    const auto alpha_lifts = static_cast<std::uint64_t>(group.a_order() / p);
    const auto beta_lifts = static_cast<std::uint64_t>(group.b_order() / p);
    for (std::uint64_t i = 0; i < points && result.well_defined; ++i) {
      const auto point = point_from_index(p, result.num_vars_effective, i);
      for (int s = 0; s < options.lift_samples; ++s) {
        for (std::size_t j = 0; j < e; ++j) {
          Element g{point[j], point[e + j]};
          g.alpha += p * static_cast<std::int64_t>(uniform_below(rng, alpha_lifts));
          if (group.m() > 1) g.beta += p * static_cast<std::int64_t>(uniform_below(rng, beta_lifts));
          tuple[static_cast<std::size_t>(result.effective_variables[j] - 1)] = g;
        }
        ++result.lift_checks;
        if (z_exponent(group, evaluate(group, word, tuple)) != table[i]) {
          result.well_defined = false;
          break;
        }
      }
    }
  }

  result.polynomial = interpolate(p, result.num_vars_effective, table);
  result.degree = result.polynomial.total_degree();
  result.nilpotency_class = nilpotency_class(group, options.class_cap);
  result.degree_within_class = result.degree <= result.nilpotency_class;
  return result;
}

ZPolynomialResult z_word_polynomial_extract(const Presentation& group, const FreeWord& word,
                                            int arity, const EngineOptions& engine,
                                            const ZExtractOptions& options) {
  return z_word_polynomial_extract(group, word, arity,
                                   distribution_exhaustive(group, word, arity, engine), options);
}

ZBoundResult z_word_probability_bound_check(const Presentation& group, const FreeWord& word,
                                            int arity, const ZPolynomialResult& extracted,
                                            const Distribution& dist, const EngineOptions& engine) {
  if (!extracted.well_defined)
    throw PreconditionError("Z-word polynomial is not independent of the lifts");
  if (!extracted.degree_within_class)
    throw PreconditionError("Z-word polynomial degree exceeds the nilpotency class");
  if (dist.arity() != arity) throw PreconditionError("distribution arity does not match");

  ZBoundResult result;
  const int c = extracted.nilpotency_class;
  result.arity = arity;
  result.padded_arity = std::max(arity, c / 2 + 1);
  result.degree = extracted.degree;
  result.nilpotency_class = c;
  const int k = result.padded_arity;

  const Distribution padded =
      k == arity ? dist : distribution_exhaustive(group, pad_arity(word, k), k, engine);
  const FpPolynomial q = extracted.polynomial.with_num_vars(2 * k);
  result.chevalley_warning = chevalley_warning_check(q);

  const std::uint64_t lift_count =
      checked_mul(upow(group.p(), static_cast<std::int64_t>(k) * (group.n() - 1)),
                  upow(group.p(), static_cast<std::int64_t>(k) * (group.m() - 1)));
  const std::uint64_t lift_bound = checked_mul(lift_count, upow(group.p(), 2 * k - c));
  result.class_bound = Rational(1, upow(group.p(), c));
  result.class_bound_beats_order = result.class_bound > Rational(1, group.order());

  bool rows_ok = true;
  for (std::int64_t i = 0; i < group.p(); ++i) {
    const Element g = z_power(group, i);
    ZBoundRow row;
    row.target = static_cast<int>(i);
    row.word_count = padded.count(g);
    if (row.word_count == 0) continue;
    row.cw_solutions = count_solutions(q, row.target);
    row.lift_bound = lift_bound;
    row.probability = Rational(row.word_count, padded.total());
    row.count_identity = row.word_count == checked_mul(lift_count, row.cw_solutions);
    row.pass = row.word_count >= lift_bound && row.probability >= result.class_bound;
    rows_ok = rows_ok && row.pass;
    result.rows.push_back(row);
  }
  result.pass = result.chevalley_warning.applicable && result.chevalley_warning.pass && rows_ok &&
                !result.rows.empty() && result.class_bound_beats_order;
  return result;
}

ZBoundResult z_word_probability_bound_check(const Presentation& group, const FreeWord& word,
                                            int arity, const EngineOptions& engine,
                                            const ZExtractOptions& options) {
  const Distribution dist = distribution_exhaustive(group, word, arity, engine);
  const ZPolynomialResult extracted = z_word_polynomial_extract(group, word, arity, dist, options);
  return z_word_probability_bound_check(group, word, arity, extracted, dist, engine);
}

// ---------------------------------------------------------------------------

IntersectionResult intersection_lemma_check(const Presentation& group, const Distribution& dist) {
  IntersectionResult result;
  // A n B = <b^{p^m}>.
  if (!in_z(group, power(group, generator_b(group), group.b_order()))) {
    result.reason = "A n B is not inside Z";
    return result;
  }
  const ImageLocation location = locate_image(dist);
  if (location != ImageLocation::InANotZ) {
    result.reason = "image is " + std::string(to_string(location));
    return result;
  }
  result.applicable = true;

  std::vector<Element> z;
  for (std::int64_t i = 0; i < group.p(); ++i) z.push_back(z_power(group, i));
  const auto image = dist.support();
  result.z_proper_subset =
      image.size() > z.size() &&
      std::all_of(z.begin(), z.end(), [&](Element x) { return dist.count(x) != 0; });

  result.fibre_relations = true;
  for (const Element g : image) {
    if (in_z(group, g)) continue;
    for (const Element x : z) {
      ++result.comparisons;
      const std::uint64_t n = dist.count(g);
      if (n != dist.count(multiply(group, g, x)) || n > dist.count(x)) result.fibre_relations = false;
    }
  }
  result.bound = Rational(dist.min_count(), dist.total()) >= Rational(1, group.order());
  result.pass = result.z_proper_subset && result.fibre_relations && result.bound;
  return result;
}

IntersectionResult intersection_lemma_check(const Presentation& group, const FreeWord& word,
                                            int arity, const EngineOptions& options) {
  return intersection_lemma_check(group, distribution_exhaustive(group, word, arity, options));
}

// ---------------------------------------------------------------------------

std::vector<FreeWord> gen_words(const WordGenSpec& spec) {
  if (spec.k_max < 1) throw PreconditionError("k_max must be positive");
  if (spec.len_max < 1) throw PreconditionError("len_max must be positive");
  const int symbols = 2 * spec.k_max;  // symbol s is x_{s/2+1}^{+-1}
  auto letter_of = [](int s) { return Letter{s / 2 + 1, s % 2 == 0 ? 1 : -1}; };
  auto inverse_of = [](int s) { return s ^ 1; };

  std::vector<FreeWord> out;
  if (spec.mode == WordGenMode::Exhaustive) {
    std::uint64_t expected = 0, layer = static_cast<std::uint64_t>(symbols);
    for (int len = 1; len <= spec.len_max; ++len) {
      expected += layer;
      layer = checked_mul(layer, static_cast<std::uint64_t>(symbols - 1));
      if (expected > (std::uint64_t{1} << 24))
        throw BudgetExceeded("exhaustive word generation would emit more than 2^24 words");
    }
    out.reserve(expected);
    std::vector<int> seq;
    auto emit = [&](auto&& self, int remaining) -> void {
      if (remaining == 0) {
        std::vector<Letter> letters;
        for (int s : seq) letters.push_back(letter_of(s));
        out.push_back(FreeWord::from_letters(std::move(letters)));
        return;
      }
      for (int s = 0; s < symbols; ++s) {
        if (!seq.empty() && s == inverse_of(seq.back())) continue;
        seq.push_back(s);
        self(self, remaining - 1);
        seq.pop_back();
      }
    };
    for (int len = 1; len <= spec.len_max; ++len) emit(emit, len);
    return out;
  }

  std::mt19937_64 rng(spec.seed);
  out.reserve(spec.count);
  for (std::uint64_t c = 0; c < spec.count; ++c) {
    const int k = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(spec.k_max)));
    const int len = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(spec.len_max)));
    std::vector<Letter> letters;
    int last = -1;
    for (int i = 0; i < len; ++i) {
      int s;
      if (last < 0) {
        s = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(2 * k)));
      } else {
        // Skip the inverse of the previous symbol.
        s = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(2 * k - 1)));
        if (s >= inverse_of(last)) ++s;
      }
      letters.push_back(letter_of(s));
      last = s;
    }
    out.push_back(FreeWord::from_letters(std::move(letters)));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct TaskOutcome {
  CampaignRow row;
  std::vector<std::pair<std::string, int>> tallies;  // check, 0 pass / 1 fail / 2 n/a
  std::vector<CampaignFailure> failures;
  bool z_word = false;
  bool z_word_equal_z = false;
};

void tally(TaskOutcome& out, const std::string& check, bool applicable, bool pass) {
  out.tallies.emplace_back(check, !applicable ? 2 : pass ? 0 : 1);
}

TaskOutcome run_task(const CampaignConfig& config, const Presentation& group, int group_class,
                     const FreeWord& word, std::uint64_t task_index) {
  TaskOutcome out;
  const int k = std::max(1, word.arity());
  out.row.group = label(group);
  out.row.word = render(word);
  out.row.arity = k;

  auto fail = [&](const std::string& check, const std::string& detail) {
    out.failures.push_back({label(group), group, render(word), k, check, detail});
  };
  const bool multi = config.workers > 1;
  EngineOptions engine = config.engine;
  if (multi) engine.workers = 1;

  std::optional<Distribution> dist;
  try {
    dist = config.coset_split ? distribution_coset_split(group, word, k, engine)
                              : distribution_exhaustive(group, word, k, engine);
  } catch (const BudgetExceeded&) {
    out.row.budget_exceeded = true;
    return out;
  }

  const VerificationReport aa = amit_ashurst_check(word, *dist);
  out.row.image_size = aa.image_size;
  out.row.location = aa.image_location;
  out.row.min_probability = aa.min_probability;
  out.row.pass = aa.pass;
  tally(out, "amit_ashurst", true, aa.pass);
  if (!aa.pass) fail("amit_ashurst", "min P = " + aa.min_probability.str() + " < " + aa.bound.str());

  if (config.checks.contains("dichotomy")) {
    const DichotomyResult d = dichotomy_check(group, word, *dist);
    tally(out, "dichotomy", d.applicable, d.pass);
    if (d.applicable && !d.pass) fail("dichotomy", d.reason);
  }

  if (config.checks.contains("intersection")) {
    const IntersectionResult r = intersection_lemma_check(group, *dist);
    tally(out, "intersection", r.applicable, r.pass);
    if (r.applicable && !r.pass)
      fail("intersection", std::string("z_proper_subset=") + (r.z_proper_subset ? "1" : "0") +
                               " fibre_relations=" + (r.fibre_relations ? "1" : "0") +
                               " bound=" + (r.bound ? "1" : "0"));
  }

  if (aa.image_location == ImageLocation::InZNontrivial) {
    out.z_word = true;
    out.z_word_equal_z = aa.image_size == static_cast<std::size_t>(group.p());
  }

  const bool want_zpoly = config.checks.contains("zpoly") || config.checks.contains("zbound");
  if (want_zpoly) {
    const bool applicable = aa.image_location == ImageLocation::InZNontrivial &&
                            group.order() <= config.zpoly_max_order && k <= config.zpoly_max_k;
    if (!applicable) {
      if (config.checks.contains("zpoly")) tally(out, "zpoly", false, false);
      if (config.checks.contains("zbound")) tally(out, "zbound", false, false);
    } else {
      ZExtractOptions extract = config.extract;
      extract.seed = config.extract.seed ^ (task_index * 0x9E3779B97F4A7C15ull);
      const ZPolynomialResult z = z_word_polynomial_extract(group, word, k, *dist, extract);
      const bool zpoly_ok = z.well_defined && z.degree_within_class;
      if (config.checks.contains("zpoly")) {
        tally(out, "zpoly", true, zpoly_ok);
        if (!zpoly_ok)
          fail("zpoly", "well_defined=" + std::to_string(z.well_defined) + " degree=" +
                            std::to_string(z.degree) + " class=" + std::to_string(group_class));
      }
      if (config.checks.contains("zbound")) {
        if (!zpoly_ok) {
          tally(out, "zbound", true, false);
          fail("zbound", "polynomial extraction failed");
        } else {
          const ZBoundResult b = z_word_probability_bound_check(group, word, k, z, *dist, engine);
          const bool identity = std::all_of(b.rows.begin(), b.rows.end(),
                                            [](const ZBoundRow& r) { return r.count_identity; });
          tally(out, "zbound", true, b.pass && identity);
          if (!b.pass || !identity)
            fail("zbound", "cw_pass=" + std::to_string(b.chevalley_warning.pass) +
                               " count_identity=" + std::to_string(identity));
        }
      }
    }
  }

  if (config.checks.contains("quotient")) {
    if (group.n() < 2) {
      tally(out, "quotient", false, false);
    } else {
      bool ok = false;
      try {
        ok = quotient_pushforward_check(group, center_z(group), word, k, engine);
      } catch (const BudgetExceeded&) {
        out.row.budget_exceeded = true;
      }
      if (!out.row.budget_exceeded) {
        tally(out, "quotient", true, ok);
        if (!ok) fail("quotient", "pushforward identity failed for N = Z");
      }
    }
  }
  return out;
}

}  // namespace

CampaignReport scan_campaign(const CampaignConfig& config) {
  CampaignReport report;
  for (const char* name : {"amit_ashurst", "dichotomy", "intersection", "zpoly", "zbound", "quotient"})
    if (std::string(name) == "amit_ashurst" || config.checks.contains(name)) report.checks[name];

  std::vector<FreeWord> words;
  for (const WordGenSpec& spec : config.words) {
    auto batch = gen_words(spec);
    words.insert(words.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  }

  std::vector<int> classes;
  for (const Presentation& g : config.groups) {
    GroupSummary summary;
    summary.label = label(g);
    summary.group = g;
    summary.nilpotency_class = nilpotency_class(g, config.extract.class_cap);
    classes.push_back(summary.nilpotency_class);
    const VerificationReport witness =
        amit_ashurst_check(g, FreeWord::from_letters({{1, 1}}), 1, config.engine);
    summary.equality_witness = witness.min_probability == witness.bound;
    report.groups.push_back(std::move(summary));
  }

  const std::uint64_t task_count = config.groups.size() * words.size();
  std::vector<TaskOutcome> outcomes(task_count);
  auto work = [&](std::uint64_t t) {
    const std::size_t gi = t / words.size();
    outcomes[t] = run_task(config, config.groups[gi], classes[gi], words[t % words.size()], t);
  };
  if (config.workers <= 1) {
    for (std::uint64_t t = 0; t < task_count; ++t) work(t);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < config.workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t t; (t = next.fetch_add(1)) < task_count;) work(t);
      });
  }

  for (std::uint64_t t = 0; t < task_count; ++t) {
    TaskOutcome& o = outcomes[t];
    GroupSummary& summary = report.groups[t / words.size()];
    ++summary.words;
    if (o.row.budget_exceeded) ++report.budget_exceeded;
    if (!o.row.budget_exceeded || o.row.image_size != 0) {
      if (!summary.min_probability || o.row.min_probability < *summary.min_probability)
        summary.min_probability = o.row.min_probability;
      ++summary.histogram[o.row.min_probability];
    }
    if (o.z_word) ++summary.z_words;
    if (o.z_word_equal_z) ++summary.z_words_equal_z;
    for (const auto& [check, state] : o.tallies) {
      CheckTally& tally_entry = report.checks[check];
      (state == 0 ? tally_entry.pass : state == 1 ? tally_entry.fail : tally_entry.not_applicable) += 1;
    }
    for (auto& f : o.failures) report.failures.push_back(std::move(f));
    report.rows.push_back(std::move(o.row));
  }
  for (const GroupSummary& summary : report.groups)
    if (!summary.equality_witness)
      report.failures.push_back({summary.label, summary.group, "x1", 1, "equality_witness",
                                 "w = x1 does not attain 1/|G|"});
  return report;
}

}  // namespace wordmap
