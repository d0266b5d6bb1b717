#ifndef WORDMAP_VERIFIER_HPP
#define WORDMAP_VERIFIER_HPP

// Checks of word-map probability claims on metacyclic p-groups: the bound
// P_{w,G}(g) >= 1/|G| on the image, the G_w = G / G_w inside <a> dichotomy,
// fibre equalities when G_w sits in <a> but not in Z, and the polynomial
// route through Chevalley-Warning when 1 != G_w inside Z.
//
// A failed theorem-backed check is a defect somewhere in this library; the
// reports still carry it as data so that it can be reproduced.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "wordmap/distribution.hpp"
#include "wordmap/fp_poly.hpp"
#include "wordmap/free_word.hpp"
#include "wordmap/metacyclic.hpp"
#include "wordmap/rational.hpp"

namespace wordmap {

enum class ImageLocation { FullGroup, InANotZ, InZNontrivial, Trivial, OutsideA };

std::string_view to_string(ImageLocation location);
ImageLocation locate_image(const Distribution& dist);

// ---------------------------------------------------------------------------
// Dichotomy

enum class Alternative { FullGroup, SubsetOfA };

std::string_view to_string(Alternative alternative);

struct DichotomyResult {
  bool applicable = false;  // b^p in <a>
  std::string reason;
  /// Observed alternative; empty if neither holds.
  std::optional<Alternative> observed;
  /// From the gcd d of the exponent sums: p does not divide d => FullGroup.
  Alternative predicted = Alternative::SubsetOfA;
  std::int64_t exponent_gcd = 0;
  bool pass = false;
};

DichotomyResult dichotomy_check(const Presentation& group, const FreeWord& word,
                                const Distribution& dist);
DichotomyResult dichotomy_check(const Presentation& group, const FreeWord& word,
                                const EngineOptions& options = {});

// ---------------------------------------------------------------------------
// Z-image polynomial

struct ZExtractOptions {
  /// Random alternate lifts tried per table point.
  int lift_samples = 3;
  /// Check every tuple in G^e against its residue instead (small groups).
  bool exhaustive_lifts = false;
  std::uint64_t seed = 0;
  std::uint64_t class_cap = kDefaultEnumerationCap;
};

struct ZPolynomialResult {
  /// In variables (abar_{v_1}, ..., abar_{v_e}, bbar_{v_1}, ..., bbar_{v_e}) for
  /// the effective variables v_1 < ... < v_e of the word.
  FpPolynomial polynomial{2, 0};
  std::vector<int> effective_variables;
  int num_vars_effective = 0;
  int num_vars_full = 0;  // 2k
  int degree = FpPolynomial::kZeroDegree;
  int nilpotency_class = 0;
  bool well_defined = false;
  bool degree_within_class = false;
  std::uint64_t lift_checks = 0;
};

/// Requires 1 != G_w inside Z (PreconditionError otherwise).
ZPolynomialResult z_word_polynomial_extract(const Presentation& group, const FreeWord& word,
                                            int arity, const Distribution& dist,
                                            const ZExtractOptions& options = {});
ZPolynomialResult z_word_polynomial_extract(const Presentation& group, const FreeWord& word,
                                            int arity, const EngineOptions& engine = {},
                                            const ZExtractOptions& options = {});

struct ZBoundRow {
  int target = 0;  // g = (a^{p^{n-1}})^target
  std::uint64_t word_count = 0;    // N_w(g) at the padded arity
  std::uint64_t cw_solutions = 0;  // #{q = target} over F_p^{2k'}
  std::uint64_t lift_bound = 0;    // p^{k'(n-1)} p^{k'(m-1)} p^{2k'-c}
  Rational probability;
  bool count_identity = false;  // word_count == p^{k'(n-1)} p^{k'(m-1)} cw_solutions
  bool pass = false;
};

struct ZBoundResult {
  int arity = 0;
  int padded_arity = 0;  // smallest k' >= k with 2k' > c
  int degree = 0;
  int nilpotency_class = 0;
  ChevalleyWarningReport chevalley_warning;
  std::vector<ZBoundRow> rows;
  Rational class_bound;  // 1/p^c
  bool class_bound_beats_order = false;  // 1/p^c > 1/|G|
  bool pass = false;
};

/// Requires a successful extraction with degree <= class.
ZBoundResult z_word_probability_bound_check(const Presentation& group, const FreeWord& word,
                                            int arity, const ZPolynomialResult& extracted,
                                            const Distribution& dist,
                                            const EngineOptions& engine = {});
ZBoundResult z_word_probability_bound_check(const Presentation& group, const FreeWord& word,
                                            int arity, const EngineOptions& engine = {},
                                            const ZExtractOptions& options = {});

// ---------------------------------------------------------------------------
// Amit-Ashurst bound

struct VerificationReport {
  Presentation group = make_family(Family::Dihedral, 2, 2);
  FreeWord word;
  int arity = 0;
  std::size_t image_size = 0;
  ImageLocation image_location = ImageLocation::Trivial;
  Rational min_probability;
  Rational bound;  // 1/|G|
  bool pass = false;
  std::optional<ZPolynomialResult> polynomial_detail;
};

VerificationReport amit_ashurst_check(const FreeWord& word, const Distribution& dist);
VerificationReport amit_ashurst_check(const Presentation& group, const FreeWord& word, int arity,
                                      const EngineOptions& options = {});

// ---------------------------------------------------------------------------
// Fibre equalities for G_w inside <a>, not inside Z

struct IntersectionResult {
  bool applicable = false;
  std::string reason;
  bool z_proper_subset = false;  // Z strictly inside G_w
  bool fibre_relations = false;  // N(g) = N(gz) <= N(z), g in G_w \ Z, z in Z
  bool bound = false;            // min P >= 1/|G|
  std::uint64_t comparisons = 0;
  bool pass = false;
};

IntersectionResult intersection_lemma_check(const Presentation& group, const Distribution& dist);
IntersectionResult intersection_lemma_check(const Presentation& group, const FreeWord& word,
                                            int arity, const EngineOptions& options = {});

// ---------------------------------------------------------------------------
// Word generation

enum class WordGenMode { Exhaustive, Random };

struct WordGenSpec {
  WordGenMode mode = WordGenMode::Exhaustive;
  int k_max = 1;
  int len_max = 1;
  std::uint64_t count = 0;  // random mode
  std::uint64_t seed = 0;   // random mode
};

/// Exhaustive: every freely reduced word of length 1..len_max in x1..x_{k_max},
/// ordered by length then symbol sequence. Random: `count` reduced words with
/// uniformly drawn variable count and length, reproducible from `seed`.
std::vector<FreeWord> gen_words(const WordGenSpec& spec);

// ---------------------------------------------------------------------------
// Campaigns

struct CampaignConfig {
  std::vector<Presentation> groups;
  std::vector<WordGenSpec> words;
  /// Subset of {"amit_ashurst", "dichotomy", "intersection", "zpoly",
  /// "zbound", "quotient"}; amit_ashurst always runs.
  std::set<std::string> checks{"amit_ashurst", "dichotomy", "intersection", "zpoly", "zbound"};
  EngineOptions engine;  // engine.workers is used per distribution when workers == 1
  bool coset_split = false;
  std::uint64_t zpoly_max_order = 32;
  int zpoly_max_k = 2;
  ZExtractOptions extract;
  unsigned workers = 1;  // grid points processed concurrently
};

struct CheckTally {
  std::uint64_t pass = 0;
  std::uint64_t fail = 0;
  std::uint64_t not_applicable = 0;
};

struct CampaignRow {
  std::string group;
  std::string word;
  int arity = 0;
  std::size_t image_size = 0;
  ImageLocation location = ImageLocation::Trivial;
  Rational min_probability;
  bool pass = false;
  bool budget_exceeded = false;
};

struct CampaignFailure {
  std::string group_label;
  Presentation group = make_family(Family::Dihedral, 2, 2);
  std::string word;
  int arity = 0;
  std::string check;
  std::string detail;
};

struct GroupSummary {
  std::string label;
  Presentation group = make_family(Family::Dihedral, 2, 2);
  int nilpotency_class = 0;
  std::uint64_t words = 0;
  std::optional<Rational> min_probability;
  std::map<Rational, std::uint64_t> histogram;  // min P per word -> word count
  bool equality_witness = false;  // w = x1 attains exactly 1/|G|
  std::uint64_t z_words = 0;        // 1 != G_w inside Z
  std::uint64_t z_words_equal_z = 0;  // G_w = Z
};

struct CampaignReport {
  std::vector<GroupSummary> groups;
  std::map<std::string, CheckTally> checks;
  std::vector<CampaignFailure> failures;
  std::vector<CampaignRow> rows;
  std::uint64_t budget_exceeded = 0;

  bool pass() const noexcept { return failures.empty(); }
};

CampaignReport scan_campaign(const CampaignConfig& config);

}  // namespace wordmap

#endif  // WORDMAP_VERIFIER_HPP
