#ifndef WORDMAP_FORMULAS_HPP
#define WORDMAP_FORMULAS_HPP

// Closed forms for left-normed commutators of normal-form elements:
//
//   [a^{alpha_1} b^{beta_1}, ..., a^{alpha_l} b^{beta_l}] = a^{q_l(alpha, beta)}.
//
// Inputs are raw integers; each evaluator reduces on its own and returns the
// canonical residue mod p^n.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wordmap/metacyclic.hpp"

namespace wordmap {

struct CommutatorExponent {
  std::int64_t value = 0;  // residue mod p^n
  int length = 2;

  friend bool operator==(const CommutatorExponent&, const CommutatorExponent&) = default;
};

/// alpha_1 (1 - r^{beta_2}) - alpha_2 (1 - r^{beta_1}).
CommutatorExponent q2_general(const Presentation& group, std::int64_t alpha1, std::int64_t beta1,
                              std::int64_t alpha2, std::int64_t beta2);

/// q_2 (1 - r^{beta_3}) ... (1 - r^{beta_l}); alpha and beta have length l >= 2.
CommutatorExponent q_ell_general(const Presentation& group, std::span<const std::int64_t> alpha,
                                 std::span<const std::int64_t> beta);

/// r = -1: 2^{l-1} bbar_l ... bbar_3 (alpha_1 bbar_2 - alpha_2 bbar_1) mod 2^n,
/// bbar_i = beta_i mod 2.
CommutatorExponent q_ell_dihedral_quaternion(int n, int m, int length,
                                             std::span<const std::int64_t> alpha,
                                             std::span<const std::int64_t> beta);

/// r = 2^{n-1} - 1, b of order 2:
/// 2^{l-1} (1 - 2^{n-2})^{l-1} beta_3 ... beta_l (alpha_1 beta_2 - alpha_2 beta_1) mod 2^n.
CommutatorExponent q_ell_semidihedral(int n, int length, std::span<const std::int64_t> alpha,
                                      std::span<const std::int64_t> beta);

/// r = 1 + p^{n-1}: p^{n-1} (alpha_2 beta_1 - alpha_1 beta_2) mod p^n.
CommutatorExponent q2_class2(std::int64_t p, int n, std::int64_t alpha1, std::int64_t beta1,
                             std::int64_t alpha2, std::int64_t beta2);

/// The left-normed commutator [x_1, ..., x_l] by repeated normal-form arithmetic.
Element left_normed_commutator(const Presentation& group, std::span<const Element> xs);

/// Which specialised closed forms apply to a presentation.
struct FormulaApplicability {
  bool dihedral_quaternion = false;  // p = 2, r = 2^n - 1
  bool semidihedral = false;         // p = 2, n >= 3, m = 1, eps = 0, r = 2^{n-1} - 1
  bool class2 = false;               // r = 1 + p^{n-1}
};

FormulaApplicability applicable_formulas(const Presentation& group);

struct FormulaMismatch {
  std::string formula;
  int length = 0;
  std::vector<Element> tuple;
  std::int64_t expected = 0;
  std::int64_t got = 0;
};

struct FormulaSuiteReport {
  std::string group;
  int max_length = 0;
  std::uint64_t tuples_checked = 0;
  std::uint64_t comparisons = 0;
  std::vector<std::string> formulas;  // names exercised
  std::vector<FormulaMismatch> mismatches;  // first few only
  std::uint64_t mismatch_count = 0;
  bool pass() const noexcept { return mismatch_count == 0; }
};

/// For every length 2 <= l <= max_length and every tuple in G^l, checks the
/// general closed form, each applicable specialised form, and the direct
/// left-normed commutator all agree. max_length <= 0 means the nilpotency class.
FormulaSuiteReport run_formula_suite(const Presentation& group, int max_length = 0,
                                     std::uint64_t max_tuples = std::uint64_t{1} << 24);

}  // namespace wordmap

#endif  // WORDMAP_FORMULAS_HPP
