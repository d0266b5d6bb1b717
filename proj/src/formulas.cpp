#include "wordmap/formulas.hpp"

#include "wordmap/arith.hpp"
#include "wordmap/distribution.hpp"
#include "wordmap/errors.hpp"

namespace wordmap {

namespace {

constexpr std::size_t kMaxRecordedMismatches = 10;

void require_length(int length, std::span<const std::int64_t> alpha,
                    std::span<const std::int64_t> beta) {
  if (length < 2) throw PreconditionError("commutator length must be at least 2");
  if (alpha.size() < static_cast<std::size_t>(length) || beta.size() < static_cast<std::size_t>(length))
    throw PreconditionError("need " + std::to_string(length) + " alpha and beta entries");
}

/// 1 - r^beta mod p^n for any integer beta.
std::int64_t one_minus_r_power(const Presentation& group, std::int64_t beta) {
  return mod(1 - group.r_power(mod(beta, group.b_order())), group.a_order());
}

/// 2^e mod 2^n.
std::int64_t power_of_two_mod(int e, std::int64_t modulus, int n) {
  return e >= n ? 0 : mod(std::int64_t{1} << e, modulus);
}

}  // namespace

CommutatorExponent q2_general(const Presentation& group, std::int64_t alpha1, std::int64_t beta1,
                              std::int64_t alpha2, std::int64_t beta2) {
  const std::int64_t pn = group.a_order();
  const std::int64_t lhs = mulmod(mod(alpha1, pn), one_minus_r_power(group, beta2), pn);
  const std::int64_t rhs = mulmod(mod(alpha2, pn), one_minus_r_power(group, beta1), pn);
  return {mod(lhs - rhs, pn), 2};
}

CommutatorExponent q_ell_general(const Presentation& group, std::span<const std::int64_t> alpha,
                                 std::span<const std::int64_t> beta) {
  if (alpha.size() != beta.size()) throw PreconditionError("alpha and beta differ in length");
  const int length = static_cast<int>(alpha.size());
  require_length(length, alpha, beta);
  std::int64_t value = q2_general(group, alpha[0], beta[0], alpha[1], beta[1]).value;
  for (std::size_t i = 2; i < alpha.size(); ++i)
    value = mulmod(value, one_minus_r_power(group, beta[i]), group.a_order());
  return {value, length};
}

CommutatorExponent q_ell_dihedral_quaternion(int n, int m, int length,
                                             std::span<const std::int64_t> alpha,
                                             std::span<const std::int64_t> beta) {
  if (n < 1 || m < 1) throw ParameterError("n and m must be positive");
  require_length(length, alpha, beta);
  const std::int64_t modulus = checked_pow(2, n);
  auto bar = [&](std::size_t i) { return mod(beta[i], 2); };
  std::int64_t value = mod(mod(alpha[0], modulus) * bar(1) - mod(alpha[1], modulus) * bar(0), modulus);
  for (std::size_t i = 2; i < static_cast<std::size_t>(length); ++i) value *= bar(i);
  value = mulmod(value, power_of_two_mod(length - 1, modulus, n), modulus);
  return {value, length};
}

CommutatorExponent q_ell_semidihedral(int n, int length, std::span<const std::int64_t> alpha,
                                      std::span<const std::int64_t> beta) {
  if (n < 2) throw ParameterError("semidihedral formula requires n >= 2");
  require_length(length, alpha, beta);
  const std::int64_t modulus = checked_pow(2, n);
  auto bit = [&](std::size_t i) { return mod(beta[i], 2); };
  std::int64_t value = mod(mod(alpha[0], modulus) * bit(1) - mod(alpha[1], modulus) * bit(0), modulus);
  for (std::size_t i = 2; i < static_cast<std::size_t>(length); ++i) value *= bit(i);
  const std::int64_t unit = mod(1 - checked_pow(2, n - 2), modulus);
  value = mulmod(value, powmod(unit, static_cast<std::uint64_t>(length - 1), modulus), modulus);
  value = mulmod(value, power_of_two_mod(length - 1, modulus, n), modulus);
  return {value, length};
}

CommutatorExponent q2_class2(std::int64_t p, int n, std::int64_t alpha1, std::int64_t beta1,
                             std::int64_t alpha2, std::int64_t beta2) {
  if (!is_prime(p)) throw ParameterError("p must be prime");
  if (n < 2) throw ParameterError("class-2 formula requires n >= 2");
  const std::int64_t modulus = checked_pow(p, n);
  const std::int64_t inner = mod(mulmod(mod(alpha2, p), mod(beta1, p), p) - mulmod(mod(alpha1, p), mod(beta2, p), p), p);
  return {mulmod(checked_pow(p, n - 1), inner, modulus), 2};
}

Element left_normed_commutator(const Presentation& group, std::span<const Element> xs) {
  if (xs.empty()) return kIdentity;
  Element acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = commutator(group, acc, xs[i]);
  return acc;
}

FormulaApplicability applicable_formulas(const Presentation& group) {
  FormulaApplicability out;
  const std::int64_t pn = group.a_order();
  if (group.p() == 2) {
    out.dihedral_quaternion = group.r() == pn - 1;
    out.semidihedral = group.n() >= 3 && group.m() == 1 && group.r() == pn / 2 - 1;
  }
  out.class2 = group.n() >= 2 && group.r() == 1 + pn / group.p();
  return out;
}

FormulaSuiteReport run_formula_suite(const Presentation& group, int max_length,
                                     std::uint64_t max_tuples) {
  FormulaSuiteReport report;
  report.group = label(group);
  report.max_length = max_length > 0 ? max_length : nilpotency_class(group);
  const auto which = applicable_formulas(group);
  report.formulas.push_back("general");
  if (which.dihedral_quaternion) report.formulas.push_back("dihedral_quaternion");
  if (which.semidihedral) report.formulas.push_back("semidihedral");
  if (which.class2) report.formulas.push_back("class2");

  const std::uint64_t order = group.order();
  for (int length = 2; length <= report.max_length; ++length) {
    const std::uint64_t total = tuple_space_size(order, length, max_tuples);
    const auto width = static_cast<std::size_t>(length);
    std::vector<std::uint64_t> digits(width, 0);
    std::vector<Element> xs(width);
    std::vector<std::int64_t> alpha(width), beta(width);

    auto record = [&](const std::string& name, std::int64_t expected, std::int64_t got) {
      ++report.comparisons;
      if (expected == got) return;
      ++report.mismatch_count;
      if (report.mismatches.size() < kMaxRecordedMismatches)
        report.mismatches.push_back({name, length, xs, expected, got});
    };

    for (std::uint64_t t = 0; t < total; ++t) {
      for (std::size_t i = 0; i < width; ++i) {
        xs[i] = group.element(digits[i]);
        alpha[i] = xs[i].alpha;
        beta[i] = xs[i].beta;
      }
      const Element direct = left_normed_commutator(group, xs);
      const std::int64_t general = q_ell_general(group, alpha, beta).value;
      // A commutator outside <a> can never match a^{q}; flag it with -1.
      record("general", direct.beta == 0 ? direct.alpha : -1, general);
      if (which.dihedral_quaternion)
        record("dihedral_quaternion", general,
               q_ell_dihedral_quaternion(group.n(), group.m(), length, alpha, beta).value);
      if (which.semidihedral)
        record("semidihedral", general, q_ell_semidihedral(group.n(), length, alpha, beta).value);
      if (which.class2 && length == 2)
        record("class2", general, q2_class2(group.p(), group.n(), alpha[0], beta[0], alpha[1], beta[1]).value);
      ++report.tuples_checked;

      for (std::size_t i = width; i-- > 0;) {
        if (++digits[i] < order) break;
        digits[i] = 0;
      }
    }
  }
  return report;
}

}  // namespace wordmap
