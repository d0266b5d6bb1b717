#ifndef WORDMAP_FP_POLY_HPP
#define WORDMAP_FP_POLY_HPP

// Sparse multivariate polynomials over F_p in reduced form (every exponent
// below p, using t^p = t), with interpolation from value tables and
// Chevalley-Warning solution counting.
//
// Points of F_p^l are indexed row-major: index = sum_i c_i p^{l-1-i}.

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wordmap {

class FpPolynomial {
 public:
  using Exponents = std::vector<int>;

  /// Degree reported for the zero polynomial.
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  FpPolynomial(int p, int num_vars);

  /// Builds and reduces: exponent e > 0 becomes ((e-1) mod (p-1)) + 1,
  /// coefficients are taken mod p, like terms merge and zeros are dropped.
  static FpPolynomial from_terms(int p, int num_vars,
                                 const std::vector<std::pair<Exponents, std::int64_t>>& terms);

  int p() const noexcept { return p_; }
  int num_vars() const noexcept { return num_vars_; }
  const std::map<Exponents, int>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Largest exponent sum, or kZeroDegree.
  int total_degree() const noexcept;

  int evaluate(std::span<const int> point) const;

  /// This polynomial minus a constant.
  FpPolynomial shifted(int constant) const;

  /// Same polynomial in num_vars >= num_vars() variables; the new ones are
  /// appended and do not occur.
  FpPolynomial with_num_vars(int num_vars) const;

  friend bool operator==(const FpPolynomial&, const FpPolynomial&) = default;

 private:
  int p_;
  int num_vars_;
  std::map<Exponents, int> terms_;
};

inline constexpr std::uint64_t kMaxPointSpace = std::uint64_t{1} << 20;

/// p^l, throwing BudgetExceeded above kMaxPointSpace.
std::uint64_t point_space_size(int p, int num_vars);

/// Point with the given row-major index.
std::vector<int> point_from_index(int p, int num_vars, std::uint64_t index);

/// The unique reduced polynomial matching a dense table of p^l values.
FpPolynomial interpolate(int p, int num_vars, std::span<const int> table);

/// As above from a point -> value map; throws PreconditionError unless the
/// map covers all of F_p^l.
FpPolynomial interpolate(int p, int num_vars, const std::map<std::vector<int>, int>& table);

/// Number of points with q(point) = target.
std::uint64_t count_solutions(const FpPolynomial& q, int target);

struct ChevalleyWarningRow {
  int target = 0;
  std::uint64_t solutions = 0;
  std::uint64_t bound = 0;
  bool pass = false;
};

struct ChevalleyWarningReport {
  bool applicable = false;
  std::string reason;  // why not applicable
  int num_vars = 0;
  int degree = FpPolynomial::kZeroDegree;
  /// One row per target i in F_p whose fibre q = i is nonempty.
  std::vector<ChevalleyWarningRow> rows;
  bool pass = false;
};

/// For 1 <= deg q < l, checks every nonempty fibre of q has >= p^{l-d}
/// points. Constant polynomials and deg q >= l are reported not applicable.
ChevalleyWarningReport chevalley_warning_check(const FpPolynomial& q);

}  // namespace wordmap

#endif  // WORDMAP_FP_POLY_HPP
