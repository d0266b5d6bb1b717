#include "wordmap/fp_poly.hpp"

#include <algorithm>
#include <numeric>

#include "wordmap/arith.hpp"
#include "wordmap/errors.hpp"

namespace wordmap {

namespace {

void require_field(int p) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
}

int reduce_exponent(std::int64_t e, int p) {
  if (e < 0) throw PreconditionError("negative exponent in polynomial term");
  if (e == 0) return 0;
  return static_cast<int>((e - 1) % (p - 1)) + 1;
}

/// Binomial coefficients C(p-1, j) mod p.
std::vector<int> binomial_row(int p) {
  std::vector<std::int64_t> row(static_cast<std::size_t>(p), 0);
  row[0] = 1;
  for (int i = 1; i < p; ++i)
    for (int j = i; j > 0; --j) row[static_cast<std::size_t>(j)] = (row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j - 1)]) % p;
  return {row.begin(), row.end()};
}

}  // namespace

FpPolynomial::FpPolynomial(int p, int num_vars) : p_(p), num_vars_(num_vars) {
  require_field(p);
  if (num_vars < 0) throw PreconditionError("negative variable count");
}

FpPolynomial FpPolynomial::from_terms(int p, int num_vars,
                                      const std::vector<std::pair<Exponents, std::int64_t>>& terms) {
  FpPolynomial q(p, num_vars);
  for (const auto& [exps, coeff] : terms) {
    if (static_cast<int>(exps.size()) != num_vars)
      throw PreconditionError("term has " + std::to_string(exps.size()) + " exponents, expected " +
                              std::to_string(num_vars));
    Exponents reduced(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) reduced[i] = reduce_exponent(exps[i], p);
    int& slot = q.terms_[reduced];
    slot = static_cast<int>(mod(static_cast<std::int64_t>(slot) + mod(coeff, p), p));
  }
  std::erase_if(q.terms_, [](const auto& kv) { return kv.second == 0; });
  return q;
}

int FpPolynomial::total_degree() const noexcept {
  int best = kZeroDegree;
  for (const auto& [exps, coeff] : terms_) best = std::max(best, std::accumulate(exps.begin(), exps.end(), 0));
  return best;
}

int FpPolynomial::evaluate(std::span<const int> point) const {
  if (static_cast<int>(point.size()) != num_vars_)
    throw PreconditionError("point has the wrong dimension");
  std::int64_t sum = 0;
  for (const auto& [exps, coeff] : terms_) {
    std::int64_t term = coeff;
    for (std::size_t i = 0; i < exps.size() && term != 0; ++i)
      term = term * powmod(point[i], static_cast<std::uint64_t>(exps[i]), p_) % p_;
    sum += term;
  }
  return static_cast<int>(mod(sum, p_));
}

FpPolynomial FpPolynomial::shifted(int constant) const {
  std::vector<std::pair<Exponents, std::int64_t>> terms(terms_.begin(), terms_.end());
  terms.emplace_back(Exponents(static_cast<std::size_t>(num_vars_), 0), -static_cast<std::int64_t>(constant));
  return from_terms(p_, num_vars_, terms);
}

FpPolynomial FpPolynomial::with_num_vars(int num_vars) const {
  if (num_vars < num_vars_) throw PreconditionError("with_num_vars cannot drop variables");
  FpPolynomial q(p_, num_vars);
  for (const auto& [exps, coeff] : terms_) {
    Exponents wide = exps;
    wide.resize(static_cast<std::size_t>(num_vars), 0);
    q.terms_.emplace(std::move(wide), coeff);
  }
  return q;
}

std::uint64_t point_space_size(int p, int num_vars) {
  std::uint64_t size = 1;
  for (int i = 0; i < num_vars; ++i) {
    size *= static_cast<std::uint64_t>(p);
    if (size > kMaxPointSpace)
      throw BudgetExceeded(std::to_string(p) + "^" + std::to_string(num_vars) +
                           " points exceed the enumeration guard");
  }
  return size;
}

std::vector<int> point_from_index(int p, int num_vars, std::uint64_t index) {
  std::vector<int> point(static_cast<std::size_t>(num_vars), 0);
  for (int i = num_vars - 1; i >= 0; --i) {
    point[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::uint64_t>(p));
    index /= static_cast<std::uint64_t>(p);
  }
  return point;
}

FpPolynomial interpolate(int p, int num_vars, std::span<const int> table) {
  require_field(p);
  const std::uint64_t size = point_space_size(p, num_vars);
  if (table.size() != size)
    throw PreconditionError("table has " + std::to_string(table.size()) + " entries, expected " +
                            std::to_string(size));

  // Univariate map from values f(0..p-1) to coefficients of t^0..t^{p-1}:
  //   sum_c f(c) (1 - (t - c)^{p-1}),  (t - c)^{p-1} = sum_j C(p-1,j) t^j (-c)^{p-1-j}.
  const auto binom = binomial_row(p);
  std::vector<std::vector<std::int64_t>> basis(static_cast<std::size_t>(p),
                                               std::vector<std::int64_t>(static_cast<std::size_t>(p), 0));
  for (int j = 0; j < p; ++j) {
    for (int c = 0; c < p; ++c) {
      std::int64_t v = -mulmod(binom[static_cast<std::size_t>(j)],
                               powmod(-c, static_cast<std::uint64_t>(p - 1 - j), p), p);
      if (j == 0) v += 1;
      basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] = mod(v, p);
    }
  }

  // Apply the univariate transform along each axis in turn.
  std::vector<std::int64_t> data(table.begin(), table.end());
  for (auto& v : data) v = mod(v, p);
  std::vector<std::int64_t> line(static_cast<std::size_t>(p));
  std::uint64_t stride = size;
  for (int axis = 0; axis < num_vars; ++axis) {
    stride /= static_cast<std::uint64_t>(p);
    const std::uint64_t block = stride * static_cast<std::uint64_t>(p);
    for (std::uint64_t base = 0; base < size; base += block) {
      for (std::uint64_t offset = 0; offset < stride; ++offset) {
        for (int c = 0; c < p; ++c) line[static_cast<std::size_t>(c)] = data[base + offset + static_cast<std::uint64_t>(c) * stride];
        for (int j = 0; j < p; ++j) {
          std::int64_t acc = 0;
          for (int c = 0; c < p; ++c)
            acc += basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] * line[static_cast<std::size_t>(c)];
          data[base + offset + static_cast<std::uint64_t>(j) * stride] = acc % p;
        }
      }
    }
  }

  std::vector<std::pair<FpPolynomial::Exponents, std::int64_t>> terms;
  for (std::uint64_t i = 0; i < size; ++i)
    if (data[i] != 0) terms.emplace_back(point_from_index(p, num_vars, i), data[i]);
  return FpPolynomial::from_terms(p, num_vars, terms);
}

FpPolynomial interpolate(int p, int num_vars, const std::map<std::vector<int>, int>& table) {
  require_field(p);
  const std::uint64_t size = point_space_size(p, num_vars);
  std::vector<int> dense(size, 0);
  std::vector<char> seen(size, 0);
  for (const auto& [point, value] : table) {
    if (static_cast<int>(point.size()) != num_vars) throw PreconditionError("table point has the wrong dimension");
    std::uint64_t index = 0;
    for (int c : point) {
      if (c < 0 || c >= p) throw PreconditionError("table point coordinate outside F_p");
      index = index * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(c);
    }
    dense[index] = value;
    seen[index] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw PreconditionError("incomplete table: interpolation needs all " + std::to_string(size) + " points");
  return interpolate(p, num_vars, dense);
}

std::uint64_t count_solutions(const FpPolynomial& q, int target) {
  const std::uint64_t size = point_space_size(q.p(), q.num_vars());
  const int goal = static_cast<int>(mod(static_cast<std::int64_t>(target), static_cast<std::int64_t>(q.p())));
  std::uint64_t count = 0;
  for (std::uint64_t i = 0; i < size; ++i)
    if (q.evaluate(point_from_index(q.p(), q.num_vars(), i)) == goal) ++count;
  return count;
}

ChevalleyWarningReport chevalley_warning_check(const FpPolynomial& q) {
  ChevalleyWarningReport report;
  report.num_vars = q.num_vars();
  report.degree = q.total_degree();
  if (report.degree <= 0) {
    report.reason = "constant polynomial";
    return report;
  }
  if (report.degree >= q.num_vars()) {
    report.reason = "degree " + std::to_string(report.degree) + " is not below the variable count " +
                    std::to_string(q.num_vars());
    return report;
  }
  report.applicable = true;
  report.pass = true;
  const auto bound = static_cast<std::uint64_t>(checked_pow(q.p(), q.num_vars() - report.degree));
  for (int i = 0; i < q.p(); ++i) {
    const std::uint64_t n = count_solutions(q.shifted(i), 0);
    if (n == 0) continue;
    report.rows.push_back({i, n, bound, n >= bound});
    report.pass = report.pass && n >= bound;
  }
  return report;
}

}  // namespace wordmap
