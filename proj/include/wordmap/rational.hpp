#ifndef WORDMAP_RATIONAL_HPP
#define WORDMAP_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "wordmap/errors.hpp"

namespace wordmap {

/// Nonnegative exact fraction, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw PreconditionError("zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const auto lhs = static_cast<unsigned __int128>(a.num_) * b.den_;
    const auto rhs = static_cast<unsigned __int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace wordmap

#endif  // WORDMAP_RATIONAL_HPP
