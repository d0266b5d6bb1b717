#ifndef WORDMAP_METACYCLIC_HPP
#define WORDMAP_METACYCLIC_HPP

// Finite metacyclic p-groups
//
//   G = < a, b | a^{p^n} = 1, b^{p^m} = a^{p^{n-eps}}, b a b^-1 = a^r >
//
// with elements held in the normal form a^alpha b^beta, 0 <= alpha < p^n,
// 0 <= beta < p^m. Multiplication uses b^beta a^alpha = a^{alpha r^beta} b^beta
// and the carry rule b^{p^m} = a^{p^{n-eps}}; no Cayley table is stored.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wordmap {

enum class Family {
  Dihedral,
  GeneralisedQuaternion,
  Semidihedral,
  Modular2,
  ModularOdd,
  Custom,
};

std::string_view to_string(Family family);

/// Accepts the canonical names ("dihedral", "quaternion", "semidihedral",
/// "modular2", "modular_odd", "custom") plus "modular", which callers resolve
/// against p. Throws ParameterError on anything else.
Family family_from_string(std::string_view name);

struct Element {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;

  friend auto operator<=>(const Element&, const Element&) = default;
};

inline constexpr Element kIdentity{0, 0};

class Presentation {
 public:
  /// Validated constructor. Enforces p prime, gcd(r, p) = 1, the King
  /// divisibility constraints p^n | p^{n-eps}(r-1) and p^n | r^{p^m} - 1,
  /// and the class-2 normal form (r = 1 + p^{n-1} admits eps = 1 only for Q8).
  static Presentation make(std::int64_t p, int n, int m, int epsilon, std::int64_t r,
                           Family family = Family::Custom);

  /// As make(), but only the structural constraints that guarantee the
  /// presentation defines a group of order p^{n+m}.
  static Presentation make_structural(std::int64_t p, int n, int m, int epsilon,
                                      std::int64_t r, Family family = Family::Custom);

  std::int64_t p() const noexcept { return p_; }
  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int epsilon() const noexcept { return epsilon_; }
  std::int64_t r() const noexcept { return r_; }
  Family family() const noexcept { return family_; }

  /// p^n, the order of a.
  std::int64_t a_order() const noexcept { return a_order_; }
  /// p^m, the number of cosets of <a>.
  std::int64_t b_order() const noexcept { return b_order_; }
  /// p^{n-eps}: b^{p^m} = a^{carry}.
  std::int64_t carry() const noexcept { return carry_; }
  std::uint64_t order() const noexcept {
    return static_cast<std::uint64_t>(a_order_) * static_cast<std::uint64_t>(b_order_);
  }

  /// r^beta mod p^n for 0 <= beta < p^m.
  std::int64_t r_power(std::int64_t beta) const;

  bool contains(Element x) const noexcept {
    return x.alpha >= 0 && x.alpha < a_order_ && x.beta >= 0 && x.beta < b_order_;
  }

  /// Dense row-major index over (alpha, beta).
  std::size_t index(Element x) const noexcept {
    return static_cast<std::size_t>(x.alpha) * static_cast<std::size_t>(b_order_) +
           static_cast<std::size_t>(x.beta);
  }
  Element element(std::size_t index) const noexcept {
    return {static_cast<std::int64_t>(index / static_cast<std::size_t>(b_order_)),
            static_cast<std::int64_t>(index % static_cast<std::size_t>(b_order_))};
  }

  /// Parameters only; the family tag does not participate.
  friend bool operator==(const Presentation& lhs, const Presentation& rhs) noexcept {
    return lhs.p_ == rhs.p_ && lhs.n_ == rhs.n_ && lhs.m_ == rhs.m_ &&
           lhs.epsilon_ == rhs.epsilon_ && lhs.r_ == rhs.r_;
  }

 private:
  Presentation() = default;

  std::int64_t p_ = 2;
  int n_ = 1;
  int m_ = 1;
  int epsilon_ = 0;
  std::int64_t r_ = 1;
  Family family_ = Family::Custom;
  std::int64_t a_order_ = 2;
  std::int64_t b_order_ = 2;
  std::int64_t carry_ = 2;
  std::shared_ptr<const std::vector<std::int64_t>> r_powers_;
};

/// The five families of nonabelian p-groups with a cyclic maximal subgroup,
/// all with m = 1 and |G| = p^{n+1}.
Presentation make_family(Family family, std::int64_t p, int n);

/// Short human label: D16, Q8, SD32, M(3,2), or the raw parameters.
std::string label(const Presentation& group);

inline Element generator_a(const Presentation&) { return {1, 0}; }
inline Element generator_b(const Presentation& group) { return {0, group.b_order() > 1 ? 1 : 0}; }

Element multiply(const Presentation& group, Element x, Element y);
Element inverse(const Presentation& group, Element x);
Element power(const Presentation& group, Element x, std::int64_t exponent);
/// [x, y] = x y x^-1 y^-1.
Element commutator(const Presentation& group, Element x, Element y);

/// (a^alpha b^beta)^{p^{n-1}} via the geometric-sum closed form
/// a^{alpha (1 + r^beta + ... + r^{(p^{n-1}-1) beta})}. Requires b^{p^{n-1}} = 1.
Element special_power_pn1(const Presentation& group, Element x);

/// Generator a^{p^{n-1}} of Z, the unique subgroup of order p in <a>.
Element center_z(const Presentation& group);

/// G/Z with n' = n - 1 and r' = r mod p^{n-1}. The projection
/// (alpha, beta) -> (alpha mod p^{n-1}, beta) is a homomorphism onto it.
Presentation quotient_by_z(const Presentation& group);

inline Element project_to_quotient(const Presentation& quotient, Element x) {
  return {x.alpha % quotient.a_order(), x.beta};
}

inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 12;

/// Length of the lower central series, found by enumeration. Abelian groups
/// have class 1. Throws BudgetExceeded when |G| exceeds max_order.
int nilpotency_class(const Presentation& group,
                     std::uint64_t max_order = kDefaultEnumerationCap);

/// All elements in index order.
std::vector<Element> elements(const Presentation& group);

bool in_a(Element x) noexcept;
bool in_z(const Presentation& group, Element x) noexcept;

std::string to_string(Element x);

}  // namespace wordmap

#endif  // WORDMAP_METACYCLIC_HPP
