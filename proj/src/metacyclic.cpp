#include "wordmap/metacyclic.hpp"

#include <numeric>
#include <sstream>

#include "wordmap/arith.hpp"
#include "wordmap/errors.hpp"

namespace wordmap {

namespace {

constexpr std::int64_t kMaxTabulatedBOrder = std::int64_t{1} << 16;

/// 1 + q + q^2 + ... + q^{count-1} mod modulus, by doubling.
std::int64_t geometric_sum(std::int64_t q, std::uint64_t count, std::int64_t modulus) {
  if (count == 0) return 0;
  if (count % 2 == 1) {
    // S(c) = 1 + q S(c-1)
    return mod(1 + mulmod(q, geometric_sum(q, count - 1, modulus), modulus), modulus);
  }
  // S(2t) = S(t) (1 + q^t)
  std::int64_t half = geometric_sum(q, count / 2, modulus);
  return mulmod(half, 1 + powmod(q, count / 2, modulus), modulus);
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Dihedral: return "dihedral";
    case Family::GeneralisedQuaternion: return "quaternion";
    case Family::Semidihedral: return "semidihedral";
    case Family::Modular2: return "modular2";
    case Family::ModularOdd: return "modular_odd";
    case Family::Custom: return "custom";
  }
  return "custom";
}

Family family_from_string(std::string_view name) {
  if (name == "dihedral") return Family::Dihedral;
  if (name == "quaternion" || name == "generalised_quaternion") return Family::GeneralisedQuaternion;
  if (name == "semidihedral") return Family::Semidihedral;
  if (name == "modular2") return Family::Modular2;
  if (name == "modular_odd") return Family::ModularOdd;
  if (name == "custom") return Family::Custom;
  throw ParameterError("unknown group family '" + std::string(name) + "'");
}

Presentation Presentation::make_structural(std::int64_t p, int n, int m, int epsilon,
                                           std::int64_t r, Family family) {
  if (!is_prime(p)) throw ParameterError("p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw ParameterError("n must be positive");
  if (m < 1) throw ParameterError("m must be positive");
  if (epsilon < 0 || epsilon > n) throw ParameterError("epsilon must lie in [0, n]");

  Presentation g;
  g.p_ = p;
  g.n_ = n;
  g.m_ = m;
  g.epsilon_ = epsilon;
  g.r_ = r;
  g.family_ = family;
  g.a_order_ = checked_pow(p, n);
  g.b_order_ = checked_pow(p, m);
  checked_mul(g.a_order_, g.b_order_);
  g.carry_ = checked_pow(p, n - epsilon);

  if (r < 1 || r >= g.a_order_) throw ParameterError("r must lie in [1, p^n)");
  if (r % p == 0) throw ParameterError("r must be coprime to p");
  // p^n | p^{n-eps} (r - 1): a^{p^{n-eps}} commutes with b.
  if (mulmod(g.carry_, r - 1, g.a_order_) != 0)
    throw ParameterError("p^n does not divide p^{n-eps}(r-1)");
  // p^n | r^{p^m} - 1: conjugation by b^{p^m} is trivial on <a>.
  if (powmod(r, static_cast<std::uint64_t>(g.b_order_), g.a_order_) != 1 % g.a_order_)
    throw ParameterError("p^n does not divide r^{p^m} - 1");

  if (g.b_order_ <= kMaxTabulatedBOrder) {
    auto table = std::make_shared<std::vector<std::int64_t>>(static_cast<std::size_t>(g.b_order_));
    std::int64_t acc = 1 % g.a_order_;
    for (auto& entry : *table) {
      entry = acc;
      acc = mulmod(acc, r, g.a_order_);
    }
    g.r_powers_ = std::move(table);
  }
  return g;
}

Presentation Presentation::make(std::int64_t p, int n, int m, int epsilon, std::int64_t r,
                                Family family) {
  Presentation g = make_structural(p, n, m, epsilon, r, family);
  if (epsilon == 1 && n >= 2 && r == 1 + checked_pow(p, n - 1) && !(p == 2 && n == 2 && m == 1))
    throw ParameterError("r = 1 + p^{n-1} with eps = 1 is only admitted for Q8");
  return g;
}

std::int64_t Presentation::r_power(std::int64_t beta) const {
  if (r_powers_) return (*r_powers_)[static_cast<std::size_t>(beta)];
  return powmod(r_, static_cast<std::uint64_t>(beta), a_order_);
}

Presentation make_family(Family family, std::int64_t p, int n) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ParameterError(what);
  };
  switch (family) {
    case Family::Dihedral:
      require(p == 2 && n >= 2, "dihedral family requires p = 2 and n >= 2");
      return Presentation::make(2, n, 1, 0, checked_pow(2, n) - 1, family);
    case Family::GeneralisedQuaternion:
      require(p == 2 && n >= 2, "generalised quaternion family requires p = 2 and n >= 2");
      return Presentation::make(2, n, 1, 1, checked_pow(2, n) - 1, family);
    case Family::Semidihedral:
      require(p == 2 && n >= 3, "semidihedral family requires p = 2 and n >= 3");
      return Presentation::make(2, n, 1, 0, checked_pow(2, n - 1) - 1, family);
    case Family::Modular2:
      require(p == 2 && n >= 2, "modular 2-group family requires p = 2 and n >= 2");
      return Presentation::make(2, n, 1, 0, checked_pow(2, n - 1) + 1, family);
    case Family::ModularOdd:
      require(p > 2 && is_prime(p) && n >= 2, "odd modular family requires an odd prime p and n >= 2");
      return Presentation::make(p, n, 1, 0, checked_pow(p, n - 1) + 1, family);
    case Family::Custom:
      break;
  }
  throw ParameterError("make_family needs one of the five named families");
}

std::string label(const Presentation& group) {
  const std::string order = std::to_string(group.order());
  switch (group.family()) {
    case Family::Dihedral: return "D" + order;
    case Family::GeneralisedQuaternion: return "Q" + order;
    case Family::Semidihedral: return "SD" + order;
    case Family::Modular2:
    case Family::ModularOdd:
      return "M(" + std::to_string(group.p()) + "," + std::to_string(group.n()) + ")";
    case Family::Custom:
      break;
  }
  std::ostringstream os;
  os << "G(p=" << group.p() << ",n=" << group.n() << ",m=" << group.m()
     << ",eps=" << group.epsilon() << ",r=" << group.r() << ")";
  return os.str();
}

Element multiply(const Presentation& group, Element x, Element y) {
  const std::int64_t pn = group.a_order();
  std::int64_t alpha = x.alpha + mulmod(y.alpha, group.r_power(x.beta), pn);
  std::int64_t beta = x.beta + y.beta;
  if (beta >= group.b_order()) {
    beta -= group.b_order();
    alpha += group.carry();
  }
  return {alpha % pn, beta};
}

Element inverse(const Presentation& group, Element x) {
  const std::int64_t pn = group.a_order();
  if (x.beta == 0) return {mod(-x.alpha, pn), 0};
  // x y = 1 with y.beta = p^m - beta forces one carry.
  const std::int64_t beta = group.b_order() - x.beta;
  const std::int64_t alpha = mod(-mulmod(x.alpha + group.carry(), group.r_power(beta), pn), pn);
  return {alpha, beta};
}

Element power(const Presentation& group, Element x, std::int64_t exponent) {
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1
                                 : static_cast<std::uint64_t>(exponent);
  Element base = exponent < 0 ? inverse(group, x) : x;
  Element result = kIdentity;
  while (e > 0) {
    if (e & 1u) result = multiply(group, result, base);
    base = multiply(group, base, base);
    e >>= 1u;
  }
  return result;
}

Element commutator(const Presentation& group, Element x, Element y) {
  return multiply(group, multiply(group, x, y),
                  multiply(group, inverse(group, x), inverse(group, y)));
}

Element special_power_pn1(const Presentation& group, Element x) {
  const std::int64_t exponent = checked_pow(group.p(), group.n() - 1);
  if (power(group, generator_b(group), exponent) != kIdentity)
    throw PreconditionError("special_power_pn1 requires b^{p^{n-1}} = 1");
  const std::int64_t pn = group.a_order();
  const std::int64_t ratio = group.r_power(x.beta);
  const std::int64_t sum = geometric_sum(ratio, static_cast<std::uint64_t>(exponent), pn);
  return {mulmod(x.alpha, sum, pn), 0};
}

Element center_z(const Presentation& group) {
  return {group.a_order() / group.p(), 0};
}

Presentation quotient_by_z(const Presentation& group) {
  if (group.n() < 2)
    throw PreconditionError("quotient_by_z requires n >= 2 (G/Z would be cyclic of order p^m)");
  const int n = group.n() - 1;
  const std::int64_t modulus = group.a_order() / group.p();
  // b^{p^m} = a^{p^{n-eps}} survives only when p^{n-eps} < p^{n-1}.
  const int epsilon = group.epsilon() >= 2 ? group.epsilon() - 1 : 0;
  return Presentation::make_structural(group.p(), n, group.m(), epsilon, group.r() % modulus);
}

std::vector<Element> elements(const Presentation& group) {
  std::vector<Element> out;
  out.reserve(static_cast<std::size_t>(group.order()));
  for (std::size_t i = 0; i < group.order(); ++i) out.push_back(group.element(i));
  return out;
}

int nilpotency_class(const Presentation& group, std::uint64_t max_order) {
  if (group.order() > max_order)
    throw BudgetExceeded("nilpotency_class: |G| = " + std::to_string(group.order()) +
                         " exceeds the enumeration cap " + std::to_string(max_order));
  const auto all = elements(group);
  const std::size_t size = all.size();

  std::vector<std::size_t> current(size);
  std::iota(current.begin(), current.end(), std::size_t{0});
  for (int index = 1;; ++index) {
    std::vector<char> is_gen(size, 0);
    std::vector<std::size_t> gens;
    for (std::size_t gi : current) {
      for (const Element& h : all) {
        const std::size_t c = group.index(commutator(group, all[gi], h));
        if (!is_gen[c]) {
          is_gen[c] = 1;
          gens.push_back(c);
        }
      }
    }
    // Closure of the generators under right multiplication.
    std::vector<char> member(size, 0);
    std::vector<std::size_t> next{group.index(kIdentity)};
    member[next.front()] = 1;
    for (std::size_t head = 0; head < next.size(); ++head) {
      const Element x = all[next[head]];
      for (std::size_t gen : gens) {
        const std::size_t y = group.index(multiply(group, x, all[gen]));
        if (!member[y]) {
          member[y] = 1;
          next.push_back(y);
        }
      }
    }
    if (next.size() == 1) return index;
    if (next.size() == current.size())
      throw Error("lower central series stalled; group is not nilpotent");
    current = std::move(next);
  }
}

bool in_a(Element x) noexcept { return x.beta == 0; }

bool in_z(const Presentation& group, Element x) noexcept {
  return x.beta == 0 && x.alpha % (group.a_order() / group.p()) == 0;
}

std::string to_string(Element x) {
  return "(" + std::to_string(x.alpha) + "," + std::to_string(x.beta) + ")";
}

}  // namespace wordmap
