#ifndef WORDMAP_TESTS_ORACLES_HPP
#define WORDMAP_TESTS_ORACLES_HPP

// Slow, independent reference implementations used only by the tests.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "wordmap/free_word.hpp"
#include "wordmap/metacyclic.hpp"

namespace oracle {

using wordmap::Element;
using wordmap::Presentation;

/// Product of two normal forms obtained by rewriting the word
/// a^x b^y a^z b^w with the defining relations only:
///   b a -> a^r b,  a^{p^n} -> 1,  b^{p^m} -> a^{p^{n-eps}}.
inline Element rewrite_product(const Presentation& g, Element x, Element y) {
  const std::int64_t pn = g.a_order();
  const std::int64_t pm = g.b_order();
  const std::int64_t carry = g.carry();
  std::vector<std::pair<char, std::int64_t>> runs{{'a', x.alpha}, {'b', x.beta}, {'a', y.alpha}, {'b', y.beta}};

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::pair<char, std::int64_t>> merged;
    for (auto [c, e] : runs) {
      if (c == 'a') e %= pn;
      if (e == 0) continue;
      if (!merged.empty() && merged.back().first == c)
        merged.back().second += e;
      else
        merged.emplace_back(c, e);
    }
    runs = std::move(merged);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].first == 'b' && runs[i].second >= pm) {
        runs[i].second -= pm;
        runs.insert(runs.begin() + static_cast<std::ptrdiff_t>(i), {'a', carry});
        changed = true;
        break;
      }
      if (runs[i].first == 'b' && i + 1 < runs.size() && runs[i + 1].first == 'a') {
        // b^j a^k = b^{j-1} (b a^k) = b^{j-1} a^{k r} b
        const std::int64_t j = runs[i].second;
        std::int64_t k = runs[i + 1].second;
        std::int64_t conj = 0;
        for (std::int64_t t = 0; t < g.r(); ++t) conj = (conj + k) % pn;
        k = conj;
        std::vector<std::pair<char, std::int64_t>> replacement;
        if (j > 1) replacement.emplace_back('b', j - 1);
        replacement.emplace_back('a', k);
        replacement.emplace_back('b', 1);
        runs.erase(runs.begin() + static_cast<std::ptrdiff_t>(i), runs.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        runs.insert(runs.begin() + static_cast<std::ptrdiff_t>(i), replacement.begin(), replacement.end());
        changed = true;
        break;
      }
    }
  }
  Element out;
  for (auto [c, e] : runs) (c == 'a' ? out.alpha : out.beta) += e;
  out.alpha %= pn;
  return out;
}

/// Full Cayley table indexed by Presentation::index.
inline std::vector<std::vector<std::size_t>> cayley_table(const Presentation& g) {
  const std::size_t size = g.order();
  std::vector<std::vector<std::size_t>> table(size, std::vector<std::size_t>(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) table[i][j] = g.index(rewrite_product(g, g.element(i), g.element(j)));
  return table;
}

inline Element brute_inverse(const Presentation& g, Element x) {
  for (std::size_t i = 0; i < g.order(); ++i)
    if (rewrite_product(g, x, g.element(i)) == wordmap::kIdentity) return g.element(i);
  return {-1, -1};
}

/// Word value by letter-at-a-time multiplication, inverses by search.
inline Element naive_evaluate(const Presentation& g, const wordmap::FreeWord& w, const std::vector<Element>& tuple) {
  Element acc = wordmap::kIdentity;
  for (const auto& letter : w.letters()) {
    Element x = tuple[static_cast<std::size_t>(letter.var - 1)];
    if (letter.exp < 0) x = brute_inverse(g, x);
    const std::int64_t count = letter.exp < 0 ? -letter.exp : letter.exp;
    for (std::int64_t i = 0; i < count; ++i) acc = rewrite_product(g, acc, x);
  }
  return acc;
}

/// Reduced random word by rejection; not shared with the library's generator.
inline wordmap::FreeWord random_word(std::mt19937_64& rng, int k_max, int len_max, int exp_max = 3) {
  std::uniform_int_distribution<int> var(1, k_max), len(0, len_max), mag(1, exp_max), sign(0, 1);
  std::vector<wordmap::Letter> letters;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) letters.push_back({var(rng), sign(rng) ? mag(rng) : -mag(rng)});
  return wordmap::FreeWord::from_letters(letters);
}

/// Every family instance with order at most `max_order`.
inline std::vector<Presentation> family_instances(std::uint64_t max_order) {
  using wordmap::Family;
  std::vector<Presentation> out;
  for (Family f : {Family::Dihedral, Family::GeneralisedQuaternion, Family::Semidihedral, Family::Modular2}) {
    for (int n = 2; (std::uint64_t{1} << (n + 1)) <= max_order; ++n) {
      if (f == Family::Semidihedral && n < 3) continue;
      out.push_back(wordmap::make_family(f, 2, n));
    }
  }
  for (std::int64_t p : {3, 5, 7}) {
    std::uint64_t order = static_cast<std::uint64_t>(p * p * p);
    for (int n = 2; order <= max_order; ++n, order *= static_cast<std::uint64_t>(p))
      out.push_back(wordmap::make_family(Family::ModularOdd, p, n));
  }
  return out;
}

/// A few valid presentations outside the five families, including m > 1.
inline std::vector<Presentation> custom_instances() {
  return {
      Presentation::make(2, 3, 2, 0, 5),  // order 32, r = 5
      Presentation::make(2, 2, 2, 0, 3),  // order 16
      Presentation::make(2, 3, 2, 2, 5),  // order 32, nonsplit
      Presentation::make(3, 2, 2, 0, 4),  // order 81
      Presentation::make(2, 3, 1, 0, 1),  // abelian C8 x C2
  };
}

}  // namespace oracle

#endif  // WORDMAP_TESTS_ORACLES_HPP
