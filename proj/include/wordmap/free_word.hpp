#ifndef WORDMAP_FREE_WORD_HPP
#define WORDMAP_FREE_WORD_HPP

// Words in the free group F_k = <x1, ..., xk>, kept freely reduced.
//
// Surface syntax:
//   word := term+
//   term := atom ['^' int]
//   atom := 'x' int | '(' word ')' | '[' word (',' word)+ ']' | '1'
// with [u,v] = u v u^-1 v^-1 and [u,v,w] = [[u,v],w]. Whitespace is ignored.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace wordmap {

struct Letter {
  int var = 1;  // 1-based variable index
  std::int64_t exp = 1;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

inline constexpr std::size_t kMaxWordLetters = 10'000;
inline constexpr int kMaxVariableIndex = 1 << 20;

class FreeWord {
 public:
  FreeWord() = default;

  /// Freely reduces `letters`. The arity is max(arity, largest variable index).
  static FreeWord from_letters(std::vector<Letter> letters, int arity = 0);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  int arity() const noexcept { return arity_; }
  bool empty() const noexcept { return letters_.empty(); }
  /// Length in generators x_i^{+-1}, i.e. the sum of |exp|.
  std::uint64_t length() const noexcept;
  /// Variables that occur, ascending.
  std::vector<int> variables() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<Letter> letters_;
  int arity_ = 0;
};

FreeWord parse_word(std::string_view text);
std::string render(const FreeWord& word);

FreeWord concat(const FreeWord& lhs, const FreeWord& rhs);
FreeWord invert(const FreeWord& word);
FreeWord word_power(const FreeWord& word, std::int64_t exponent);
FreeWord word_commutator(const FreeWord& lhs, const FreeWord& rhs);

/// Exponent sum of each variable, length arity().
std::vector<std::int64_t> abelianized_exponents(const FreeWord& word);

/// x1^{e1} ... xk^{ek}.
FreeWord exponent_prefix(const std::vector<std::int64_t>& exponents);

struct CollectedWord {
  std::vector<std::int64_t> exponents;
  FreeWord kappa;
};

/// w = x1^{e1} ... xk^{ek} * kappa with kappa = prefix^-1 w, which has zero
/// exponent sums.
CollectedWord collect_split(const FreeWord& word);

/// Same letters, arity raised to mu. Throws PreconditionError if mu < arity.
FreeWord pad_arity(const FreeWord& word, int mu);

}  // namespace wordmap

#endif  // WORDMAP_FREE_WORD_HPP
