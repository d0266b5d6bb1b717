#include "wordmap/free_word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <set>

#include "wordmap/arith.hpp"
#include "wordmap/errors.hpp"

namespace wordmap {

namespace {

void push_reduced(std::vector<Letter>& stack, Letter letter) {
  if (letter.exp == 0) return;
  if (!stack.empty() && stack.back().var == letter.var) {
    const std::int64_t merged = checked_add(stack.back().exp, letter.exp);
    stack.pop_back();
    if (merged != 0) stack.push_back({letter.var, merged});
    return;
  }
  stack.push_back(letter);
}

void check_size(const FreeWord& word) {
  if (word.letters().size() > kMaxWordLetters)
    throw PreconditionError("word exceeds " + std::to_string(kMaxWordLetters) + " letters");
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  FreeWord parse() {
    skip_space();
    if (at_end()) throw ParseError("empty word", pos_);
    FreeWord w = word();
    skip_space();
    if (!at_end()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return w;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  bool starts_term() {
    skip_space();
    const char c = peek();
    return c == 'x' || c == '(' || c == '[' || c == '1';
  }

  FreeWord word() {
    if (!starts_term()) {
      if (at_end()) throw ParseError("unexpected end of input", pos_);
      throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
    }
    FreeWord w;
    while (starts_term()) {
      w = concat(w, term());
      check_size(w);
    }
    return w;
  }

  FreeWord term() {
    FreeWord base = atom();
    skip_space();
    if (peek() != '^') return base;
    ++pos_;
    skip_space();
    const std::int64_t e = integer();
    FreeWord out = word_power(base, e);
    check_size(out);
    return out;
  }

  FreeWord atom() {
    skip_space();
    const std::size_t start = pos_;
    const char c = peek();
    if (c == 'x') {
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek())))
        throw ParseError("expected variable index after 'x'", pos_);
      const std::int64_t index = integer();
      if (index == 0) throw ParseError("variable index 0 is not allowed", start);
      if (index > kMaxVariableIndex) throw ParseError("variable index too large", start);
      return FreeWord::from_letters({{static_cast<int>(index), 1}});
    }
    if (c == '1') {
      ++pos_;
      return FreeWord{};
    }
    if (c == '(') {
      ++pos_;
      FreeWord inner = word();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      FreeWord acc = word();
      std::size_t args = 1;
      skip_space();
      while (peek() == ',') {
        ++pos_;
        acc = word_commutator(acc, word());
        check_size(acc);
        ++args;
        skip_space();
      }
      if (args < 2) throw ParseError("commutator needs at least two entries", pos_);
      expect(']');
      return acc;
    }
    throw ParseError("expected 'x', '(', '[' or '1'", pos_);
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    bool negative = false;
    if (peek() == '-' || peek() == '+') {
      negative = peek() == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError("expected integer", digits);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
    (void)ptr;
    if (ec == std::errc::result_out_of_range) throw ParseError("exponent overflow", start);
    return negative ? -value : value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FreeWord FreeWord::from_letters(std::vector<Letter> letters, int arity) {
  FreeWord w;
  int max_var = arity;
  for (const Letter& l : letters) {
    if (l.var < 1) throw PreconditionError("variable indices are 1-based");
    max_var = std::max(max_var, l.var);
    push_reduced(w.letters_, l);
  }
  w.arity_ = max_var;
  return w;
}

std::uint64_t FreeWord::length() const noexcept {
  std::uint64_t total = 0;
  for (const Letter& l : letters_) total += static_cast<std::uint64_t>(std::llabs(l.exp));
  return total;
}

std::vector<int> FreeWord::variables() const {
  std::set<int> vars;
  for (const Letter& l : letters_) vars.insert(l.var);
  return {vars.begin(), vars.end()};
}

FreeWord parse_word(std::string_view text) { return Parser(text).parse(); }

std::string render(const FreeWord& word) {
  if (word.empty()) return "1";
  std::string out;
  for (const Letter& l : word.letters()) {
    if (!out.empty()) out += ' ';
    out += 'x';
    out += std::to_string(l.var);
    if (l.exp != 1) {
      out += '^';
      out += std::to_string(l.exp);
    }
  }
  return out;
}

FreeWord concat(const FreeWord& lhs, const FreeWord& rhs) {
  std::vector<Letter> letters = lhs.letters();
  letters.insert(letters.end(), rhs.letters().begin(), rhs.letters().end());
  return FreeWord::from_letters(std::move(letters), std::max(lhs.arity(), rhs.arity()));
}

FreeWord invert(const FreeWord& word) {
  std::vector<Letter> letters;
  letters.reserve(word.letters().size());
  for (auto it = word.letters().rbegin(); it != word.letters().rend(); ++it) {
    if (it->exp == INT64_MIN) throw OverflowError("cannot negate exponent");
    letters.push_back({it->var, -it->exp});
  }
  return FreeWord::from_letters(std::move(letters), word.arity());
}

FreeWord word_power(const FreeWord& word, std::int64_t exponent) {
  if (word.letters().size() == 1) {
    const Letter& l = word.letters().front();
    return FreeWord::from_letters({{l.var, checked_mul(l.exp, exponent)}}, word.arity());
  }
  FreeWord base = exponent < 0 ? invert(word) : word;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-(exponent + 1)) + 1
                                 : static_cast<std::uint64_t>(exponent);
  FreeWord result = FreeWord::from_letters({}, word.arity());
  while (e > 0) {
    if (e & 1u) {
      result = concat(result, base);
      check_size(result);
    }
    e >>= 1u;
    if (e > 0) {
      base = concat(base, base);
      check_size(base);
    }
  }
  return result;
}

FreeWord word_commutator(const FreeWord& lhs, const FreeWord& rhs) {
  return concat(concat(lhs, rhs), concat(invert(lhs), invert(rhs)));
}

std::vector<std::int64_t> abelianized_exponents(const FreeWord& word) {
  std::vector<std::int64_t> e(static_cast<std::size_t>(word.arity()), 0);
  for (const Letter& l : word.letters()) {
    auto& slot = e[static_cast<std::size_t>(l.var - 1)];
    slot = checked_add(slot, l.exp);
  }
  return e;
}

FreeWord exponent_prefix(const std::vector<std::int64_t>& exponents) {
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < exponents.size(); ++i)
    letters.push_back({static_cast<int>(i + 1), exponents[i]});
  return FreeWord::from_letters(std::move(letters), static_cast<int>(exponents.size()));
}

CollectedWord collect_split(const FreeWord& word) {
  CollectedWord out;
  out.exponents = abelianized_exponents(word);
  out.kappa = concat(invert(exponent_prefix(out.exponents)), word);
  return out;
}

FreeWord pad_arity(const FreeWord& word, int mu) {
  if (mu < word.arity())
    throw PreconditionError("pad_arity: mu = " + std::to_string(mu) + " is below the arity " +
                            std::to_string(word.arity()));
  return FreeWord::from_letters(word.letters(), mu);
}

}  // namespace wordmap
