#ifndef WORDMAP_DISTRIBUTION_HPP
#define WORDMAP_DISTRIBUTION_HPP

// Exact fibre counts N_{w,G}(g) = |{ t in G^k : w(t) = g }|.
//
// Two independent routes: brute enumeration of G^k, and the coset split
// w(a_1 b_1, ..., a_k b_k) = v_{w,b}(a_1, ..., a_k) w(b), where for each fixed
// b-tuple the map v_{w,b} : A^k -> A is a homomorphism on the cyclic group A.

#include <cstdint>
#include <span>
#include <vector>

#include "wordmap/free_word.hpp"
#include "wordmap/metacyclic.hpp"
#include "wordmap/rational.hpp"

namespace wordmap {

struct EngineOptions {
  /// Upper bound on word evaluations (exhaustive) or b-tuples (coset split).
  std::uint64_t max_evals = std::uint64_t{1} << 26;
  /// Worker threads for enumeration; results are identical for any value.
  unsigned workers = 1;
};

class Distribution {
 public:
  Distribution(Presentation group, int arity, std::vector<std::uint64_t> counts);

  const Presentation& group() const noexcept { return group_; }
  int arity() const noexcept { return arity_; }
  std::uint64_t group_order() const noexcept { return group_.order(); }
  /// Dense counts in Presentation::index order.
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

  std::uint64_t count(Element g) const { return counts_[group_.index(g)]; }
  /// |G|^k.
  std::uint64_t total() const noexcept { return total_; }
  Rational probability(Element g) const { return {count(g), total_}; }

  /// The word image G_w, in index order.
  std::vector<Element> support() const;
  std::size_t image_size() const noexcept;
  /// Smallest nonzero count.
  std::uint64_t min_count() const noexcept;

  friend bool operator==(const Distribution& lhs, const Distribution& rhs) {
    return lhs.group_ == rhs.group_ && lhs.arity_ == rhs.arity_ && lhs.counts_ == rhs.counts_;
  }

 private:
  Presentation group_;
  int arity_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_;
};

/// w(t_1, ..., t_k). Requires tuple.size() >= word.arity().
Element evaluate(const Presentation& group, const FreeWord& word, std::span<const Element> tuple);

/// |G|^k as an evaluation count, or BudgetExceeded if above `limit`.
std::uint64_t tuple_space_size(std::uint64_t group_order, int arity, std::uint64_t limit);

Distribution distribution_exhaustive(const Presentation& group, const FreeWord& word, int arity,
                                     const EngineOptions& options = {});

Distribution distribution_coset_split(const Presentation& group, const FreeWord& word, int arity,
                                      const EngineOptions& options = {});

/// For a central N = <generator> inside A, checks
///   N_{w,G/N}(gN) * |N|^k == sum_{x in N} N_{w,G}(g x)
/// for every coset, with G/N built by repeated quotient_by_z.
bool quotient_pushforward_check(const Presentation& group, Element generator,
                                const FreeWord& word, int arity,
                                const EngineOptions& options = {});

}  // namespace wordmap

#endif  // WORDMAP_DISTRIBUTION_HPP
