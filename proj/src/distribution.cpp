#include "wordmap/distribution.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <thread>

#include "wordmap/arith.hpp"
#include "wordmap/errors.hpp"

namespace wordmap {

namespace {

constexpr std::uint64_t kMaxPowerTableEntries = std::uint64_t{1} << 22;

/// Runs body(lo, hi, local_counts) over contiguous chunks of [0, total) and
/// sums the per-worker count arrays. Integer sums make the result independent
/// of the schedule.
template <typename Body>
std::vector<std::uint64_t> run_chunked(std::uint64_t total, std::size_t bins, unsigned workers,
                                       Body body) {
  workers = std::max(1u, workers);
  const std::uint64_t chunk_count = std::min<std::uint64_t>(total, std::uint64_t{workers} * 8);
  if (workers == 1 || chunk_count <= 1) {
    std::vector<std::uint64_t> counts(bins, 0);
    if (total > 0) body(std::uint64_t{0}, total, counts);
    return counts;
  }
  const std::uint64_t step = (total + chunk_count - 1) / chunk_count;
  std::atomic<std::uint64_t> next{0};
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (;;) {
          const std::uint64_t chunk = next.fetch_add(1);
          const std::uint64_t lo = chunk * step;
          if (lo >= total) break;
          body(lo, std::min(total, lo + step), partial[w]);
        }
      });
    }
  }
  std::vector<std::uint64_t> counts(bins, 0);
  for (const auto& part : partial)
    for (std::size_t i = 0; i < bins; ++i) counts[i] += part[i];
  return counts;
}

/// Word compiled against one group: letters as (slot, power table) pairs.
class CompiledWord {
 public:
  CompiledWord(const Presentation& group, const FreeWord& word) : group_(group) {
    std::map<std::int64_t, std::size_t> table_of;
    for (const Letter& l : word.letters()) table_of.emplace(l.exp, 0);
    const bool tabulate =
        checked_mul(static_cast<std::uint64_t>(table_of.size()), group.order()) <= kMaxPowerTableEntries;
    if (tabulate) {
      for (auto& [exp, slot] : table_of) {
        slot = tables_.size();
        std::vector<Element> table(static_cast<std::size_t>(group.order()));
        for (std::size_t i = 0; i < table.size(); ++i) table[i] = power(group, group.element(i), exp);
        tables_.push_back(std::move(table));
      }
    }
    for (const Letter& l : word.letters()) {
      steps_.push_back({static_cast<std::size_t>(l.var - 1), l.exp,
                        tabulate ? static_cast<std::ptrdiff_t>(table_of[l.exp]) : -1});
    }
  }

  Element operator()(const Element* tuple) const {
    Element acc = kIdentity;
    for (const Step& s : steps_) {
      const Element x = tuple[s.slot];
      const Element px = s.table >= 0 ? tables_[static_cast<std::size_t>(s.table)][group_.index(x)]
                                      : power(group_, x, s.exp);
      acc = multiply(group_, acc, px);
    }
    return acc;
  }

 private:
  struct Step {
    std::size_t slot;
    std::int64_t exp;
    std::ptrdiff_t table;
  };
  const Presentation& group_;
  std::vector<Step> steps_;
  std::vector<std::vector<Element>> tables_;
};

void require_arity(const FreeWord& word, int arity) {
  if (arity < word.arity())
    throw PreconditionError("arity " + std::to_string(arity) + " is below the word's arity " +
                            std::to_string(word.arity()));
}

/// Digits of `index` in base `radix`, most significant first.
std::vector<std::uint64_t> decode(std::uint64_t index, std::uint64_t radix, int width) {
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(width), 0);
  for (int i = width - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = index % radix;
    index /= radix;
  }
  return digits;
}

/// Odometer increment, last position fastest.
void advance(std::vector<std::uint64_t>& digits, std::uint64_t radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix) return;
    digits[i] = 0;
  }
}

int valuation(std::int64_t value, std::int64_t p) {
  int v = 0;
  while (value != 0 && value % p == 0) {
    value /= p;
    ++v;
  }
  return v;
}

}  // namespace

Distribution::Distribution(Presentation group, int arity, std::vector<std::uint64_t> counts)
    : group_(std::move(group)), arity_(arity), counts_(std::move(counts)) {
  if (counts_.size() != group_.order()) throw PreconditionError("count vector has the wrong size");
  total_ = 1;
  for (int i = 0; i < arity_; ++i) total_ = checked_mul(total_, group_.order());
}

std::vector<Element> Distribution::support() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < counts_.size(); ++i)
    if (counts_[i] != 0) out.push_back(group_.element(i));
  return out;
}

std::size_t Distribution::image_size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(counts_.begin(), counts_.end(), [](std::uint64_t c) { return c != 0; }));
}

std::uint64_t Distribution::min_count() const noexcept {
  std::uint64_t best = 0;
  for (std::uint64_t c : counts_)
    if (c != 0 && (best == 0 || c < best)) best = c;
  return best;
}

Element evaluate(const Presentation& group, const FreeWord& word, std::span<const Element> tuple) {
  if (tuple.size() < static_cast<std::size_t>(word.arity()))
    throw PreconditionError("tuple has " + std::to_string(tuple.size()) +
                            " entries but the word uses " + std::to_string(word.arity()) +
                            " variables");
  Element acc = kIdentity;
  for (const Letter& l : word.letters())
    acc = multiply(group, acc, power(group, tuple[static_cast<std::size_t>(l.var - 1)], l.exp));
  return acc;
}

std::uint64_t tuple_space_size(std::uint64_t group_order, int arity, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (int i = 0; i < arity; ++i) {
    if (__builtin_mul_overflow(total, group_order, &total) || total > limit)
      throw BudgetExceeded(std::to_string(group_order) + "^" + std::to_string(arity) +
                           " exceeds the evaluation budget of " + std::to_string(limit));
  }
  return total;
}

Distribution distribution_exhaustive(const Presentation& group, const FreeWord& word, int arity,
                                     const EngineOptions& options) {
  require_arity(word, arity);
  const std::uint64_t order = group.order();
  const std::uint64_t total = tuple_space_size(order, arity, options.max_evals);
  const CompiledWord compiled(group, word);

  auto counts = run_chunked(
      total, static_cast<std::size_t>(order), options.workers,
      [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& local) {
        auto digits = decode(lo, order, arity);
        std::vector<Element> tuple(static_cast<std::size_t>(arity));
        for (std::uint64_t t = lo; t < hi; ++t) {
          for (std::size_t i = 0; i < tuple.size(); ++i) tuple[i] = group.element(digits[i]);
          ++local[group.index(compiled(tuple.data()))];
          advance(digits, order);
        }
      });
  return {group, arity, std::move(counts)};
}

Distribution distribution_coset_split(const Presentation& group, const FreeWord& word, int arity,
                                      const EngineOptions& options) {
  require_arity(word, arity);
  const auto b_order = static_cast<std::uint64_t>(group.b_order());
  const std::int64_t pn = group.a_order();
  const std::uint64_t b_tuples = tuple_space_size(b_order, arity, options.max_evals);
  // Every v_{w,b} has kernel of size |A|^{k-1} * d.
  std::uint64_t a_power = 1;
  for (int i = 1; i < arity; ++i) a_power = checked_mul(a_power, static_cast<std::uint64_t>(pn));
  const CompiledWord compiled(group, word);

  auto counts = run_chunked(
      b_tuples, static_cast<std::size_t>(group.order()), options.workers,
      [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& local) {
        auto digits = decode(lo, b_order, arity);
        std::vector<Element> tuple(static_cast<std::size_t>(arity));
        for (std::uint64_t t = lo; t < hi; ++t) {
          for (std::size_t i = 0; i < tuple.size(); ++i)
            tuple[i] = {0, static_cast<std::int64_t>(digits[i])};
          const Element offset = compiled(tuple.data());
          const Element offset_inv = inverse(group, offset);

          // Image exponent of each coordinate: v(e_i) = w(b with a_i = a) w(b)^-1.
          std::int64_t d = pn;
          for (std::size_t i = 0; i < tuple.size(); ++i) {
            tuple[i].alpha = 1;
            const Element v = multiply(group, compiled(tuple.data()), offset_inv);
            tuple[i].alpha = 0;
            if (v.beta != 0) throw Error("coset split: v_{w,b} left the subgroup <a>");
            d = std::gcd(d, v.alpha);
          }
          const std::uint64_t fiber =
              arity == 0 ? 1 : checked_mul(a_power, static_cast<std::uint64_t>(d));
          for (std::int64_t x = 0; x < pn; x += d)
            local[group.index({(x + offset.alpha) % pn, offset.beta})] += fiber;
          advance(digits, b_order);
        }
      });
  return {group, arity, std::move(counts)};
}

bool quotient_pushforward_check(const Presentation& group, Element generator,
                                const FreeWord& word, int arity, const EngineOptions& options) {
  if (!group.contains(generator)) throw PreconditionError("generator is not an element of G");
  if (!in_a(generator)) throw PreconditionError("quotient_pushforward_check needs N inside <a>");
  if (commutator(group, generator, generator_b(group)) != kIdentity)
    throw PreconditionError("N = <generator> is not central");

  // <a^alpha> = <a^{p^v}> has order p^{n-v}.
  const int steps =
      generator.alpha == 0 ? 0 : group.n() - valuation(generator.alpha, group.p());
  if (steps >= group.n()) throw PreconditionError("N = <a> itself is not supported: G/N would need n = 0");

  Presentation quotient = group;
  for (int i = 0; i < steps; ++i) quotient = quotient_by_z(quotient);

  const Distribution upstairs = distribution_exhaustive(group, word, arity, options);
  const Distribution downstairs = distribution_exhaustive(quotient, word, arity, options);

  std::vector<std::uint64_t> pushed(static_cast<std::size_t>(quotient.order()), 0);
  for (std::size_t i = 0; i < upstairs.counts().size(); ++i)
    pushed[quotient.index(project_to_quotient(quotient, group.element(i)))] += upstairs.counts()[i];

  std::uint64_t scale = 1;
  const std::uint64_t n_order = group.order() / quotient.order();
  for (int i = 0; i < arity; ++i) scale = checked_mul(scale, n_order);

  for (std::size_t i = 0; i < pushed.size(); ++i)
    if (checked_mul(downstairs.counts()[i], scale) != pushed[i]) return false;
  return true;
}

}  // namespace wordmap
