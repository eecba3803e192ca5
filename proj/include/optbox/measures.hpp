#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "optbox/score.hpp"

namespace optbox {

struct Stripe {
  Sign sign;
  std::size_t begin;  // range in StripeDecomposition::order
  std::size_t end;
  std::size_t size() const { return end - begin; }
};

// Maximal same-sign blocks of the points taken in ascending y order.
struct StripeDecomposition {
  std::vector<std::uint32_t> order;  // point indices, ascending y
  std::vector<Stripe> stripes;       // bottom to top
  std::vector<std::uint32_t> candidate_tops;     // topmost point of each positive stripe
  std::vector<std::uint32_t> candidate_bottoms;  // bottommost point of each positive stripe

  std::size_t delta() const { return stripes.size(); }
  std::vector<std::size_t> sizes() const;
};

// Throws on empty input. Sorting comparisons are charged to ctr when given.
StripeDecomposition stripes(std::span<const Point> pts, const ScoreFunction& f,
                            OpCounters* ctr = nullptr);

// Sum of (n_i/n) lg(n/n_i).
double entropy(std::span<const std::size_t> sizes);

// r_j = 1-based rank of xs[j] among xs[0..j].
std::vector<std::uint64_t> insertion_ranks(std::span<const std::int64_t> xs);
// Sum of |r_j - r_{j-1}|.
std::uint64_t local_insertion_complexity(std::span<const std::int64_t> xs);
// Sum of |pi_j - pi_{j-1}| over final sorted positions; an upper bound on lambda.
std::uint64_t final_position_walk(std::span<const std::int64_t> xs);
std::uint64_t inversions(std::span<const std::int64_t> xs);

struct Runs {
  std::size_t count = 0;
  std::vector<std::size_t> lengths;
};
Runs runs(std::span<const std::int64_t> xs);

// x coordinates in ascending y order, with each stripe's block sorted.
std::vector<std::int64_t> resort_within_stripes(std::span<const Point> pts,
                                                const StripeDecomposition& d);

// x coordinates in ascending y order.
std::vector<std::int64_t> x_sequence(std::span<const Point> pts);

struct MeasureReport {
  std::size_t n = 0;
  std::size_t delta = 0;
  std::vector<std::size_t> stripe_sizes;
  double stripe_entropy = 0;
  std::uint64_t lambda = 0;
  std::uint64_t lambda_walk = 0;
  std::uint64_t inv = 0;
  std::size_t rho = 0;
  std::vector<std::size_t> run_lengths;
  double run_entropy = 0;
  // Same measures on the re-sorted sequence.
  std::uint64_t lambda_resorted = 0;
  std::uint64_t inv_resorted = 0;
  std::size_t rho_resorted = 0;
  double run_entropy_resorted = 0;
};

MeasureReport measure(std::span<const Point> pts, const ScoreFunction& f);
MeasureReport measure_sequence(std::span<const std::int64_t> xs);

}  // namespace optbox
