#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "optbox/box.hpp"
#include "optbox/diagonal.hpp"
#include "optbox/score.hpp"

namespace optbox {

// Exhaustive references. Nothing here touches the trees or solvers.

inline constexpr std::size_t kOracleCap = 24;

// Every box spanned by a pair of x ranks and a pair of y ranks, plus the
// empty box. Strictly better boxes replace the incumbent, scanning the left
// edge first, then right, bottom, top.
BoxResult brute_best_box(std::span<const Point> pts, const ScoreFunction& f,
                         std::size_t cap = kOracleCap);

struct OracleInterval {
  bool empty = true;
  std::size_t lo = 0, hi = 0;
  Score score{};
};

OracleInterval brute_best_subsequence(std::span<const Score> values, const ScoreFunction& f);
// Restricted to [l, r].
OracleInterval brute_subrange_best(std::span<const Score> values, std::size_t l, std::size_t r,
                                   const ScoreFunction& f);
// Intervals containing position k.
OracleInterval brute_best_through(std::span<const Score> values, std::size_t k,
                                  const ScoreFunction& f);

enum Vertex : unsigned { kBL = 1, kBR = 2, kTR = 4, kTL = 8 };

struct Constraint {
  enum class Kind { Vertices, OnEdge } kind = Kind::Vertices;
  unsigned vertices = 0;  // Vertex bits of bbox(A) the box must contain
  std::size_t q = 0;      // OnEdge: index of the point on the edge
  Edge edge = Edge::Top;
};

// Vertex mask of each anchored member of TenBoxes, by member index (0 = opt).
unsigned ten_member_vertices(std::size_t member);

// Best box inside bbox(A) satisfying the constraint. Such boxes may hold no
// point; their score is then f(empty).
BoxResult brute_constrained_box(std::span<const Point> pts, const ScoreFunction& f,
                                const Constraint& c, std::size_t cap = 20);

struct OracleMeasures {
  std::uint64_t lambda = 0;
  std::uint64_t inv = 0;
  std::size_t rho = 0;
};

OracleMeasures brute_measures(std::span<const std::int64_t> xs);

}  // namespace optbox
