#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "optbox/box.hpp"
#include "optbox/score.hpp"

namespace optbox {

using InnerSolver = BoxResult (*)(std::span<const Point>, const ScoreFunction&);

// BottomUp: the left block lies below the right block. TopDown: above it.
enum class SplitKind { BottomUp, TopDown };

struct Split {
  std::size_t k;  // size of the left block
  SplitKind kind;
  friend bool operator==(const Split&, const Split&) = default;
};

// ranks[i] is the y-rank of the i-th point in x order; the block's ranks are
// exactly base+1 .. base+ranks.size().
std::optional<Split> try_diagonalize(std::span<const std::uint32_t> ranks, std::uint32_t base,
                                     OpCounters* ctr = nullptr);
std::optional<Split> try_diagonalize(std::span<const Point> pts);

struct DNode {
  enum class Kind { Leaf, Split, OneChild } kind = Kind::Leaf;
  SplitKind split = SplitKind::BottomUp;
  int left = -1, right = -1, child = -1;
  // Leaf: its point set. OneChild: the four peeled extreme points.
  std::vector<std::uint32_t> ids;
  // OneChild only: all points of the node, in x order.
  std::vector<std::uint32_t> members;
  std::size_t size = 0;
};

// Indices in DNode refer to positions in the input span.
struct DTree {
  std::vector<DNode> nodes;
  int root = -1;
  std::size_t sigma = 0;  // number of one-child nodes
  std::vector<std::uint32_t> x_order;
  std::vector<std::uint32_t> y_order;

  // Point ids of every leaf, each sorted, the list sorted.
  std::vector<std::vector<std::uint32_t>> leaf_partition(std::span<const Point> pts) const;
};

DTree build_dtree(std::span<const Point> pts, OpCounters* ctr = nullptr);
DTree build_dstar(std::span<const Point> pts, OpCounters* ctr = nullptr);

// A member box: score and the region it covers (absent only for an empty optimum).
struct BoxSlot {
  Score score{};
  std::optional<Region> region;
};

// bbox(A), f(A) and the nine optimal boxes: the free optimum, the boxes
// anchored at the corners bottom-left, bottom-right, top-right, top-left,
// and the boxes spanning the bottom, right, top and left sides of bbox(A).
struct TenBoxes {
  Region bbox;
  Score total{};
  BoxSlot opt, bl, br, tr, tl, bottom, right, top, left;

  static constexpr std::array<std::string_view, 9> kNames = {
      "opt", "bl", "br", "tr", "tl", "bottom", "right", "top", "left"};
  const BoxSlot& member(std::size_t i) const;
};

TenBoxes ten_boxes_direct(std::span<const Point> pts, const ScoreFunction& f,
                          InnerSolver inner, OpCounters& ctr);
TenBoxes combine_ten(const TenBoxes& a, const TenBoxes& b, SplitKind kind, ScoreContext& ctx);

BoxResult solve_dtree(std::span<const Point> pts, const ScoreFunction& f, InnerSolver inner);
BoxResult solve_dstar(std::span<const Point> pts, const ScoreFunction& f, InnerSolver inner);

// Indices of the points on the boundary of bbox(A), ascending, no repeats.
std::vector<std::uint32_t> extreme_points(std::span<const Point> pts);

// Four indices forming a non-diagonalizable quadruple with at least one
// extreme point of A, or none. Exhaustive; meant for small sets.
std::optional<std::array<std::uint32_t, 4>> find_windmill(std::span<const Point> pts);

enum class Edge { Top, Bottom, Left, Right };

// Best box whose `edge` side passes through pts[q] (q is inside the box).
BoxResult boundary_constrained_best(std::span<const Point> pts, std::size_t q, Edge edge,
                                    const ScoreFunction& f);

}  // namespace optbox
