#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "optbox/score.hpp"

namespace optbox {

// Closed axis-aligned rectangle in plain coordinates.
struct Rect {
  std::int64_t xlo = 0, xhi = 0, ylo = 0, yhi = 0;
  friend bool operator==(const Rect&, const Rect&) = default;
};

// Rectangle over (coordinate, id) keys. Solvers reason in keys so that
// repeated coordinates still behave as if in general position.
struct Region {
  Key xlo, xhi, ylo, yhi;

  static Region of(const Point& p) { return {x_key(p), x_key(p), y_key(p), y_key(p)}; }
  bool contains(const Point& p) const {
    const Key x = x_key(p), y = y_key(p);
    return xlo <= x && x <= xhi && ylo <= y && y <= yhi;
  }
  Rect rect() const { return {xlo.coord, xhi.coord, ylo.coord, yhi.coord}; }
  friend bool operator==(const Region&, const Region&) = default;
};

Region hull(const Region& a, const Region& b);
Region hull(const Region& a, const Point& p);
Region transpose(const Region& r);
// Mirror through the x axis: y keys negated.
Region reflect_y(const Region& r);
std::optional<Region> bounding_region(std::span<const Point> pts);

struct BoxResult {
  std::vector<std::uint32_t> selection;  // sorted point ids
  std::optional<Rect> box;               // tight bbox of the selection
  Score score{};
  OpCounters counters;
};

// f folded over the given points, starting from f(empty). Not metered.
Score fold_score(const ScoreFunction& f, std::span<const Point> pts);

// Result whose selection is every point inside `region` (empty when absent).
BoxResult make_box_result(std::span<const Point> pts, const std::optional<Region>& region,
                          Score score, const OpCounters& counters);

// Swaps x and y of every point; ids are kept.
std::vector<Point> transpose(std::span<const Point> pts);

}  // namespace optbox
