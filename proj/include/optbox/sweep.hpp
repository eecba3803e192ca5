#pragma once

#include <span>

#include "optbox/box.hpp"
#include "optbox/score.hpp"

namespace optbox {

// Top-down passes over a static tree keyed by x, one activation at a time.
BoxResult solve_baseline(std::span<const Point> pts, const ScoreFunction& f);

// Passes start only at tops of positive stripes; whole stripes are inserted
// into a fresh splay tree in increasing x and queried at positive stripe ends.
BoxResult solve_stripes(std::span<const Point> pts, const ScoreFunction& f);

// Baseline pass structure over a fresh splay tree per pass.
BoxResult solve_finger(std::span<const Point> pts, const ScoreFunction& f);

// Stripe passes on whichever axis has the smaller n*delta*(1 + H(runs)) bound.
BoxResult solve_combined(std::span<const Point> pts, const ScoreFunction& f);

enum class Axis { X, Y };
// The axis solve_combined sweeps along (Y means horizontal stripes).
Axis combined_axis(std::span<const Point> pts, const ScoreFunction& f);

}  // namespace optbox
