#include "optbox/solve.hpp"

#include <stdexcept>

#include "optbox/sweep.hpp"

namespace optbox {

std::string_view name(Algorithm a) {
  switch (a) {
    case Algorithm::Baseline: return "baseline";
    case Algorithm::Stripes: return "stripes";
    case Algorithm::Finger: return "finger";
    case Algorithm::Combined: return "combined";
    case Algorithm::DTree: return "dtree";
    case Algorithm::DStar: return "dstar";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (Algorithm a : kAllAlgorithms)
    if (name(a) == text) return a;
  return std::nullopt;
}

InnerSolver inner_solver(Algorithm a) {
  switch (a) {
    case Algorithm::Baseline: return solve_baseline;
    case Algorithm::Stripes: return solve_stripes;
    case Algorithm::Finger: return solve_finger;
    case Algorithm::Combined: return solve_combined;
    default: throw std::invalid_argument("inner solver must be a sweep algorithm");
  }
}

BoxResult solve(Algorithm a, std::span<const Point> pts, const ScoreFunction& f, Algorithm inner) {
  switch (a) {
    case Algorithm::DTree: return solve_dtree(pts, f, inner_solver(inner));
    case Algorithm::DStar: return solve_dstar(pts, f, inner_solver(inner));
    default: return inner_solver(a)(pts, f);
  }
}

}  // namespace optbox
