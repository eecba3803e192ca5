#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>

#include "optbox/box.hpp"
#include "optbox/diagonal.hpp"

namespace optbox {

enum class Algorithm { Baseline, Stripes, Finger, Combined, DTree, DStar };

inline constexpr std::array kAllAlgorithms = {Algorithm::Baseline, Algorithm::Stripes,
                                              Algorithm::Finger,   Algorithm::Combined,
                                              Algorithm::DTree,    Algorithm::DStar};

std::string_view name(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view text);

// Sweep solvers only; throws for dtree/dstar.
InnerSolver inner_solver(Algorithm a);

BoxResult solve(Algorithm a, std::span<const Point> pts, const ScoreFunction& f,
                Algorithm inner = Algorithm::Baseline);

}  // namespace optbox
