#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "optbox/score.hpp"

namespace optbox {

enum class GenKind { UniformRandom, Stripes, Aligned, DiagonalBlocks, WindmillChain };
enum class StripeProfile { Equal, Random };
enum class AlignMode { CoSorted, AntiSorted, Runs };

struct InstanceSpec {
  GenKind kind = GenKind::UniformRandom;
  std::size_t n = 16;
  std::uint64_t seed = 1;
  // stripes
  std::size_t delta = 2;
  StripeProfile profile = StripeProfile::Equal;
  // aligned
  AlignMode align = AlignMode::CoSorted;
  std::size_t rho = 1;
  // diagonal_blocks: block sizes along x; mixed places blocks by random
  // bottom-up/top-down splits instead of a rising diagonal
  std::vector<std::size_t> blocks;
  bool mixed = false;
  // windmill_chain
  std::size_t sigma = 1;
  // weights are uniform in [wmin, wmax]; colors red with probability red_fraction
  std::int64_t wmin = -10;
  std::int64_t wmax = 10;
  double red_fraction = 0.4;
};

// Deterministic in the spec. Coordinates are distinct on each axis. Point
// ids are 0..n-1 in output order.
std::vector<Point> generate(const InstanceSpec& spec);

GenKind parse_gen_kind(const std::string& text);

// CSV with header x,y,weight[,color]; decimals are read as fixed point,
// multiplied by `scale` (which must make every value integral).
std::vector<Point> read_points_csv(std::istream& in, std::int64_t scale = 1);
void write_points_csv(std::ostream& out, std::span<const Point> pts);
std::vector<Point> read_points_json(std::istream& in, std::int64_t scale = 1);
void write_points_json(std::ostream& out, std::span<const Point> pts);
// Chooses the format from the extension (.json, else CSV).
std::vector<Point> read_points_file(const std::string& path, std::int64_t scale = 1);

std::int64_t parse_fixed(const std::string& text, std::int64_t scale);

// FNV-1a over the instance content.
std::uint64_t digest(std::span<const Point> pts);

// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace optbox
