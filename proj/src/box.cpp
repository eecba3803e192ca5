#include "optbox/box.hpp"

#include <algorithm>

namespace optbox {

Region hull(const Region& a, const Region& b) {
  return {std::min(a.xlo, b.xlo), std::max(a.xhi, b.xhi), std::min(a.ylo, b.ylo),
          std::max(a.yhi, b.yhi)};
}

Region hull(const Region& a, const Point& p) { return hull(a, Region::of(p)); }

Region transpose(const Region& r) { return {r.ylo, r.yhi, r.xlo, r.xhi}; }

Region reflect_y(const Region& r) {
  // Negating the coordinate alone would reverse the id tie-break, so ids are
  // mirrored too (ids are below 2^32).
  auto m = [](const Key& k) { return Key{-k.coord, ~k.id}; };
  return {r.xlo, r.xhi, m(r.yhi), m(r.ylo)};
}

std::optional<Region> bounding_region(std::span<const Point> pts) {
  if (pts.empty()) return std::nullopt;
  Region r = Region::of(pts.front());
  for (const auto& p : pts) r = hull(r, p);
  return r;
}

Score fold_score(const ScoreFunction& f, std::span<const Point> pts) {
  Score s = f.empty_score();
  for (const auto& p : pts) s = f.apply(s, f.point_score(p));
  return s;
}

BoxResult make_box_result(std::span<const Point> pts, const std::optional<Region>& region,
                          Score score, const OpCounters& counters) {
  BoxResult r;
  r.score = score;
  r.counters = counters;
  if (!region) return r;
  std::vector<Point> inside;
  for (const auto& p : pts)
    if (region->contains(p)) inside.push_back(p);
  for (const auto& p : inside) r.selection.push_back(p.id);
  std::sort(r.selection.begin(), r.selection.end());
  if (auto b = bounding_region(inside)) r.box = b->rect();
  return r;
}

std::vector<Point> transpose(std::span<const Point> pts) {
  std::vector<Point> out(pts.begin(), pts.end());
  for (auto& p : out) std::swap(p.x, p.y);
  return out;
}

}  // namespace optbox
