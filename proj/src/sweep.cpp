#include "optbox/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "optbox/mcs_dynamic.hpp"
#include "optbox/mcs_static.hpp"
#include "optbox/measures.hpp"

namespace optbox {

namespace {

std::vector<std::uint32_t> sorted_indices(std::span<const Point> pts, ScoreContext& ctx,
                                          Key (*key)(const Point&), bool descending) {
  std::vector<std::uint32_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return descending ? ctx.key_less(key(pts[b]), key(pts[a])) : ctx.key_less(key(pts[a]), key(pts[b]));
  });
  return idx;
}

struct Incumbent {
  Score score;
  std::optional<Region> region;
};

void offer(ScoreContext& ctx, Incumbent& best, const Interval<Key>& m, const Key& ylo,
           const Key& yhi) {
  if (m.empty || !ctx.greater(m.score, best.score)) return;
  best.score = m.score;
  best.region = Region{m.lo, m.hi, ylo, yhi};
}

// Stripe passes over pts using decomposition d (ascending y).
Incumbent stripe_passes(std::span<const Point> pts, const StripeDecomposition& d,
                        ScoreContext& ctx) {
  Incumbent best{ctx.empty(), std::nullopt};
  // Each stripe's points in increasing x, sorted once.
  std::vector<std::vector<std::uint32_t>> by_x(d.stripes.size());
  for (std::size_t s = 0; s < d.stripes.size(); ++s) {
    auto& v = by_x[s];
    v.assign(d.order.begin() + d.stripes[s].begin, d.order.begin() + d.stripes[s].end);
    std::sort(v.begin(), v.end(), [&](std::uint32_t a, std::uint32_t b) {
      return ctx.key_less(x_key(pts[a]), x_key(pts[b]));
    });
  }
  for (std::size_t top = d.stripes.size(); top-- > 0;) {
    if (d.stripes[top].sign != Sign::Positive) continue;
    const Key yhi = y_key(pts[d.order[d.stripes[top].end - 1]]);
    McsSplayTree tree(ctx);
    bool queried_last = false;
    for (std::size_t s = top + 1; s-- > 0;) {
      for (std::uint32_t i : by_x[s]) tree.insert(x_key(pts[i]), ctx.value(pts[i]));
      queried_last = d.stripes[s].sign == Sign::Positive;
      if (queried_last) offer(ctx, best, tree.global_best(), y_key(pts[d.order[d.stripes[s].begin]]), yhi);
    }
    if (!queried_last) offer(ctx, best, tree.global_best(), y_key(pts[d.order.front()]), yhi);
  }
  return best;
}

double combined_bound(std::span<const Point> pts, const StripeDecomposition& d) {
  auto xs = resort_within_stripes(pts, d);
  std::vector<std::size_t> lengths;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == 0 || xs[i] < xs[i - 1])
      lengths.push_back(1);
    else
      ++lengths.back();
  }
  return static_cast<double>(pts.size()) * d.delta() * (1.0 + entropy(lengths));
}

}  // namespace

BoxResult solve_baseline(std::span<const Point> pts, const ScoreFunction& f) {
  OpCounters ctr;
  ScoreContext ctx(f, ctr);
  if (pts.empty()) return make_box_result(pts, std::nullopt, ctx.empty(), ctr);
  auto by_y = sorted_indices(pts, ctx, y_key, true);
  auto by_x = sorted_indices(pts, ctx, x_key, false);
  std::vector<std::size_t> leaf(pts.size());
  std::vector<Key> keys;
  for (std::size_t k = 0; k < by_x.size(); ++k) {
    leaf[by_x[k]] = k;
    keys.push_back(x_key(pts[by_x[k]]));
  }
  StaticMcsTree tree(keys, ctx);
  Score best = ctx.empty();
  std::optional<Region> region;
  for (std::size_t i = 0; i < by_y.size(); ++i) {
    tree.reset();
    const Key yhi = y_key(pts[by_y[i]]);
    for (std::size_t j = i; j < by_y.size(); ++j) {
      const Point& p = pts[by_y[j]];
      tree.activate_at(leaf[by_y[j]], ctx.value(p));
      const auto& m = tree.global_best();
      if (!m.empty && ctx.greater(m.score, best)) {
        best = m.score;
        region = Region{keys[m.lo], keys[m.hi], y_key(p), yhi};
      }
    }
  }
  return make_box_result(pts, region, best, ctr);
}

BoxResult solve_finger(std::span<const Point> pts, const ScoreFunction& f) {
  OpCounters ctr;
  ScoreContext ctx(f, ctr);
  if (pts.empty()) return make_box_result(pts, std::nullopt, ctx.empty(), ctr);
  auto by_y = sorted_indices(pts, ctx, y_key, true);
  Incumbent best{ctx.empty(), std::nullopt};
  for (std::size_t i = 0; i < by_y.size(); ++i) {
    McsSplayTree tree(ctx);
    const Key yhi = y_key(pts[by_y[i]]);
    for (std::size_t j = i; j < by_y.size(); ++j) {
      const Point& p = pts[by_y[j]];
      tree.insert(x_key(p), ctx.value(p));
      offer(ctx, best, tree.global_best(), y_key(p), yhi);
    }
  }
  return make_box_result(pts, best.region, best.score, ctr);
}

BoxResult solve_stripes(std::span<const Point> pts, const ScoreFunction& f) {
  OpCounters ctr;
  ScoreContext ctx(f, ctr);
  if (pts.empty()) return make_box_result(pts, std::nullopt, ctx.empty(), ctr);
  auto d = stripes(pts, f, &ctr);
  if (d.candidate_tops.empty()) return make_box_result(pts, std::nullopt, ctx.empty(), ctr);
  auto best = stripe_passes(pts, d, ctx);
  return make_box_result(pts, best.region, best.score, ctr);
}

Axis combined_axis(std::span<const Point> pts, const ScoreFunction& f) {
  if (pts.empty()) return Axis::Y;
  auto ty = transpose(pts);
  return combined_bound(ty, stripes(ty, f)) < combined_bound(pts, stripes(pts, f)) ? Axis::X
                                                                                    : Axis::Y;
}

BoxResult solve_combined(std::span<const Point> pts, const ScoreFunction& f) {
  OpCounters ctr;
  ScoreContext ctx(f, ctr);
  if (pts.empty()) return make_box_result(pts, std::nullopt, ctx.empty(), ctr);
  auto t = transpose(pts);
  auto dy = stripes(pts, f, &ctr);
  auto dx = stripes(t, f, &ctr);
  if (dy.candidate_tops.empty()) return make_box_result(pts, std::nullopt, ctx.empty(), ctr);
  if (combined_bound(t, dx) < combined_bound(pts, dy)) {
    auto best = stripe_passes(t, dx, ctx);
    std::optional<Region> r;
    if (best.region) r = transpose(*best.region);
    return make_box_result(pts, r, best.score, ctr);
  }
  auto best = stripe_passes(pts, dy, ctx);
  return make_box_result(pts, best.region, best.score, ctr);
}

}  // namespace optbox
