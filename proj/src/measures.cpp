#include "optbox/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace optbox {

namespace {

void require_distinct(std::span<const std::int64_t> xs) {
  std::vector<std::int64_t> s(xs.begin(), xs.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("measures: duplicate values");
}

std::uint64_t merge_count(std::vector<std::int64_t>& a, std::vector<std::int64_t>& tmp,
                          std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t c = merge_count(a, tmp, lo, mid) + merge_count(a, tmp, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (a[j] < a[i]) {
      c += mid - i;
      tmp[k++] = a[j++];
    } else {
      tmp[k++] = a[i++];
    }
  }
  while (i < mid) tmp[k++] = a[i++];
  while (j < hi) tmp[k++] = a[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, a.begin() + lo);
  return c;
}

}  // namespace

std::vector<std::size_t> StripeDecomposition::sizes() const {
  std::vector<std::size_t> out;
  for (const auto& s : stripes) out.push_back(s.size());
  return out;
}

StripeDecomposition stripes(std::span<const Point> pts, const ScoreFunction& f, OpCounters* ctr) {
  if (pts.empty()) throw std::invalid_argument("stripes: empty input");
  StripeDecomposition d;
  d.order.resize(pts.size());
  std::iota(d.order.begin(), d.order.end(), 0u);
  std::sort(d.order.begin(), d.order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (ctr) ++ctr->coord_cmps;
    return y_key(pts[a]) < y_key(pts[b]);
  });
  for (std::size_t i = 0; i < d.order.size(); ++i) {
    const Sign s = classify_sign(f, pts[d.order[i]]);
    if (d.stripes.empty() || d.stripes.back().sign != s)
      d.stripes.push_back({s, i, i + 1});
    else
      d.stripes.back().end = i + 1;
  }
  for (const auto& s : d.stripes) {
    if (s.sign != Sign::Positive) continue;
    d.candidate_bottoms.push_back(d.order[s.begin]);
    d.candidate_tops.push_back(d.order[s.end - 1]);
  }
  return d;
}

double entropy(std::span<const std::size_t> sizes) {
  const double n = std::accumulate(sizes.begin(), sizes.end(), 0.0);
  double h = 0;
  for (std::size_t s : sizes)
    if (s > 0) h += (s / n) * std::log2(n / s);
  return h;
}

std::vector<std::uint64_t> insertion_ranks(std::span<const std::int64_t> xs) {
  require_distinct(xs);
  std::vector<std::int64_t> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  // Fenwick tree over final positions.
  std::vector<std::uint64_t> bit(xs.size() + 1, 0);
  std::vector<std::uint64_t> r;
  r.reserve(xs.size());
  for (std::int64_t x : xs) {
    const std::size_t pos =
        std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin() + 1;
    for (std::size_t i = pos; i <= xs.size(); i += i & -i) ++bit[i];
    std::uint64_t rank = 0;
    for (std::size_t i = pos; i > 0; i -= i & -i) rank += bit[i];
    r.push_back(rank);
  }
  return r;
}

std::uint64_t local_insertion_complexity(std::span<const std::int64_t> xs) {
  auto r = insertion_ranks(xs);
  std::uint64_t lambda = 0;
  for (std::size_t j = 1; j < r.size(); ++j) lambda += r[j] > r[j - 1] ? r[j] - r[j - 1] : r[j - 1] - r[j];
  return lambda;
}

std::uint64_t final_position_walk(std::span<const std::int64_t> xs) {
  require_distinct(xs);
  std::vector<std::int64_t> sorted(xs.begin(), xs.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t w = 0;
  std::size_t prev = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const std::size_t pos = std::lower_bound(sorted.begin(), sorted.end(), xs[j]) - sorted.begin();
    if (j > 0) w += pos > prev ? pos - prev : prev - pos;
    prev = pos;
  }
  return w;
}

std::uint64_t inversions(std::span<const std::int64_t> xs) {
  require_distinct(xs);
  std::vector<std::int64_t> a(xs.begin(), xs.end()), tmp(xs.size());
  return merge_count(a, tmp, 0, a.size());
}

Runs runs(std::span<const std::int64_t> xs) {
  require_distinct(xs);
  Runs r;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == 0 || xs[i] < xs[i - 1])
      r.lengths.push_back(1);
    else
      ++r.lengths.back();
  }
  r.count = r.lengths.size();
  return r;
}

std::vector<std::int64_t> resort_within_stripes(std::span<const Point> pts,
                                                const StripeDecomposition& d) {
  std::vector<std::int64_t> xs;
  xs.reserve(d.order.size());
  for (std::uint32_t i : d.order) xs.push_back(pts[i].x);
  for (const auto& s : d.stripes) std::sort(xs.begin() + s.begin, xs.begin() + s.end);
  return xs;
}

std::vector<std::int64_t> x_sequence(std::span<const Point> pts) {
  std::vector<Point> v(pts.begin(), pts.end());
  std::sort(v.begin(), v.end(), [](const Point& a, const Point& b) { return y_key(a) < y_key(b); });
  std::vector<std::int64_t> xs;
  for (const auto& p : v) xs.push_back(p.x);
  return xs;
}

MeasureReport measure_sequence(std::span<const std::int64_t> xs) {
  MeasureReport m;
  m.n = xs.size();
  m.lambda = local_insertion_complexity(xs);
  m.lambda_walk = final_position_walk(xs);
  m.inv = inversions(xs);
  auto r = runs(xs);
  m.rho = r.count;
  m.run_lengths = r.lengths;
  m.run_entropy = entropy(r.lengths);
  return m;
}

MeasureReport measure(std::span<const Point> pts, const ScoreFunction& f) {
  auto xs = x_sequence(pts);
  MeasureReport m = measure_sequence(xs);
  auto d = stripes(pts, f);
  m.delta = d.delta();
  m.stripe_sizes = d.sizes();
  m.stripe_entropy = entropy(m.stripe_sizes);
  auto x2 = resort_within_stripes(pts, d);
  m.lambda_resorted = local_insertion_complexity(x2);
  m.inv_resorted = inversions(x2);
  auto r2 = runs(x2);
  m.rho_resorted = r2.count;
  m.run_entropy_resorted = entropy(r2.lengths);
  return m;
}

}  // namespace optbox
