#include "optbox/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace optbox {

namespace {

struct Frame {
  std::vector<Key> xs, ys;
};

Frame frame_of(std::span<const Point> pts) {
  Frame fr;
  for (const auto& p : pts) {
    fr.xs.push_back(x_key(p));
    fr.ys.push_back(y_key(p));
  }
  std::sort(fr.xs.begin(), fr.xs.end());
  std::sort(fr.ys.begin(), fr.ys.end());
  return fr;
}

bool inside(const Point& p, const Key& xlo, const Key& xhi, const Key& ylo, const Key& yhi) {
  const Key x = x_key(p), y = y_key(p);
  return xlo <= x && x <= xhi && ylo <= y && y <= yhi;
}

BoxResult result_of(std::span<const Point> pts, const ScoreFunction& f, bool any, const Key& xlo,
                    const Key& xhi, const Key& ylo, const Key& yhi) {
  BoxResult r;
  r.score = f.empty_score();
  if (!any) return r;
  for (const auto& p : pts) {
    if (!inside(p, xlo, xhi, ylo, yhi)) continue;
    r.selection.push_back(p.id);
    r.score = f.apply(r.score, f.point_score(p));
    if (!r.box) r.box = Rect{p.x, p.x, p.y, p.y};
    r.box->xlo = std::min(r.box->xlo, p.x);
    r.box->xhi = std::max(r.box->xhi, p.x);
    r.box->ylo = std::min(r.box->ylo, p.y);
    r.box->yhi = std::max(r.box->yhi, p.y);
  }
  std::sort(r.selection.begin(), r.selection.end());
  return r;
}

OracleInterval scan(std::span<const Score> v, std::size_t l, std::size_t r, const ScoreFunction& f,
                    std::size_t must_lo, std::size_t must_hi, bool allow_empty) {
  OracleInterval best;
  best.score = f.empty_score();
  bool have = allow_empty;
  for (std::size_t i = l; i <= r && i <= must_lo; ++i) {
    Score s = f.empty_score();
    for (std::size_t j = i; j <= r; ++j) {
      s = f.apply(s, v[j]);
      if (j < must_hi) continue;
      if (!have || s > best.score) {
        best = {false, i, j, s};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace

BoxResult brute_best_box(std::span<const Point> pts, const ScoreFunction& f, std::size_t cap) {
  if (pts.size() > cap) throw std::invalid_argument("brute_best_box: instance above oracle cap");
  const Frame fr = frame_of(pts);
  const std::size_t n = pts.size();
  Score best = f.empty_score();
  bool any = false;
  std::size_t bx0 = 0, bx1 = 0, by0 = 0, by1 = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = c; d < n; ++d) {
          Score s = f.empty_score();
          bool nonempty = false;
          for (const auto& p : pts)
            if (inside(p, fr.xs[a], fr.xs[b], fr.ys[c], fr.ys[d])) {
              s = f.apply(s, f.point_score(p));
              nonempty = true;
            }
          if (nonempty && s > best) {
            best = s;
            any = true;
            bx0 = a, bx1 = b, by0 = c, by1 = d;
          }
        }
  if (!any) return result_of(pts, f, false, {}, {}, {}, {});
  return result_of(pts, f, true, fr.xs[bx0], fr.xs[bx1], fr.ys[by0], fr.ys[by1]);
}

OracleInterval brute_best_subsequence(std::span<const Score> values, const ScoreFunction& f) {
  if (values.empty()) return OracleInterval{true, 0, 0, f.empty_score()};
  return scan(values, 0, values.size() - 1, f, values.size(), 0, true);
}

OracleInterval brute_subrange_best(std::span<const Score> values, std::size_t l, std::size_t r,
                                   const ScoreFunction& f) {
  if (l > r || r >= values.size()) throw std::invalid_argument("brute_subrange_best: bad range");
  return scan(values, l, r, f, r, l, true);
}

OracleInterval brute_best_through(std::span<const Score> values, std::size_t k,
                                  const ScoreFunction& f) {
  if (k >= values.size()) throw std::out_of_range("brute_best_through: bad position");
  return scan(values, 0, values.size() - 1, f, k, k, false);
}

unsigned ten_member_vertices(std::size_t member) {
  static constexpr unsigned masks[9] = {0,           kBL,         kBR,         kTR,        kTL,
                                        kBL | kBR,   kBR | kTR,   kTR | kTL,   kTL | kBL};
  return masks[member];
}

BoxResult brute_constrained_box(std::span<const Point> pts, const ScoreFunction& f,
                                const Constraint& c, std::size_t cap) {
  if (pts.size() > cap) throw std::invalid_argument("brute_constrained_box: instance above cap");
  if (pts.empty()) throw std::invalid_argument("brute_constrained_box: empty set");
  if (c.kind == Constraint::Kind::OnEdge && c.q >= pts.size())
    throw std::out_of_range("brute_constrained_box: q not in A");
  const Frame fr = frame_of(pts);
  const std::size_t n = pts.size();
  const Key qx = c.kind == Constraint::Kind::OnEdge ? x_key(pts[c.q]) : Key{};
  const Key qy = c.kind == Constraint::Kind::OnEdge ? y_key(pts[c.q]) : Key{};
  auto ok = [&](std::size_t a, std::size_t b, std::size_t lo, std::size_t hi) {
    if (c.kind == Constraint::Kind::Vertices) {
      if ((c.vertices & (kBL | kTL)) && a != 0) return false;
      if ((c.vertices & (kBR | kTR)) && b != n - 1) return false;
      if ((c.vertices & (kBL | kBR)) && lo != 0) return false;
      if ((c.vertices & (kTL | kTR)) && hi != n - 1) return false;
      return true;
    }
    if (!(fr.xs[a] <= qx && qx <= fr.xs[b] && fr.ys[lo] <= qy && qy <= fr.ys[hi])) return false;
    switch (c.edge) {
      case Edge::Top: return fr.ys[hi] == qy;
      case Edge::Bottom: return fr.ys[lo] == qy;
      case Edge::Left: return fr.xs[a] == qx;
      case Edge::Right: return fr.xs[b] == qx;
    }
    return false;
  };
  bool have = false;
  Score best{};
  std::size_t bx0 = 0, bx1 = 0, by0 = 0, by1 = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b)
      for (std::size_t lo = 0; lo < n; ++lo)
        for (std::size_t hi = lo; hi < n; ++hi) {
          if (!ok(a, b, lo, hi)) continue;
          Score s = f.empty_score();
          for (const auto& p : pts)
            if (inside(p, fr.xs[a], fr.xs[b], fr.ys[lo], fr.ys[hi])) s = f.apply(s, f.point_score(p));
          if (!have || s > best) {
            have = true;
            best = s;
            bx0 = a, bx1 = b, by0 = lo, by1 = hi;
          }
        }
  if (!have) throw std::logic_error("brute_constrained_box: unsatisfiable constraint");
  BoxResult r = result_of(pts, f, true, fr.xs[bx0], fr.xs[bx1], fr.ys[by0], fr.ys[by1]);
  r.score = best;
  return r;
}

OracleMeasures brute_measures(std::span<const std::int64_t> xs) {
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (xs[i] == xs[j]) throw std::invalid_argument("brute_measures: duplicate values");
  OracleMeasures m;
  std::uint64_t prev = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::uint64_t r = 0;
    for (std::size_t i = 0; i <= j; ++i) r += xs[i] <= xs[j];
    if (j > 0) m.lambda += r > prev ? r - prev : prev - r;
    prev = r;
    for (std::size_t i = 0; i < j; ++i) m.inv += xs[i] > xs[j];
    if (j == 0 || xs[j] < xs[j - 1]) ++m.rho;
  }
  return m;
}

}  // namespace optbox
