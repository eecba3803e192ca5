#include "optbox/diagonal.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "optbox/mcs_static.hpp"

namespace optbox {

namespace {

using Ival = Interval<std::size_t>;

Ival shift(Ival v, std::size_t off) {
  if (!v.empty) {
    v.lo += off;
    v.hi += off;
  }
  return v;
}

struct Tracked {
  bool set = false;
  Score score{};
  std::size_t step = 0, lo = 0, hi = 0;
};

void track(ScoreContext& ctx, Tracked& t, const Ival& v, std::size_t step) {
  if (!t.set || ctx.greater(v.score, t.score)) t = {true, v.score, step, v.lo, v.hi};
}

// One sweep of the activation axis starting at q = act[0]. Leaves are split at
// q into two static trees, so every quantity anchored at q, or at the first
// or last leaf, is read off the two roots after each activation.
struct PassSpec {
  std::span<const Point> pts;
  std::span<const std::uint32_t> act;
  std::span<const std::uint32_t> leaves;
  bool transposed = false;  // activation along x, leaves along y
  bool anchored = false;
  bool through = false;
};

struct PassOut {
  BoxSlot nl, nr, whole, through, nl_final, nr_final;
  Score total{};
};

PassOut run_pass(ScoreContext& ctx, const PassSpec& s) {
  const std::size_t m = s.act.size();
  const Score e = ctx.empty();
  std::vector<std::size_t> pos(s.pts.size());
  for (std::size_t i = 0; i < m; ++i) pos[s.leaves[i]] = i;
  auto bkey = [&](std::uint32_t i) { return s.transposed ? y_key(s.pts[i]) : x_key(s.pts[i]); };
  auto akey = [&](std::uint32_t i) { return s.transposed ? x_key(s.pts[i]) : y_key(s.pts[i]); };

  const std::uint32_t q = s.act[0];
  const std::size_t p = pos[q];
  std::optional<StaticMcsTree> left, right;
  if (p > 0) left.emplace(p, ctx, kSuffix | (s.anchored ? kAnchoredPrefix : 0u));
  if (p + 1 < m) right.emplace(m - p - 1, ctx, kPrefix | (s.anchored ? kAnchoredSuffix : 0u));
  const Aug<std::size_t> none = Aug<std::size_t>::identity(e);
  const Ival vq = Ival::single(p, ctx.value(s.pts[q]), true);

  Tracked nl, nr, whole, through, nl_last, nr_last;
  Score total = e;
  for (std::size_t j = 0; j < m; ++j) {
    const std::uint32_t idx = s.act[j];
    const Score v = ctx.value(s.pts[idx]);
    if (j == 0) {
      total = v;
    } else {
      const std::size_t lp = pos[idx];
      if (lp < p)
        left->activate_at(lp, v);
      else
        right->activate_at(lp - p - 1, v);
      total = ctx.compose(total, v);
    }
    const auto& la = left ? left->root() : none;
    const auto& ra = right ? right->root() : none;
    const Ival lr = shift(ra.prefix, p + 1);
    const Ival x = join(ctx, vq, lr);
    if (s.through) track(ctx, through, join(ctx, la.suffix, x), j);
    if (!s.anchored) continue;
    const Ival y = join(ctx, la.suffix, vq);
    const Ival a = left ? best_nonempty(ctx, la.anchored_prefix, join(ctx, la.full, x)) : x;
    const Ival b = right ? best_nonempty(ctx, join(ctx, y, shift(ra.full, p + 1)),
                                         shift(ra.anchored_suffix, p + 1))
                        : y;
    track(ctx, nl, a, j);
    track(ctx, nr, b, j);
    track(ctx, whole, Ival{0, m - 1, total, false, false}, j);
    if (j + 1 == m) {
      nl_last = {true, a.score, j, a.lo, a.hi};
      nr_last = {true, b.score, j, b.lo, b.hi};
    }
  }

  auto slot = [&](const Tracked& t) {
    BoxSlot out;
    if (!t.set) return out;
    out.score = t.score;
    const Key a0 = akey(q), a1 = akey(s.act[t.step]);
    const Key alo = std::min(a0, a1), ahi = std::max(a0, a1);
    const Key blo = bkey(s.leaves[t.lo]), bhi = bkey(s.leaves[t.hi]);
    out.region = s.transposed ? Region{alo, ahi, blo, bhi} : Region{blo, bhi, alo, ahi};
    return out;
  };
  PassOut out;
  out.nl = slot(nl);
  out.nr = slot(nr);
  out.whole = slot(whole);
  out.through = slot(through);
  out.nl_final = slot(nl_last);
  out.nr_final = slot(nr_last);
  out.total = total;
  return out;
}

TenBoxes singleton_ten(ScoreContext& ctx, const Point& p) {
  const BoxSlot s{ctx.value(p), Region::of(p)};
  TenBoxes t{Region::of(p), s.score, s, s, s, s, s, s, s, s, s};
  if (!ctx.greater(s.score, ctx.empty())) t.opt = BoxSlot{ctx.empty(), std::nullopt};
  return t;
}

struct Throughs {
  BoxSlot bottom, top, left, right;
};

// Anchored members of A from its x and y orders (ascending). The optimum is
// left for the caller. With `throughs`, also the best boxes through each of
// the four extreme points on their own side.
TenBoxes anchored_members(ScoreContext& ctx, std::span<const Point> pts,
                          std::span<const std::uint32_t> xo, std::span<const std::uint32_t> yo,
                          Throughs* throughs) {
  TenBoxes t;
  t.bbox = Region{x_key(pts[xo.front()]), x_key(pts[xo.back()]), y_key(pts[yo.front()]),
                  y_key(pts[yo.back()])};
  const std::vector<std::uint32_t> yo_down(yo.rbegin(), yo.rend());
  const bool th = throughs != nullptr;

  auto up = run_pass(ctx, {pts, yo, xo, false, true, th});
  auto down = run_pass(ctx, {pts, yo_down, xo, false, true, th});
  t.total = up.total;
  t.bl = up.nl;
  t.br = up.nr;
  t.bottom = up.whole;
  t.left = up.nl_final;
  t.right = up.nr_final;
  t.tl = down.nl;
  t.tr = down.nr;
  t.top = down.whole;
  if (th) {
    const std::vector<std::uint32_t> xo_down(xo.rbegin(), xo.rend());
    throughs->bottom = up.through;
    throughs->top = down.through;
    throughs->left = run_pass(ctx, {pts, xo, yo, true, false, true}).through;
    throughs->right = run_pass(ctx, {pts, xo_down, yo, true, false, true}).through;
  }
  return t;
}

std::vector<std::uint32_t> sorted_by(std::span<const Point> pts, Key (*key)(const Point&),
                                     OpCounters* ctr) {
  std::vector<std::uint32_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (ctr) ++ctr->coord_cmps;
    return key(pts[a]) < key(pts[b]);
  });
  return idx;
}

BoxSlot slot_of(std::span<const Point> pts, const BoxResult& r) {
  BoxSlot s{r.score, std::nullopt};
  for (const auto& p : pts)
    if (std::binary_search(r.selection.begin(), r.selection.end(), p.id))
      s.region = s.region ? hull(*s.region, p) : Region::of(p);
  return s;
}

const BoxSlot& pick(ScoreContext& ctx, const BoxSlot& a, const BoxSlot& b) {
  return ctx.greater(b.score, a.score) ? b : a;
}

TenBoxes reflect(const TenBoxes& t) {
  auto r = [](BoxSlot s) {
    if (s.region) s.region = reflect_y(*s.region);
    return s;
  };
  TenBoxes o;
  o.bbox = reflect_y(t.bbox);
  o.total = t.total;
  o.opt = r(t.opt);
  o.bl = r(t.tl);
  o.tl = r(t.bl);
  o.br = r(t.tr);
  o.tr = r(t.br);
  o.bottom = r(t.top);
  o.top = r(t.bottom);
  o.right = r(t.right);
  o.left = r(t.left);
  return o;
}

TenBoxes combine_bottom_up(const TenBoxes& a, const TenBoxes& b, ScoreContext& ctx) {
  TenBoxes r;
  r.bbox = hull(a.bbox, b.bbox);
  const Region u2{r.bbox.xhi, r.bbox.xhi, r.bbox.ylo, r.bbox.ylo};
  const Region u4{r.bbox.xlo, r.bbox.xlo, r.bbox.yhi, r.bbox.yhi};
  r.total = ctx.compose(a.total, b.total);
  auto cross = [&](const BoxSlot& s, const BoxSlot& t) {
    return BoxSlot{ctx.compose(s.score, t.score), hull(*s.region, *t.region)};
  };
  auto pad = [](BoxSlot s, const Region& u) {
    s.region = hull(*s.region, u);
    return s;
  };
  const BoxSlot box1{a.total, a.bbox}, box2{b.total, b.bbox};

  r.opt = pick(ctx, pick(ctx, a.opt, b.opt), cross(a.tr, b.bl));
  r.bl = pick(ctx, a.bl, cross(box1, b.bl));
  // The off-diagonal corners also admit a box that holds no point at all.
  const BoxSlot none2{ctx.empty(), u2}, none4{ctx.empty(), u4};
  r.br = pad(pick(ctx, pick(ctx, pick(ctx, none2, a.br), b.br), cross(a.right, b.bottom)), u2);
  r.tr = pick(ctx, cross(a.tr, box2), b.tr);
  r.tl = pad(pick(ctx, pick(ctx, pick(ctx, none4, a.tl), b.tl), cross(a.top, b.left)), u4);
  r.bottom = pick(ctx, pad(a.bottom, u2), cross(box1, b.bottom));
  r.right = pick(ctx, pad(b.right, u2), cross(a.right, box2));
  r.top = pick(ctx, pad(b.top, u4), cross(a.top, box2));
  r.left = pick(ctx, pad(a.left, u4), cross(box1, b.left));
  return r;
}

struct Builder {
  std::span<const Point> pts;
  OpCounters* ctr;
  bool peel;
  DTree& t;

  int add(DNode n) {
    t.nodes.push_back(std::move(n));
    return static_cast<int>(t.nodes.size()) - 1;
  }

  int build(std::span<const std::uint32_t> xs, std::span<const std::uint32_t> ranks,
            std::uint32_t base) {
    const std::size_t m = xs.size();
    if (auto s = try_diagonalize(ranks, base, ctr)) {
      const std::size_t k = s->k;
      const std::uint32_t lb = s->kind == SplitKind::BottomUp ? base : base + static_cast<std::uint32_t>(m - k);
      const std::uint32_t rb = s->kind == SplitKind::BottomUp ? base + static_cast<std::uint32_t>(k) : base;
      const int l = build(xs.first(k), ranks.first(k), lb);
      const int r = build(xs.subspan(k), ranks.subspan(k), rb);
      DNode n;
      n.kind = DNode::Kind::Split;
      n.split = s->kind;
      n.left = l;
      n.right = r;
      n.size = m;
      return add(std::move(n));
    }
    if (!peel || m <= 4) {
      DNode n;
      n.ids.assign(xs.begin(), xs.end());
      n.size = m;
      return add(std::move(n));
    }
    // Peel the four extreme points and re-rank the rest.
    std::array<std::size_t, 4> ext{0, m - 1, 0, 0};
    for (std::size_t i = 0; i < m; ++i) {
      if (ctr) ctr->coord_cmps += 2;
      if (ranks[i] == base + 1) ext[2] = i;
      if (ranks[i] == base + m) ext[3] = i;
    }
    std::sort(ext.begin(), ext.end());
    if (std::adjacent_find(ext.begin(), ext.end()) != ext.end())
      throw std::logic_error("build_dstar: non-diagonalizable block without four extreme points");
    std::array<std::uint32_t, 4> gone{};
    for (int i = 0; i < 4; ++i) gone[i] = ranks[ext[i]];
    std::sort(gone.begin(), gone.end());
    std::vector<std::uint32_t> rest_x, rest_r;
    rest_x.reserve(m - 4);
    rest_r.reserve(m - 4);
    for (std::size_t i = 0, e = 0; i < m; ++i) {
      if (e < 4 && ext[e] == i) {
        ++e;
        continue;
      }
      std::uint32_t below = 0;
      for (std::uint32_t g : gone) below += g < ranks[i];
      if (ctr) ctr->coord_cmps += 4;
      rest_x.push_back(xs[i]);
      rest_r.push_back(ranks[i] - below);
    }
    const int c = build(rest_x, rest_r, base);
    DNode n;
    n.kind = DNode::Kind::OneChild;
    n.child = c;
    for (std::size_t i : ext) n.ids.push_back(xs[i]);
    n.members.assign(xs.begin(), xs.end());
    n.size = m;
    ++t.sigma;
    return add(std::move(n));
  }
};

DTree build_tree(std::span<const Point> pts, OpCounters* ctr, bool peel) {
  DTree t;
  if (pts.empty()) return t;
  t.x_order = sorted_by(pts, x_key, ctr);
  t.y_order = sorted_by(pts, y_key, ctr);
  std::vector<std::uint32_t> rank(pts.size());
  for (std::size_t i = 0; i < t.y_order.size(); ++i) rank[t.y_order[i]] = static_cast<std::uint32_t>(i + 1);
  std::vector<std::uint32_t> ranks;
  ranks.reserve(pts.size());
  for (std::uint32_t i : t.x_order) ranks.push_back(rank[i]);
  Builder b{pts, ctr, peel, t};
  t.root = b.build(t.x_order, ranks, 0);
  return t;
}

struct Evaluator {
  std::span<const Point> pts;
  const ScoreFunction& f;
  InnerSolver inner;
  const DTree& t;
  OpCounters& ctr;
  ScoreContext& ctx;
  std::vector<std::uint32_t> stamp;
  std::uint32_t epoch = 0;

  // Nodes are stored children first, so one forward pass evaluates the tree
  // without recursion (a rising diagonal is n levels deep).
  TenBoxes eval_all() {
    std::vector<std::optional<TenBoxes>> done(t.nodes.size());
    for (std::size_t v = 0; v < t.nodes.size(); ++v) {
      done[v] = eval(t.nodes[v], done);
      const DNode& n = t.nodes[v];
      for (int c : {n.left, n.right, n.child})
        if (c >= 0) done[c].reset();
    }
    return *done[t.root];
  }

  TenBoxes eval(const DNode& n, std::vector<std::optional<TenBoxes>>& done) {
    switch (n.kind) {
      case DNode::Kind::Leaf: {
        if (n.ids.size() == 1) return singleton_ten(ctx, pts[n.ids[0]]);
        std::vector<Point> sub;
        for (std::uint32_t i : n.ids) sub.push_back(pts[i]);
        return ten_boxes_direct(sub, f, inner, ctr);
      }
      case DNode::Kind::Split:
        return combine_ten(*done[n.left], *done[n.right], n.split, ctx);
      case DNode::Kind::OneChild: {
        const TenBoxes& child = *done[n.child];
        if (stamp.empty()) stamp.assign(pts.size(), 0);
        ++epoch;
        for (std::uint32_t i : n.members) stamp[i] = epoch;
        std::vector<std::uint32_t> xo, yo;
        for (std::uint32_t i : t.x_order)
          if (stamp[i] == epoch) xo.push_back(i);
        for (std::uint32_t i : t.y_order)
          if (stamp[i] == epoch) yo.push_back(i);
        Throughs th;
        TenBoxes ten = anchored_members(ctx, pts, xo, yo, &th);
        ten.opt = child.opt;
        for (const BoxSlot* s : {&th.bottom, &th.top, &th.left, &th.right})
          ten.opt = pick(ctx, ten.opt, *s);
        return ten;
      }
    }
    throw std::logic_error("unknown node kind");
  }
};

BoxResult solve_tree(std::span<const Point> pts, const ScoreFunction& f, InnerSolver inner,
                     bool peel) {
  OpCounters ctr;
  ScoreContext ctx(f, ctr);
  if (pts.empty()) return make_box_result(pts, std::nullopt, ctx.empty(), ctr);
  DTree t = build_tree(pts, &ctr, peel);
  Evaluator ev{pts, f, inner, t, ctr, ctx, {}, 0};
  TenBoxes ten = ev.eval_all();
  return make_box_result(pts, ten.opt.region, ten.opt.score, ctr);
}

}  // namespace

std::optional<Split> try_diagonalize(std::span<const std::uint32_t> ranks, std::uint32_t base,
                                     OpCounters* ctr) {
  const std::size_t m = ranks.size();
  std::size_t ml = 0, mr = 0, nl = m + 1, nr = m + 1;  // max/min of prefix and suffix
  for (std::size_t j = 1; j <= m / 2; ++j) {
    const std::size_t a = ranks[j - 1] - base, b = ranks[m - j] - base;
    ml = std::max(ml, a);
    nl = std::min(nl, a);
    mr = std::max(mr, b);
    nr = std::min(nr, b);
    if (ctr) ctr->coord_cmps += 8;
    if (ml == j) return Split{j, SplitKind::BottomUp};
    if (nl == m - j + 1) return Split{j, SplitKind::TopDown};
    if (mr == j) return Split{m - j, SplitKind::TopDown};
    if (nr == m - j + 1) return Split{m - j, SplitKind::BottomUp};
  }
  return std::nullopt;
}

std::optional<Split> try_diagonalize(std::span<const Point> pts) {
  auto xo = sorted_by(pts, x_key, nullptr);
  auto yo = sorted_by(pts, y_key, nullptr);
  std::vector<std::uint32_t> rank(pts.size()), ranks;
  for (std::size_t i = 0; i < yo.size(); ++i) rank[yo[i]] = static_cast<std::uint32_t>(i + 1);
  for (std::uint32_t i : xo) ranks.push_back(rank[i]);
  return try_diagonalize(ranks, 0);
}

std::vector<std::vector<std::uint32_t>> DTree::leaf_partition(std::span<const Point> pts) const {
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& n : nodes) {
    if (n.kind != DNode::Kind::Leaf) continue;
    std::vector<std::uint32_t> ids;
    for (std::uint32_t i : n.ids) ids.push_back(pts[i].id);
    std::sort(ids.begin(), ids.end());
    out.push_back(std::move(ids));
  }
  std::sort(out.begin(), out.end());
  return out;
}

DTree build_dtree(std::span<const Point> pts, OpCounters* ctr) { return build_tree(pts, ctr, false); }
DTree build_dstar(std::span<const Point> pts, OpCounters* ctr) { return build_tree(pts, ctr, true); }

const BoxSlot& TenBoxes::member(std::size_t i) const {
  const std::array<const BoxSlot*, 9> all = {&opt, &bl, &br, &tr, &tl, &bottom, &right, &top, &left};
  return *all.at(i);
}

TenBoxes ten_boxes_direct(std::span<const Point> pts, const ScoreFunction& f, InnerSolver inner,
                          OpCounters& ctr) {
  if (pts.empty()) throw std::invalid_argument("ten_boxes_direct: empty set");
  ScoreContext ctx(f, ctr);
  if (pts.size() == 1) return singleton_ten(ctx, pts[0]);
  auto xo = sorted_by(pts, x_key, &ctr);
  auto yo = sorted_by(pts, y_key, &ctr);
  TenBoxes t = anchored_members(ctx, pts, xo, yo, nullptr);
  BoxResult r = inner(pts, f);
  ctr += r.counters;
  t.opt = slot_of(pts, r);
  return t;
}

TenBoxes combine_ten(const TenBoxes& a, const TenBoxes& b, SplitKind kind, ScoreContext& ctx) {
  if (kind == SplitKind::BottomUp) {
    if (!(a.bbox.xhi < b.bbox.xlo && a.bbox.yhi < b.bbox.ylo))
      throw std::invalid_argument("combine_ten: blocks are not a bottom-up diagonalization");
    return combine_bottom_up(a, b, ctx);
  }
  if (!(a.bbox.xhi < b.bbox.xlo && b.bbox.yhi < a.bbox.ylo))
    throw std::invalid_argument("combine_ten: blocks are not a top-down diagonalization");
  return reflect(combine_bottom_up(reflect(a), reflect(b), ctx));
}

BoxResult solve_dtree(std::span<const Point> pts, const ScoreFunction& f, InnerSolver inner) {
  return solve_tree(pts, f, inner, false);
}

BoxResult solve_dstar(std::span<const Point> pts, const ScoreFunction& f, InnerSolver inner) {
  return solve_tree(pts, f, inner, true);
}

std::vector<std::uint32_t> extreme_points(std::span<const Point> pts) {
  if (pts.empty()) return {};
  std::uint32_t lx = 0, hx = 0, ly = 0, hy = 0;
  for (std::uint32_t i = 1; i < pts.size(); ++i) {
    if (x_key(pts[i]) < x_key(pts[lx])) lx = i;
    if (x_key(pts[hx]) < x_key(pts[i])) hx = i;
    if (y_key(pts[i]) < y_key(pts[ly])) ly = i;
    if (y_key(pts[hy]) < y_key(pts[i])) hy = i;
  }
  std::vector<std::uint32_t> out{lx, hx, ly, hy};
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::array<std::uint32_t, 4>> find_windmill(std::span<const Point> pts) {
  const auto ext = extreme_points(pts);
  const std::uint32_t m = static_cast<std::uint32_t>(pts.size());
  auto is_ext = [&](std::uint32_t i) { return std::binary_search(ext.begin(), ext.end(), i); };
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = a + 1; b < m; ++b)
      for (std::uint32_t c = b + 1; c < m; ++c)
        for (std::uint32_t d = c + 1; d < m; ++d) {
          if (!(is_ext(a) || is_ext(b) || is_ext(c) || is_ext(d))) continue;
          const std::array<Point, 4> q{pts[a], pts[b], pts[c], pts[d]};
          if (!try_diagonalize(q)) return std::array<std::uint32_t, 4>{a, b, c, d};
        }
  return std::nullopt;
}

BoxResult boundary_constrained_best(std::span<const Point> pts, std::size_t q, Edge edge,
                                    const ScoreFunction& f) {
  if (q >= pts.size()) throw std::out_of_range("boundary_constrained_best: q not in A");
  OpCounters ctr;
  ScoreContext ctx(f, ctr);
  const bool transposed = edge == Edge::Left || edge == Edge::Right;
  const bool descending = edge == Edge::Top || edge == Edge::Right;
  auto akey = transposed ? x_key : y_key;
  auto bkey = transposed ? y_key : x_key;
  const Key aq = akey(pts[q]);
  std::vector<std::uint32_t> act;
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    const Key a = akey(pts[i]);
    const bool keep = descending ? !ctx.key_less(aq, a) : !ctx.key_less(a, aq);
    if (keep) act.push_back(i);
  }
  std::vector<std::uint32_t> leaves = act;
  std::sort(act.begin(), act.end(), [&](std::uint32_t i, std::uint32_t j) {
    return descending ? ctx.key_less(akey(pts[j]), akey(pts[i]))
                      : ctx.key_less(akey(pts[i]), akey(pts[j]));
  });
  std::sort(leaves.begin(), leaves.end(), [&](std::uint32_t i, std::uint32_t j) {
    return ctx.key_less(bkey(pts[i]), bkey(pts[j]));
  });
  auto out = run_pass(ctx, {pts, act, leaves, transposed, false, true});
  return make_box_result(pts, out.through.region, out.through.score, ctr);
}

}  // namespace optbox
