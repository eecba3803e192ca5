#pragma once

#include "optbox/score.hpp"

namespace optbox {

// A consecutive range [lo, hi] of a keyed sequence with its composed score.
// `empty` is the empty interval (score f(empty)). `vacant` marks a range
// holding no active element, whose score is f(empty) by construction;
// composing with a vacant range is the identity and costs nothing.
template <class Pos>
struct Interval {
  Pos lo{};
  Pos hi{};
  Score score{};
  bool empty = true;
  bool vacant = true;

  static Interval none(Score empty_score) { return {Pos{}, Pos{}, empty_score, true, true}; }
  static Interval single(Pos p, Score s, bool active) { return {p, p, s, false, !active}; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Concatenation of two adjacent intervals (a left of b).
template <class Pos>
Interval<Pos> join(ScoreContext& ctx, const Interval<Pos>& a, const Interval<Pos>& b) {
  if (a.empty) return b;
  if (b.empty) return a;
  Interval<Pos> r{a.lo, b.hi, a.score, false, a.vacant && b.vacant};
  if (a.vacant)
    r.score = b.score;
  else if (!b.vacant)
    r.score = ctx.compose(a.score, b.score);
  return r;
}

// max{a, b}; ties keep a.
template <class Pos>
const Interval<Pos>& best(ScoreContext& ctx, const Interval<Pos>& a, const Interval<Pos>& b) {
  return ctx.greater(b.score, a.score) ? b : a;
}

// max over non-empty candidates only.
template <class Pos>
const Interval<Pos>& best_nonempty(ScoreContext& ctx, const Interval<Pos>& a,
                                   const Interval<Pos>& b) {
  if (a.empty) return b;
  if (b.empty) return a;
  return best(ctx, a, b);
}

enum AugField : unsigned {
  kPrefix = 1u,
  kSuffix = 2u,
  kFactor = 4u,
  kAnchoredPrefix = 8u,  // best non-empty prefix
  kAnchoredSuffix = 16u, // best non-empty suffix
  kClassicFields = kPrefix | kSuffix | kFactor,
  kAllFields = 31u,
};

// Per-node summary of a sequence: full span, best prefix, best suffix,
// best factor, and the best prefix/suffix forced to be non-empty.
template <class Pos>
struct Aug {
  Interval<Pos> full;
  Interval<Pos> prefix;
  Interval<Pos> suffix;
  Interval<Pos> factor;
  Interval<Pos> anchored_prefix;
  Interval<Pos> anchored_suffix;

  static Aug identity(Score e) {
    auto n = Interval<Pos>::none(e);
    return {n, n, n, n, n, n};
  }

  // Summary of a run of inactive elements lo..hi.
  static Aug vacant_run(Pos lo, Pos hi, Score e) {
    auto n = Interval<Pos>::none(e);
    return {Interval<Pos>{lo, hi, e, false, true}, n, n, n, Interval<Pos>::single(lo, e, false),
            Interval<Pos>::single(hi, e, false)};
  }

  static Aug element(ScoreContext& ctx, Pos p, Score s, bool active, unsigned fields) {
    const Score e = ctx.empty();
    if (!active) return vacant_run(p, p, e);
    auto one = Interval<Pos>::single(p, s, true);
    auto n = Interval<Pos>::none(e);
    Aug a{one, n, n, n, one, one};
    if (fields & kClassicFields) {
      const auto& m = best(ctx, n, one);
      a.prefix = a.suffix = a.factor = m;
    }
    return a;
  }

  friend bool operator==(const Aug&, const Aug&) = default;
};

// Summary of the concatenation a ++ b, computing only the requested fields.
template <class Pos>
Aug<Pos> concat(ScoreContext& ctx, const Aug<Pos>& a, const Aug<Pos>& b, unsigned fields) {
  if (a.full.empty) return b;
  if (b.full.empty) return a;
  const Score e = ctx.empty();
  if (a.full.vacant && b.full.vacant) return Aug<Pos>::vacant_run(a.full.lo, b.full.hi, e);

  Aug<Pos> r = Aug<Pos>::identity(e);
  r.full = join(ctx, a.full, b.full);
  if (fields & (kPrefix | kFactor)) r.prefix = best(ctx, a.prefix, join(ctx, a.full, b.prefix));
  if (fields & (kSuffix | kFactor)) r.suffix = best(ctx, join(ctx, a.suffix, b.full), b.suffix);
  if (fields & kFactor)
    r.factor = best(ctx, best(ctx, a.factor, join(ctx, a.suffix, b.prefix)), b.factor);
  if (fields & kAnchoredPrefix)
    r.anchored_prefix = best_nonempty(ctx, a.anchored_prefix, join(ctx, a.full, b.anchored_prefix));
  if (fields & kAnchoredSuffix)
    r.anchored_suffix = best_nonempty(ctx, join(ctx, a.anchored_suffix, b.full), b.anchored_suffix);
  return r;
}

}  // namespace optbox
