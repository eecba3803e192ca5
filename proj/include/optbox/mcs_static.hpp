#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "optbox/interval.hpp"
#include "optbox/score.hpp"

namespace optbox {

// Semi-dynamic MCS tree over a fixed key sequence. Leaves are activated
// (given a score) or deactivated (score f(empty)); every node keeps the
// full/prefix/suffix/factor summary of its leaves. Intervals are reported
// as leaf positions; key_at() maps them back to keys.
//
// The shape is a perfect binary tree built once; it is never rebalanced.
class StaticMcsTree {
 public:
  using Pos = std::size_t;

  // Keys must be non-empty and strictly increasing. All leaves start
  // deactivated.
  StaticMcsTree(std::vector<Key> keys, ScoreContext& ctx, unsigned fields = kClassicFields);

  // Positional variant: keys are the positions 0..leaves-1.
  StaticMcsTree(std::size_t leaves, ScoreContext& ctx, unsigned fields = kClassicFields);

  void activate(const Key& key, Score value) { activate_at(position(key), value); }
  void deactivate(const Key& key) { deactivate_at(position(key)); }
  void activate_at(Pos leaf, Score value);
  void deactivate_at(Pos leaf);

  // Deactivates every leaf. Costs no compositions.
  void reset();

  Interval<Pos> global_best() const { return nodes_[1].factor; }
  Interval<Pos> subrange_best(const Key& l, const Key& r);
  Interval<Pos> subrange_best_at(Pos l, Pos r);
  Interval<Pos> best_through(const Key& k) { return best_through_at(position(k)); }
  Interval<Pos> best_through_at(Pos k);

  // Summary of the leaves in [l, r].
  Aug<Pos> range(Pos l, Pos r);
  const Aug<Pos>& root() const { return nodes_[1]; }

  std::size_t size() const { return n_; }
  std::size_t height() const { return height_; }
  bool active(Pos leaf) const { return active_.at(leaf); }
  Score value(Pos leaf) const { return values_.at(leaf); }
  const Key& key_at(Pos leaf) const { return keys_.at(leaf); }

  // Binary search for a key, counting coordinate comparisons.
  Pos position(const Key& key);

  // Recomputes every node from its children and compares.
  bool validate() const;

 private:
  void init();
  Aug<Pos> leaf_aug(ScoreContext& ctx, Pos leaf) const;
  void refresh_path(Pos leaf);

  ScoreContext* ctx_;
  unsigned fields_;
  std::vector<Key> keys_;
  std::size_t n_ = 0;
  std::size_t cap_ = 1;
  std::size_t height_ = 0;
  std::vector<Score> values_;
  std::vector<bool> active_;
  std::vector<Aug<Pos>> nodes_;
};

}  // namespace optbox
