#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "optbox/interval.hpp"
#include "optbox/score.hpp"

namespace optbox {

// Fully dynamic MCS tree: a binary search tree on Key with one element per
// node, each node augmented with the summary of its subtree. Subclasses
// provide the balancing discipline.
class DynamicMcsTree {
 public:
  explicit DynamicMcsTree(ScoreContext& ctx)
      : ctx_(&ctx), nil_aug_(Aug<Key>::identity(ctx.empty())) {}
  virtual ~DynamicMcsTree() = default;

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  Interval<Key> global_best() const;
  // Best interval among elements with keys in [l, r].
  Interval<Key> subrange_best(const Key& l, const Key& r);
  // Best interval constrained to contain the element with key k.
  Interval<Key> best_through(const Key& k);

  std::size_t height() const;
  // In-order (key, value) pairs.
  std::vector<std::pair<Key, Score>> items() const;
  // Checks key order, parent links, and that every summary equals its
  // recomputation from the children.
  virtual bool validate() const;

 protected:
  using NodeId = std::int32_t;
  static constexpr NodeId kNil = -1;

  struct Node {
    Key key;
    Score value;
    NodeId left = kNil;
    NodeId right = kNil;
    NodeId parent = kNil;
    std::int32_t height = 1;
    Aug<Key> aug;
  };

  NodeId make_node(const Key& key, Score value);
  void free_node(NodeId v);
  void pull(NodeId v);
  Aug<Key> compute(ScoreContext& ctx, NodeId v) const;
  const Aug<Key>& aug(NodeId v) const;
  Aug<Key> element(NodeId v);
  void set_left(NodeId v, NodeId c);
  void set_right(NodeId v, NodeId c);

  // Descends to key; returns the node (or kNil) and the last node visited.
  std::pair<NodeId, NodeId> find(const Key& key);

  // Summaries of the elements strictly below / above a bound (or
  // inclusive), restricted to the subtree at v. `deepest` records the
  // deepest node visited.
  Aug<Key> collect_below(NodeId v, const Key& bound, bool inclusive, unsigned fields,
                         NodeId& deepest, int& depth);
  Aug<Key> collect_above(NodeId v, const Key& bound, bool inclusive, unsigned fields,
                         NodeId& deepest, int& depth);

  // Hook for self-adjusting variants after a query touched `deepest`.
  virtual void touched(NodeId) {}

  ScoreContext* ctx_;
  Aug<Key> nil_aug_;
  std::vector<Node> nodes_;
  std::vector<NodeId> free_;
  NodeId root_ = kNil;
  std::size_t size_ = 0;
};

// Height-balanced (AVL) MCS tree.
class McsAvlTree : public DynamicMcsTree {
 public:
  using DynamicMcsTree::DynamicMcsTree;

  void insert(const Key& key, Score value);
  void erase(const Key& key);
  void update_value(const Key& key, Score value);
  std::optional<Score> search(const Key& key);

  bool validate() const override;

 private:
  NodeId insert_at(NodeId v, const Key& key, Score value);
  NodeId erase_at(NodeId v, const Key& key);
  NodeId update_at(NodeId v, const Key& key, Score value);
  NodeId rebalance(NodeId v);
  NodeId rotate_left(NodeId v);
  NodeId rotate_right(NodeId v);
  std::int32_t h(NodeId v) const { return v == kNil ? 0 : nodes_[v].height; }
  void fix(NodeId v);
};

// Self-adjusting MCS tree: bottom-up splaying, summaries repaired after
// every rotation.
class McsSplayTree : public DynamicMcsTree {
 public:
  explicit McsSplayTree(ScoreContext& ctx, bool splay_on_query = true)
      : DynamicMcsTree(ctx), splay_on_query_(splay_on_query) {}

  void insert(const Key& key, Score value);
  void erase(const Key& key);
  void update_value(const Key& key, Score value);
  std::optional<Score> search(const Key& key);

  std::uint64_t rotations() const { return rotations_; }

 protected:
  void touched(NodeId v) override {
    if (splay_on_query_ && v != kNil) splay(v);
  }

 private:
  void rotate(NodeId x);
  void splay(NodeId x);

  bool splay_on_query_;
  std::uint64_t rotations_ = 0;
};

// One step of an access script for splay_access_cost_probe.
struct AccessOp {
  enum class Kind { Insert, Erase, Search, Update } kind;
  Key key;
  Score value{};
};

struct AccessCost {
  std::uint64_t rotations = 0;
  OpCounters counters;
};

// Runs the script on the tree and reports the rotations and operation
// counts it caused.
AccessCost splay_access_cost_probe(McsSplayTree& tree, OpCounters& tree_counters,
                                   const std::vector<AccessOp>& script);

}  // namespace optbox
