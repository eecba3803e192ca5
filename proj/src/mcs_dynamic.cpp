#include "optbox/mcs_dynamic.hpp"

#include <algorithm>
#include <stdexcept>

namespace optbox {

// ---------------------------------------------------------------------------
// Shared core

DynamicMcsTree::NodeId DynamicMcsTree::make_node(const Key& key, Score value) {
  NodeId id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    nodes_[id] = Node{};
  } else {
    id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[id].key = key;
  nodes_[id].value = value;
  nodes_[id].aug = nil_aug_;
  ++size_;
  return id;
}

void DynamicMcsTree::free_node(NodeId v) {
  free_.push_back(v);
  --size_;
}

const Aug<Key>& DynamicMcsTree::aug(NodeId v) const {
  return v == kNil ? nil_aug_ : nodes_[v].aug;
}

Aug<Key> DynamicMcsTree::element(NodeId v) {
  return Aug<Key>::element(*ctx_, nodes_[v].key, nodes_[v].value, true, kClassicFields);
}

Aug<Key> DynamicMcsTree::compute(ScoreContext& ctx, NodeId v) const {
  const Node& n = nodes_[v];
  auto x = Aug<Key>::element(ctx, n.key, n.value, true, kClassicFields);
  return concat(ctx, concat(ctx, aug(n.left), x, kClassicFields), aug(n.right), kClassicFields);
}

void DynamicMcsTree::pull(NodeId v) { nodes_[v].aug = compute(*ctx_, v); }

void DynamicMcsTree::set_left(NodeId v, NodeId c) {
  nodes_[v].left = c;
  if (c != kNil) nodes_[c].parent = v;
}

void DynamicMcsTree::set_right(NodeId v, NodeId c) {
  nodes_[v].right = c;
  if (c != kNil) nodes_[c].parent = v;
}

std::pair<DynamicMcsTree::NodeId, DynamicMcsTree::NodeId> DynamicMcsTree::find(const Key& key) {
  NodeId v = root_, last = kNil;
  while (v != kNil) {
    last = v;
    auto c = ctx_->key_cmp(key, nodes_[v].key);
    if (c == 0) return {v, v};
    v = c < 0 ? nodes_[v].left : nodes_[v].right;
  }
  return {kNil, last};
}

Interval<Key> DynamicMcsTree::global_best() const { return aug(root_).factor; }

Aug<Key> DynamicMcsTree::collect_below(NodeId v, const Key& bound, bool inclusive,
                                       unsigned fields, NodeId& deepest, int& depth) {
  Aug<Key> acc = nil_aug_;
  int d = depth;
  while (v != kNil) {
    ++d;
    if (d > depth) {
      depth = d;
      deepest = v;
    }
    auto c = ctx_->key_cmp(nodes_[v].key, bound);
    if (c < 0 || (inclusive && c == 0)) {
      auto chunk = concat(*ctx_, aug(nodes_[v].left), element(v), fields);
      acc = concat(*ctx_, acc, chunk, fields);
      v = nodes_[v].right;
    } else {
      v = nodes_[v].left;
    }
  }
  return acc;
}

Aug<Key> DynamicMcsTree::collect_above(NodeId v, const Key& bound, bool inclusive,
                                       unsigned fields, NodeId& deepest, int& depth) {
  Aug<Key> acc = nil_aug_;
  int d = depth;
  while (v != kNil) {
    ++d;
    if (d > depth) {
      depth = d;
      deepest = v;
    }
    auto c = ctx_->key_cmp(nodes_[v].key, bound);
    if (c > 0 || (inclusive && c == 0)) {
      auto chunk = concat(*ctx_, element(v), aug(nodes_[v].right), fields);
      acc = concat(*ctx_, chunk, acc, fields);
      v = nodes_[v].left;
    } else {
      v = nodes_[v].right;
    }
  }
  return acc;
}

Interval<Key> DynamicMcsTree::subrange_best(const Key& l, const Key& r) {
  if (r < l) throw std::invalid_argument("subrange_best: l > r");
  NodeId v = root_;
  int depth = 0;
  while (v != kNil) {
    ++depth;
    if (ctx_->key_less(nodes_[v].key, l))
      v = nodes_[v].right;
    else if (ctx_->key_less(r, nodes_[v].key))
      v = nodes_[v].left;
    else
      break;
  }
  if (v == kNil) return Interval<Key>::none(ctx_->empty());
  NodeId deepest = v;
  int d_left = depth, d_right = depth;
  NodeId deep_left = v, deep_right = v;
  auto left = collect_above(nodes_[v].left, l, true, kClassicFields, deep_left, d_left);
  auto right = collect_below(nodes_[v].right, r, true, kClassicFields, deep_right, d_right);
  deepest = d_left >= d_right ? deep_left : deep_right;
  auto mid = concat(*ctx_, left, element(v), kClassicFields);
  auto result = concat(*ctx_, mid, right, kClassicFields).factor;
  touched(deepest);
  return result;
}

Interval<Key> DynamicMcsTree::best_through(const Key& k) {
  auto [v, last] = find(k);
  if (v == kNil) throw std::out_of_range("best_through: unknown key");
  const Score value = nodes_[v].value;
  NodeId deep_b = root_, deep_a = root_;
  int d_b = 0, d_a = 0;
  auto below = collect_below(root_, k, false, kSuffix, deep_b, d_b);
  auto above = collect_above(root_, k, false, kPrefix, deep_a, d_a);
  auto mid = Interval<Key>::single(k, value, true);
  auto result = join(*ctx_, join(*ctx_, below.suffix, mid), above.prefix);
  touched(d_b >= d_a ? deep_b : deep_a);
  return result;
}

std::size_t DynamicMcsTree::height() const {
  std::size_t best_h = 0;
  std::vector<std::pair<NodeId, std::size_t>> stack;
  if (root_ != kNil) stack.push_back({root_, 1});
  while (!stack.empty()) {
    auto [v, d] = stack.back();
    stack.pop_back();
    best_h = std::max(best_h, d);
    if (nodes_[v].left != kNil) stack.push_back({nodes_[v].left, d + 1});
    if (nodes_[v].right != kNil) stack.push_back({nodes_[v].right, d + 1});
  }
  return best_h;
}

std::vector<std::pair<Key, Score>> DynamicMcsTree::items() const {
  std::vector<std::pair<Key, Score>> out;
  out.reserve(size_);
  std::vector<NodeId> stack;
  NodeId v = root_;
  while (v != kNil || !stack.empty()) {
    while (v != kNil) {
      stack.push_back(v);
      v = nodes_[v].left;
    }
    v = stack.back();
    stack.pop_back();
    out.emplace_back(nodes_[v].key, nodes_[v].value);
    v = nodes_[v].right;
  }
  return out;
}

bool DynamicMcsTree::validate() const {
  OpCounters scratch;
  ScoreContext ctx(ctx_->function(), scratch);
  if (root_ != kNil && nodes_[root_].parent != kNil) return false;
  std::size_t count = 0;
  std::vector<NodeId> stack;
  if (root_ != kNil) stack.push_back(root_);
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    ++count;
    const Node& n = nodes_[v];
    for (NodeId c : {n.left, n.right}) {
      if (c == kNil) continue;
      if (nodes_[c].parent != v) return false;
      stack.push_back(c);
    }
    if (!(n.aug == compute(ctx, v))) return false;
  }
  if (count != size_) return false;
  auto seq = items();
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (!(seq[i - 1].first < seq[i].first)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// AVL

void McsAvlTree::fix(NodeId v) {
  nodes_[v].height = 1 + std::max(h(nodes_[v].left), h(nodes_[v].right));
  pull(v);
}

McsAvlTree::NodeId McsAvlTree::rotate_right(NodeId y) {
  NodeId x = nodes_[y].left;
  set_left(y, nodes_[x].right);
  set_right(x, y);
  fix(y);
  fix(x);
  return x;
}

McsAvlTree::NodeId McsAvlTree::rotate_left(NodeId y) {
  NodeId x = nodes_[y].right;
  set_right(y, nodes_[x].left);
  set_left(x, y);
  fix(y);
  fix(x);
  return x;
}

McsAvlTree::NodeId McsAvlTree::rebalance(NodeId v) {
  const NodeId l = nodes_[v].left, r = nodes_[v].right;
  const int bf = h(l) - h(r);
  if (bf > 1) {
    if (h(nodes_[l].left) < h(nodes_[l].right)) set_left(v, rotate_left(l));
    return rotate_right(v);
  }
  if (bf < -1) {
    if (h(nodes_[r].right) < h(nodes_[r].left)) set_right(v, rotate_right(r));
    return rotate_left(v);
  }
  fix(v);
  return v;
}

McsAvlTree::NodeId McsAvlTree::insert_at(NodeId v, const Key& key, Score value) {
  if (v == kNil) {
    NodeId n = make_node(key, value);
    pull(n);
    return n;
  }
  auto c = ctx_->key_cmp(key, nodes_[v].key);
  if (c == 0) throw std::invalid_argument("McsAvlTree: duplicate key");
  if (c < 0)
    set_left(v, insert_at(nodes_[v].left, key, value));
  else
    set_right(v, insert_at(nodes_[v].right, key, value));
  return rebalance(v);
}

void McsAvlTree::insert(const Key& key, Score value) {
  root_ = insert_at(root_, key, value);
  nodes_[root_].parent = kNil;
}

McsAvlTree::NodeId McsAvlTree::erase_at(NodeId v, const Key& key) {
  if (v == kNil) throw std::out_of_range("McsAvlTree: unknown key");
  auto c = ctx_->key_cmp(key, nodes_[v].key);
  if (c < 0) {
    set_left(v, erase_at(nodes_[v].left, key));
  } else if (c > 0) {
    set_right(v, erase_at(nodes_[v].right, key));
  } else {
    const NodeId l = nodes_[v].left, r = nodes_[v].right;
    if (l == kNil || r == kNil) {
      free_node(v);
      return l == kNil ? r : l;
    }
    NodeId m = r;
    while (nodes_[m].left != kNil) m = nodes_[m].left;
    const Key succ = nodes_[m].key;
    const Score succ_value = nodes_[m].value;
    set_right(v, erase_at(r, succ));
    nodes_[v].key = succ;
    nodes_[v].value = succ_value;
  }
  return rebalance(v);
}

void McsAvlTree::erase(const Key& key) {
  root_ = erase_at(root_, key);
  if (root_ != kNil) nodes_[root_].parent = kNil;
}

McsAvlTree::NodeId McsAvlTree::update_at(NodeId v, const Key& key, Score value) {
  if (v == kNil) throw std::out_of_range("McsAvlTree: unknown key");
  auto c = ctx_->key_cmp(key, nodes_[v].key);
  if (c < 0)
    update_at(nodes_[v].left, key, value);
  else if (c > 0)
    update_at(nodes_[v].right, key, value);
  else
    nodes_[v].value = value;
  pull(v);
  return v;
}

void McsAvlTree::update_value(const Key& key, Score value) { update_at(root_, key, value); }

std::optional<Score> McsAvlTree::search(const Key& key) {
  auto [v, last] = find(key);
  if (v == kNil) return std::nullopt;
  return nodes_[v].value;
}

bool McsAvlTree::validate() const {
  if (!DynamicMcsTree::validate()) return false;
  std::vector<NodeId> stack;
  if (root_ != kNil) stack.push_back(root_);
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    const Node& n = nodes_[v];
    if (n.height != 1 + std::max(h(n.left), h(n.right))) return false;
    if (std::abs(h(n.left) - h(n.right)) > 1) return false;
    if (n.left != kNil) stack.push_back(n.left);
    if (n.right != kNil) stack.push_back(n.right);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Splay

void McsSplayTree::rotate(NodeId x) {
  const NodeId y = nodes_[x].parent;
  const NodeId z = nodes_[y].parent;
  if (nodes_[y].left == x) {
    set_left(y, nodes_[x].right);
    set_right(x, y);
  } else {
    set_right(y, nodes_[x].left);
    set_left(x, y);
  }
  nodes_[x].parent = z;
  if (z == kNil)
    root_ = x;
  else if (nodes_[z].left == y)
    nodes_[z].left = x;
  else
    nodes_[z].right = x;
  pull(y);
  pull(x);
  ++rotations_;
}

void McsSplayTree::splay(NodeId x) {
  while (nodes_[x].parent != kNil) {
    const NodeId y = nodes_[x].parent;
    const NodeId z = nodes_[y].parent;
    if (z == kNil) {
      rotate(x);
    } else if ((nodes_[y].left == x) == (nodes_[z].left == y)) {
      rotate(y);
      rotate(x);
    } else {
      rotate(x);
      rotate(x);
    }
  }
  root_ = x;
}

void McsSplayTree::insert(const Key& key, Score value) {
  if (root_ == kNil) {
    root_ = make_node(key, value);
    pull(root_);
    return;
  }
  NodeId v = root_;
  for (;;) {
    auto c = ctx_->key_cmp(key, nodes_[v].key);
    if (c == 0) {
      splay(v);
      throw std::invalid_argument("McsSplayTree: duplicate key");
    }
    NodeId next = c < 0 ? nodes_[v].left : nodes_[v].right;
    if (next == kNil) break;
    v = next;
  }
  NodeId n = make_node(key, value);
  if (ctx_->key_less(key, nodes_[v].key))
    set_left(v, n);
  else
    set_right(v, n);
  pull(n);
  splay(n);
}

std::optional<Score> McsSplayTree::search(const Key& key) {
  auto [v, last] = find(key);
  if (last != kNil) splay(last);
  if (v == kNil) return std::nullopt;
  return nodes_[v].value;
}

void McsSplayTree::update_value(const Key& key, Score value) {
  auto [v, last] = find(key);
  if (v == kNil) {
    if (last != kNil) splay(last);
    throw std::out_of_range("McsSplayTree: unknown key");
  }
  nodes_[v].value = value;
  pull(v);
  splay(v);
}

void McsSplayTree::erase(const Key& key) {
  auto [v, last] = find(key);
  if (v == kNil) {
    if (last != kNil) splay(last);
    throw std::out_of_range("McsSplayTree: unknown key");
  }
  splay(v);
  const NodeId l = nodes_[v].left, r = nodes_[v].right;
  free_node(v);
  if (l == kNil) {
    root_ = r;
    if (r != kNil) nodes_[r].parent = kNil;
    return;
  }
  nodes_[l].parent = kNil;
  root_ = l;
  NodeId m = l;
  while (nodes_[m].right != kNil) m = nodes_[m].right;
  splay(m);
  set_right(m, r);
  pull(m);
}

AccessCost splay_access_cost_probe(McsSplayTree& tree, OpCounters& tree_counters,
                                   const std::vector<AccessOp>& script) {
  const OpCounters before = tree_counters;
  const std::uint64_t rot_before = tree.rotations();
  for (const auto& op : script) {
    switch (op.kind) {
      case AccessOp::Kind::Insert: tree.insert(op.key, op.value); break;
      case AccessOp::Kind::Erase: tree.erase(op.key); break;
      case AccessOp::Kind::Search: tree.search(op.key); break;
      case AccessOp::Kind::Update: tree.update_value(op.key, op.value); break;
    }
  }
  AccessCost cost;
  cost.rotations = tree.rotations() - rot_before;
  cost.counters.coord_cmps = tree_counters.coord_cmps - before.coord_cmps;
  cost.counters.score_compositions = tree_counters.score_compositions - before.score_compositions;
  cost.counters.score_cmps = tree_counters.score_cmps - before.score_cmps;
  return cost;
}

}  // namespace optbox
