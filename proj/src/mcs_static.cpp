#include "optbox/mcs_static.hpp"

#include <bit>
#include <stdexcept>

namespace optbox {

StaticMcsTree::StaticMcsTree(std::vector<Key> keys, ScoreContext& ctx, unsigned fields)
    : ctx_(&ctx), fields_(fields), keys_(std::move(keys)) {
  if (keys_.empty()) throw std::invalid_argument("StaticMcsTree: empty key sequence");
  for (std::size_t i = 1; i < keys_.size(); ++i)
    if (!(keys_[i - 1] < keys_[i]))
      throw std::invalid_argument("StaticMcsTree: keys must be strictly increasing");
  n_ = keys_.size();
  init();
}

StaticMcsTree::StaticMcsTree(std::size_t leaves, ScoreContext& ctx, unsigned fields)
    : ctx_(&ctx), fields_(fields) {
  if (leaves == 0) throw std::invalid_argument("StaticMcsTree: empty key sequence");
  n_ = leaves;
  keys_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) keys_.push_back(Key{static_cast<std::int64_t>(i), 0});
  init();
}

void StaticMcsTree::init() {
  cap_ = std::bit_ceil(n_);
  height_ = static_cast<std::size_t>(std::countr_zero(cap_));
  values_.assign(n_, ctx_->empty());
  active_.assign(n_, false);
  nodes_.assign(2 * cap_, Aug<Pos>::identity(ctx_->empty()));
  reset();
}

void StaticMcsTree::reset() {
  const Score e = ctx_->empty();
  std::fill(values_.begin(), values_.end(), e);
  std::fill(active_.begin(), active_.end(), false);
  for (Pos i = 0; i < cap_; ++i)
    nodes_[cap_ + i] = i < n_ ? Aug<Pos>::vacant_run(i, i, e) : Aug<Pos>::identity(e);
  // Known closed form for all-vacant subtrees; no compositions needed.
  for (Pos v = cap_ - 1; v >= 1; --v) {
    const auto& a = nodes_[2 * v];
    const auto& b = nodes_[2 * v + 1];
    if (a.full.empty)
      nodes_[v] = Aug<Pos>::identity(e);
    else if (b.full.empty)
      nodes_[v] = a;
    else
      nodes_[v] = Aug<Pos>::vacant_run(a.full.lo, b.full.hi, e);
  }
}

StaticMcsTree::Pos StaticMcsTree::position(const Key& key) {
  Pos lo = 0, hi = n_;
  while (lo < hi) {
    Pos mid = lo + (hi - lo) / 2;
    if (ctx_->key_less(keys_[mid], key))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == n_ || keys_[lo] != key) throw std::out_of_range("StaticMcsTree: unknown key");
  return lo;
}

Aug<StaticMcsTree::Pos> StaticMcsTree::leaf_aug(ScoreContext& ctx, Pos leaf) const {
  return Aug<Pos>::element(ctx, leaf, values_[leaf], active_[leaf], fields_);
}

void StaticMcsTree::refresh_path(Pos leaf) {
  Pos v = cap_ + leaf;
  nodes_[v] = leaf_aug(*ctx_, leaf);
  for (v >>= 1; v >= 1; v >>= 1) nodes_[v] = concat(*ctx_, nodes_[2 * v], nodes_[2 * v + 1], fields_);
}

void StaticMcsTree::activate_at(Pos leaf, Score value) {
  if (leaf >= n_) throw std::out_of_range("StaticMcsTree: leaf out of range");
  values_[leaf] = value;
  active_[leaf] = true;
  refresh_path(leaf);
}

void StaticMcsTree::deactivate_at(Pos leaf) {
  if (leaf >= n_) throw std::out_of_range("StaticMcsTree: leaf out of range");
  values_[leaf] = ctx_->empty();
  active_[leaf] = false;
  refresh_path(leaf);
}

Aug<StaticMcsTree::Pos> StaticMcsTree::range(Pos l, Pos r) {
  const Score e = ctx_->empty();
  if (l > r || r >= n_) throw std::invalid_argument("StaticMcsTree: bad range");
  Aug<Pos> left = Aug<Pos>::identity(e);
  Aug<Pos> right = Aug<Pos>::identity(e);
  for (l += cap_, r += cap_ + 1; l < r; l >>= 1, r >>= 1) {
    if (l & 1) left = concat(*ctx_, left, nodes_[l++], fields_);
    if (r & 1) right = concat(*ctx_, nodes_[--r], right, fields_);
  }
  return concat(*ctx_, left, right, fields_);
}

Interval<StaticMcsTree::Pos> StaticMcsTree::subrange_best(const Key& l, const Key& r) {
  if (r < l) throw std::invalid_argument("StaticMcsTree: l > r");
  return subrange_best_at(position(l), position(r));
}

Interval<StaticMcsTree::Pos> StaticMcsTree::subrange_best_at(Pos l, Pos r) {
  return range(l, r).factor;
}

Interval<StaticMcsTree::Pos> StaticMcsTree::best_through_at(Pos k) {
  if (k >= n_) throw std::out_of_range("StaticMcsTree: leaf out of range");
  const Score e = ctx_->empty();
  auto mid = Interval<Pos>::single(k, values_[k], active_[k]);
  auto before = k > 0 ? range(0, k - 1).suffix : Interval<Pos>::none(e);
  auto after = k + 1 < n_ ? range(k + 1, n_ - 1).prefix : Interval<Pos>::none(e);
  return join(*ctx_, join(*ctx_, before, mid), after);
}

bool StaticMcsTree::validate() const {
  OpCounters scratch;
  ScoreContext ctx(ctx_->function(), scratch);
  for (Pos i = 0; i < cap_; ++i) {
    auto expect = i < n_ ? leaf_aug(ctx, i) : Aug<Pos>::identity(ctx.empty());
    if (!(nodes_[cap_ + i] == expect)) return false;
  }
  for (Pos v = cap_ - 1; v >= 1; --v)
    if (!(nodes_[v] == concat(ctx, nodes_[2 * v], nodes_[2 * v + 1], fields_))) return false;
  return true;
}

}  // namespace optbox
