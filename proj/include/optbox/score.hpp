#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace optbox {

// Totally ordered score value. Exact 64-bit integer, plus a NEG_INF
// sentinel that sits below every finite value.
class Score {
 public:
  constexpr Score() = default;
  constexpr explicit Score(std::int64_t v) : value_(v) {}

  static constexpr Score neg_inf() { return Score(kNegInf); }
  constexpr bool is_neg_inf() const { return value_ == kNegInf; }
  constexpr std::int64_t value() const { return value_; }

  friend constexpr auto operator<=>(Score, Score) = default;

 private:
  static constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min();
  std::int64_t value_ = 0;
};

std::string to_string(Score s);

// Saturating addition: NEG_INF absorbs, finite overflow clamps.
Score saturating_add(Score a, Score b);

enum class Color : std::uint8_t { Blue, Red };

struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t weight = 0;
  Color color = Color::Blue;
  std::uint32_t id = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

// Search key along one axis. The id breaks coordinate ties, which puts any
// input into general position.
struct Key {
  std::int64_t coord = 0;
  std::uint32_t id = 0;

  friend constexpr auto operator<=>(const Key&, const Key&) = default;
};

inline Key x_key(const Point& p) { return {p.x, p.id}; }
inline Key y_key(const Point& p) { return {p.y, p.id}; }

struct OpCounters {
  std::uint64_t coord_cmps = 0;
  std::uint64_t score_compositions = 0;
  std::uint64_t score_cmps = 0;

  OpCounters& operator+=(const OpCounters& o) {
    coord_cmps += o.coord_cmps;
    score_compositions += o.score_compositions;
    score_cmps += o.score_cmps;
    return *this;
  }
  friend bool operator==(const OpCounters&, const OpCounters&) = default;
};

enum class ScoreKind { SumWeights, CountPoints, Discrepancy, BoxNoRed, MaxWeight };

inline constexpr std::array kAllScoreKinds = {ScoreKind::SumWeights, ScoreKind::CountPoints,
                                              ScoreKind::Discrepancy, ScoreKind::BoxNoRed,
                                              ScoreKind::MaxWeight};

std::string_view name(ScoreKind kind);
std::optional<ScoreKind> parse_score_kind(std::string_view text);

// A monotone decomposable score function: f(empty), f(p) and the
// composition g. g is commutative, associative, monotone nondecreasing in
// both arguments, and has f(empty) as identity.
class ScoreFunction {
 public:
  explicit ScoreFunction(ScoreKind kind) : kind_(kind) {}

  ScoreKind kind() const { return kind_; }
  Score empty_score() const;
  Score point_score(const Point& p) const;

  // Raw g, not metered. Algorithms go through ScoreContext::compose.
  Score apply(Score a, Score b) const;

 private:
  ScoreKind kind_;
};

ScoreFunction make_score_function(ScoreKind kind);

enum class Sign { Positive, Negative };

// Positive iff f(p) > f(empty); ties are negative.
Sign classify_sign(const ScoreFunction& f, const Point& p);

// g(a, b), charging one composition to ctr.
Score compose(const ScoreFunction& f, Score a, Score b, OpCounters& ctr);

// Score function bound to the counters of one run.
class ScoreContext {
 public:
  ScoreContext(const ScoreFunction& f, OpCounters& ctr) : f_(f), ctr_(&ctr) {}

  const ScoreFunction& function() const { return f_; }
  OpCounters& counters() const { return *ctr_; }

  Score empty() const { return f_.empty_score(); }
  Score value(const Point& p) const { return f_.point_score(p); }

  Score compose(Score a, Score b) {
    ++ctr_->score_compositions;
    return f_.apply(a, b);
  }
  bool greater(Score a, Score b) {
    ++ctr_->score_cmps;
    return a > b;
  }
  bool key_less(const Key& a, const Key& b) {
    ++ctr_->coord_cmps;
    return a < b;
  }
  std::strong_ordering key_cmp(const Key& a, const Key& b) {
    ++ctr_->coord_cmps;
    return a <=> b;
  }

 private:
  ScoreFunction f_;
  OpCounters* ctr_;
};

}  // namespace optbox
