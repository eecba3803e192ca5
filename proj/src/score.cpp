#include "optbox/score.hpp"

#include <algorithm>

namespace optbox {

std::string to_string(Score s) {
  return s.is_neg_inf() ? std::string("-inf") : std::to_string(s.value());
}

Score saturating_add(Score a, Score b) {
  if (a.is_neg_inf() || b.is_neg_inf()) return Score::neg_inf();
  std::int64_t out = 0;
  if (__builtin_add_overflow(a.value(), b.value(), &out)) {
    // Clamp one above the sentinel on the low side.
    return a.value() > 0 ? Score(std::numeric_limits<std::int64_t>::max())
                         : Score(std::numeric_limits<std::int64_t>::min() + 1);
  }
  if (Score(out).is_neg_inf()) return Score(out + 1);
  return Score(out);
}

std::string_view name(ScoreKind kind) {
  switch (kind) {
    case ScoreKind::SumWeights: return "sum";
    case ScoreKind::CountPoints: return "count";
    case ScoreKind::Discrepancy: return "discrepancy";
    case ScoreKind::BoxNoRed: return "boxnored";
    case ScoreKind::MaxWeight: return "maxweight";
  }
  return "?";
}

std::optional<ScoreKind> parse_score_kind(std::string_view text) {
  for (ScoreKind k : kAllScoreKinds)
    if (name(k) == text) return k;
  return std::nullopt;
}

Score ScoreFunction::empty_score() const {
  return kind_ == ScoreKind::MaxWeight ? Score::neg_inf() : Score(0);
}

Score ScoreFunction::point_score(const Point& p) const {
  switch (kind_) {
    case ScoreKind::SumWeights: return Score(p.weight);
    case ScoreKind::CountPoints: return Score(1);
    case ScoreKind::Discrepancy: return Score(p.color == Color::Blue ? 1 : -1);
    case ScoreKind::BoxNoRed: return p.color == Color::Blue ? Score(1) : Score::neg_inf();
    case ScoreKind::MaxWeight: return Score(p.weight);
  }
  return Score(0);
}

Score ScoreFunction::apply(Score a, Score b) const {
  if (kind_ == ScoreKind::MaxWeight) return std::max(a, b);
  return saturating_add(a, b);
}

ScoreFunction make_score_function(ScoreKind kind) { return ScoreFunction(kind); }

Sign classify_sign(const ScoreFunction& f, const Point& p) {
  return f.point_score(p) > f.empty_score() ? Sign::Positive : Sign::Negative;
}

Score compose(const ScoreFunction& f, Score a, Score b, OpCounters& ctr) {
  ++ctr.score_compositions;
  return f.apply(a, b);
}

}  // namespace optbox
