// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "optbox/diagonal.hpp"
#include "optbox/harness.hpp"
#include "optbox/mcs_dynamic.hpp"
#include "optbox/mcs_static.hpp"
#include "optbox/measures.hpp"
#include "optbox/oracle.hpp"
#include "optbox/solve.hpp"
#include "optbox/sweep.hpp"

using namespace optbox;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return num / den;
}

double entropy_of(const std::vector<std::size_t>& sizes) {
  double n = 0, h = 0;
  for (auto s : sizes) n += s;
  for (auto s : sizes)
    if (s) h -= s / n * std::log2(s / n);
  return h;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

Score fold_values(const ScoreFunction& f, const std::vector<Score>& v, std::size_t lo, std::size_t hi) {
  Score s = f.empty_score();
  for (std::size_t i = lo; i <= hi; ++i) s = f.apply(s, v[i]);
  return s;
}

// 1
Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(101);
  std::size_t checks = 0, bad = 0;
  for (int t = 0; t < 2000; ++t) {
    InstanceSpec s;
    s.seed = 5000 + t;
    s.n = 1 + rng() % 20;
    switch (t % 5) {
      case 1:
        s.kind = GenKind::Stripes;
        s.delta = 1 + rng() % std::min<std::size_t>(s.n, 6);
        s.profile = rng() % 2 ? StripeProfile::Random : StripeProfile::Equal;
        break;
      case 2:
        s.kind = GenKind::Aligned;
        s.align = static_cast<AlignMode>(rng() % 3);
        s.rho = 1 + rng() % s.n;
        break;
      case 3:
        s.kind = GenKind::DiagonalBlocks;
        s.mixed = rng() % 2;
        for (std::size_t left = s.n; left;) {
          std::size_t b = std::min<std::size_t>(left, 1 + rng() % 6);
          s.blocks.push_back(b);
          left -= b;
        }
        break;
      case 4:
        s.kind = GenKind::WindmillChain;
        s.sigma = 1 + rng() % 4;
        s.n = std::max<std::size_t>(s.n, 4 * s.sigma + 4);
        if (s.n > 20) s.sigma = 4, s.n = 20;
        break;
      default:
        break;
    }
    auto pts = generate(s);
    for (ScoreKind k : kAllScoreKinds) {
      auto f = make_score_function(k);
      const Score want = brute_best_box(pts, f).score;
      for (Algorithm a : kAllAlgorithms) {
        ++checks;
        auto r = solve(a, pts, f);
        std::vector<Point> sel;
        for (auto id : r.selection) sel.push_back(pts[id]);
        if (r.score != want || fold_score(f, sel) != want) ++bad;
      }
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(checks) + " solver runs, " + std::to_string(bad) + " mismatches";
  return o;
}

// 2
Outcome mcs_exactness() {
  Outcome o;
  std::mt19937_64 rng(202);
  std::size_t queries = 0, bad = 0;
  auto check = [&](Score got, const OracleInterval& want) {
    ++queries;
    if (got != want.score) ++bad;
  };
  for (int script = 0; script < 1000; ++script) {
    const ScoreKind kind = kAllScoreKinds[script % kAllScoreKinds.size()];
    const auto f = make_score_function(kind);
    const std::size_t universe = 1 + rng() % 64;
    auto draw = [&] {
      if (kind == ScoreKind::CountPoints) return Score(static_cast<std::int64_t>(rng() % 2));
      if (kind == ScoreKind::BoxNoRed && rng() % 4 == 0) return Score::neg_inf();
      return Score(static_cast<std::int64_t>(rng() % 21) - 10);
    };
    OpCounters c;
    ScoreContext ctx(f, c);
    StaticMcsTree st(universe, ctx);
    McsAvlTree avl(ctx);
    McsSplayTree splay(ctx);
    std::map<std::size_t, Score> live;
    for (int step = 0; step < 80; ++step) {
      const std::size_t key = rng() % universe;
      const Key k{static_cast<std::int64_t>(key), 0};
      const int op = rng() % 3;
      if (op == 0 && live.count(key)) {
        live.erase(key);
        st.deactivate_at(key);
        avl.erase(k);
        splay.erase(k);
      } else if (live.count(key)) {
        const Score v = draw();
        live[key] = v;
        st.activate_at(key, v);
        avl.update_value(k, v);
        splay.update_value(k, v);
      } else {
        const Score v = draw();
        live[key] = v;
        st.activate_at(key, v);
        avl.insert(k, v);
        splay.insert(k, v);
      }

      std::vector<Score> vals;
      std::vector<std::size_t> keys;
      for (auto& [kk, v] : live) {
        keys.push_back(kk);
        vals.push_back(v);
      }
      const auto g = brute_best_subsequence(vals, f);
      check(st.global_best().score, g);
      check(avl.global_best().score, g);
      check(splay.global_best().score, g);
      if (vals.empty()) continue;

      std::size_t l = rng() % vals.size(), r = l + rng() % (vals.size() - l);
      const Key kl{static_cast<std::int64_t>(keys[l]), 0}, kr{static_cast<std::int64_t>(keys[r]), 0};
      const auto sub = brute_subrange_best(vals, l, r, f);
      check(st.subrange_best_at(keys[l], keys[r]).score, sub);
      check(avl.subrange_best(kl, kr).score, sub);
      check(splay.subrange_best(kl, kr).score, sub);

      const std::size_t q = rng() % vals.size();
      const Key kq{static_cast<std::int64_t>(keys[q]), 0};
      const auto th = brute_best_through(vals, q, f);
      check(st.best_through_at(keys[q]).score, th);
      check(avl.best_through(kq).score, th);
      auto sb = splay.best_through(kq);
      check(sb.score, th);
      // the reported interval must realise its score
      const auto lo = std::lower_bound(keys.begin(), keys.end(), static_cast<std::size_t>(sb.lo.coord)) - keys.begin();
      const auto hi = std::lower_bound(keys.begin(), keys.end(), static_cast<std::size_t>(sb.hi.coord)) - keys.begin();
      ++queries;
      if (fold_values(f, vals, lo, hi) != sb.score) ++bad;
    }
    if (!st.validate() || !avl.validate() || !splay.validate()) ++bad;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(queries) + " queries, " + std::to_string(bad) + " mismatches";
  return o;
}

std::vector<Point> uniform(std::size_t n, std::uint64_t seed) {
  InstanceSpec s;
  s.n = n;
  s.seed = seed;
  return generate(s);
}

const ScoreFunction kSum = make_score_function(ScoreKind::SumWeights);

// 3
Outcome baseline_scaling() {
  Outcome o;
  std::vector<double> ns, cs, cs_lg;
  std::ostringstream d;
  bool bound = true;
  for (std::size_t n : {64, 128, 256, 512}) {
    const double c = static_cast<double>(solve_baseline(uniform(n, n), kSum).counters.score_compositions);
    ns.push_back(n);
    cs.push_back(c);
    cs_lg.push_back(c / std::log2(n));
    bound = bound && c <= 8.0 * n * n * std::log2(n);
    d << n << ":" << static_cast<std::uint64_t>(c) << " ";
  }
  const double s = slope(ns, cs), sl = slope(ns, cs_lg);
  o.pass = bound && (std::abs(s - 2.0) <= 0.25 || std::abs(sl - 2.0) <= 0.25);
  o.detail = d.str() + fmt("slope %.3f, slope after lg n %.3f, bound 8n^2 lg n ", s, sl) +
             (bound ? "ok" : "violated");
  return o;
}

std::vector<Point> stripe_instance(std::size_t n, std::size_t delta, std::uint64_t seed) {
  InstanceSpec s;
  s.kind = GenKind::Stripes;
  s.n = n;
  s.delta = delta;
  s.seed = seed;
  return generate(s);
}

// 4
Outcome stripes_scaling() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t delta : {2, 4}) {
    std::vector<double> ns, cs;
    for (std::size_t n : {128, 256, 512, 1024, 2048}) {
      auto pts = stripe_instance(n, delta, n + delta);
      if (stripes(pts, kSum).delta() != delta) o.pass = false;
      ns.push_back(n);
      cs.push_back(static_cast<double>(solve_stripes(pts, kSum).counters.score_compositions));
    }
    const double s = slope(ns, cs);
    o.pass = o.pass && std::abs(s - 1.0) <= 0.25;
    auto pts = stripe_instance(512, delta, 512 + delta);
    const double st = static_cast<double>(solve_stripes(pts, kSum).counters.score_compositions);
    const double bl = static_cast<double>(solve_baseline(pts, kSum).counters.score_compositions);
    o.pass = o.pass && bl >= 10 * st;
    d << fmt("delta=%.0f slope %.3f, n=512 baseline/stripes %.1fx; ", delta, s, bl / st);
  }
  o.detail = d.str();
  return o;
}

// 5
Outcome finger_scaling() {
  Outcome o;
  std::ostringstream d;
  for (AlignMode mode : {AlignMode::CoSorted, AlignMode::AntiSorted}) {
    std::vector<double> ns, cs, bs;
    double at512 = 0;
    for (std::size_t n : {64, 128, 256, 512}) {
      InstanceSpec s;
      s.kind = GenKind::Aligned;
      s.align = mode;
      s.n = n;
      s.seed = n;
      auto pts = generate(s);
      const double c = static_cast<double>(solve_finger(pts, kSum).counters.score_compositions);
      ns.push_back(n);
      cs.push_back(c);
      bs.push_back(static_cast<double>(solve_baseline(pts, kSum).counters.score_compositions));
      if (n == 512) at512 = c;
    }
    const double s = slope(ns, cs), sb = slope(ns, bs);
    o.pass = o.pass && std::abs(s - 2.0) <= 0.25 && at512 <= 8.0 * 512 * 512;
    d << (mode == AlignMode::CoSorted ? "co" : "anti")
      << fmt(" slope %.3f, n=512 count/n^2 %.2f (baseline slope %.3f); ", s, at512 / (512.0 * 512), sb);
  }
  o.detail = d.str();
  return o;
}

// 6
Outcome inv_lambda_bound() {
  Outcome o;
  std::mt19937_64 rng(606);
  std::size_t violations = 0, disagreements = 0;
  double tightest = 1e18;
  const std::size_t sizes[] = {16, 64, 256, 512};
  for (int t = 0; t < 10000; ++t) {
    const std::size_t n = sizes[t % 4];
    std::vector<std::int64_t> xs(n);
    std::iota(xs.begin(), xs.end(), 0);
    std::shuffle(xs.begin(), xs.end(), rng);
    const auto lam = local_insertion_complexity(xs);
    const auto inv = inversions(xs);
    if (n <= 64) {
      auto b = brute_measures(xs);
      if (b.lambda != lam || b.inv != inv) ++disagreements;
    }
    const double margin = static_cast<double>(inv) - (lam / 2.0 - static_cast<double>(n));
    tightest = std::min(tightest, margin);
    if (margin < 0) ++violations;
  }
  o.pass = violations == 0 && disagreements == 0;
  o.detail = std::to_string(violations) + " violations, " + std::to_string(disagreements) +
             " oracle disagreements, smallest Inv-(lambda/2-n) " + fmt("%.1f", tightest);
  return o;
}

// 7
Outcome resort_invariants() {
  Outcome o;
  std::mt19937_64 rng(707);
  std::size_t violations = 0;
  for (int t = 0; t < 1000; ++t) {
    InstanceSpec s;
    s.kind = GenKind::Stripes;
    s.n = 8 + rng() % 200;
    s.delta = 1 + rng() % std::min<std::size_t>(12, s.n);
    s.profile = rng() % 2 ? StripeProfile::Random : StripeProfile::Equal;
    s.seed = 7000 + t;
    auto pts = generate(s);
    const auto f = make_score_function(t % 2 ? ScoreKind::SumWeights : ScoreKind::Discrepancy);
    const auto sd = stripes(pts, f);
    const auto before = brute_measures(x_sequence(pts));
    const auto xs = resort_within_stripes(pts, sd);
    const auto after = brute_measures(xs);
    std::vector<std::size_t> run_lengths;
    for (std::size_t i = 0, start = 0; i < xs.size(); ++i)
      if (i + 1 == xs.size() || xs[i + 1] < xs[i]) {
        run_lengths.push_back(i + 1 - start);
        start = i + 1;
      }
    const bool ok = after.inv <= before.inv && after.rho <= sd.delta() &&
                    entropy_of(run_lengths) <= entropy_of(sd.sizes()) + 1e-9;
    if (!ok) ++violations;
  }
  o.pass = violations == 0;
  o.detail = std::to_string(violations) + " violations in 1000 instances";
  return o;
}

// 8
Outcome dtree_linear() {
  Outcome o;
  std::ostringstream d;
  for (bool mixed : {false, true}) {
    std::vector<double> ns, cs;
    double worst_cmp = 0, worst_comp = 0;
    for (std::size_t n : {256, 512, 1024, 2048, 4096}) {
      InstanceSpec s;
      s.kind = GenKind::DiagonalBlocks;
      s.n = n;
      s.mixed = mixed;
      s.seed = n;
      auto pts = generate(s);
      auto r = solve_dtree(pts, kSum, solve_baseline);
      if (r.score != solve_baseline(pts, kSum).score) o.pass = false;
      ns.push_back(n);
      cs.push_back(static_cast<double>(r.counters.score_compositions));
      worst_comp = std::max(worst_comp, r.counters.score_compositions / static_cast<double>(n));
      worst_cmp = std::max(worst_cmp, r.counters.coord_cmps / (n * std::log2(n)));
    }
    const double s = slope(ns, cs);
    o.pass = o.pass && std::abs(s - 1.0) <= 0.25 && worst_comp <= 12 && worst_cmp <= 8;
    d << (mixed ? "mixed" : "rising")
      << fmt(" slope %.3f, max comps/n %.2f (c=12), max cmps/(n lg n) %.2f (c=8); ", s, worst_comp,
             worst_cmp);
  }
  std::mt19937_64 rng(808);
  std::size_t broken = 0;
  for (int inst = 0; inst < 100; ++inst) {
    InstanceSpec s;
    s.kind = GenKind::DiagonalBlocks;
    s.mixed = true;
    s.seed = 8000 + inst;
    for (int b = 0; b < 12; ++b) s.blocks.push_back(1 + rng() % 6);
    auto pts = generate(s);
    const auto want = build_dtree(pts).leaf_partition(pts);
    for (int k = 0; k < 10; ++k) {
      std::shuffle(pts.begin(), pts.end(), rng);
      if (build_dtree(pts).leaf_partition(pts) != want) ++broken;
    }
  }
  o.pass = o.pass && broken == 0;
  d << broken << "/1000 shuffles changed the leaf partition";
  o.detail = d.str();
  return o;
}

TenBoxes ten_recursive(std::vector<Point> pts, const ScoreFunction& f, OpCounters& c) {
  auto split = try_diagonalize(pts);
  if (!split) return ten_boxes_direct(pts, f, solve_baseline, c);
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return x_key(a) < x_key(b); });
  std::vector<Point> a(pts.begin(), pts.begin() + split->k), b(pts.begin() + split->k, pts.end());
  ScoreContext ctx(f, c);
  return combine_ten(ten_recursive(a, f, c), ten_recursive(b, f, c), split->kind, ctx);
}

// 9
Outcome ten_boxes_algebra() {
  Outcome o;
  std::mt19937_64 rng(909);
  std::size_t bad = 0, instances = 0;
  while (instances < 1000) {
    InstanceSpec s;
    s.kind = GenKind::DiagonalBlocks;
    s.mixed = true;
    s.seed = 9000 + instances + 1000 * bad;
    std::size_t total = 0, cap = 2 + rng() % 23;
    while (total < cap) {
      std::size_t b = std::min<std::size_t>(cap - total, 1 + rng() % 6);
      s.blocks.push_back(b);
      total += b;
    }
    s.n = total;
    auto pts = generate(s);
    if (!try_diagonalize(pts)) continue;
    ++instances;
    const auto f = make_score_function(kAllScoreKinds[instances % kAllScoreKinds.size()]);
    OpCounters c;
    const auto merged = ten_recursive(pts, f, c);
    const auto direct = ten_boxes_direct(pts, f, solve_baseline, c);
    bool ok = merged.bbox == direct.bbox && merged.total == direct.total &&
              merged.total == fold_score(f, pts);
    for (std::size_t m = 0; m < 9 && ok; ++m) {
      Score want;
      if (m == 0) {
        want = brute_best_box(pts, f).score;
      } else {
        Constraint con;
        con.vertices = ten_member_vertices(m);
        want = brute_constrained_box(pts, f, con, 24).score;
      }
      ok = merged.member(m).score == want && direct.member(m).score == want;
      // the region must hold what it claims
      if (ok && merged.member(m).region) {
        std::vector<Point> in;
        for (const auto& p : pts)
          if (merged.member(m).region->contains(p)) in.push_back(p);
        ok = fold_score(f, in) == want;
      }
    }
    if (!ok) ++bad;
  }
  o.pass = bad == 0;
  o.detail = std::to_string(instances) + " instances, " + std::to_string(bad) + " mismatching";
  return o;
}

// 10
Outcome dstar_budget() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t sigma : {1, 2, 4}) {
    InstanceSpec s;
    s.kind = GenKind::WindmillChain;
    s.sigma = sigma;
    s.n = 256;
    s.seed = sigma;
    auto pts = generate(s);
    const auto tree = build_dstar(pts);
    auto r = solve_dstar(pts, kSum, solve_baseline);
    const double n = 256, budget = 8 * (n + sigma * n * std::log2(n));
    const bool ok = tree.sigma == sigma && r.score == solve_baseline(pts, kSum).score &&
                    r.counters.score_compositions <= budget;
    o.pass = o.pass && ok;
    d << "sigma=" << sigma << " comps " << r.counters.score_compositions << " budget "
      << static_cast<std::uint64_t>(budget) << (ok ? "; " : " FAILED; ");
  }
  std::size_t bad = 0;
  for (std::size_t sigma : {1, 2, 4})
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      InstanceSpec s;
      s.kind = GenKind::WindmillChain;
      s.sigma = sigma;
      s.n = std::min<std::size_t>(20, 4 * sigma + 4 + seed % 5);
      s.seed = seed;
      auto pts = generate(s);
      for (ScoreKind k : kAllScoreKinds) {
        auto f = make_score_function(k);
        if (solve_dstar(pts, f, solve_baseline).score != brute_best_box(pts, f).score) ++bad;
      }
    }
  o.pass = o.pass && bad == 0;
  d << bad << "/300 oracle mismatches at n<=20";
  o.detail = d.str();
  return o;
}

// 11
Outcome splay_finger() {
  Outcome o;
  const std::size_t n = std::size_t{1} << 14;
  OpCounters c;
  ScoreContext ctx(kSum, c);
  McsSplayTree seq(ctx), rnd(ctx);
  std::vector<std::int64_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1111));
  for (std::size_t i = 0; i < n; ++i) {
    seq.insert({static_cast<std::int64_t>(i), 0}, Score(1));
    rnd.insert({perm[i], 0}, Score(1));
  }
  const double lgn = std::log2(static_cast<double>(n));
  o.pass = seq.rotations() <= 4 * n && rnd.rotations() > 0.5 * n * lgn;
  o.detail = "sequential " + std::to_string(seq.rotations()) + " (limit " + std::to_string(4 * n) +
             "), random " + std::to_string(rnd.rotations()) + " (must exceed " +
             std::to_string(static_cast<std::uint64_t>(0.5 * n * lgn)) + ")";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle equivalence, 2000 instances, all solvers and score functions", oracle_equivalence},
      {"MCS trees exact under 1000 mutation scripts", mcs_exactness},
      {"baseline compositions slope 2.0+-0.25 (lg n allowed), <= 8 n^2 lg n", baseline_scaling},
      {"stripes compositions slope 1.0+-0.25, >= 10x below baseline at n=512", stripes_scaling},
      {"finger on aligned input slope 2.0+-0.25, <= 8 n^2 at n=512", finger_scaling},
      {"Inv >= lambda/2 - n on 10000 permutations", inv_lambda_bound},
      {"re-sorting within stripes keeps Inv, rho, run entropy bounded", resort_invariants},
      {"D-tree linear compositions, n lg n comparisons, leaf invariance", dtree_linear},
      {"ten-box combination exact on 1000 diagonalizable sets", ten_boxes_algebra},
      {"D*-tree within 8(n + sigma n lg n) and oracle-exact", dstar_budget},
      {"splay insertion: sequential <= 4n rotations, random > 0.5 n lg n", splay_finger},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %s: %s [%s] (%.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
