#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "optbox/diagonal.hpp"
#include "optbox/harness.hpp"
#include "optbox/measures.hpp"
#include "optbox/oracle.hpp"
#include "optbox/solve.hpp"

using namespace optbox;
using nlohmann::json;

namespace {

json score_json(Score s) {
  if (s.is_neg_inf()) return "-inf";
  return s.value();
}

json counters_json(const OpCounters& c) {
  return {{"coord_cmps", c.coord_cmps},
          {"score_compositions", c.score_compositions},
          {"score_cmps", c.score_cmps}};
}

json result_json(const BoxResult& r) {
  json j;
  j["score"] = score_json(r.score);
  if (r.box)
    j["box"] = {{"xlo", r.box->xlo}, {"xhi", r.box->xhi}, {"ylo", r.box->ylo}, {"yhi", r.box->yhi}};
  else
    j["box"] = nullptr;
  j["selection"] = r.selection;
  j["counters"] = counters_json(r.counters);
  return j;
}

ScoreKind score_kind(const std::string& s) {
  auto k = parse_score_kind(s);
  if (!k) throw CLI::ValidationError("--score", "unknown score function '" + s + "'");
  return *k;
}

Algorithm algorithm(const std::string& s) {
  auto a = parse_algorithm(s);
  if (!a) throw CLI::ValidationError("--algo", "unknown algorithm '" + s + "'");
  return *a;
}

std::vector<Algorithm> algorithm_list(const std::string& s) {
  if (s == "all") return {kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::vector<Algorithm> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(algorithm(item));
  return out;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write '" + out + "'");
  f << text;
}

struct GenOptions {
  std::string kind = "uniform_random";
  std::string profile = "equal";
  std::string align = "co_sorted";
  std::vector<std::size_t> blocks;
  InstanceSpec spec;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "uniform_random|stripes|aligned|diagonal_blocks|windmill_chain");
    app->add_option("--delta", spec.delta, "stripe count");
    app->add_option("--profile", profile, "stripe sizes: equal|random");
    app->add_option("--align", align, "co_sorted|anti_sorted|runs");
    app->add_option("--rho", spec.rho, "run count for --align runs");
    app->add_option("--blocks", blocks, "diagonal block sizes")->delimiter(',');
    app->add_flag("--mixed", spec.mixed, "random bottom-up/top-down block placement");
    app->add_option("--sigma", spec.sigma, "windmill count");
    app->add_option("--wmin", spec.wmin);
    app->add_option("--wmax", spec.wmax);
    app->add_option("--red", spec.red_fraction, "probability of a red point");
  }

  InstanceSpec resolve(std::size_t n, std::uint64_t seed) const {
    InstanceSpec s = spec;
    s.kind = parse_gen_kind(kind);
    s.n = n;
    s.seed = seed;
    s.blocks = blocks;
    if (profile == "random")
      s.profile = StripeProfile::Random;
    else if (profile != "equal")
      throw CLI::ValidationError("--profile", "expected equal or random");
    if (align == "anti_sorted")
      s.align = AlignMode::AntiSorted;
    else if (align == "runs")
      s.align = AlignMode::Runs;
    else if (align != "co_sorted")
      throw CLI::ValidationError("--align", "expected co_sorted, anti_sorted or runs");
    return s;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal planar boxes over monotone decomposable score functions"};
  app.require_subcommand(1);

  std::string out, format = "csv", score = "sum", algo = "baseline", inner = "baseline", input;
  std::int64_t scale = 1;
  std::uint64_t seed = 1;
  std::size_t n = 16;

  auto* gen = app.add_subcommand("gen", "generate an instance");
  GenOptions gopt;
  gopt.add(gen);
  gen->add_option("--n", n);
  gen->add_option("--seed", seed);
  gen->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  gen->add_option("--out", out);

  auto* solve_cmd = app.add_subcommand("solve", "solve an instance, JSON out");
  solve_cmd->add_option("input", input, "point file (.csv or .json)")->required();
  solve_cmd->add_option("--algo", algo);
  solve_cmd->add_option("--inner", inner, "sweep used at dtree/dstar leaves");
  solve_cmd->add_option("--score", score);
  solve_cmd->add_option("--scale", scale, "fixed-point scale for decimal input");
  solve_cmd->add_option("--out", out);

  auto* measure_cmd = app.add_subcommand("measure", "adaptivity measures, JSON out");
  measure_cmd->add_option("input", input)->required();
  measure_cmd->add_option("--score", score);
  measure_cmd->add_option("--scale", scale);
  measure_cmd->add_option("--out", out);

  std::string algos = "all", scores = "all";
  std::size_t trials = 200;
  auto* verify = app.add_subcommand("verify", "solvers against the brute-force oracle");
  verify->add_option("--algos", algos);
  verify->add_option("--score", scores);
  verify->add_option("--n", n, "largest instance size");
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);

  std::vector<std::size_t> ns{64, 128, 256, 512};
  auto* bench = app.add_subcommand("bench", "operation counts over n, CSV out");
  GenOptions bopt;
  bopt.add(bench);
  bench->add_option("--algos", algos);
  bench->add_option("--ns", ns)->delimiter(',');
  bench->add_option("--seed", seed);
  bench->add_option("--score", score);
  bench->add_option("--inner", inner);
  bench->add_option("--out", out);

  bool dtree = false;
  auto* analyze = app.add_subcommand("analyze", "structure of an instance, JSON out");
  analyze->add_flag("--dtree", dtree, "D-tree leaf partition and the D*-tree peel count");
  analyze->add_option("input", input)->required();
  analyze->add_option("--scale", scale);
  analyze->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      auto pts = generate(gopt.resolve(n, seed));
      std::ostringstream ss;
      if (format == "json")
        write_points_json(ss, pts);
      else
        write_points_csv(ss, pts);
      emit(out, ss.str());
    } else if (*solve_cmd) {
      auto pts = read_points_file(input, scale);
      auto f = make_score_function(score_kind(score));
      const Algorithm a = algorithm(algo);
      auto r = solve(a, pts, f, algorithm(inner));
      json j = result_json(r);
      j["algo"] = name(a);
      j["score_function"] = name(f.kind());
      emit(out, j.dump(2) + "\n");
    } else if (*measure_cmd) {
      auto pts = read_points_file(input, scale);
      auto m = measure(pts, make_score_function(score_kind(score)));
      json j = {{"n", m.n},
                {"delta", m.delta},
                {"stripe_sizes", m.stripe_sizes},
                {"stripe_entropy", m.stripe_entropy},
                {"lambda", m.lambda},
                {"lambda_walk", m.lambda_walk},
                {"inv", m.inv},
                {"rho", m.rho},
                {"run_lengths", m.run_lengths},
                {"run_entropy", m.run_entropy},
                {"resorted",
                 {{"lambda", m.lambda_resorted},
                  {"inv", m.inv_resorted},
                  {"rho", m.rho_resorted},
                  {"run_entropy", m.run_entropy_resorted}}}};
      emit(out, j.dump(2) + "\n");
    } else if (*verify) {
      std::vector<ScoreKind> kinds;
      if (scores == "all")
        kinds.assign(kAllScoreKinds.begin(), kAllScoreKinds.end());
      else
        kinds.push_back(score_kind(scores));
      const auto list = algorithm_list(algos);
      if (n < 1 || n > kOracleCap) throw CLI::ValidationError("--n", "must be in 1..24");
      std::size_t mismatches = 0, checks = 0;
      for (std::size_t t = 0; t < trials; ++t) {
        InstanceSpec s;
        s.seed = seed * 1000003 + t;
        s.n = 1 + t % n;
        auto pts = generate(s);
        for (ScoreKind k : kinds) {
          auto f = make_score_function(k);
          const Score want = brute_best_box(pts, f).score;
          for (Algorithm a : list) {
            ++checks;
            auto r = solve(a, pts, f);
            if (r.score != want || fold_score(f, [&] {
                  std::vector<Point> sel;
                  for (auto id : r.selection) sel.push_back(pts[id]);
                  return sel;
                }()) != r.score) {
              ++mismatches;
              std::cerr << "mismatch: trial " << t << " n=" << pts.size() << " algo=" << name(a)
                        << " score=" << name(k) << " got " << to_string(r.score) << " want "
                        << to_string(want) << "\n";
            }
          }
        }
      }
      std::cout << checks << " checks, " << mismatches << " mismatches\n";
      return mismatches == 0 ? 0 : 1;
    } else if (*bench) {
      auto f = make_score_function(score_kind(score));
      const auto list = algorithm_list(algos);
      std::ostringstream ss;
      ss << "n,algo,coord_cmps,score_compositions,score_cmps,wall_ns\n";
      for (std::size_t size : ns) {
        auto pts = generate(bopt.resolve(size, seed));
        for (Algorithm a : list) {
          const auto t0 = std::chrono::steady_clock::now();
          auto r = solve(a, pts, f, algorithm(inner));
          const auto ns_taken = std::chrono::duration_cast<std::chrono::nanoseconds>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
          ss << size << ',' << name(a) << ',' << r.counters.coord_cmps << ','
             << r.counters.score_compositions << ',' << r.counters.score_cmps << ',' << ns_taken
             << '\n';
        }
      }
      emit(out, ss.str());
    } else if (*analyze) {
      if (!dtree) throw CLI::ValidationError("analyze", "choose an analysis (--dtree)");
      auto pts = read_points_file(input, scale);
      OpCounters c1, c2;
      auto t = build_dtree(pts, &c1);
      auto s = build_dstar(pts, &c2);
      json j = {{"n", pts.size()},
                {"leaves", t.leaf_partition(pts)},
                {"sigma", s.sigma},
                {"dstar_leaves", s.leaf_partition(pts)},
                {"build_counters", counters_json(c1)}};
      emit(out, j.dump(2) + "\n");
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
