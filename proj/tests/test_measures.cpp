#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "optbox/harness.hpp"
#include "optbox/measures.hpp"
#include "optbox/oracle.hpp"

using namespace optbox;

namespace {

const ScoreFunction kSum = make_score_function(ScoreKind::SumWeights);

std::vector<Point> signed_column(const std::vector<int>& signs) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < signs.size(); ++i)
    pts.push_back({static_cast<std::int64_t>(signs.size() - i), static_cast<std::int64_t>(i), signs[i],
                   Color::Blue, static_cast<std::uint32_t>(i)});
  return pts;
}

}  // namespace

TEST_CASE("stripes") {
  CHECK(stripes(signed_column({1, 2, 3}), kSum).delta() == 1);
  auto d = stripes(signed_column({1, 1, -1, -1, 1}), kSum);
  CHECK(d.delta() == 3);
  CHECK(d.sizes() == std::vector<std::size_t>{2, 2, 1});
  CHECK(d.candidate_tops == std::vector<std::uint32_t>{1, 4});
  CHECK(d.candidate_bottoms == std::vector<std::uint32_t>{0, 4});
  CHECK_THROWS(stripes(std::vector<Point>{}, kSum));
  // weight 0 is negative
  CHECK(stripes(signed_column({1, 0, 1}), kSum).delta() == 3);
}

TEST_CASE("stripe count bound over random sign strings") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 60;
    std::vector<int> s(n);
    std::size_t p = 0;
    for (auto& v : s) {
      v = rng() % 3 == 0 ? 1 : -1;
      p += v > 0;
    }
    const auto d = stripes(signed_column(s), kSum).delta();
    REQUIRE(d <= 1 + 2 * std::min(p, n - p));
  }
}

TEST_CASE("local insertion complexity") {
  const std::vector<std::int64_t> up{1, 2, 3, 4, 5}, down{5, 4, 3, 2, 1}, pi{3, 2, 4, 1, 5};
  CHECK(local_insertion_complexity(up) == 4);
  CHECK(local_insertion_complexity(down) == 0);
  CHECK(local_insertion_complexity(pi) == 8);
  CHECK(insertion_ranks(pi) == std::vector<std::uint64_t>{1, 1, 3, 1, 5});
  CHECK(final_position_walk(pi) >= local_insertion_complexity(pi));
  CHECK_THROWS(local_insertion_complexity(std::vector<std::int64_t>{1, 1}));
}

TEST_CASE("inversions and runs") {
  const std::vector<std::int64_t> up{1, 2, 3, 4, 5}, down{5, 4, 3, 2, 1}, pi{3, 2, 4, 1, 5};
  CHECK(inversions(up) == 0);
  CHECK(inversions(down) == 10);
  CHECK(inversions(pi) == 4);
  CHECK(runs(up).count == 1);
  CHECK(runs(down).count == 5);
  CHECK(runs(pi).lengths == std::vector<std::size_t>{1, 2, 2});
}

TEST_CASE("efficient measures agree with the definitional scan") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::int64_t> xs(1 + rng() % 80);
    std::iota(xs.begin(), xs.end(), 0);
    std::shuffle(xs.begin(), xs.end(), rng);
    auto o = brute_measures(xs);
    REQUIRE(o.lambda == local_insertion_complexity(xs));
    REQUIRE(o.inv == inversions(xs));
    REQUIRE(o.rho == runs(xs).count);
  }
}

TEST_CASE("entropy") {
  CHECK(entropy(std::vector<std::size_t>{5}) == doctest::Approx(0));
  CHECK(entropy(std::vector<std::size_t>{2, 2, 2, 2}) == doctest::Approx(2));
  const std::vector<std::size_t> uneven{1, 3, 4};
  CHECK(entropy(uneven) < std::log2(3.0));
}

TEST_CASE("resort within stripes") {
  InstanceSpec s;
  s.kind = GenKind::Stripes;
  s.n = 30;
  s.delta = 1;
  auto pts = generate(s);
  auto d = stripes(pts, kSum);
  CHECK(runs(resort_within_stripes(pts, d)).count == 1);

  auto single = signed_column({1, -1, 1, -1});
  auto ds = stripes(single, kSum);
  CHECK(resort_within_stripes(single, ds) == x_sequence(single));

  std::mt19937_64 rng(4);
  for (int t = 0; t < 1000; ++t) {
    s.seed = t;
    s.n = 8 + rng() % 100;
    s.delta = 1 + rng() % std::min<std::size_t>(s.n, 12);
    s.profile = t % 2 ? StripeProfile::Random : StripeProfile::Equal;
    pts = generate(s);
    d = stripes(pts, kSum);
    const auto xs = x_sequence(pts);
    const auto x2 = resort_within_stripes(pts, d);
    REQUIRE(inversions(x2) <= inversions(xs));
    REQUIRE(runs(x2).count <= d.delta());
  }
}

TEST_CASE("measure report") {
  std::vector<Point> pts;
  const std::vector<std::int64_t> xs{3, 2, 4, 1, 5};
  for (std::size_t i = 0; i < xs.size(); ++i)
    pts.push_back({xs[i], static_cast<std::int64_t>(i + 1), 1, Color::Blue, static_cast<std::uint32_t>(i)});
  auto m = measure(pts, kSum);
  CHECK(m.lambda == 8);
  CHECK(m.inv == 4);
  CHECK(m.rho == 3);
  CHECK(m.delta == 1);
  CHECK(m.rho_resorted == 1);
}
