#include "optbox/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace optbox {

namespace {

using Rng = std::mt19937_64;

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

void random_payload(Rng& rng, const InstanceSpec& s, Point& p) {
  p.weight = uniform(rng, s.wmin, s.wmax);
  p.color = std::bernoulli_distribution(s.red_fraction)(rng) ? Color::Red : Color::Blue;
}

// Positive under every shipped score function, or negative under all of
// those that can be negative.
void signed_payload(Rng& rng, const InstanceSpec& s, Point& p, bool positive) {
  if (positive) {
    p.weight = uniform(rng, 1, std::max<std::int64_t>(1, s.wmax));
    p.color = Color::Blue;
  } else {
    p.weight = uniform(rng, std::min<std::int64_t>(-1, s.wmin), 0);
    p.color = Color::Red;
  }
}

std::vector<std::int64_t> permutation(Rng& rng, std::size_t n) {
  std::vector<std::int64_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

std::vector<std::size_t> split_sizes(Rng& rng, std::size_t n, std::size_t parts, StripeProfile prof) {
  std::vector<std::size_t> sizes(parts, 1);
  if (prof == StripeProfile::Equal) {
    for (std::size_t i = 0; i < parts; ++i) sizes[i] = n / parts + (i < n % parts ? 1 : 0);
    return sizes;
  }
  for (std::size_t k = parts; k < n; ++k) ++sizes[uniform(rng, 0, static_cast<std::int64_t>(parts) - 1)];
  return sizes;
}

std::vector<Point> uniform_random(Rng& rng, const InstanceSpec& s) {
  auto xs = permutation(rng, s.n), ys = permutation(rng, s.n);
  std::vector<Point> pts(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    pts[i].x = xs[i];
    pts[i].y = ys[i];
    random_payload(rng, s, pts[i]);
  }
  return pts;
}

std::vector<Point> stripe_instance(Rng& rng, const InstanceSpec& s) {
  if (s.delta == 0 || s.delta > s.n) throw std::invalid_argument("stripes: need 1 <= delta <= n");
  auto sizes = split_sizes(rng, s.n, s.delta, s.profile);
  auto xs = permutation(rng, s.n);
  std::vector<Point> pts;
  std::int64_t y = static_cast<std::int64_t>(s.n);
  for (std::size_t k = 0; k < s.delta; ++k) {  // top stripe first, positive
    for (std::size_t i = 0; i < sizes[k]; ++i) {
      Point p;
      p.y = --y;
      p.x = xs[pts.size()];
      signed_payload(rng, s, p, k % 2 == 0);
      pts.push_back(p);
    }
  }
  return pts;
}

std::vector<Point> aligned_instance(Rng& rng, const InstanceSpec& s) {
  std::vector<std::int64_t> xs(s.n);
  std::iota(xs.begin(), xs.end(), 0);
  if (s.align == AlignMode::AntiSorted) {
    std::reverse(xs.begin(), xs.end());
  } else if (s.align == AlignMode::Runs) {
    if (s.rho == 0 || s.rho > s.n) throw std::invalid_argument("aligned: need 1 <= rho <= n");
    // rho blocks of values, highest block first, each ascending.
    auto sizes = split_sizes(rng, s.n, s.rho, StripeProfile::Equal);
    xs.clear();
    std::int64_t hi = static_cast<std::int64_t>(s.n);
    for (std::size_t size : sizes) {
      const std::int64_t lo = hi - static_cast<std::int64_t>(size);
      for (std::int64_t v = lo; v < hi; ++v) xs.push_back(v);
      hi = lo;
    }
  }
  std::vector<Point> pts(s.n);
  for (std::size_t i = 0; i < s.n; ++i) {
    pts[i].x = xs[i];
    pts[i].y = static_cast<std::int64_t>(i);
    random_payload(rng, s, pts[i]);
  }
  return pts;
}

void place_blocks(Rng& rng, const std::vector<std::size_t>& sizes, std::size_t l, std::size_t r,
                  std::int64_t ybase, bool mixed, std::vector<std::int64_t>& yoff) {
  if (r - l == 1) {
    yoff[l] = ybase;
    return;
  }
  const std::size_t k = mixed ? static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(r - l) - 1)) + l
                              : l + 1;
  std::int64_t left = 0, right = 0;
  for (std::size_t i = l; i < k; ++i) left += static_cast<std::int64_t>(sizes[i]);
  for (std::size_t i = k; i < r; ++i) right += static_cast<std::int64_t>(sizes[i]);
  const bool bottom_up = !mixed || std::bernoulli_distribution(0.5)(rng);
  place_blocks(rng, sizes, l, k, bottom_up ? ybase : ybase + right, mixed, yoff);
  place_blocks(rng, sizes, k, r, bottom_up ? ybase + left : ybase, mixed, yoff);
}

std::vector<Point> diagonal_blocks(Rng& rng, const InstanceSpec& s) {
  std::vector<std::size_t> sizes = s.blocks;
  if (sizes.empty()) sizes.assign(s.n, 1);
  const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
  if (std::find(sizes.begin(), sizes.end(), 0u) != sizes.end() || total == 0)
    throw std::invalid_argument("diagonal_blocks: block sizes must be positive");
  std::vector<std::int64_t> yoff(sizes.size());
  place_blocks(rng, sizes, 0, sizes.size(), 0, s.mixed, yoff);
  std::vector<Point> pts;
  std::int64_t x = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    auto inner = permutation(rng, sizes[b]);
    for (std::size_t i = 0; i < sizes[b]; ++i) {
      Point p;
      p.x = x++;
      p.y = yoff[b] + inner[i];
      random_payload(rng, s, p);
      pts.push_back(p);
    }
  }
  return pts;
}

std::vector<Point> windmill_chain(Rng& rng, const InstanceSpec& s) {
  if (s.n < 4 * s.sigma) throw std::invalid_argument("windmill_chain: need n >= 4*sigma");
  const auto n = static_cast<std::int64_t>(s.n);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < s.sigma; ++i) {
    const std::int64_t r = 4 * n * static_cast<std::int64_t>(s.sigma - i);
    const std::int64_t a = r / 2 + 1;
    for (auto [x, y] : {std::pair{-r, -a}, std::pair{-a, r}, std::pair{r, a}, std::pair{a, -r}}) {
      Point p;
      p.x = x;
      p.y = y;
      random_payload(rng, s, p);
      pts.push_back(p);
    }
  }
  const auto inner = static_cast<std::int64_t>(s.n - 4 * s.sigma);
  for (std::int64_t j = 0; j < inner; ++j) {
    Point p;
    p.x = p.y = j - inner / 2;
    random_payload(rng, s, p);
    pts.push_back(p);
  }
  return pts;
}

Color parse_color(std::string t) {
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "blue" || t == "b" || t == "0" || t.empty()) return Color::Blue;
  if (t == "red" || t == "r" || t == "1") return Color::Red;
  throw std::invalid_argument("unknown color '" + t + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::vector<Point> generate(const InstanceSpec& spec) {
  Rng rng(spec.seed);
  std::vector<Point> pts;
  switch (spec.kind) {
    case GenKind::UniformRandom: pts = uniform_random(rng, spec); break;
    case GenKind::Stripes: pts = stripe_instance(rng, spec); break;
    case GenKind::Aligned: pts = aligned_instance(rng, spec); break;
    case GenKind::DiagonalBlocks: pts = diagonal_blocks(rng, spec); break;
    case GenKind::WindmillChain: pts = windmill_chain(rng, spec); break;
  }
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].id = static_cast<std::uint32_t>(i);
  return pts;
}

GenKind parse_gen_kind(const std::string& text) {
  if (text == "uniform_random" || text == "uniform") return GenKind::UniformRandom;
  if (text == "stripes") return GenKind::Stripes;
  if (text == "aligned") return GenKind::Aligned;
  if (text == "diagonal_blocks") return GenKind::DiagonalBlocks;
  if (text == "windmill_chain") return GenKind::WindmillChain;
  throw std::invalid_argument("unknown generator '" + text + "'");
}

std::int64_t parse_fixed(const std::string& raw, std::int64_t scale) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t i = 0;
  bool neg = false;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  __int128 num = 0, den = 1;
  bool dot = false, digits = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !dot) {
      dot = true;
      continue;
    }
    if (c < '0' || c > '9') throw std::invalid_argument("bad number '" + text + "'");
    digits = true;
    num = num * 10 + (c - '0');
    if (dot) den *= 10;
    if (num > (__int128)1 << 100) throw std::invalid_argument("number out of range '" + text + "'");
  }
  if (!digits) throw std::invalid_argument("bad number '" + text + "'");
  const __int128 scaled = num * scale;
  if (scaled % den != 0)
    throw std::invalid_argument("'" + text + "' is not representable at the given scale");
  const __int128 v = (neg ? -1 : 1) * (scaled / den);
  if (v > INT64_MAX || v <= INT64_MIN) throw std::invalid_argument("number out of range '" + text + "'");
  return static_cast<std::int64_t>(v);
}

std::vector<Point> read_points_csv(std::istream& in, std::int64_t scale) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("missing CSV header");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(trim(cell));
  }
  const bool has_color = header.size() == 4 && header[3] == "color";
  if (header.size() < 3 || header[0] != "x" || header[1] != "y" || header[2] != "weight" ||
      (header.size() == 4 && !has_color) || header.size() > 4)
    throw std::invalid_argument("CSV header must be x,y,weight[,color]");
  std::vector<Point> pts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size())
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(header.size()) + " fields");
    Point p;
    try {
      p.x = parse_fixed(cells[0], scale);
      p.y = parse_fixed(cells[1], scale);
      p.weight = parse_fixed(cells[2], scale);
      if (has_color) p.color = parse_color(trim(cells[3]));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
    p.id = static_cast<std::uint32_t>(pts.size());
    pts.push_back(p);
  }
  return pts;
}

void write_points_csv(std::ostream& out, std::span<const Point> pts) {
  out << "x,y,weight,color\n";
  for (const auto& p : pts)
    out << p.x << ',' << p.y << ',' << p.weight << ',' << (p.color == Color::Red ? "red" : "blue")
        << '\n';
}

std::vector<Point> read_points_json(std::istream& in, std::int64_t scale) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad JSON: ") + e.what());
  }
  const auto& arr = j.is_array() ? j : j.at("points");
  auto num = [&](const nlohmann::json& v) {
    if (v.is_number_integer()) return parse_fixed(std::to_string(v.get<std::int64_t>()), scale);
    if (v.is_string()) return parse_fixed(v.get<std::string>(), scale);
    if (v.is_number()) return parse_fixed(v.dump(), scale);
    throw std::invalid_argument("expected a number");
  };
  std::vector<Point> pts;
  for (const auto& e : arr) {
    Point p;
    p.x = num(e.at("x"));
    p.y = num(e.at("y"));
    p.weight = e.contains("weight") ? num(e.at("weight")) : 0;
    if (e.contains("color")) p.color = parse_color(e.at("color").get<std::string>());
    p.id = static_cast<std::uint32_t>(pts.size());
    pts.push_back(p);
  }
  return pts;
}

void write_points_json(std::ostream& out, std::span<const Point> pts) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : pts)
    arr.push_back({{"x", p.x}, {"y", p.y}, {"weight", p.weight},
                   {"color", p.color == Color::Red ? "red" : "blue"}});
  out << nlohmann::json{{"points", arr}}.dump(2) << '\n';
}

std::vector<Point> read_points_file(const std::string& path, std::int64_t scale) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return json ? read_points_json(in, scale) : read_points_csv(in, scale);
}

std::uint64_t digest(std::span<const Point> pts) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  for (const auto& p : pts) {
    mix(static_cast<std::uint64_t>(p.x));
    mix(static_cast<std::uint64_t>(p.y));
    mix(static_cast<std::uint64_t>(p.weight));
    mix(static_cast<std::uint64_t>(p.color));
  }
  return h;
}

double loglog_slope(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw std::invalid_argument("loglog_slope: need two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace optbox
