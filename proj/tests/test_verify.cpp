#include <doctest.h>

#include "fixtures.hpp"

#include <tim/error.hpp>
#include <tim/verify.hpp>

#include <random>

using namespace tim;

namespace {

RationalMatrix column(const std::vector<long>& v) {
  RationalMatrix m(v.size(), 1);
  for (std::size_t r = 0; r < v.size(); ++r) m(r, 0) = v[r];
  return m;
}

// K=3 with R3 hearing T1 and T2; every transmitter sends one column.
LinearScheme one_column_scheme(const std::vector<long>& v1, const std::vector<long>& v2, const std::vector<long>& v3,
                               std::vector<int> pattern3) {
  LinearScheme s;
  s.m = static_cast<int>(v1.size());
  s.num_modes = 2;
  s.beamforming = {column(v1), column(v2), column(v3)};
  s.mode_patterns = {std::vector<int>(s.m, 1), std::vector<int>(s.m, 1), std::move(pattern3)};
  return s;
}

}  // namespace

TEST_CASE("channel draws") {
  auto b = fixtures::B();
  auto ch = draw_channels(b, 2, 5);
  // Two modes for every link into every receiver, direct links included.
  std::size_t links = 0;
  for (Vertex j = 1; j <= b.K(); ++j) links += b.interferers(j).size() + 1;
  CHECK(links == 12);
  CHECK(ch.gains.size() == 2 * links);
  for (const auto& [key, g] : ch.gains) {
    CHECK(g >= 1);
    CHECK(g <= kGainMax);
    CHECK(g.get_den() == 1);
  }
  CHECK(draw_channels(b, 2, 5).gains == ch.gains);
  CHECK(draw_channels(b, 2, 6).gains != ch.gains);
  CHECK(ch.has_link(1, 2));
  CHECK_FALSE(ch.has_link(2, 3));
  CHECK_THROWS_AS(ch.gain(2, 3, 1), Error);
}

TEST_CASE("channel matrices follow the receiver pattern") {
  auto t = parse_topology(R"({"K":3,"interferers":{"3":[1,2]}})");
  auto s = one_column_scheme({1, 1, 1}, {1, 2, 3}, {3, 1, 1}, {1, 2, 1});
  auto ch = draw_channels(t, 2, 9);
  auto h = channel_diagonal(3, 1, s, ch);
  CHECK(h == std::vector<Rational>{ch.gain(3, 1, 1), ch.gain(3, 1, 2), ch.gain(3, 1, 1)});
  auto h1 = channel_matrix(3, 1, s, ch);
  auto h2 = channel_matrix(3, 2, s, ch);
  std::set<Rational> ratios;
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(h1(k, (k + 1) % 3) == 0);
    Rational r = h1(k, k) / h2(k, k);
    r.canonicalize();
    ratios.insert(r);
  }
  CHECK(ratios.size() <= 2);
  CHECK_THROWS_AS(channel_matrix(1, 2, s, ch), Error);

  s.mode_patterns[2] = {1, 1, 1};
  auto constant = channel_matrix(3, 3, s, ch);
  CHECK(constant == scale_rows(std::vector<Rational>(3, ch.gain(3, 3, 1)), RationalMatrix::identity(3)));
}

TEST_CASE("single mode means mode switching is inert") {
  auto t = parse_topology(R"({"K":3,"interferers":{"3":[1,2]}})");
  auto ch = draw_channels(t, 1, 4);
  auto s = one_column_scheme({1, 2}, {1, 2}, {5, 1}, {1, 1});
  s.num_modes = 1;
  CHECK(projected_desired_dim(3, t, s, ch) == 1);
  CHECK(projected_desired_ranks(3, t, s, ch).rank_interference == 1);
}

TEST_CASE("receiver without interference keeps its full rank") {
  auto t = parse_topology(R"({"K":3,"interferers":{"3":[1,2]}})");
  auto s = one_column_scheme({1, 0}, {0, 1}, {1, 1}, {1, 2});
  auto ch = draw_channels(t, 2, 1);
  CHECK(projected_desired_dim(1, t, s, ch) == 1);
  CHECK(interference_matrix(1, t, s, ch).cols() == 0);
}

TEST_CASE("fixture A half scheme dimensions") {
  auto t = fixtures::A();
  auto s = synthesize_half(t, analyze(t), 1);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto ch = draw_channels(t, 2, seed);
    for (Vertex j = 1; j <= 4; ++j) CHECK(projected_desired_dim(j, t, s, ch) == 1);
    CHECK(projected_desired_ranks(1, t, s, ch).rank_interference == 1);
  }
  auto report = verify_scheme(t, s, Rational(1, 2));
  CHECK(report.pass);
  CHECK(report.per_receiver_dim == std::vector<int>{1, 1, 1, 1});
  CHECK(report.achieved_sym_rate == Rational(1, 2));
  CHECK(report_to_json(report).dump() ==
        R"({"achieved":"1/2","pass":true,"per_receiver":{"1":1,"2":1,"3":1,"4":1},"seed":1,"trials":3})");
}

TEST_CASE("fixture C rejects a half-style scheme") {
  auto t = fixtures::C();
  auto s = half_style_scheme(t, analyze(t), 1);
  auto report = verify_scheme(t, s, Rational(1, 2));
  CHECK_FALSE(report.pass);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto ch = draw_channels(t, 2, seed);
    int worst = 2;
    for (Vertex j = 1; j <= 4; ++j) worst = std::min(worst, projected_desired_dim(j, t, s, ch));
    CHECK(worst == 0);
  }
}

TEST_CASE("alignment soundness") {
  auto t = parse_topology(R"({"K":3,"interferers":{"3":[1,2]}})");
  std::mt19937_64 rng(3);
  for (int n = 0; n < 50; ++n) {
    std::vector<long> v{static_cast<long>(1 + rng() % 100), static_cast<long>(1 + rng() % 100), 0, 0};
    auto s = one_column_scheme(v, v, {0, 0, 1, 1}, {1, 1, 2, 1});
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto ch = draw_channels(t, 2, derive_seed(n, seed));
      CHECK(rank_exact(interference_matrix(3, t, s, ch)) == 1);
    }
  }
}

TEST_CASE("separation soundness") {
  auto t = parse_topology(R"({"K":2,"interferers":{"2":[1]}})");
  std::mt19937_64 rng(5);
  for (int n = 0; n < 50; ++n) {
    std::vector<long> v{static_cast<long>(1 + rng() % 100), static_cast<long>(1 + rng() % 100), 0};
    LinearScheme s;
    s.m = 3;
    s.num_modes = 2;
    s.beamforming = {column(v), column(v)};
    s.mode_patterns = {{1, 1, 1}, {1, 2, 1}};
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto ch = draw_channels(t, 2, derive_seed(n, seed));
      auto both = hconcat(interference_matrix(2, t, s, ch), desired_matrix(2, s, ch));
      CHECK(rank_exact(both) == 2);
    }
  }
}

TEST_CASE("unused mode gains do not matter") {
  auto t = fixtures::B();
  auto s = synthesize(t, analyze(t), 7);
  s.num_modes = 3;
  auto ch = draw_channels(t, 3, 2);
  std::vector<int> before;
  for (Vertex j = 1; j <= 5; ++j) before.push_back(projected_desired_dim(j, t, s, ch));
  for (auto& [key, g] : ch.gains) {
    const auto [j, i, l] = key;
    const auto& pattern = s.L(j);
    if (std::find(pattern.begin(), pattern.end(), l) == pattern.end()) g *= 1234567;
  }
  for (Vertex j = 1; j <= 5; ++j) CHECK(projected_desired_dim(j, t, s, ch) == before[j - 1]);
}

TEST_CASE("removing an interferer never lowers the projected dimension") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto t = random_topology(5, 0.4, seed);
    auto s = half_style_scheme(t, analyze(t), seed);
    auto ch = draw_channels(t, 2, seed);
    for (Vertex j = 1; j <= 5; ++j) {
      for (Vertex i : t.interferers(j)) {
        CHECK(projected_desired_dim(j, t.without_link(i, j), s, ch) >= projected_desired_dim(j, t, s, ch));
      }
    }
  }
}

TEST_CASE("shape errors") {
  auto t = fixtures::A();
  auto s = synthesize_half(t, analyze(t), 1);
  s.mode_patterns[0] = {1, 3};
  CHECK_THROWS_AS(verify_scheme(t, s, Rational(1, 2)), Error);
  auto s2 = synthesize_half(t, analyze(t), 1);
  s2.beamforming.pop_back();
  CHECK_THROWS_AS(verify_scheme(t, s2, Rational(1, 2)), Error);
}
