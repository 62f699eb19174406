#include <doctest.h>

#include "fixtures.hpp"

#include <tim/error.hpp>
#include <tim/verify.hpp>

#include <set>

using namespace tim;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::MalformedDocument;
}

std::set<int> modes_on(const std::vector<int>& pattern, const std::vector<int>& support) {
  std::set<int> out;
  for (int s : support) out.insert(pattern[s]);
  return out;
}

// Vertices d <= delta hops apart on a path share exactly delta+1-d dimensions.
void check_path_intersections(const TopologyAnalysis& a, const LinearScheme& s) {
  const int delta = *a.delta_min;
  for (const auto& set : a.alignment_sets) {
    auto component = order_component(a.graphs, set);
    if (component.cycle) continue;
    for (std::size_t p = 0; p < component.order.size(); ++p) {
      for (std::size_t r = p + 1; r < component.order.size(); ++r) {
        const int d = static_cast<int>(r - p);
        const int expected = d <= delta ? delta + 1 - d : 0;
        CHECK(intersection_dim(s.V(component.order[p]), s.V(component.order[r])) ==
              static_cast<std::size_t>(expected));
      }
    }
  }
}

}  // namespace

TEST_CASE("half scheme on fixture A") {
  auto t = fixtures::A();
  auto s = synthesize_half(t, analyze(t), 3);
  CHECK(s.m == 2);
  CHECK(s.num_modes == 2);
  CHECK(s.V(1) == s.V(2));
  CHECK(s.V(3) == s.V(4));
  CHECK(rank_exact(hconcat(s.V(1), s.V(3))) == 2);
  CHECK(s.L(1) == std::vector<int>{1, 1});
  CHECK(s.L(3) == std::vector<int>{1, 1});
  CHECK(s.L(2) == std::vector<int>{1, 2});
  CHECK(s.L(4) == std::vector<int>{1, 2});
}

TEST_CASE("half scheme without interference") {
  NetworkTopology t(3);
  auto s = synthesize_half(t, analyze(t), 1);
  CHECK(s.m == 2);
  for (Vertex i = 1; i <= 3; ++i) {
    CHECK(s.n(i) == 1);
    CHECK(s.L(i) == std::vector<int>{1, 1});
  }
}

TEST_CASE("half scheme rejects fixture C") {
  auto t = fixtures::C();
  CHECK(code_of([&] { synthesize_half(t, analyze(t), 1); }) == ErrorCode::NotBestTopology);
  CHECK(code_of([&] { synthesize_two_coint(t, analyze(t), 1); }) == ErrorCode::WrongClass);
}

TEST_CASE("windows") {
  auto path = assign_windows({{1, 2, 3}, false}, 1);
  CHECK(path.windows == std::vector<std::vector<Label>>{{0, 1}, {1, 2}, {2, 3}});
  CHECK(path.label_count == 4);
  auto cycle = assign_windows({{1, 2, 3, 4}, true}, 1);
  CHECK(cycle.windows == std::vector<std::vector<Label>>{{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(cycle.label_count == 4);
  auto single = assign_windows({{5}, false}, 1, 7);
  CHECK(single.windows == std::vector<std::vector<Label>>{{7, 8}});
  auto wide = assign_windows({{1, 2, 3}, false}, 2);
  CHECK(wide.windows == std::vector<std::vector<Label>>{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
  CHECK(label_name(0) == "a");
  CHECK(label_name(26) == "l26");
}

TEST_CASE("component orientation") {
  auto b = analyze(fixtures::B());
  auto path = order_component(b.graphs, {1, 2, 3});
  CHECK_FALSE(path.cycle);
  CHECK(path.order == std::vector<Vertex>{1, 2, 3});
  auto c = analyze(fixtures::C());
  CHECK(code_of([&] { order_component(c.graphs, {1, 2, 3, 4}); }) == ErrorCode::NotPathOrCycle);
  AlignmentConflictGraphs g;
  g.K = 4;
  g.alignment_edges = {{1, 3}, {2, 3}, {2, 4}, {1, 4}};
  auto cyc = order_component(g, {1, 2, 3, 4});
  CHECK(cyc.cycle);
  CHECK(cyc.order == std::vector<Vertex>{1, 3, 2, 4});
}

TEST_CASE("fixture B plan") {
  auto t = fixtures::B();
  auto a = analyze(t);
  auto windows = two_coint_windows(a, 1);
  CHECK(windows == WindowMap{{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}});
  PlanOptions options;
  options.m = 5;
  options.target_rate = Rational(2, 5);
  auto plan = plan_supports_and_modes(t, windows, options, 7);
  CHECK(plan.kind[1] == LabelKind::SeparateRequired);
  CHECK(plan.kind[2] == LabelKind::AlignOnly);
  CHECK(plan.kind[0] == LabelKind::Private);
  CHECK(plan.support[1].size() == 2);
  CHECK(plan.support[2].size() == 1);
  CHECK(plan.mode_patterns[0] == plan.mode_patterns[1]);
  CHECK(modes_on(plan.mode_patterns[0], plan.support[1]).size() == 2);
  for (Label l = 0; l < plan.label_count; ++l) {
    for (int s = 0; s < plan.m; ++s) {
      bool on = std::find(plan.support[l].begin(), plan.support[l].end(), s) != plan.support[l].end();
      if (!on) CHECK(plan.values[l][s] == 0);
    }
  }

  auto s = synthesize_two_coint(t, a, 7);
  CHECK(s.m == 5);
  for (Vertex i = 1; i <= 5; ++i) CHECK(s.n(i) == 2);
  auto report = verify_scheme(t, s, Rational(2, 5));
  CHECK(report.pass);
  CHECK(report.per_receiver_dim == std::vector<int>{2, 2, 2, 2, 2});
  check_path_intersections(a, s);
}

TEST_CASE("fixture C with the example sharing structure") {
  auto t = fixtures::C();
  WindowMap windows{{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {2, 7, 8}};
  PlanOptions options;
  options.m = 8;
  options.target_rate = Rational(3, 8);
  auto plan = plan_supports_and_modes(t, windows, options, 1);
  CHECK(plan.attempts == 1);
  CHECK(plan.support[0] == std::vector<int>{0, 1});
  CHECK(plan.support[1] == std::vector<int>{2, 3});
  CHECK(plan.support[2] == std::vector<int>{4, 5});
  CHECK(plan.mode_patterns[1] == std::vector<int>{1, 2, 1, 1, 1, 1, 1, 1});
  CHECK(plan.mode_patterns[2] == std::vector<int>{1, 1, 1, 2, 1, 1, 1, 1});
  CHECK(plan.mode_patterns[3] == std::vector<int>{1, 1, 1, 1, 1, 2, 1, 1});
  CHECK(modes_on(plan.mode_patterns[0], {0, 1, 2, 3, 4, 5, 6, 7}).size() == 1);
  auto report = verify_scheme(t, scheme_from_plan(plan), Rational(3, 8));
  CHECK(report.pass);
  CHECK(report.per_receiver_dim == std::vector<int>{3, 3, 3, 3});
}

TEST_CASE("no internal conflicts gives constant patterns") {
  auto t = parse_topology(R"({"K":3,"interferers":{"3":[1,2]}})");
  auto a = analyze(t);
  CHECK(a.internal_conflicts.empty());
  PlanOptions options;
  options.m = 5;
  options.target_rate = Rational(2, 5);
  auto plan = plan_supports_and_modes(t, two_coint_windows(a, 1), options, 1);
  CHECK(plan.kind[1] == LabelKind::AlignOnly);
  for (const auto& pattern : plan.mode_patterns) CHECK(modes_on(pattern, {0, 1, 2, 3, 4}).size() == 1);
}

TEST_CASE("triangle alignment set heard by an outside receiver") {
  auto t = parse_topology(R"({"K":4,"interferers":{"1":[2,3],"2":[1,3],"3":[1,2],"4":[1,2,3]}})");
  auto a = analyze(t);
  CHECK(classify(a) == TopologyClass::TwoCoInterferer);
  CHECK(a.delta_min == 1);
  auto windows = two_coint_windows(a, 1);
  CHECK(windows[0] == std::vector<Label>{0, 1});
  CHECK(windows[1] == std::vector<Label>{1, 2});
  CHECK(windows[2] == std::vector<Label>{2, 0});
  auto s = synthesize(t, a, 1);
  auto report = verify_scheme(t, s, Rational(2, 5));
  CHECK(report.pass);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto ch = draw_channels(t, 2, seed);
    CHECK(projected_desired_ranks(4, t, s, ch).rank_interference <= 3);
  }
}

TEST_CASE("triangle whose every label must be separated") {
  auto t = parse_topology(R"({"K":4,"interferers":{"2":[3,4],"3":[2,4],"4":[2,3]}})");
  auto a = analyze(t);
  CHECK(classify(a) == TopologyClass::TwoCoInterferer);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto s = synthesize(t, a, seed);
    CHECK(verify_scheme(t, s, Rational(2, 5), 3, seed).pass);
  }
}

TEST_CASE("best topologies are delegated to the half scheme") {
  auto t = fixtures::A();
  auto s = synthesize_two_coint(t, analyze(t), 1);
  CHECK(s.m == 2);
}

TEST_CASE("path components meet the intersection lower bound with equality") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 3000 && checked < 40; ++seed) {
    auto t = random_topology(5 + static_cast<int>(seed % 4), 0.18, seed);
    auto a = analyze(t);
    if (classify(a) != TopologyClass::TwoCoInterferer) continue;
    auto s = synthesize(t, a, seed);
    check_path_intersections(a, s);
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("scheme JSON round trip") {
  auto t = fixtures::B();
  auto s = synthesize(t, analyze(t), 7);
  auto text = serialize_scheme(s);
  CHECK(parse_scheme(text) == s);
  CHECK(serialize_scheme(parse_scheme(text)) == text);
  RationalMatrix v(2, 1);
  v(0, 0) = Rational(1, 3);
  v(1, 0) = Rational(-4, 6);
  v(1, 0).canonicalize();
  LinearScheme f{2, 2, {v}, {{1, 2}}};
  CHECK(serialize_scheme(f).find("\"-2/3\"") != std::string::npos);
  CHECK(parse_scheme(serialize_scheme(f)) == f);
  CHECK_THROWS_AS(parse_scheme(R"({"m":2})"), Error);
}

TEST_CASE("scheme validation") {
  LinearScheme s{2, 2, {RationalMatrix(2, 1)}, {{1, 1}}};
  CHECK(code_of([&] { validate_scheme(s); }) == ErrorCode::DimensionMismatch);
  s.beamforming[0](0, 0) = 1;
  validate_scheme(s);
  s.mode_patterns[0] = {1};
  CHECK(code_of([&] { validate_scheme(s); }) == ErrorCode::DimensionMismatch);
}
