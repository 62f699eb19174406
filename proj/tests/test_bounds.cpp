#include <doctest.h>

#include "fixtures.hpp"

#include <tim/bounds.hpp>

#include <random>

using namespace tim;

TEST_CASE("best topology condition") {
  CHECK(is_best_topology(analyze(fixtures::A())));
  CHECK_FALSE(is_best_topology(analyze(fixtures::B())));
  CHECK(is_best_topology(analyze(NetworkTopology(3))));
}

TEST_CASE("fixture bounds") {
  auto a = upper_bound(analyze(fixtures::A()));
  CHECK(a.value == Rational(1, 2));
  CHECK(a.bound_case == BoundCase::Half);

  auto b = upper_bound(analyze(fixtures::B()));
  CHECK(b.value == Rational(2, 5));
  CHECK(b.delta_term == Rational(2, 5));
  CHECK_FALSE(b.cycle_term);

  auto c = upper_bound(analyze(fixtures::C()));
  CHECK(c.value == Rational(3, 8));
  CHECK(c.delta_term == Rational(2, 5));
  CHECK(c.cycle_term == Rational(3, 8));
  CHECK(c.bound_case == BoundCase::Bounded);

  auto free = upper_bound(analyze(NetworkTopology(3)));
  CHECK(free.value == 1);
  CHECK(free.bound_case == BoundCase::InterferenceFree);
}

TEST_CASE("classification") {
  CHECK(classify(analyze(fixtures::A())) == TopologyClass::Best);
  CHECK(classify(analyze(fixtures::B())) == TopologyClass::TwoCoInterferer);
  CHECK(classify(analyze(fixtures::C())) == TopologyClass::General);
  CHECK(classify(analyze(NetworkTopology(2))) == TopologyClass::InterferenceFree);
}

TEST_CASE("bound JSON") {
  auto a = analyze(fixtures::C());
  auto j = bound_to_json(upper_bound(a), classify(a));
  CHECK(j.dump() == R"({"class":"General","cycle_term":"3/8","delta_term":"2/5","value":"3/8"})");
  auto b = analyze(fixtures::A());
  CHECK(bound_to_json(upper_bound(b), classify(b)).dump() ==
        R"({"class":"Best","cycle_term":"inf","delta_term":"inf","value":"1/2"})");
}

TEST_CASE("term ranges and monotonicity") {
  for (int d = 1; d < 50; ++d) {
    CHECK(delta_term(d) >= Rational(2, 5));
    CHECK(delta_term(d) < Rational(1, 2));
    CHECK(delta_term(d + 1) > delta_term(d));
  }
  for (int L = 3; L < 99; L += 2) {
    CHECK(cycle_term(L) < Rational(2, 5));
    CHECK(cycle_term(L) < delta_term(1));
    CHECK(cycle_term(L + 2) > cycle_term(L));
  }
}

TEST_CASE("adding a cross link never raises the bound") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (std::uint64_t seed = 0; checked < 1000; ++seed) {
    const int K = 2 + static_cast<int>(seed % 7);
    auto t = random_topology(K, 0.3, seed);
    std::vector<std::pair<Vertex, Vertex>> absent;
    for (Vertex j = 1; j <= K; ++j)
      for (Vertex i = 1; i <= K; ++i)
        if (i != j && !t.interferes(i, j)) absent.emplace_back(i, j);
    if (absent.empty()) continue;
    auto [i, j] = absent[rng() % absent.size()];
    CHECK(upper_bound(analyze(t.with_link(i, j))).value <= upper_bound(analyze(t)).value);
    ++checked;
  }
}

TEST_CASE("exhaustive: best with interference iff bound is one half") {
  for (int K = 2; K <= 4; ++K) {
    enumerate_topologies(K, [](std::uint64_t, const NetworkTopology& t) {
      auto a = analyze(t);
      if (t.interference_free()) {
        CHECK(upper_bound(a).value == 1);
        return;
      }
      CHECK(is_best_topology(a) == (upper_bound(a).value == Rational(1, 2)));
    });
  }
}
