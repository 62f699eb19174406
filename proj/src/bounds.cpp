#include "tim/bounds.hpp"

#include <algorithm>

namespace tim {

std::string_view to_string(TopologyClass c) {
  switch (c) {
    case TopologyClass::InterferenceFree: return "InterferenceFree";
    case TopologyClass::Best: return "Best";
    case TopologyClass::TwoCoInterferer: return "TwoCoInterferer";
    case TopologyClass::General: return "General";
  }
  return "Unknown";
}

std::string_view to_string(BoundCase c) {
  switch (c) {
    case BoundCase::InterferenceFree: return "InterferenceFree";
    case BoundCase::Half: return "Half";
    case BoundCase::Bounded: return "Bounded";
  }
  return "Unknown";
}

bool is_best_topology(const TopologyAnalysis& a) {
  return std::all_of(a.incoming_internal_count.begin(), a.incoming_internal_count.end(),
                     [](int n) { return n <= 1; });
}

Rational delta_term(int delta_min) {
  Rational r(delta_min + 1, 2 * delta_min + 3);
  r.canonicalize();
  return r;
}

Rational cycle_term(int odd_cycle_length) {
  Rational r(2 * odd_cycle_length, 5 * odd_cycle_length + 1);
  r.canonicalize();
  return r;
}

DofBound upper_bound(const TopologyAnalysis& a) {
  DofBound b;
  if (a.delta_min) b.delta_term = delta_term(*a.delta_min);
  if (a.L_min_odd) b.cycle_term = cycle_term(*a.L_min_odd);

  if (a.interference_free) {
    b.value = 1;
    b.bound_case = BoundCase::InterferenceFree;
  } else if (!b.delta_term && !b.cycle_term) {
    b.value = Rational(1, 2);
    b.bound_case = BoundCase::Half;
  } else {
    if (b.delta_term && b.cycle_term) {
      b.value = std::min(*b.delta_term, *b.cycle_term);
    } else {
      b.value = b.delta_term ? *b.delta_term : *b.cycle_term;
    }
    b.bound_case = BoundCase::Bounded;
  }
  return b;
}

TopologyClass classify(const TopologyAnalysis& a) {
  if (a.interference_free) return TopologyClass::InterferenceFree;
  if (is_best_topology(a)) return TopologyClass::Best;
  if (a.max_co_interferers <= 2) return TopologyClass::TwoCoInterferer;
  return TopologyClass::General;
}

nlohmann::json bound_to_json(const DofBound& b, TopologyClass c) {
  return {
      {"value", to_pq(b.value)},
      {"delta_term", to_pq_or_inf(b.delta_term)},
      {"cycle_term", to_pq_or_inf(b.cycle_term)},
      {"class", std::string(to_string(c))},
  };
}

}  // namespace tim
