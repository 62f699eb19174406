#pragma once

#include "tim/graphs.hpp"
#include "tim/rational.hpp"

#include <string_view>

namespace tim {

enum class BoundCase { InterferenceFree, Half, Bounded };

struct DofBound {
  Rational value;
  ExtendedRational delta_term;  // (d+1)/(2d+3) at d = delta_min
  ExtendedRational cycle_term;  // 2L/(5L+1) at L = L_min_odd
  BoundCase bound_case = BoundCase::Half;
};

enum class TopologyClass { InterferenceFree, Best, TwoCoInterferer, General };

std::string_view to_string(TopologyClass c);
std::string_view to_string(BoundCase c);

// Half linear symmetric DoF condition: no vertex with two or more incoming
// internal conflicts.
bool is_best_topology(const TopologyAnalysis& a);

Rational delta_term(int delta_min);
Rational cycle_term(int odd_cycle_length);

DofBound upper_bound(const TopologyAnalysis& a);

TopologyClass classify(const TopologyAnalysis& a);

nlohmann::json bound_to_json(const DofBound& b, TopologyClass c);

}  // namespace tim
