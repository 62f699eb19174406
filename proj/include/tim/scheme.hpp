#pragma once

#include "tim/bounds.hpp"
#include "tim/graphs.hpp"
#include "tim/linalg.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tim {

// m channel uses; transmitter i sends n_i symbols through the m x n_i matrix
// V_i; receiver j follows mode pattern L_j (modes numbered from 1).
struct LinearScheme {
  int m = 0;
  int num_modes = 1;
  std::vector<RationalMatrix> beamforming;      // [i - 1]
  std::vector<std::vector<int>> mode_patterns;  // [j - 1]

  int K() const noexcept { return static_cast<int>(beamforming.size()); }
  const RationalMatrix& V(Vertex i) const { return beamforming.at(i - 1); }
  const std::vector<int>& L(Vertex j) const { return mode_patterns.at(j - 1); }
  int n(Vertex i) const { return static_cast<int>(V(i).cols()); }

  friend bool operator==(const LinearScheme&, const LinearScheme&) = default;
};

// Shape checks: K consistent, V_i is m x n_i with full column rank n_i <= m,
// every L_j has length m with entries in [1..num_modes].
// Throws Error(DimensionMismatch).
void validate_scheme(const LinearScheme& s);
void validate_scheme(const LinearScheme& s, const NetworkTopology& t);

nlohmann::json scheme_to_json(const LinearScheme& s);
std::string serialize_scheme(const LinearScheme& s);
LinearScheme parse_scheme(std::string_view document);

// ---------------------------------------------------------------------------
// Half-DoF construction (m = 2, one symbol per user).

// Every alignment set shares one vector [1, c] with a distinct nonzero c per
// set. Receivers whose interferer lies in their own alignment set switch modes
// ([1 2]); all others keep [1 1]. No precondition is checked, so this also
// builds the best-effort scheme for topologies outside the half-DoF class.
LinearScheme half_style_scheme(const NetworkTopology& t, const TopologyAnalysis& a, std::uint64_t seed);

// Throws Error(NotBestTopology) unless the class is Best or InterferenceFree.
LinearScheme synthesize_half(const NetworkTopology& t, const TopologyAnalysis& a, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Window-sharing construction for topologies whose transmitters have at most
// two co-interferers.

using Label = int;
// window[v - 1] = ordered labels (beamforming columns) held by transmitter v.
using WindowMap = std::vector<std::vector<Label>>;

std::string label_name(Label l);

// An alignment set laid out as a simple path or cycle.
struct AlignmentComponent {
  std::vector<Vertex> order;
  bool cycle = false;
};

// Paths start at the endpoint with the smaller id; cycles start at their
// smallest vertex and head toward its smaller neighbour.
// Throws Error(NotPathOrCycle).
AlignmentComponent order_component(const AlignmentConflictGraphs& g, const std::vector<Vertex>& members);

struct ComponentWindows {
  std::vector<std::vector<Label>> windows;  // parallel to component.order
  int label_count = 0;
};

// Sliding windows of delta+1 labels: a path of p vertices uses p+delta fresh
// labels, a cycle of p vertices uses p labels with wrap-around.
ComponentWindows assign_windows(const AlignmentComponent& component, int delta, Label first_label = 0);

// Windows for every alignment set of the topology.
WindowMap two_coint_windows(const TopologyAnalysis& a, int delta);

enum class LabelKind { Private, Unconstrained, AlignOnly, SeparateRequired };
std::string_view to_string(LabelKind k);

// ALIGN: label held by >= 2 interferers of R_j, so L_j is constant on its
// support. SEP: label held by T_j and an interferer of R_j, so L_j takes at
// least two values on its support.
struct ReceiverConstraints {
  std::vector<Label> align;
  std::vector<Label> separate;
};

std::vector<ReceiverConstraints> collect_constraints(const NetworkTopology& t, const WindowMap& windows);

struct LabelPlan {
  int m = 0;
  int label_count = 0;
  WindowMap window;
  std::vector<LabelKind> kind;
  std::vector<std::vector<int>> support;      // 0-based slots, ascending
  std::vector<std::vector<Rational>> values;  // length m, zero off-support
  std::vector<std::vector<int>> mode_patterns;
  int attempts = 0;
};

struct PlanOptions {
  int m = 0;
  Rational target_rate;
  int max_retries = 32;
  int trials = 3;
};

inline constexpr int kDefaultMaxRetries = 32;

// kDefaultMaxRetries unless TIM_MAX_RETRIES holds a positive integer.
int default_max_retries();

// Places label supports, draws values and derives mode patterns; redraws until
// the resulting scheme passes exact verification at options.target_rate.
// Throws Error(PlanInfeasible).
LabelPlan plan_supports_and_modes(const NetworkTopology& t, const WindowMap& windows, const PlanOptions& options,
                                  std::uint64_t seed);

LinearScheme scheme_from_plan(const LabelPlan& plan);

// m = 2*delta_min + 3, n_i = delta_min + 1. Best (and interference-free)
// topologies are delegated to synthesize_half. Throws Error(WrongClass) or
// Error(PlanInfeasible).
LinearScheme synthesize_two_coint(const NetworkTopology& t, const TopologyAnalysis& a, std::uint64_t seed,
                                  int max_retries = default_max_retries());

// Chooses the construction by topology class; General throws WrongClass.
LinearScheme synthesize(const NetworkTopology& t, const TopologyAnalysis& a, std::uint64_t seed,
                        int max_retries = default_max_retries());

}  // namespace tim
