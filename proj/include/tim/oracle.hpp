#pragma once

#include "tim/bounds.hpp"
#include "tim/graphs.hpp"
#include "tim/linalg.hpp"
#include "tim/scheme.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tim {

// Brute-force references. These deliberately avoid the breadth-first and
// elimination routines they are compared against.

// Shortest simple alignment path between i and j by exhaustive enumeration.
// Throws Error(DifferentSets) when no path exists.
int brute_conflict_distance(const AlignmentConflictGraphs& g, Vertex i, Vertex j);

inline constexpr int kMaxBruteK = 8;

// Minimum odd length over all simple directed conflict cycles enumerated
// inside each induced subgraph on S_u. Throws Error(KTooLarge) for K > 8.
std::optional<int> brute_odd_cycle(const NetworkTopology& t, const AlignmentConflictGraphs& g);

// Rank by Gauss-Jordan elimination over the rationals.
std::size_t rank_by_gauss_jordan(const RationalMatrix& m);

// dim Proj_{span(A)^⊥} span(B), computed by orthogonalising A's columns with
// exact Gram-Schmidt and subtracting their components from B's columns.
std::size_t projection_dim_oracle(const RationalMatrix& a, const RationalMatrix& b);

// ---------------------------------------------------------------------------
// Whole-pipeline survey

enum class SynthOutcome { Verified, PlanInfeasible, NotApplicable };
std::string_view to_string(SynthOutcome o);

struct SurveyRecord {
  std::uint64_t index = 0;
  NetworkTopology topology{1};
  TopologyAnalysis analysis;
  TopologyClass topology_class = TopologyClass::InterferenceFree;
  DofBound bound;
  SynthOutcome outcome = SynthOutcome::NotApplicable;
  std::optional<Rational> verified_rate;
  std::optional<LinearScheme> scheme;
  std::vector<std::string> consistency_flags;
};

// Analyse, classify, bound, synthesise and verify one topology, recording
// every violated expectation.
SurveyRecord survey_topology(std::uint64_t index, const NetworkTopology& t, std::uint64_t seed);

inline constexpr int kMaxExhaustiveSurveyK = 4;
inline constexpr int kMaxSampledSurveyK = 8;

using SurveySink = std::function<void(const SurveyRecord&)>;

// Every topology on K <= 4 users in enumeration order.
void exhaustive_survey(int K, std::uint64_t seed, const SurveySink& sink);

// count random topologies on K <= 8 users.
void sampled_survey(int K, std::uint64_t count, double density, std::uint64_t seed, const SurveySink& sink);

struct SurveySummary {
  std::uint64_t records = 0;
  std::map<std::string, std::uint64_t> class_counts;
  std::uint64_t verified = 0;
  std::uint64_t plan_infeasible = 0;
  std::uint64_t flag_count = 0;

  void add(const SurveyRecord& r);
};

nlohmann::json record_to_json(const SurveyRecord& r);
nlohmann::json summary_to_json(const SurveySummary& s);

}  // namespace tim
