#include "tim/oracle.hpp"

#include "tim/error.hpp"
#include "tim/verify.hpp"

#include <algorithm>
#include <functional>

namespace tim {

int brute_conflict_distance(const AlignmentConflictGraphs& g, Vertex i, Vertex j) {
  if (i == j) return 0;
  std::vector<bool> on_path(g.K + 1, false);
  std::optional<int> best;
  std::function<void(Vertex, int)> walk = [&](Vertex v, int length) {
    if (v == j) {
      if (!best || length < *best) best = length;
      return;
    }
    on_path[v] = true;
    for (Vertex w = 1; w <= g.K; ++w) {
      if (!on_path[w] && w != v && g.aligned(v, w)) walk(w, length + 1);
    }
    on_path[v] = false;
  };
  walk(i, 0);
  if (!best) {
    throw Error(ErrorCode::DifferentSets,
                std::to_string(i) + " and " + std::to_string(j) + " lie in different alignment sets");
  }
  return *best;
}

std::optional<int> brute_odd_cycle(const NetworkTopology& t, const AlignmentConflictGraphs& g) {
  if (t.K() > kMaxBruteK) throw Error(ErrorCode::KTooLarge, "brute-force cycle enumeration supports K <= 8");
  std::optional<int> best;
  for (Vertex u = 1; u <= t.K(); ++u) {
    std::vector<Vertex> members;
    for (Vertex j = 1; j <= t.K(); ++j) {
      if (j != u && t.interferes(u, j)) members.push_back(j);
    }
    // Enumerate each simple cycle once, rooted at its smallest member.
    for (Vertex root : members) {
      std::vector<bool> used(t.K() + 1, false);
      std::function<void(Vertex, int)> extend = [&](Vertex v, int length) {
        for (Vertex w : members) {
          if (!g.conflicts(v, w)) continue;
          if (w == root) {
            int cycle = length + 1;
            if (cycle % 2 == 1 && (!best || cycle < *best)) best = cycle;
          } else if (w > root && !used[w]) {
            used[w] = true;
            extend(w, length + 1);
            used[w] = false;
          }
        }
      };
      used[root] = true;
      extend(root, 0);
    }
  }
  return best;
}

std::size_t rank_by_gauss_jordan(const RationalMatrix& input) {
  RationalMatrix m = input;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(rank, k));
    Rational inv = 1 / m(rank, c);
    for (std::size_t k = 0; k < m.cols(); ++k) m(rank, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) -= f * m(rank, k);
    }
    ++rank;
  }
  return rank;
}

namespace {

Rational dot(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += x[k] * y[k];
  return s;
}

bool is_zero(const std::vector<Rational>& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; });
}

// b minus its components along the mutually orthogonal basis.
std::vector<Rational> reject(std::vector<Rational> b, const std::vector<std::vector<Rational>>& basis) {
  for (const auto& q : basis) {
    Rational coef = dot(b, q) / dot(q, q);
    for (std::size_t k = 0; k < b.size(); ++k) b[k] -= coef * q[k];
  }
  return b;
}

}  // namespace

std::size_t projection_dim_oracle(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() > 0 && a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "row counts differ");
  std::vector<std::vector<Rational>> basis;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    auto q = reject(a.column(c), basis);
    if (!is_zero(q)) basis.push_back(std::move(q));
  }
  std::vector<std::vector<Rational>> projected;
  for (std::size_t c = 0; c < b.cols(); ++c) projected.push_back(reject(b.column(c), basis));
  return rank_by_gauss_jordan(RationalMatrix::from_columns(b.rows(), projected));
}

// ---------------------------------------------------------------------------

std::string_view to_string(SynthOutcome o) {
  switch (o) {
    case SynthOutcome::Verified: return "Verified";
    case SynthOutcome::PlanInfeasible: return "PlanInfeasible";
    case SynthOutcome::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

SurveyRecord survey_topology(std::uint64_t index, const NetworkTopology& t, std::uint64_t seed) {
  SurveyRecord r;
  r.index = index;
  r.topology = t;
  r.analysis = analyze(t);
  r.topology_class = classify(r.analysis);
  r.bound = upper_bound(r.analysis);
  const auto& a = r.analysis;
  auto flag = [&](std::string f) { r.consistency_flags.push_back(std::move(f)); };
  const Rational half(1, 2);

  for (Vertex i = 1; i <= t.K(); ++i) {
    auto n = a.graphs.alignment_neighbors(i);
    if (VertexSet(n.begin(), n.end()) != a.co_interferers_of(i)) flag("co_interferers_not_alignment_neighborhood");
  }
  if (a.max_co_interferers <= 2 && a.L_min_odd) flag("fork_free_topology_has_odd_cycle");
  if (a.L_min_odd && a.delta_min != 1) flag("odd_cycle_without_unit_delta");
  if (!a.interference_free && is_best_topology(a) != (r.bound.value == half)) flag("best_condition_bound_mismatch");

  const std::uint64_t synth_seed = derive_seed(seed, 2 * index);
  const std::uint64_t verify_seed = derive_seed(seed, 2 * index + 1);

  if (!a.interference_free && r.topology_class != TopologyClass::Best) {
    // Converse: the half-DoF construction must fail outside the class.
    auto report = verify_scheme(t, half_style_scheme(t, a, synth_seed), half, kDefaultTrials, verify_seed);
    if (report.pass) flag("half_dof_verified_outside_best_class");
  }

  switch (r.topology_class) {
    case TopologyClass::InterferenceFree: {
      LinearScheme s;
      s.m = 1;
      s.num_modes = 1;
      s.beamforming.assign(t.K(), RationalMatrix{{1}});
      s.mode_patterns.assign(t.K(), std::vector<int>{1});
      auto report = verify_scheme(t, s, 1, kDefaultTrials, verify_seed);
      if (!report.pass) flag("interference_free_not_verified");
      r.outcome = SynthOutcome::Verified;
      r.verified_rate = report.achieved_sym_rate;
      r.scheme = std::move(s);
      break;
    }
    case TopologyClass::Best: {
      auto s = synthesize_half(t, a, synth_seed);
      auto report = verify_scheme(t, s, half, kDefaultTrials, verify_seed);
      if (!report.pass || report.achieved_sym_rate != half) flag("best_topology_not_verified_at_half");
      r.outcome = SynthOutcome::Verified;
      r.verified_rate = report.achieved_sym_rate;
      r.scheme = std::move(s);
      break;
    }
    case TopologyClass::TwoCoInterferer: {
      try {
        auto s = synthesize_two_coint(t, a, synth_seed);
        auto report = verify_scheme(t, s, r.bound.value, kDefaultTrials, verify_seed);
        const Rational expected = delta_term(*a.delta_min);
        if (!report.pass || report.achieved_sym_rate != expected || expected != r.bound.value) {
          flag("two_co_interferer_rate_mismatch");
        }
        r.outcome = SynthOutcome::Verified;
        r.verified_rate = report.achieved_sym_rate;
        r.scheme = std::move(s);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PlanInfeasible) throw;
        r.outcome = SynthOutcome::PlanInfeasible;
        flag("plan_infeasible");
      }
      break;
    }
    case TopologyClass::General: r.outcome = SynthOutcome::NotApplicable; break;
  }
  return r;
}

void exhaustive_survey(int K, std::uint64_t seed, const SurveySink& sink) {
  if (K > kMaxExhaustiveSurveyK) throw Error(ErrorCode::KTooLarge, "exhaustive survey supports K <= 4");
  enumerate_topologies(K, [&](std::uint64_t index, const NetworkTopology& t) { sink(survey_topology(index, t, seed)); });
}

void sampled_survey(int K, std::uint64_t count, double density, std::uint64_t seed, const SurveySink& sink) {
  if (K > kMaxSampledSurveyK) throw Error(ErrorCode::KTooLarge, "sampled survey supports K <= 8");
  for (std::uint64_t index = 0; index < count; ++index) {
    auto t = random_topology(K, density, derive_seed(seed, 0xabcdULL + index));
    sink(survey_topology(index, t, seed));
  }
}

void SurveySummary::add(const SurveyRecord& r) {
  ++records;
  ++class_counts[std::string(to_string(r.topology_class))];
  if (r.outcome == SynthOutcome::Verified) ++verified;
  if (r.outcome == SynthOutcome::PlanInfeasible) ++plan_infeasible;
  flag_count += r.consistency_flags.size();
}

nlohmann::json record_to_json(const SurveyRecord& r) {
  auto int_or_inf = [](const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json("inf"); };
  return {
      {"index", r.index},
      {"topology", topology_to_json(r.topology)},
      {"class", std::string(to_string(r.topology_class))},
      {"bound", bound_to_json(r.bound, r.topology_class)},
      {"delta_min", int_or_inf(r.analysis.delta_min)},
      {"L_min_odd", int_or_inf(r.analysis.L_min_odd)},
      {"max_co_interferers", r.analysis.max_co_interferers},
      {"outcome", std::string(to_string(r.outcome))},
      {"rate", r.verified_rate ? nlohmann::json(to_pq(*r.verified_rate)) : nlohmann::json(nullptr)},
      {"consistency_flags", r.consistency_flags},
  };
}

nlohmann::json summary_to_json(const SurveySummary& s) {
  return {
      {"records", s.records},
      {"classes", s.class_counts},
      {"verified", s.verified},
      {"plan_infeasible", s.plan_infeasible},
      {"flags", s.flag_count},
  };
}

}  // namespace tim
