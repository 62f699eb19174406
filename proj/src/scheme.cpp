#include "tim/scheme.hpp"

#include "tim/error.hpp"
#include "tim/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <random>
#include <string_view>
#include <tuple>

namespace tim {

// ---------------------------------------------------------------------------
// Half-DoF construction

LinearScheme half_style_scheme(const NetworkTopology& t, const TopologyAnalysis& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> draw(1, kGainMax);
  std::vector<long> slope;
  while (slope.size() < a.alignment_sets.size()) {
    long c = draw(rng);
    if (std::find(slope.begin(), slope.end(), c) == slope.end()) slope.push_back(c);
  }

  LinearScheme s;
  s.m = 2;
  s.num_modes = 2;
  for (Vertex i = 1; i <= t.K(); ++i) {
    RationalMatrix v(2, 1);
    v(0, 0) = 1;
    v(1, 0) = slope[a.set_of[i - 1]];
    s.beamforming.push_back(std::move(v));
  }
  for (Vertex j = 1; j <= t.K(); ++j) {
    const auto& ij = t.interferers(j);
    bool own_set = std::any_of(ij.begin(), ij.end(), [&](Vertex i) { return a.same_set(i, j); });
    s.mode_patterns.push_back(own_set ? std::vector<int>{1, 2} : std::vector<int>{1, 1});
  }
  return s;
}

LinearScheme synthesize_half(const NetworkTopology& t, const TopologyAnalysis& a, std::uint64_t seed) {
  auto c = classify(a);
  if (c != TopologyClass::Best && c != TopologyClass::InterferenceFree) {
    throw Error(ErrorCode::NotBestTopology, "a vertex has two or more incoming internal conflicts");
  }
  return half_style_scheme(t, a, seed);
}

// ---------------------------------------------------------------------------
// Windows

std::string label_name(Label l) {
  if (l >= 0 && l < 26) return std::string(1, static_cast<char>('a' + l));
  return "l" + std::to_string(l);
}

AlignmentComponent order_component(const AlignmentConflictGraphs& g, const std::vector<Vertex>& members) {
  if (members.empty()) throw Error(ErrorCode::NotPathOrCycle, "empty component");
  if (members.size() == 1) return {{members.front()}, false};

  std::vector<Vertex> endpoints;
  for (Vertex v : members) {
    auto degree = g.alignment_neighbors(v).size();
    if (degree == 0 || degree > 2) {
      throw Error(ErrorCode::NotPathOrCycle, "vertex " + std::to_string(v) + " has alignment degree " +
                                                 std::to_string(degree));
    }
    if (degree == 1) endpoints.push_back(v);
  }
  if (!endpoints.empty() && endpoints.size() != 2) throw Error(ErrorCode::NotPathOrCycle, "not a simple path");

  AlignmentComponent out;
  out.cycle = endpoints.empty();
  Vertex start = out.cycle ? *std::min_element(members.begin(), members.end()) : std::min(endpoints[0], endpoints[1]);
  Vertex previous = 0, current = start;
  while (true) {
    out.order.push_back(current);
    auto next = g.alignment_neighbors(current);  // sorted, so the smaller neighbour comes first
    auto it = std::find_if(next.begin(), next.end(), [&](Vertex w) { return w != previous; });
    if (it == next.end() || *it == start) break;
    previous = current;
    current = *it;
    if (out.order.size() > members.size()) throw Error(ErrorCode::NotPathOrCycle, "walk did not close");
  }
  if (out.order.size() != members.size()) throw Error(ErrorCode::NotPathOrCycle, "component is not connected");
  return out;
}

ComponentWindows assign_windows(const AlignmentComponent& component, int delta, Label first_label) {
  if (delta < 0) throw Error(ErrorCode::NotPathOrCycle, "negative window overlap");
  const int p = static_cast<int>(component.order.size());
  ComponentWindows out;
  out.label_count = component.cycle ? p : p + delta;
  for (int t = 0; t < p; ++t) {
    std::vector<Label> w;
    for (int k = 0; k <= delta; ++k) w.push_back(first_label + (component.cycle ? (t + k) % p : t + k));
    out.windows.push_back(std::move(w));
  }
  return out;
}

WindowMap two_coint_windows(const TopologyAnalysis& a, int delta) {
  WindowMap windows(a.graphs.K);
  Label next = 0;
  for (const auto& set : a.alignment_sets) {
    auto component = order_component(a.graphs, set);
    auto cw = assign_windows(component, delta, next);
    for (std::size_t k = 0; k < component.order.size(); ++k) windows[component.order[k] - 1] = cw.windows[k];
    next += cw.label_count;
  }
  return windows;
}

// ---------------------------------------------------------------------------
// Constraint collection and planning

std::string_view to_string(LabelKind k) {
  switch (k) {
    case LabelKind::Private: return "Private";
    case LabelKind::Unconstrained: return "Unconstrained";
    case LabelKind::AlignOnly: return "AlignOnly";
    case LabelKind::SeparateRequired: return "SeparateRequired";
  }
  return "Unknown";
}

namespace {

int count_labels(const WindowMap& windows) {
  Label top = -1;
  for (const auto& w : windows) {
    for (Label l : w) {
      if (l < 0) throw Error(ErrorCode::PlanInfeasible, "negative label id");
      top = std::max(top, l);
    }
  }
  return top + 1;
}

std::vector<VertexSet> label_holders(const WindowMap& windows, int label_count) {
  std::vector<VertexSet> holders(label_count);
  for (std::size_t v = 0; v < windows.size(); ++v) {
    for (Label l : windows[v]) holders[l].insert(static_cast<Vertex>(v + 1));
  }
  return holders;
}

}  // namespace

std::vector<ReceiverConstraints> collect_constraints(const NetworkTopology& t, const WindowMap& windows) {
  if (static_cast<int>(windows.size()) != t.K()) throw Error(ErrorCode::DimensionMismatch, "one window per transmitter");
  const int label_count = count_labels(windows);
  auto holders = label_holders(windows, label_count);

  std::vector<ReceiverConstraints> out(t.K());
  for (Vertex j = 1; j <= t.K(); ++j) {
    const auto& ij = t.interferers(j);
    for (Label l = 0; l < label_count; ++l) {
      const auto& h = holders[l];
      auto heard = std::count_if(h.begin(), h.end(), [&](Vertex v) { return ij.contains(v); });
      if (heard >= 2) out[j - 1].align.push_back(l);
      if (heard >= 1 && h.contains(j)) out[j - 1].separate.push_back(l);
    }
  }
  return out;
}

int default_max_retries() {
  if (const char* env = std::getenv("TIM_MAX_RETRIES")) {
    std::string_view s(env);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return kDefaultMaxRetries;
}

LinearScheme scheme_from_plan(const LabelPlan& plan) {
  LinearScheme s;
  s.m = plan.m;
  s.num_modes = 2;
  for (const auto& w : plan.window) {
    std::vector<std::vector<Rational>> cols;
    for (Label l : w) cols.push_back(plan.values[l]);
    s.beamforming.push_back(RationalMatrix::from_columns(static_cast<std::size_t>(plan.m), cols));
  }
  s.mode_patterns = plan.mode_patterns;
  return s;
}

namespace {

constexpr int kPatternDraws = 4096;
constexpr std::uint64_t kPrime = (1ULL << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a)) {
    if (e & 1) r = mulmod(r, a);
  }
  return r;
}

// Rank over GF(2^61 - 1); rows are slots, columns are vectors.
int rank_mod_p(std::vector<std::vector<std::uint64_t>> cols, int m) {
  int rank = 0;
  for (int r = 0; r < m && rank < static_cast<int>(cols.size()); ++r) {
    std::size_t pivot = rank;
    while (pivot < cols.size() && cols[pivot][r] == 0) ++pivot;
    if (pivot == cols.size()) continue;
    std::swap(cols[rank], cols[pivot]);
    const std::uint64_t inv = powmod(cols[rank][r], kPrime - 2);
    for (std::size_t c = rank + 1; c < cols.size(); ++c) {
      if (cols[c][r] == 0) continue;
      const std::uint64_t f = mulmod(cols[c][r], inv);
      for (int k = r; k < m; ++k) cols[c][k] = (cols[c][k] + kPrime - mulmod(f, cols[rank][k])) % kPrime;
    }
    ++rank;
  }
  return rank;
}

bool columns_independent(const std::vector<std::vector<Rational>>& values, const std::vector<Label>& labels, int m) {
  if (static_cast<int>(labels.size()) > m) return false;
  std::vector<std::vector<Rational>> cols;
  for (Label l : labels) cols.push_back(values[l]);
  return rank_exact(RationalMatrix::from_columns(static_cast<std::size_t>(m), cols)) == labels.size();
}

}  // namespace

LabelPlan plan_supports_and_modes(const NetworkTopology& t, const WindowMap& windows, const PlanOptions& options,
                                  std::uint64_t seed) {
  const int K = t.K();
  const int m = options.m;
  if (m < 1) throw Error(ErrorCode::PlanInfeasible, "m must be positive");
  auto constraints = collect_constraints(t, windows);
  const int label_count = count_labels(windows);
  auto holders = label_holders(windows, label_count);

  for (Vertex v = 1; v <= K; ++v) {
    auto w = windows[v - 1];
    std::sort(w.begin(), w.end());
    if (w.empty() || static_cast<int>(w.size()) > m) {
      throw Error(ErrorCode::PlanInfeasible, "window of T" + std::to_string(v) + " has an unusable size");
    }
    if (std::adjacent_find(w.begin(), w.end()) != w.end()) {
      throw Error(ErrorCode::PlanInfeasible, "window of T" + std::to_string(v) + " repeats a label");
    }
  }

  std::vector<LabelKind> kind(label_count, LabelKind::Private);
  for (Label l = 0; l < label_count; ++l) {
    if (holders[l].size() > 1) kind[l] = LabelKind::Unconstrained;
  }
  for (Vertex j = 1; j <= K; ++j) {
    const auto& c = constraints[j - 1];
    for (Label l : c.align) {
      if (std::find(c.separate.begin(), c.separate.end(), l) != c.separate.end()) {
        throw Error(ErrorCode::PlanInfeasible, "label " + label_name(l) + " must be both aligned and separated at R" +
                                                   std::to_string(j));
      }
      if (kind[l] != LabelKind::SeparateRequired) kind[l] = LabelKind::AlignOnly;
    }
    for (Label l : c.separate) kind[l] = LabelKind::SeparateRequired;
  }

  // Labels seen together at some receiver should not share slots.
  std::vector<std::vector<Label>> visible(K);
  for (Vertex j = 1; j <= K; ++j) {
    std::set<Label> seen(windows[j - 1].begin(), windows[j - 1].end());
    for (Vertex i : t.interferers(j)) seen.insert(windows[i - 1].begin(), windows[i - 1].end());
    visible[j - 1].assign(seen.begin(), seen.end());
  }
  std::vector<std::vector<bool>> interacts(label_count, std::vector<bool>(label_count, false));
  for (const auto& vis : visible) {
    for (Label x : vis)
      for (Label y : vis) interacts[x][y] = true;
  }

  std::vector<Label> placement_order;
  for (auto wanted : {LabelKind::SeparateRequired, LabelKind::AlignOnly}) {
    for (Label l = 0; l < label_count; ++l) {
      if (kind[l] == wanted) placement_order.push_back(l);
    }
  }

  // Pairs of transmitters that share labels; the union of their columns must
  // stay independent so the intersection is exactly the shared labels.
  std::vector<std::vector<Label>> sharing_unions;
  for (Vertex p = 1; p <= K; ++p) {
    for (Vertex r = p + 1; r <= K; ++r) {
      std::set<Label> u(windows[p - 1].begin(), windows[p - 1].end());
      std::size_t before = u.size();
      u.insert(windows[r - 1].begin(), windows[r - 1].end());
      if (u.size() < before + windows[r - 1].size()) sharing_unions.emplace_back(u.begin(), u.end());
    }
  }

  auto distinct_modes = [&](const std::vector<int>& pattern, const std::vector<int>& supp) {
    std::set<int> seen;
    for (int s : supp) seen.insert(pattern[s]);
    return seen.size();
  };
  auto consistent = [&](const std::vector<std::vector<int>>& support, const std::vector<std::vector<int>>& modes) {
    for (Vertex j = 1; j <= K; ++j) {
      for (Label l : constraints[j - 1].align) {
        if (distinct_modes(modes[j - 1], support[l]) != 1) return false;
      }
      for (Label l : constraints[j - 1].separate) {
        if (distinct_modes(modes[j - 1], support[l]) < 2) return false;
      }
    }
    return true;
  };

  // Greedy placement: SEP labels get two slots, ALIGN labels one, and each
  // SEP receiver switches to mode 2 on the last slot of its SEP labels.
  auto greedy = [&](int attempt, std::mt19937_64& rng, std::vector<std::vector<int>>& support,
                    std::vector<std::vector<int>>& modes) {
    std::vector<int> global_use(m, 0);
    for (Label l : placement_order) {
      const int need = kind[l] == LabelKind::SeparateRequired ? 2 : 1;
      if (need > m) throw Error(ErrorCode::PlanInfeasible, "m too small for a two-slot support");
      std::vector<std::uint64_t> tiebreak(m);
      for (int s = 0; s < m; ++s) tiebreak[s] = attempt == 0 ? static_cast<std::uint64_t>(s) : rng();
      for (int n = 0; n < need; ++n) {
        int best = -1;
        std::tuple<int, int, std::uint64_t> best_key{};
        for (int s = 0; s < m; ++s) {
          if (std::find(support[l].begin(), support[l].end(), s) != support[l].end()) continue;
          int clashes = 0;
          for (Label o = 0; o < label_count; ++o) {
            if (o != l && interacts[l][o] && std::find(support[o].begin(), support[o].end(), s) != support[o].end()) {
              ++clashes;
            }
          }
          std::tuple<int, int, std::uint64_t> key{clashes, global_use[s], tiebreak[s]};
          if (best < 0 || key < best_key) {
            best = s;
            best_key = key;
          }
        }
        support[l].push_back(best);
        ++global_use[best];
      }
      std::sort(support[l].begin(), support[l].end());
    }
    for (Vertex j = 1; j <= K; ++j) {
      for (Label l : constraints[j - 1].separate) modes[j - 1][support[l].back()] = 2;
    }
    return consistent(support, modes);
  };

  // Screens a layout with random values and gains modulo a prime.
  auto screen = [&](const std::vector<std::vector<int>>& support, const std::vector<std::vector<int>>& modes,
                    std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> field(1, kPrime - 1);
    std::vector<std::vector<std::uint64_t>> vec(label_count, std::vector<std::uint64_t>(m, 0));
    for (Label l = 0; l < label_count; ++l) {
      if (kind[l] == LabelKind::Private || kind[l] == LabelKind::Unconstrained) {
        for (int s = 0; s < m; ++s) vec[l][s] = field(rng);
      } else {
        for (int s : support[l]) vec[l][s] = field(rng);
      }
    }
    for (Vertex j = 1; j <= K; ++j) {
      std::vector<std::vector<std::uint64_t>> cols;
      auto add = [&](Vertex i) {
        const std::uint64_t g1 = field(rng), g2 = field(rng);
        for (Label l : windows[i - 1]) {
          std::vector<std::uint64_t> c(m);
          for (int s = 0; s < m; ++s) c[s] = mulmod(modes[j - 1][s] == 1 ? g1 : g2, vec[l][s]);
          cols.push_back(std::move(c));
        }
      };
      for (Vertex i : t.interferers(j)) add(i);
      const int ra = rank_mod_p(cols, m);
      add(j);
      const Rational rate(rank_mod_p(cols, m) - ra, m);
      if (rate < options.target_rate) return false;
    }
    return true;
  };

  // Pattern-first placement: draw the mode patterns, then give every
  // constrained label the largest support that stays inside one mode class at
  // each of its ALIGN receivers.
  auto pattern_first = [&](std::mt19937_64& rng, std::vector<std::vector<int>>& support,
                           std::vector<std::vector<int>>& modes) {
    std::bernoulli_distribution coin(0.5);
    for (int draw_round = 0; draw_round < kPatternDraws; ++draw_round) {
      for (Vertex j = 1; j <= K; ++j) {
        auto& pattern = modes[j - 1];
        std::fill(pattern.begin(), pattern.end(), 1);
        if (constraints[j - 1].separate.empty() || m < 2) continue;
        do {
          for (int s = 0; s < m; ++s) pattern[s] = coin(rng) ? 2 : 1;
        } while (std::count(pattern.begin(), pattern.end(), 1) == 0 ||
                 std::count(pattern.begin(), pattern.end(), 1) == m);
      }
      std::vector<std::vector<bool>> allowed(label_count, std::vector<bool>(m, true));
      for (Vertex j = 1; j <= K; ++j) {
        for (Label l : constraints[j - 1].align) {
          const int keep = coin(rng) ? 2 : 1;
          for (int s = 0; s < m; ++s) {
            if (modes[j - 1][s] != keep) allowed[l][s] = false;
          }
        }
      }
      bool empty = false;
      for (Label l : placement_order) {
        support[l].clear();
        for (int s = 0; s < m; ++s) {
          if (allowed[l][s]) support[l].push_back(s);
        }
        empty = empty || support[l].empty();
      }
      if (!empty && consistent(support, modes) && screen(support, modes, rng)) return true;
    }
    return false;
  };

  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<std::vector<int>> support(label_count);
    std::vector<std::vector<int>> modes(K, std::vector<int>(m, 1));

    // Attempt 0 is the deterministic greedy layout; later attempts alternate
    // randomized greedy and pattern-first placement.
    const bool placed = attempt % 2 == 0 && attempt > 0 ? pattern_first(rng, support, modes)
                                                        : greedy(attempt, rng, support, modes);
    if (!placed) continue;
    for (Label l = 0; l < label_count; ++l) {
      if (kind[l] == LabelKind::Private || kind[l] == LabelKind::Unconstrained) {
        support[l].resize(m);
        for (int s = 0; s < m; ++s) support[l][s] = s;
      }
    }

    std::uniform_int_distribution<long> draw(1, kGainMax);
    std::vector<std::vector<Rational>> values(label_count, std::vector<Rational>(m, 0));
    for (Label l = 0; l < label_count; ++l) {
      for (int s : support[l]) values[l][s] = draw(rng);
    }

    bool independent = true;
    for (const auto& vis : visible) independent = independent && columns_independent(values, vis, m);
    for (const auto& u : sharing_unions) independent = independent && columns_independent(values, u, m);
    if (!independent) continue;

    LabelPlan plan;
    plan.m = m;
    plan.label_count = label_count;
    plan.window = windows;
    plan.kind = kind;
    plan.support = std::move(support);
    plan.values = std::move(values);
    plan.mode_patterns = std::move(modes);
    plan.attempts = attempt + 1;

    auto report = verify_scheme(t, scheme_from_plan(plan), options.target_rate, options.trials,
                                derive_seed(seed, 0x5eedULL + static_cast<std::uint64_t>(attempt)));
    if (report.pass) return plan;
  }
  throw Error(ErrorCode::PlanInfeasible,
              "no verified plan after " + std::to_string(options.max_retries) + " attempts");
}

LinearScheme synthesize_two_coint(const NetworkTopology& t, const TopologyAnalysis& a, std::uint64_t seed,
                                  int max_retries) {
  switch (classify(a)) {
    case TopologyClass::InterferenceFree:
    case TopologyClass::Best: return synthesize_half(t, a, seed);
    case TopologyClass::General:
      throw Error(ErrorCode::WrongClass, "a transmitter has more than two co-interferers");
    case TopologyClass::TwoCoInterferer: break;
  }
  const int delta = *a.delta_min;
  PlanOptions options;
  options.m = 2 * delta + 3;
  options.target_rate = Rational(delta + 1, options.m);
  options.target_rate.canonicalize();
  options.max_retries = max_retries;
  auto plan = plan_supports_and_modes(t, two_coint_windows(a, delta), options, seed);
  return scheme_from_plan(plan);
}

LinearScheme synthesize(const NetworkTopology& t, const TopologyAnalysis& a, std::uint64_t seed, int max_retries) {
  return synthesize_two_coint(t, a, seed, max_retries);
}

}  // namespace tim
