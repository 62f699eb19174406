#include "tim/graphs.hpp"

#include "tim/bounds.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace tim {

std::vector<Vertex> AlignmentConflictGraphs::alignment_neighbors(Vertex v) const {
  std::vector<Vertex> out;
  for (const auto& [a, b] : alignment_edges) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AlignmentConflictGraphs build_graphs(const NetworkTopology& t) {
  AlignmentConflictGraphs g;
  g.K = t.K();
  for (Vertex k = 1; k <= t.K(); ++k) {
    const auto& ik = t.interferers(k);
    for (Vertex i : ik) {
      g.conflict_edges.emplace(i, k);
      for (Vertex j : ik) {
        if (i < j) g.alignment_edges.emplace(i, j);
      }
    }
  }
  return g;
}

std::vector<int> alignment_distances(const AlignmentConflictGraphs& g, Vertex source) {
  std::vector<std::vector<Vertex>> adj(g.K + 1);
  for (const auto& [a, b] : g.alignment_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& n : adj) std::sort(n.begin(), n.end());

  std::vector<int> dist(g.K + 1, -1);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

AlignmentSets alignment_sets(const AlignmentConflictGraphs& g) {
  AlignmentSets sets;
  std::vector<bool> seen(g.K + 1, false);
  for (Vertex v = 1; v <= g.K; ++v) {
    if (seen[v]) continue;
    auto dist = alignment_distances(g, v);
    std::vector<Vertex> component;
    for (Vertex w = 1; w <= g.K; ++w) {
      if (dist[w] >= 0) {
        component.push_back(w);
        seen[w] = true;
      }
    }
    sets.push_back(std::move(component));
  }
  return sets;
}

std::vector<InternalConflict> internal_conflicts(const AlignmentConflictGraphs& g, const AlignmentSets& sets) {
  std::vector<int> set_of(g.K + 1, -1);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (Vertex v : sets[s]) set_of[v] = static_cast<int>(s);
  }
  std::vector<InternalConflict> out;
  std::vector<std::vector<int>> dist_cache(g.K + 1);
  for (const auto& [from, to] : g.conflict_edges) {
    if (set_of[from] != set_of[to]) continue;
    if (dist_cache[from].empty()) dist_cache[from] = alignment_distances(g, from);
    out.push_back({from, to, dist_cache[from][to]});
  }
  return out;
}

VertexSet co_interferers(const NetworkTopology& t, Vertex i) {
  VertexSet out;
  for (Vertex j = 1; j <= t.K(); ++j) {
    const auto& ij = t.interferers(j);
    if (!ij.contains(i)) continue;
    out.insert(ij.begin(), ij.end());
  }
  out.erase(i);
  return out;
}

VertexSet interfered_by(const NetworkTopology& t, Vertex u) {
  VertexSet out;
  for (Vertex j = 1; j <= t.K(); ++j) {
    if (t.interferes(u, j)) out.insert(j);
  }
  return out;
}

namespace {

// Conflict adjacency restricted to members (as positions 0..n-1).
std::vector<std::vector<int>> induced_conflicts(const AlignmentConflictGraphs& g, const std::vector<Vertex>& members) {
  const int n = static_cast<int>(members.size());
  std::vector<std::vector<int>> adj(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && g.conflicts(members[a], members[b])) adj[a].push_back(b);
    }
  }
  return adj;
}

// Shortest closed walk through source with the requested parity (1 = odd),
// or -1. dist is indexed by 2 * vertex + parity.
int shortest_closed_walk(const std::vector<std::vector<int>>& adj, int source, int parity) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> dist(2 * n, -1);
  std::deque<int> queue{2 * source};
  dist[2 * source] = 0;
  while (!queue.empty()) {
    int state = queue.front();
    queue.pop_front();
    int v = state / 2, p = state % 2;
    for (int w : adj[v]) {
      int next = 2 * w + (p ^ 1);
      if (w == source && (p ^ 1) == parity) return dist[state] + 1;
      if (dist[next] < 0) {
        dist[next] = dist[state] + 1;
        queue.push_back(next);
      }
    }
  }
  return -1;
}

// Shortest directed cycle through source (any length), or -1.
int shortest_cycle_through(const std::vector<std::vector<int>>& adj, int source) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (w == source) return dist[v] + 1;
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return -1;
}

template <class PerSource>
std::optional<int> min_over_induced(const NetworkTopology& t, const AlignmentConflictGraphs& g, PerSource per_source) {
  std::optional<int> best;
  for (Vertex u = 1; u <= t.K(); ++u) {
    auto s = interfered_by(t, u);
    std::vector<Vertex> members(s.begin(), s.end());
    if (members.size() < 2) continue;
    auto adj = induced_conflicts(g, members);
    for (int source = 0; source < static_cast<int>(members.size()); ++source) {
      int len = per_source(adj, source);
      if (len > 0 && (!best || len < *best)) best = len;
    }
  }
  return best;
}

}  // namespace

std::optional<int> shortest_odd_internal_conflict_cycle(const NetworkTopology& t, const AlignmentConflictGraphs& g) {
  return min_over_induced(t, g, [](const auto& adj, int s) { return shortest_closed_walk(adj, s, 1); });
}

std::optional<int> shortest_internal_conflict_cycle(const NetworkTopology& t, const AlignmentConflictGraphs& g) {
  return min_over_induced(t, g, [](const auto& adj, int s) { return shortest_cycle_through(adj, s); });
}

TopologyAnalysis analyze(const NetworkTopology& t) {
  TopologyAnalysis a;
  a.graphs = build_graphs(t);
  a.alignment_sets = alignment_sets(a.graphs);
  a.set_of.assign(t.K(), -1);
  for (std::size_t s = 0; s < a.alignment_sets.size(); ++s) {
    for (Vertex v : a.alignment_sets[s]) a.set_of[v - 1] = static_cast<int>(s);
  }
  a.internal_conflicts = internal_conflicts(a.graphs, a.alignment_sets);
  a.incoming_internal_count.assign(t.K(), 0);
  for (const auto& c : a.internal_conflicts) ++a.incoming_internal_count[c.to - 1];
  for (Vertex j = 1; j <= t.K(); ++j) {
    if (a.incoming_internal_count[j - 1] >= 2) a.B.insert(j);
  }
  for (const auto& c : a.internal_conflicts) {
    if (a.B.contains(c.to) && (!a.delta_min || c.distance < *a.delta_min)) a.delta_min = c.distance;
  }
  a.co_interferers.reserve(t.K());
  for (Vertex i = 1; i <= t.K(); ++i) {
    a.co_interferers.push_back(co_interferers(t, i));
    a.max_co_interferers = std::max(a.max_co_interferers, static_cast<int>(a.co_interferers.back().size()));
  }
  a.L_min_odd = shortest_odd_internal_conflict_cycle(t, a.graphs);
  a.shortest_internal_cycle = shortest_internal_conflict_cycle(t, a.graphs);
  a.interference_free = t.interference_free();
  return a;
}

namespace {

nlohmann::json int_or_inf(const std::optional<int>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json("inf");
}

nlohmann::json per_vertex(const std::vector<int>& values) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t v = 0; v < values.size(); ++v) out[std::to_string(v + 1)] = values[v];
  return out;
}

}  // namespace

nlohmann::json analysis_to_json(const TopologyAnalysis& a) {
  using nlohmann::json;
  json alignment = json::array(), conflicts = json::array(), internal = json::array();
  for (const auto& [x, y] : a.graphs.alignment_edges) alignment.push_back({x, y});
  for (const auto& [x, y] : a.graphs.conflict_edges) conflicts.push_back({x, y});
  for (const auto& c : a.internal_conflicts) internal.push_back({{"from", c.from}, {"to", c.to}, {"distance", c.distance}});
  json co = json::object();
  for (std::size_t i = 0; i < a.co_interferers.size(); ++i) {
    const auto& s = a.co_interferers[i];
    co[std::to_string(i + 1)] = std::vector<int>(s.begin(), s.end());
  }
  return {
      {"K", a.graphs.K},
      {"alignment_edges", alignment},
      {"conflict_edges", conflicts},
      {"alignment_sets", a.alignment_sets},
      {"internal_conflicts", internal},
      {"incoming_internal_count", per_vertex(a.incoming_internal_count)},
      {"co_interferers", co},
      {"B", std::vector<int>(a.B.begin(), a.B.end())},
      {"delta_min", int_or_inf(a.delta_min)},
      {"L_min_odd", int_or_inf(a.L_min_odd)},
      {"shortest_internal_cycle", int_or_inf(a.shortest_internal_cycle)},
      {"max_co_interferers", a.max_co_interferers},
      {"class", std::string(to_string(classify(a)))},
  };
}

std::string to_dot(const TopologyAnalysis& a) {
  std::ostringstream out;
  out << "digraph topology {\n";
  out << "  node [shape=circle];\n";
  for (Vertex v = 1; v <= a.graphs.K; ++v) out << "  " << v << ";\n";
  for (const auto& [x, y] : a.graphs.alignment_edges) {
    out << "  " << x << " -> " << y << " [dir=none, style=solid, color=black];\n";
  }
  for (const auto& [x, y] : a.graphs.conflict_edges) {
    out << "  " << x << " -> " << y << " [style=dashed, color=red];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace tim
