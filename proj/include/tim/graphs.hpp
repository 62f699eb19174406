#pragma once

#include "tim/topology.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace tim {

using Edge = std::pair<Vertex, Vertex>;

// Alignment edges are unordered (stored with first < second); conflict edges
// are ordered (from, to) with from in I_to.
struct AlignmentConflictGraphs {
  int K = 0;
  std::set<Edge> alignment_edges;
  std::set<Edge> conflict_edges;

  bool aligned(Vertex a, Vertex b) const { return alignment_edges.contains(std::minmax(a, b)); }
  bool conflicts(Vertex from, Vertex to) const { return conflict_edges.contains({from, to}); }
  // Sorted alignment neighbours of v.
  std::vector<Vertex> alignment_neighbors(Vertex v) const;
};

struct InternalConflict {
  Vertex from;
  Vertex to;
  int distance;  // alignment-edge hops between the endpoints

  friend bool operator==(const InternalConflict&, const InternalConflict&) = default;
  friend auto operator<=>(const InternalConflict&, const InternalConflict&) = default;
};

// Connected components of the alignment graph, each sorted, ordered by their
// smallest member.
using AlignmentSets = std::vector<std::vector<Vertex>>;

struct TopologyAnalysis {
  AlignmentConflictGraphs graphs;
  AlignmentSets alignment_sets;
  std::vector<int> set_of;  // set_of[v - 1] = index into alignment_sets
  std::vector<InternalConflict> internal_conflicts;
  std::vector<VertexSet> co_interferers;     // [i - 1] = T^_i
  std::vector<int> incoming_internal_count;  // [j - 1]
  VertexSet B;                               // vertices with >= 2 incoming internal conflicts
  std::optional<int> delta_min;              // nullopt = infinity
  std::optional<int> L_min_odd;              // nullopt = infinity
  std::optional<int> shortest_internal_cycle;  // any parity; diagnostics only
  int max_co_interferers = 0;
  bool interference_free = true;

  const VertexSet& co_interferers_of(Vertex i) const { return co_interferers.at(i - 1); }
  int incoming_internal(Vertex j) const { return incoming_internal_count.at(j - 1); }
  bool same_set(Vertex a, Vertex b) const { return set_of.at(a - 1) == set_of.at(b - 1); }
};

AlignmentConflictGraphs build_graphs(const NetworkTopology& t);

AlignmentSets alignment_sets(const AlignmentConflictGraphs& g);

// Breadth-first distances over alignment edges from source, indexed by vertex
// (entry 0 unused); -1 = unreachable.
std::vector<int> alignment_distances(const AlignmentConflictGraphs& g, Vertex source);

std::vector<InternalConflict> internal_conflicts(const AlignmentConflictGraphs& g, const AlignmentSets& sets);

VertexSet co_interferers(const NetworkTopology& t, Vertex i);

// S_u = { j : u in I_j }: the receivers transmitter u reaches.
VertexSet interfered_by(const NetworkTopology& t, Vertex u);

// Minimum odd length of a directed conflict cycle inside the subgraph induced
// on some S_u. Uses breadth-first search over (vertex, walk parity) states.
std::optional<int> shortest_odd_internal_conflict_cycle(const NetworkTopology& t, const AlignmentConflictGraphs& g);

// Shortest directed conflict cycle of any length inside some S_u.
std::optional<int> shortest_internal_conflict_cycle(const NetworkTopology& t, const AlignmentConflictGraphs& g);

TopologyAnalysis analyze(const NetworkTopology& t);

nlohmann::json analysis_to_json(const TopologyAnalysis& a);

// Graphviz rendering: solid black undirected alignment edges, dashed red
// directed conflict edges.
std::string to_dot(const TopologyAnalysis& a);

}  // namespace tim
