#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace tim {

// Vertex / user indices are 1-based everywhere in the public API.
using Vertex = int;
using VertexSet = std::set<Vertex>;

// K transmitter-receiver pairs plus, for every receiver R_j, the set I_j of
// transmitters other than T_j heard above the noise floor. The direct link
// T_j -> R_j is implicit.
class NetworkTopology {
 public:
  // Throws Error(IndexOutOfRange | SelfInterference) on invalid sets.
  NetworkTopology(int K, std::vector<VertexSet> interferers);
  explicit NetworkTopology(int K) : NetworkTopology(K, std::vector<VertexSet>(K)) {}

  int K() const noexcept { return k_; }
  const VertexSet& interferers(Vertex j) const { return interferers_.at(j - 1); }
  bool interferes(Vertex i, Vertex j) const { return interferers(j).contains(i); }
  bool interference_free() const noexcept;
  std::size_t cross_link_count() const noexcept;

  // Returns a copy with the cross link T_i -> R_j added.
  NetworkTopology with_link(Vertex i, Vertex j) const;
  // Returns a copy with the cross link T_i -> R_j removed.
  NetworkTopology without_link(Vertex i, Vertex j) const;

  friend bool operator==(const NetworkTopology&, const NetworkTopology&) = default;

 private:
  int k_;
  std::vector<VertexSet> interferers_;
};

// Accepts both the JSON form and the compact "K n" / "j <- i ..." text form.
NetworkTopology parse_topology(std::string_view document);
NetworkTopology parse_topology_json(std::string_view document);
NetworkTopology parse_topology_text(std::string_view document);

nlohmann::json topology_to_json(const NetworkTopology& t);
std::string serialize_topology_json(const NetworkTopology& t);
std::string serialize_topology_text(const NetworkTopology& t);

inline constexpr int kMaxEnumerationK = 5;

// Number of topologies on K users: 2^(K(K-1)).
std::uint64_t topology_count(int K);

// The index-th topology in lexicographic order of the flattened indicator
// vector over pairs (j, i), i != j, receiver-major. Index 0 is interference
// free; the last index is fully connected.
NetworkTopology topology_at(int K, std::uint64_t index);

// Calls visit for every topology on K users, in index order. Throws
// Error(KTooLarge) for K > kMaxEnumerationK.
void enumerate_topologies(int K, const std::function<void(std::uint64_t, const NetworkTopology&)>& visit);

// Each cross link present independently with probability density.
NetworkTopology random_topology(int K, double density, std::uint64_t seed);

}  // namespace tim
