#pragma once

#include "tim/scheme.hpp"

#include <map>
#include <tuple>

namespace tim {

inline constexpr long kGainMax = 1L << 20;

struct ChannelRealization {
  int num_modes = 1;
  // (receiver j, transmitter i, mode l) -> h_{j,i}(l), for i in I_j ∪ {j}.
  std::map<std::tuple<Vertex, Vertex, int>, Rational> gains;

  const Rational& gain(Vertex j, Vertex i, int mode) const;
  bool has_link(Vertex j, Vertex i) const { return gains.contains({j, i, 1}); }
};

// Independent uniform integers in [1, 2^20].
ChannelRealization draw_channels(const NetworkTopology& t, int num_modes, std::uint64_t seed);

// Diagonal of H^m_{j,i}: entry t is h_{j,i}(L_j(t)). Throws Error(LinkAbsent).
std::vector<Rational> channel_diagonal(Vertex j, Vertex i, const LinearScheme& s, const ChannelRealization& ch);
RationalMatrix channel_matrix(Vertex j, Vertex i, const LinearScheme& s, const ChannelRealization& ch);

struct ProjectedDim {
  std::size_t rank_interference = 0;  // rank(A_j)
  std::size_t rank_total = 0;         // rank([A_j B_j])
  int dim() const { return static_cast<int>(rank_total - rank_interference); }
};

// A_j = [H_{j,i} V_i]_{i in I_j}, B_j = H_{j,j} V_j.
RationalMatrix interference_matrix(Vertex j, const NetworkTopology& t, const LinearScheme& s,
                                   const ChannelRealization& ch);
RationalMatrix desired_matrix(Vertex j, const LinearScheme& s, const ChannelRealization& ch);

ProjectedDim projected_desired_ranks(Vertex j, const NetworkTopology& t, const LinearScheme& s,
                                     const ChannelRealization& ch);

// rank([A_j B_j]) - rank(A_j): the dimension of the desired signal left after
// projecting away the interference subspace at R_j.
int projected_desired_dim(Vertex j, const NetworkTopology& t, const LinearScheme& s, const ChannelRealization& ch);

struct VerificationReport {
  std::vector<int> per_receiver_dim;  // [j - 1], minimum over trials
  Rational achieved_sym_rate;         // min_j d_j / m over all trials
  Rational target_rate;
  int trials = 0;
  std::uint64_t seed = 0;
  bool pass = false;
  std::vector<ProjectedDim> diagnostics;  // [j - 1], from the worst trial
};

inline constexpr int kDefaultTrials = 3;

VerificationReport verify_scheme(const NetworkTopology& t, const LinearScheme& s, const Rational& target_rate,
                                 int trials = kDefaultTrials, std::uint64_t seed = 1);

nlohmann::json report_to_json(const VerificationReport& r);

}  // namespace tim
