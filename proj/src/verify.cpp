#include "tim/verify.hpp"

#include "tim/error.hpp"

#include <algorithm>
#include <random>

namespace tim {

const Rational& ChannelRealization::gain(Vertex j, Vertex i, int mode) const {
  auto it = gains.find({j, i, mode});
  if (it == gains.end()) {
    throw Error(ErrorCode::LinkAbsent, "no gain for link T" + std::to_string(i) + " -> R" + std::to_string(j) +
                                           " in mode " + std::to_string(mode));
  }
  return it->second;
}

ChannelRealization draw_channels(const NetworkTopology& t, int num_modes, std::uint64_t seed) {
  if (num_modes < 1) throw Error(ErrorCode::DimensionMismatch, "num_modes must be at least 1");
  ChannelRealization ch;
  ch.num_modes = num_modes;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> gain(1, kGainMax);
  for (Vertex j = 1; j <= t.K(); ++j) {
    VertexSet links = t.interferers(j);
    links.insert(j);
    for (Vertex i : links) {
      for (int l = 1; l <= num_modes; ++l) ch.gains.emplace(std::tuple{j, i, l}, Rational(gain(rng)));
    }
  }
  return ch;
}

std::vector<Rational> channel_diagonal(Vertex j, Vertex i, const LinearScheme& s, const ChannelRealization& ch) {
  if (!ch.has_link(j, i)) {
    throw Error(ErrorCode::LinkAbsent, "T" + std::to_string(i) + " is not heard at R" + std::to_string(j));
  }
  const auto& pattern = s.L(j);
  std::vector<Rational> d;
  d.reserve(pattern.size());
  for (int mode : pattern) d.push_back(ch.gain(j, i, mode));
  return d;
}

RationalMatrix channel_matrix(Vertex j, Vertex i, const LinearScheme& s, const ChannelRealization& ch) {
  auto d = channel_diagonal(j, i, s, ch);
  RationalMatrix h(d.size(), d.size());
  for (std::size_t k = 0; k < d.size(); ++k) h(k, k) = d[k];
  return h;
}

RationalMatrix interference_matrix(Vertex j, const NetworkTopology& t, const LinearScheme& s,
                                   const ChannelRealization& ch) {
  RationalMatrix a(static_cast<std::size_t>(s.m), 0);
  for (Vertex i : t.interferers(j)) a = hconcat(a, scale_rows(channel_diagonal(j, i, s, ch), s.V(i)));
  return a;
}

RationalMatrix desired_matrix(Vertex j, const LinearScheme& s, const ChannelRealization& ch) {
  return scale_rows(channel_diagonal(j, j, s, ch), s.V(j));
}

ProjectedDim projected_desired_ranks(Vertex j, const NetworkTopology& t, const LinearScheme& s,
                                     const ChannelRealization& ch) {
  if (s.K() != t.K()) throw Error(ErrorCode::DimensionMismatch, "scheme and topology disagree on K");
  auto a = interference_matrix(j, t, s, ch);
  auto b = desired_matrix(j, s, ch);
  ProjectedDim out;
  out.rank_interference = rank_exact(a);
  out.rank_total = rank_exact(hconcat(a, b));
  return out;
}

int projected_desired_dim(Vertex j, const NetworkTopology& t, const LinearScheme& s, const ChannelRealization& ch) {
  return projected_desired_ranks(j, t, s, ch).dim();
}

VerificationReport verify_scheme(const NetworkTopology& t, const LinearScheme& s, const Rational& target_rate,
                                 int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::DimensionMismatch, "trials must be at least 1");
  validate_scheme(s, t);

  VerificationReport r;
  r.trials = trials;
  r.seed = seed;
  r.target_rate = target_rate;
  r.per_receiver_dim.assign(t.K(), s.m + 1);
  r.diagnostics.assign(t.K(), {});
  r.pass = true;
  std::optional<Rational> worst;
  for (int trial = 0; trial < trials; ++trial) {
    auto ch = draw_channels(t, s.num_modes, derive_seed(seed, static_cast<std::uint64_t>(trial)));
    int min_dim = s.m;
    for (Vertex j = 1; j <= t.K(); ++j) {
      auto ranks = projected_desired_ranks(j, t, s, ch);
      if (ranks.dim() < r.per_receiver_dim[j - 1]) {
        r.per_receiver_dim[j - 1] = ranks.dim();
        r.diagnostics[j - 1] = ranks;
      }
      min_dim = std::min(min_dim, ranks.dim());
    }
    Rational rate(min_dim, s.m);
    rate.canonicalize();
    if (rate < target_rate) r.pass = false;
    if (!worst || rate < *worst) worst = rate;
  }
  r.achieved_sym_rate = *worst;
  return r;
}

nlohmann::json report_to_json(const VerificationReport& r) {
  nlohmann::json per = nlohmann::json::object();
  for (std::size_t j = 0; j < r.per_receiver_dim.size(); ++j) per[std::to_string(j + 1)] = r.per_receiver_dim[j];
  return {
      {"pass", r.pass},
      {"achieved", to_pq(r.achieved_sym_rate)},
      {"per_receiver", per},
      {"trials", r.trials},
      {"seed", r.seed},
  };
}

}  // namespace tim
