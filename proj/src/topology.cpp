#include "tim/topology.hpp"

#include "tim/error.hpp"

#include <charconv>
#include <random>
#include <sstream>

namespace tim {

NetworkTopology::NetworkTopology(int K, std::vector<VertexSet> interferers)
    : k_(K), interferers_(std::move(interferers)) {
  if (K < 1) throw Error(ErrorCode::IndexOutOfRange, "K must be positive, got " + std::to_string(K));
  if (static_cast<int>(interferers_.size()) != K) {
    throw Error(ErrorCode::IndexOutOfRange, "expected " + std::to_string(K) + " interferer sets");
  }
  for (Vertex j = 1; j <= K; ++j) {
    for (Vertex i : interferers_[j - 1]) {
      if (i < 1 || i > K) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "transmitter " + std::to_string(i) + " at receiver " + std::to_string(j));
      }
      if (i == j) throw Error(ErrorCode::SelfInterference, "receiver " + std::to_string(j) + " lists itself");
    }
  }
}

bool NetworkTopology::interference_free() const noexcept { return cross_link_count() == 0; }

std::size_t NetworkTopology::cross_link_count() const noexcept {
  std::size_t n = 0;
  for (const auto& s : interferers_) n += s.size();
  return n;
}

NetworkTopology NetworkTopology::with_link(Vertex i, Vertex j) const {
  auto sets = interferers_;
  sets.at(j - 1).insert(i);
  return NetworkTopology(k_, std::move(sets));
}

NetworkTopology NetworkTopology::without_link(Vertex i, Vertex j) const {
  auto sets = interferers_;
  sets.at(j - 1).erase(i);
  return NetworkTopology(k_, std::move(sets));
}

namespace {

int parse_index(std::string_view token, std::string_view what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::MalformedDocument, std::string(what) + " is not an integer: '" + std::string(token) + "'");
  }
  return value;
}

void check_index(int v, int K, std::string_view what) {
  if (v < 1 || v > K) {
    throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " " + std::to_string(v) + " outside [1.." +
                                                std::to_string(K) + "]");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    if (end > pos) out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

// Adds i to I_j after range, self and duplicate checks.
void add_interferer(std::vector<VertexSet>& sets, int K, Vertex j, Vertex i) {
  check_index(i, K, "transmitter");
  if (i == j) throw Error(ErrorCode::SelfInterference, "receiver " + std::to_string(j) + " lists itself");
  if (!sets[j - 1].insert(i).second) {
    throw Error(ErrorCode::MalformedDocument,
                "transmitter " + std::to_string(i) + " repeated at receiver " + std::to_string(j));
  }
}

}  // namespace

NetworkTopology parse_topology_json(std::string_view document) {
  using nlohmann::json;
  // nlohmann silently keeps the last of duplicate object keys, so duplicates
  // are caught while parsing. Depth 2 is the interferers object.
  std::vector<std::set<std::string>> seen;
  bool duplicate_receiver = false;
  bool duplicate_other = false;
  json::parser_callback_t cb = [&](int depth, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: seen.emplace_back(); break;
      case json::parse_event_t::object_end:
        if (!seen.empty()) seen.pop_back();
        break;
      case json::parse_event_t::key:
        if (!seen.empty() && !seen.back().insert(parsed.get<std::string>()).second) {
          (depth == 2 ? duplicate_receiver : duplicate_other) = true;
        }
        break;
      default: break;
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(document.begin(), document.end(), cb);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
  if (duplicate_receiver) throw Error(ErrorCode::DuplicateReceiverEntry, "receiver listed twice");
  if (duplicate_other) throw Error(ErrorCode::MalformedDocument, "duplicate key");
  if (!doc.is_object() || !doc.contains("K") || !doc["K"].is_number_integer()) {
    throw Error(ErrorCode::MalformedDocument, "expected object with integer \"K\"");
  }
  const int K = doc["K"].get<int>();
  if (K < 1) throw Error(ErrorCode::MalformedDocument, "K must be positive");
  std::vector<VertexSet> sets(K);
  if (doc.contains("interferers")) {
    const json& map = doc["interferers"];
    if (!map.is_object()) throw Error(ErrorCode::MalformedDocument, "\"interferers\" must be an object");
    for (const auto& [key, list] : map.items()) {
      const Vertex j = parse_index(key, "receiver");
      check_index(j, K, "receiver");
      if (!list.is_array()) throw Error(ErrorCode::MalformedDocument, "interferer list must be an array");
      for (const auto& item : list) {
        if (!item.is_number_integer()) throw Error(ErrorCode::MalformedDocument, "interferer must be an integer");
        add_interferer(sets, K, j, item.get<int>());
      }
    }
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "K" && key != "interferers") throw Error(ErrorCode::MalformedDocument, "unknown key \"" + key + "\"");
  }
  return NetworkTopology(K, std::move(sets));
}

NetworkTopology parse_topology_text(std::string_view document) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    std::size_t end = document.find('\n', pos);
    if (end == std::string_view::npos) end = document.size();
    auto line = trim(document.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') lines.push_back(line);
    pos = end + 1;
  }
  if (lines.empty()) throw Error(ErrorCode::MalformedDocument, "empty document");

  auto header = split_ws(lines[0]);
  if (header.size() != 2 || header[0] != "K") throw Error(ErrorCode::MalformedDocument, "first line must be 'K <int>'");
  const int K = parse_index(header[1], "K");
  if (K < 1) throw Error(ErrorCode::MalformedDocument, "K must be positive");

  std::vector<VertexSet> sets(K);
  std::vector<bool> listed(K, false);
  for (std::size_t n = 1; n < lines.size(); ++n) {
    auto tokens = split_ws(lines[n]);
    if (tokens.size() < 2 || tokens[1] != "<-") {
      throw Error(ErrorCode::MalformedDocument, "expected 'j <- i1 i2 ...': '" + std::string(lines[n]) + "'");
    }
    const Vertex j = parse_index(tokens[0], "receiver");
    check_index(j, K, "receiver");
    if (listed[j - 1]) throw Error(ErrorCode::DuplicateReceiverEntry, "receiver " + std::to_string(j) + " listed twice");
    listed[j - 1] = true;
    for (std::size_t k = 2; k < tokens.size(); ++k) add_interferer(sets, K, j, parse_index(tokens[k], "transmitter"));
  }
  return NetworkTopology(K, std::move(sets));
}

NetworkTopology parse_topology(std::string_view document) {
  auto body = trim(document);
  while (!body.empty() && (body.front() == '\n')) body = trim(body.substr(1));
  if (!body.empty() && body.front() == '{') return parse_topology_json(document);
  return parse_topology_text(document);
}

nlohmann::json topology_to_json(const NetworkTopology& t) {
  nlohmann::json map = nlohmann::json::object();
  for (Vertex j = 1; j <= t.K(); ++j) {
    const auto& s = t.interferers(j);
    if (!s.empty()) map[std::to_string(j)] = std::vector<int>(s.begin(), s.end());
  }
  return {{"K", t.K()}, {"interferers", map}};
}

std::string serialize_topology_json(const NetworkTopology& t) { return topology_to_json(t).dump(); }

std::string serialize_topology_text(const NetworkTopology& t) {
  std::ostringstream out;
  out << "K " << t.K() << '\n';
  for (Vertex j = 1; j <= t.K(); ++j) {
    const auto& s = t.interferers(j);
    if (s.empty()) continue;
    out << j << " <-";
    for (Vertex i : s) out << ' ' << i;
    out << '\n';
  }
  return out.str();
}

std::uint64_t topology_count(int K) {
  if (K < 1) throw Error(ErrorCode::IndexOutOfRange, "K must be positive");
  if (K > kMaxEnumerationK) throw Error(ErrorCode::KTooLarge, "enumeration supports K <= 5");
  return std::uint64_t{1} << (K * (K - 1));
}

NetworkTopology topology_at(int K, std::uint64_t index) {
  const std::uint64_t count = topology_count(K);
  if (index >= count) throw Error(ErrorCode::IndexOutOfRange, "topology index out of range");
  const int bits = K * (K - 1);
  std::vector<VertexSet> sets(K);
  int position = 0;
  for (Vertex j = 1; j <= K; ++j) {
    for (Vertex i = 1; i <= K; ++i) {
      if (i == j) continue;
      if ((index >> (bits - 1 - position)) & 1U) sets[j - 1].insert(i);
      ++position;
    }
  }
  return NetworkTopology(K, std::move(sets));
}

void enumerate_topologies(int K, const std::function<void(std::uint64_t, const NetworkTopology&)>& visit) {
  const std::uint64_t count = topology_count(K);
  for (std::uint64_t index = 0; index < count; ++index) visit(index, topology_at(K, index));
}

NetworkTopology random_topology(int K, double density, std::uint64_t seed) {
  if (K < 1) throw Error(ErrorCode::IndexOutOfRange, "K must be positive");
  if (!(density >= 0.0 && density <= 1.0)) throw Error(ErrorCode::IndexOutOfRange, "density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution link(density);
  std::vector<VertexSet> sets(K);
  for (Vertex j = 1; j <= K; ++j) {
    for (Vertex i = 1; i <= K; ++i) {
      if (i != j && link(rng)) sets[j - 1].insert(i);
    }
  }
  return NetworkTopology(K, std::move(sets));
}

}  // namespace tim
