#include "tim/error.hpp"
#include "tim/scheme.hpp"

#include <algorithm>

namespace tim {

void validate_scheme(const LinearScheme& s) {
  if (s.m < 1) throw Error(ErrorCode::DimensionMismatch, "m must be positive");
  if (s.num_modes < 1) throw Error(ErrorCode::DimensionMismatch, "num_modes must be positive");
  if (s.beamforming.size() != s.mode_patterns.size()) {
    throw Error(ErrorCode::DimensionMismatch, "beamforming and mode pattern counts differ");
  }
  for (Vertex i = 1; i <= s.K(); ++i) {
    const auto& v = s.V(i);
    if (v.rows() != static_cast<std::size_t>(s.m)) {
      throw Error(ErrorCode::DimensionMismatch, "V_" + std::to_string(i) + " does not have m rows");
    }
    if (v.cols() > v.rows() || rank_exact(v) != v.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "V_" + std::to_string(i) + " lacks full column rank");
    }
    const auto& l = s.L(i);
    if (l.size() != static_cast<std::size_t>(s.m)) {
      throw Error(ErrorCode::DimensionMismatch, "L_" + std::to_string(i) + " does not have length m");
    }
    for (int mode : l) {
      if (mode < 1 || mode > s.num_modes) {
        throw Error(ErrorCode::DimensionMismatch, "L_" + std::to_string(i) + " uses an unknown mode");
      }
    }
  }
}

void validate_scheme(const LinearScheme& s, const NetworkTopology& t) {
  if (s.K() != t.K()) throw Error(ErrorCode::DimensionMismatch, "scheme and topology disagree on K");
  validate_scheme(s);
}

nlohmann::json scheme_to_json(const LinearScheme& s) {
  using nlohmann::json;
  json beamforming = json::object(), modes = json::object();
  for (Vertex i = 1; i <= s.K(); ++i) {
    json columns = json::array();
    for (std::size_t c = 0; c < s.V(i).cols(); ++c) {
      json col = json::array();
      for (const auto& x : s.V(i).column(c)) col.push_back(to_pq(x));
      columns.push_back(std::move(col));
    }
    beamforming[std::to_string(i)] = std::move(columns);
    modes[std::to_string(i)] = s.L(i);
  }
  return {{"m", s.m}, {"num_modes", s.num_modes}, {"beamforming", beamforming}, {"mode_patterns", modes}};
}

std::string serialize_scheme(const LinearScheme& s) { return scheme_to_json(s).dump(); }

namespace {

int parse_key(const std::string& key, int K, std::string_view what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw Error(ErrorCode::MalformedDocument, std::string(what) + " key '" + key + "'");
  if (v < 1 || v > K) throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " " + key);
  return v;
}

}  // namespace

LinearScheme parse_scheme(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document.begin(), document.end());
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
  try {
    LinearScheme s;
    s.m = doc.at("m").get<int>();
    s.num_modes = doc.at("num_modes").get<int>();
    const json& bf = doc.at("beamforming");
    const json& mp = doc.at("mode_patterns");
    if (!bf.is_object() || !mp.is_object() || bf.size() != mp.size()) {
      throw Error(ErrorCode::MalformedDocument, "beamforming and mode_patterns must cover the same transmitters");
    }
    const int K = static_cast<int>(bf.size());
    s.beamforming.resize(K);
    s.mode_patterns.resize(K);
    std::vector<bool> seen_v(K, false), seen_l(K, false);
    for (const auto& [key, columns] : bf.items()) {
      const int i = parse_key(key, K, "transmitter");
      seen_v[i - 1] = true;
      std::vector<std::vector<Rational>> cols;
      for (const auto& col : columns) {
        std::vector<Rational> c;
        for (const auto& x : col) c.push_back(parse_rational(x.get<std::string>()));
        cols.push_back(std::move(c));
      }
      s.beamforming[i - 1] = RationalMatrix::from_columns(static_cast<std::size_t>(std::max(s.m, 0)), cols);
    }
    for (const auto& [key, pattern] : mp.items()) {
      const int j = parse_key(key, K, "receiver");
      seen_l[j - 1] = true;
      s.mode_patterns[j - 1] = pattern.get<std::vector<int>>();
    }
    if (std::find(seen_v.begin(), seen_v.end(), false) != seen_v.end() ||
        std::find(seen_l.begin(), seen_l.end(), false) != seen_l.end()) {
      throw Error(ErrorCode::MalformedDocument, "transmitter keys must be 1..K");
    }
    validate_scheme(s);
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
}

}  // namespace tim
