#pragma once

#include <tim/topology.hpp>

namespace fixtures {

inline constexpr const char* kA = R"({"K":4,"interferers":{"1":[3,4],"2":[1],"3":[1,2],"4":[3]}})";
inline constexpr const char* kB = R"({"K":5,"interferers":{"1":[2,3],"2":[1],"3":[4,5],"4":[1,2]}})";
inline constexpr const char* kC = R"({"K":4,"interferers":{"2":[1,3],"3":[1,4],"4":[1,2]}})";

inline tim::NetworkTopology A() { return tim::parse_topology(kA); }
inline tim::NetworkTopology B() { return tim::parse_topology(kB); }
inline tim::NetworkTopology C() { return tim::parse_topology(kC); }

}  // namespace fixtures
