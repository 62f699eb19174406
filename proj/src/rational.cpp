#include "tim/rational.hpp"

#include "tim/error.hpp"

#include <cctype>

namespace tim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SelfInterference: return "SelfInterference";
    case ErrorCode::DuplicateReceiverEntry: return "DuplicateReceiverEntry";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::NotBestTopology: return "NotBestTopology";
    case ErrorCode::NotPathOrCycle: return "NotPathOrCycle";
    case ErrorCode::PlanInfeasible: return "PlanInfeasible";
    case ErrorCode::WrongClass: return "WrongClass";
    case ErrorCode::LinkAbsent: return "LinkAbsent";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DifferentSets: return "DifferentSets";
  }
  return "Unknown";
}

std::string to_pq(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t k = start; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::MalformedDocument, "not a rational: '" + std::string(text) + "'");
  }
  Integer d = parse_integer(den);
  if (d == 0) throw Error(ErrorCode::MalformedDocument, "zero denominator: '" + std::string(text) + "'");
  Rational r(parse_integer(num), d);
  r.canonicalize();
  return r;
}

double to_double(const Rational& r) { return r.get_d(); }

std::string to_pq_or_inf(const ExtendedRational& r) { return r ? to_pq(*r) : "inf"; }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace tim
