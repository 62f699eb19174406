#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tim {

using Rational = mpq_class;
using Integer = mpz_class;

// Canonical "p/q" form: lowest terms, q >= 1, always with a slash.
std::string to_pq(const Rational& r);

// Accepts "p/q" or a bare integer "p". Throws Error(MalformedDocument).
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

// A rational that may be +infinity (used for bound terms and distances).
using ExtendedRational = std::optional<Rational>;

std::string to_pq_or_inf(const ExtendedRational& r);

// splitmix64 finalizer; derives independent seeds for substreams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace tim
