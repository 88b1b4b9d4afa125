#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kt {

using Q = mpq_class;

// Accepts "p/q", "p" or "-p/q"; the result is canonicalized.
Q parse_rational(std::string_view s);

std::string to_string(const Q& q);

inline bool is_zero(const Q& q) { return sgn(q) == 0; }

}  // namespace kt
