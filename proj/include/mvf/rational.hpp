#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvf {

using Int = mpz_class;
using Rat = mpq_class;

// Parses "7", "-3/4", "0". Throws std::invalid_argument on malformed input.
Rat parse_rational(std::string_view text);

// "-3/4" style; integers print without the "/1".
std::string rat_str(const Rat& q);

double rat_to_double(const Rat& q);

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace mvf
