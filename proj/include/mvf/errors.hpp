#pragma once

#include <stdexcept>
#include <string>

namespace mvf {

// Malformed literals, config lines, formula text.
struct parse_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operand outside the valuation ring, precision floor too coarse, etc.
struct valuation_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Bounded searches (dense_witness, pi_witness) that exhaust their box.
struct not_found_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct newton_error : std::runtime_error {
    enum class kind { bad_seed, non_simple_root, non_convergence };
    kind reason;
    newton_error(kind k, const std::string& msg) : std::runtime_error(msg), reason(k) {}
};

}  // namespace mvf
