#pragma once

#include <stdexcept>
#include <string>

#include "ringlin/ring.hpp"

namespace ringlin {

// Raised for malformed ring/element/instance text (CLI exit code 2).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ring s-expressions: (zmod M) | (poly CHAR (VARS...) (GENS...)) | (sum R R...)
// `;` starts a comment running to the end of the line.
RingPtr parse_ring(const std::string& text);

// Polynomial like `x^2+y^3`, `2*x*y`, `1`. Coefficients must lie in [0, q);
// out-of-range coefficients are rejected rather than reduced.
Poly parse_poly(const std::string& text, const std::vector<std::string>& vars,
                int64_t q);

// Element literals: zmod -> decimal residue; poly -> polynomial expression;
// sum -> (ELEM | ELEM | ...).
Elem parse_element(const Ring& ring, const std::string& text);

}  // namespace ringlin
