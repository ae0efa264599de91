#pragma once

#include <stdexcept>
#include <string>

namespace sl2surf {

// Base class for all engine errors, so callers can catch one type.
struct engine_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A factored block violates its degree bookkeeping (sum of root
// multiplicities does not match the block degree, u=0 with roots, ...).
struct malformed_block_error : engine_error {
  using engine_error::engine_error;
};

struct malformed_element_error : engine_error {
  using engine_error::engine_error;
};

// factor() refuses to guess multiplicities when root clusters are
// ambiguous at the requested tolerance.
struct unstable_factorization_error : engine_error {
  using engine_error::engine_error;
};

// raccourci test: every coordinate lies in R[P1], the image is a curve.
struct degenerate_input_error : engine_error {
  using engine_error::engine_error;
};

// Numeric rank declaration failed the gap-ratio policy.
struct indeterminate_rank_error : engine_error {
  using engine_error::engine_error;
};

// closure_of on a 3-dimensional orbit.
struct unsupported_closure_error : engine_error {
  using engine_error::engine_error;
};

// An analyticity routine was called on the wrong orbit class.
struct wrong_class_error : engine_error {
  using engine_error::engine_error;
};

struct parse_error : engine_error {
  parse_error(const std::string& what, int line, int column)
      : engine_error(what + " (line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ")"),
        line(line),
        column(column) {}
  explicit parse_error(const std::string& what) : engine_error(what), line(0), column(0) {}
  int line;
  int column;
};

}  // namespace sl2surf
