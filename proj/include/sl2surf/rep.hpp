#pragma once

#include <string>
#include <vector>

#include "sl2surf/errors.hpp"

namespace sl2surf {

struct FactoredElement;

enum class Parity { Even, Odd, Mixed };

std::string to_string(Parity p);

/// The decomposition n_1 >= n_2 >= ... >= n_p into irreducibles, together
/// with the partition of {1..p} into maximal runs of equal dimension.
struct RepDecomposition {
  struct Interval {
    int first = 0;  // 0-based index of the first block in the run
    int last = 0;   // inclusive
    int dim = 0;    // common n_q on the run
    bool even = false;
  };

  std::vector<int> dims;            // sorted non-increasing
  std::vector<Interval> intervals;  // maximal equal runs, highest dim first
  bool nontrivial = false;          // some n_q > 1

  int block_count() const { return static_cast<int>(dims.size()); }
  int interval_count() const { return static_cast<int>(intervals.size()); }

  // dim of the ambient vector space, sum of (n_q + 1)
  int ambient_dim() const;

  // index into `intervals` of the run containing block q (0-based)
  int interval_of(int q) const;

  bool operator==(const RepDecomposition& other) const { return dims == other.dims; }
};

/// Sorts the dimensions, computes the interval structure and parities.
RepDecomposition decompose(std::vector<int> dims_unsorted);

/// `rho = 4+2` (the `rho = ` prefix is optional on input).
RepDecomposition parse_rep(const std::string& text);
std::string format_rep(const RepDecomposition& rep);

/// Which intervals carry a nonzero block scalar, the extreme indices q_+ and
/// q_-, and the parity of the hit intervals.
struct Support {
  std::vector<int> intervals_hit;  // indices into rep.intervals, ascending
  int q_plus = 0;                  // smallest block index with u != 0 (0-based)
  int q_minus = 0;                 // greatest block index with u != 0 (0-based)
  Parity parity = Parity::Even;

  bool single_interval() const { return intervals_hit.size() == 1; }
  bool has_parity() const { return parity != Parity::Mixed; }

  bool operator==(const Support& other) const {
    return intervals_hit == other.intervals_hit && q_plus == other.q_plus &&
           q_minus == other.q_minus && parity == other.parity;
  }
};

/// Throws malformed_element_error when every block scalar vanishes.
Support support_of(const FactoredElement& x);

}  // namespace sl2surf
