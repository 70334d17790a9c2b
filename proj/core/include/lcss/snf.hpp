#pragma once

#include <cstddef>
#include <vector>

#include "lcss/matrix.hpp"

namespace lcss {

/// Smith normal form U * A * V = D of an integer matrix.
///
/// `diagonal` has min(rows, cols) entries, all non-negative, with
/// diagonal[i] dividing diagonal[i+1]; the first `rank` entries are nonzero.
/// `left`/`right` are unimodular, and their inverses are tracked alongside so
/// callers can move between the original and the reduced bases without a
/// separate inversion.
struct SnfResult {
    std::vector<Integer> diagonal;
    std::size_t rank = 0;
    IntMatrix left;
    IntMatrix right;
    IntMatrix left_inverse;
    IntMatrix right_inverse;

    /// The diagonal matrix D with the shape of the input.
    IntMatrix diagonal_matrix() const;
};

SnfResult smith_normal_form(const IntMatrix& a);

}  // namespace lcss
