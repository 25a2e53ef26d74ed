// Seeded random generators for test batteries.
#pragma once

#include <cstdint>
#include <random>

#include "weightkit/matrix.hpp"

namespace weightkit {

using Rng = std::mt19937_64;

/// Integers in [-bound, bound]; rationals with numerator and denominator
/// bounded; field residues uniform; polynomials of degree < bound with
/// small coefficients.
RingElement random_element(const RingSpec& spec, Rng& rng, long bound);
Matrix random_matrix(const RingSpec& spec, std::size_t rows, std::size_t cols,
                     Rng& rng, long bound);

}  // namespace weightkit
