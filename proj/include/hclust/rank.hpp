#pragma once

#include <cstddef>
#include <cstdint>

#include "hclust/sparse.hpp"

namespace hclust {

/// Rank over Q by fraction-free (Bareiss) elimination. Entries must be
/// integers. Runs in 64-bit arithmetic and restarts with arbitrary
/// precision if an intermediate minor overflows.
std::size_t rank_fraction_free(const CsrMatrix& m);

/// Rank over Z/prime by sparse column elimination. Entries must be integers.
std::size_t rank_modular(const CsrMatrix& m, std::uint32_t prime);

/// Rank over Q of an integer matrix: fraction-free elimination when the
/// dense form is small, otherwise the larger of two modular ranks (equal to
/// the rational rank unless both primes divide an elementary divisor).
std::size_t integer_rank(const CsrMatrix& m);

}  // namespace hclust
