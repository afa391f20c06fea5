#pragma once

// Exact local densities of the shape conditions and the Euler product that
// bounds the proportion of forms failing to represent h.

#include "qhl/arith.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace qhl {

/// Density of forms splitting completely mod p (p >= 5).
Rational sigma(const Integer& p);

/// Density of the L1 L2^3 shape mod 2 with independent linear factors: 3/16.
Rational delta2();

/// Density of forms mod p that are not c M^2 with M splitting over F_p.
Rational lambda(const Integer& p);

/// Density of the L1 L2^3 shape mod an odd prime p.
Rational gamma(const Integer& p);

enum class ShapePredicate { SplitsCompletely, L1L2Cubed, SplitSquareClass, SquareClass };

std::string to_string(ShapePredicate s);

/// Exact count / p^5 over every coefficient vector mod p; p <= 13.
Rational brute_force_density(std::uint32_t p, ShapePredicate predicate);

struct DensityInterval {
    Rational lower;
    Rational upper;
};

/// Factor 12 / (p1 p2 p3)^5 of the product.
Rational mu_prefactor(const std::array<Integer, 3>& primes);

/// Lower and upper bounds for the density of forms certified not to represent h.
/// Lambda factors are exact for primes up to cutoff; the tail is bounded below by
/// 1 - 1/(2 cutoff) - 1/(2 cutoff^2) and above by 1.
DensityInterval mu_lower_bound(const Integer& h, const std::array<Integer, 3>& primes, std::uint64_t cutoff);

}  // namespace qhl
