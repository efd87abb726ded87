#pragma once

#include <cstddef>
#include <string>

#include "bga/code.hpp"
#include "bga/hermite.hpp"
#include "bga/lattice.hpp"

namespace bga {

constexpr unsigned kBoundPrecisionBits = 128;

/// m sqrt(gamma_D) (sqrt(D) + 4 rho) n^((D-1)/D) together with the exact
/// applicability comparison n^2 >= (8 rho)^(2D) gamma_D^D.
struct BoundReport {
    std::size_t m = 0;
    Rational rho;
    std::size_t dim = 0;
    Integer n;
    HermiteValue hermite;
    bool applicable = false;
    Rational applicability_lhs;  // n^2
    Rational applicability_rhs;  // (8 rho)^(2D) gamma_D^D
    /// Upward-rounded value and its decimal form (also rounded up).
    double bound_value = 0;
    std::string bound_decimal;
    /// Downward-rounded value, for certifying d <= bound.
    double bound_lower = 0;
};

BoundReport bt_bound(std::size_t m, const Rational &rho, std::size_t dim, const Integer &n);

/// m = 2, rho = 1, D = w - 2, n = |G|. Requires a normalized code whose
/// supports generate G.
BoundReport two_block_bound(const TwoBlockCode &code);

/// The expression as a decimal with `digits` fractional digits, rounded up,
/// computed at `bits` of working precision.
std::string bound_upper_decimal(std::size_t m, const Rational &rho, std::size_t dim, const Integer &n,
                                unsigned bits, int digits);

/// The expression as a double, rounded up or down at every step.
double bound_rounded(std::size_t m, const Rational &rho, std::size_t dim, const Integer &n, bool upward,
                     unsigned bits = kBoundPrecisionBits);

/// Certifies value <= the exact bound by comparing against the downward-rounded
/// evaluation at high precision.
bool within_bound(const BoundReport &report, std::size_t value);

}  // namespace bga
