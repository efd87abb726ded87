#pragma once

#include <gmpxx.h>

#include <cstddef>

namespace bga {

/// gamma_D stored through its D-th power, which is rational for every D
/// handled here. For D <= 8 this is the known exact constant; above that the
/// Minkowski bound (1 + D/4)^D is used instead.
struct HermiteValue {
    std::size_t dim = 0;
    mpq_class gamma_pow_dim;
    bool is_exact = false;
};

HermiteValue hermite(std::size_t dim);

}  // namespace bga
