#include "bga/hermite.hpp"

#include "bga/errors.hpp"

namespace bga {

HermiteValue hermite(std::size_t dim) {
    if (dim == 0) {
        throw InputError("Hermite constant requires D >= 1");
    }
    // gamma_D^D for D = 1..8: 1, 4/3, 2, 4, 8, 64/3, 64, 256.
    static const mpq_class kTable[] = {
        mpq_class(1), mpq_class(4, 3), mpq_class(2), mpq_class(4),
        mpq_class(8), mpq_class(64, 3), mpq_class(64), mpq_class(256),
    };
    HermiteValue h;
    h.dim = dim;
    if (dim <= 8) {
        h.gamma_pow_dim = kTable[dim - 1];
        h.gamma_pow_dim.canonicalize();
        h.is_exact = true;
        return h;
    }
    mpq_class base(static_cast<unsigned long>(dim + 4), 4UL);
    base.canonicalize();
    mpq_class p = 1;
    for (std::size_t i = 0; i < dim; i++) {
        p *= base;
    }
    h.gamma_pow_dim = p;
    h.is_exact = false;
    return h;
}

}  // namespace bga
