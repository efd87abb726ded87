#include "bga/bound.hpp"

#include <mpfr.h>

#include <memory>

#include "bga/embedding.hpp"
#include "bga/errors.hpp"

namespace bga {

namespace {

/// RAII wrapper around an mpfr_t.
class Real {
   public:
    explicit Real(unsigned bits) { mpfr_init2(v_, bits); }
    ~Real() { mpfr_clear(v_); }
    Real(const Real &) = delete;
    Real &operator=(const Real &) = delete;
    mpfr_ptr get() { return v_; }

   private:
    mpfr_t v_;
};

void check_inputs(std::size_t m, const Rational &rho, std::size_t dim, const Integer &n) {
    if (m < 1) {
        throw InputError("m must be at least 1");
    }
    if (rho <= 0) {
        throw InputError("rho must be positive");
    }
    if (dim < 1) {
        throw InputError("D must be at least 1");
    }
    if (n < 1) {
        throw InputError("n must be at least 1");
    }
}

/// All factors are positive and each step is monotone, so rounding every
/// operation the same way bounds the result in that direction.
void evaluate(Real &out, std::size_t m, const Rational &rho, std::size_t dim, const Integer &n, mpfr_rnd_t rnd,
              unsigned bits) {
    HermiteValue h = hermite(dim);
    Real gamma(bits), sum(bits), t(bits), scale(bits);
    mpfr_set_q(gamma.get(), h.gamma_pow_dim.get_mpq_t(), rnd);
    mpfr_rootn_ui(gamma.get(), gamma.get(), 2 * dim, rnd);  // sqrt(gamma_D)

    mpfr_set_ui(sum.get(), dim, rnd);
    mpfr_sqrt(sum.get(), sum.get(), rnd);
    Rational four_rho = 4 * rho;
    mpfr_set_q(t.get(), four_rho.get_mpq_t(), rnd);
    mpfr_add(sum.get(), sum.get(), t.get(), rnd);

    mpfr_set_z(scale.get(), n.get_mpz_t(), rnd);
    mpfr_rootn_ui(scale.get(), scale.get(), dim, rnd);
    mpfr_pow_ui(scale.get(), scale.get(), dim - 1, rnd);

    mpfr_mul_ui(out.get(), gamma.get(), m, rnd);
    mpfr_mul(out.get(), out.get(), sum.get(), rnd);
    mpfr_mul(out.get(), out.get(), scale.get(), rnd);
}

}  // namespace

double bound_rounded(std::size_t m, const Rational &rho, std::size_t dim, const Integer &n, bool upward,
                     unsigned bits) {
    check_inputs(m, rho, dim, n);
    mpfr_rnd_t rnd = upward ? MPFR_RNDU : MPFR_RNDD;
    Real v(bits);
    evaluate(v, m, rho, dim, n, rnd, bits);
    return mpfr_get_d(v.get(), rnd);
}

std::string bound_upper_decimal(std::size_t m, const Rational &rho, std::size_t dim, const Integer &n,
                                unsigned bits, int digits) {
    check_inputs(m, rho, dim, n);
    Real v(bits);
    evaluate(v, m, rho, dim, n, MPFR_RNDU, bits);
    char *buf = nullptr;
    mpfr_asprintf(&buf, "%.*RUf", digits, v.get());
    std::unique_ptr<char, decltype(&mpfr_free_str)> holder(buf, &mpfr_free_str);
    return std::string(buf);
}

BoundReport bt_bound(std::size_t m, const Rational &rho, std::size_t dim, const Integer &n) {
    check_inputs(m, rho, dim, n);
    BoundReport r;
    r.m = m;
    r.rho = rho;
    r.dim = dim;
    r.n = n;
    r.hermite = hermite(dim);
    r.applicable = partition_applicable(n, dim, rho);
    r.applicability_lhs = Rational(n * n);
    Rational rhs = r.hermite.gamma_pow_dim;
    for (std::size_t i = 0; i < dim; i++) {
        rhs *= 64 * rho * rho;
    }
    r.applicability_rhs = rhs;
    r.bound_value = bound_rounded(m, rho, dim, n, true);
    r.bound_lower = bound_rounded(m, rho, dim, n, false);
    r.bound_decimal = bound_upper_decimal(m, rho, dim, n, kBoundPrecisionBits, 6);
    return r;
}

BoundReport two_block_bound(const TwoBlockCode &code) {
    if (!is_normalized(code)) {
        throw InputError("two_block_bound requires a normalized code");
    }
    if (code.weight() < 3) {
        throw InputError("two_block_bound requires w >= 3 so that D = w - 2 >= 1");
    }
    if (!is_surjective(build_psi(code.a, code.b))) {
        throw InputError("code is decomposable; apply the bound per component");
    }
    return bt_bound(2, Rational(1), code.weight() - 2, Integer(static_cast<unsigned long>(code.n())));
}

bool within_bound(const BoundReport &report, std::size_t value) {
    Real v(kBoundPrecisionBits);
    evaluate(v, report.m, report.rho, report.dim, report.n, MPFR_RNDD, kBoundPrecisionBits);
    return mpfr_cmp_ui(v.get(), value) >= 0;
}

}  // namespace bga
