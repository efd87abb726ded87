#include "bga/embedding.hpp"

#include <algorithm>
#include <optional>

#include "bga/errors.hpp"

namespace bga {

namespace {

/// [E; diag(d)]: generator exponent rows followed by the cyclic relations.
IntMatrix relation_matrix(const PsiMap &psi) {
    const auto &g = psi.group;
    std::size_t d = psi.dim();
    std::size_t t = g.rank();
    IntMatrix m(d + t, t);
    for (std::size_t i = 0; i < d; i++) {
        Exponents e = g.exponents_of(psi.generators[i]);
        for (std::size_t j = 0; j < t; j++) {
            m(i, j) = static_cast<long>(e[j]);
        }
    }
    for (std::size_t j = 0; j < t; j++) {
        m(d + j, j) = static_cast<long>(g.cyclic_orders()[j]);
    }
    return m;
}

std::vector<IntVector> dedup_vertices(const std::vector<std::size_t> &qubits, const std::vector<IntVector> &vertex) {
    std::vector<IntVector> out;
    for (std::size_t q : qubits) {
        if (std::find(out.begin(), out.end(), vertex[q]) == out.end()) {
            out.push_back(vertex[q]);
        }
    }
    return out;
}

}  // namespace

std::size_t PsiMap::apply(const IntVector &x) const {
    if (x.size() != dim()) {
        throw InputError("coefficient vector length does not match D");
    }
    std::size_t t = group.rank();
    Exponents acc(t, 0);
    for (std::size_t i = 0; i < dim(); i++) {
        Exponents e = group.exponents_of(generators[i]);
        for (std::size_t j = 0; j < t; j++) {
            Integer v = x[i] * static_cast<long>(e[j]);
            mpz_fdiv_r_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(group.cyclic_orders()[j]));
            acc[j] += v.get_si();
        }
    }
    return group.index_of(acc);
}

PsiMap build_psi(const GroupAlgebraElement &a, const GroupAlgebraElement &b) {
    if (!(a.group() == b.group())) {
        throw InputError("a and b must belong to the same group algebra");
    }
    const auto &g = a.group();
    if (!a.contains(g.identity()) || !b.contains(g.identity())) {
        throw InputError("build_psi requires e in both supports");
    }
    PsiMap psi;
    psi.group = g;
    for (std::size_t x : a.support()) {
        if (x != g.identity()) {
            psi.generators.push_back(x);
            psi.r++;
        }
    }
    for (std::size_t x : b.support()) {
        if (x != g.identity()) {
            psi.generators.push_back(x);
            psi.s++;
        }
    }
    return psi;
}

bool is_surjective(const PsiMap &psi) {
    if (psi.group.rank() == 0) {
        return true;
    }
    SmithForm snf = smith_normal_form(relation_matrix(psi));
    auto diag = snf.diagonal();
    return std::all_of(diag.begin(), diag.end(), [](const Integer &x) { return x == 1; });
}

IntegerLattice kernel_lattice(const PsiMap &psi) {
    std::size_t d = psi.dim();
    if (d == 0) {
        throw InputError("Psi has no generators (D = 0)");
    }
    if (!is_surjective(psi)) {
        throw InputError("Psi is not surjective; decompose the code first");
    }
    IntMatrix rel = relation_matrix(psi);
    std::size_t t = psi.group.rank();
    SmithForm snf = smith_normal_form(rel);
    // All t invariant factors are 1, so U rows t.. span the left kernel.
    IntMatrix gens(d, d);
    for (std::size_t i = t; i < d + t; i++) {
        for (std::size_t j = 0; j < d; j++) {
            gens(i - t, j) = snf.u(i, j);
        }
    }
    SmithForm ks = smith_normal_form(gens);
    IntMatrix vinv = integer_inverse(ks.v);
    IntMatrix basis(d, d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            basis(i, j) = ks.s(i, i) * vinv(i, j);
        }
    }
    IntegerLattice lattice(basis);
    if (lattice.det_abs() != static_cast<unsigned long>(psi.group.order())) {
        throw ConsistencyFault("|det ker Psi| differs from |G|");
    }
    return lattice;
}

std::vector<IntVector> QubitLayout::qubit_vertices() const {
    std::vector<IntVector> out;
    out.reserve(2 * n());
    for (std::size_t q = 0; q < 2 * n(); q++) {
        out.push_back(vertex_of_qubit(q));
    }
    return out;
}

QubitLayout qubit_layout(const TwoBlockCode &code, const PsiMap &psi) {
    if (!(code.group == psi.group)) {
        throw InputError("Psi is defined on a different group");
    }
    IntegerLattice lattice = kernel_lattice(psi);
    const auto &g = psi.group;
    std::size_t d = psi.dim();
    std::size_t t = g.rank();
    SmithForm snf = smith_normal_form(relation_matrix(psi));

    QubitLayout layout{lattice, {}};
    layout.vertex_of_element.reserve(g.order());
    for (std::size_t idx = 0; idx < g.order(); idx++) {
        // x M = y  <=>  (x U^{-1}) S = y V, and S has unit diagonal.
        Exponents y = g.exponents_of(idx);
        IntVector z(d + t, 0);
        for (std::size_t i = 0; i < t; i++) {
            for (std::size_t j = 0; j < t; j++) {
                z[i] += static_cast<long>(y[j]) * snf.v(j, i);
            }
        }
        IntVector x = combine_rows(z, snf.u);
        IntVector p(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(d));
        p = lattice.reduce(p);
        if (psi.apply(p) != idx) {
            throw ConsistencyFault("preimage under Psi does not map back to its element");
        }
        layout.vertex_of_element.push_back(std::move(p));
    }
    std::vector<IntVector> sorted = layout.vertex_of_element;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ConsistencyFault("layout assigns two elements to one vertex");
    }
    return layout;
}

LocalityReport verify_locality(const TwoBlockCode &code, const QubitLayout &layout, const Rational &rho) {
    QuotientMetric metric(layout.lattice);
    std::vector<IntVector> vertex = layout.qubit_vertices();
    std::size_t n = code.n();
    LocalityReport rep;
    rep.max_radius_sq = 0;
    const BitMatrix *blocks[] = {&code.css.hx, &code.css.hz};
    for (std::size_t bi = 0; bi < 2; bi++) {
        const BitMatrix &h = *blocks[bi];
        for (std::size_t i = 0; i < h.rows(); i++) {
            const IntVector &center = layout.vertex_of_element[i % n];
            for (const auto &v : dedup_vertices(h.row(i).ones(), vertex)) {
                Rational r(metric.distance_sq(center, v));
                if (r > rep.max_radius_sq) {
                    rep.max_radius_sq = r;
                    rep.worst_row = bi * h.rows() + i;
                }
            }
        }
    }
    rep.holds = rep.max_radius_sq <= rho * rho;
    return rep;
}

LocalityReport verify_locality(const BitMatrix &checks, const std::vector<IntVector> &vertex_of_qubit,
                               const IntegerLattice &lattice, const Rational &rho) {
    if (vertex_of_qubit.size() != checks.cols()) {
        throw InputError("layout size does not match the number of qubits");
    }
    QuotientMetric metric(lattice);
    LocalityReport rep;
    rep.max_radius_sq = 0;
    for (std::size_t i = 0; i < checks.rows(); i++) {
        auto verts = dedup_vertices(checks.row(i).ones(), vertex_of_qubit);
        std::optional<Rational> row_best;
        for (const auto &c : verts) {
            Rational worst = 0;
            for (const auto &v : verts) {
                worst = std::max(worst, Rational(metric.distance_sq(c, v)));
            }
            if (!row_best || worst < *row_best) {
                row_best = worst;
            }
        }
        if (row_best && *row_best > rep.max_radius_sq) {
            rep.max_radius_sq = *row_best;
            rep.worst_row = i;
        }
    }
    rep.holds = rep.max_radius_sq <= rho * rho;
    return rep;
}

}  // namespace bga
