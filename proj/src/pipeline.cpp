#include "bga/pipeline.hpp"

#include "bga/errors.hpp"

namespace bga {

namespace {

ComponentCertificate certify_component(const TwoBlockCode &code, const DistanceLimits &limits) {
    ComponentCertificate c;
    c.code = code;
    c.params = distance(code, limits);
    PsiMap psi = build_psi(code.a, code.b);
    c.dim = psi.dim();
    if (c.dim == 0) {
        c.status = "D = 0: every stabilizer generator has weight 2, no lattice embedding";
        return c;
    }
    if (!is_surjective(psi)) {
        throw ConsistencyFault("component of a decomposition is not generated by its supports");
    }
    QubitLayout layout = qubit_layout(code, psi);
    c.lattice = layout.lattice;
    c.locality = verify_locality(code, layout, Rational(1));
    if (!c.locality->holds) {
        throw ConsistencyFault("2BGA stabilizers are not local at radius 1");
    }
    c.bound = two_block_bound(code);
    if (!c.bound->applicable) {
        c.status = "not applicable: n^2 < (8 rho)^(2D) gamma_D^D";
        return c;
    }
    if (c.dim > kDefaultMaxEnumDim) {
        c.status = "lattice dimension exceeds the enumeration limit";
        return c;
    }
    c.basis = good_basis(layout.lattice);
    c.partition = build_partition(*c.basis, Rational(1));
    c.slab_counts = slab_populations(*c.partition, layout.lattice);
    for (std::size_t k = 0; k < c.slab_counts.size(); k++) {
        if (!integral_point_bound_holds(*c.partition, c.slab_counts[k])) {
            throw ConsistencyFault("slab " + std::to_string(k) + " exceeds the integral-point bound");
        }
    }
    if (c.params.k == 0) {
        c.status = "k = 0: no logical operator to localize";
        return c;
    }
    c.logical = localize_logical(StabilizerCodeView::from_css(code.css), *c.partition, layout);
    std::size_t w = c.logical->op.weight();
    std::size_t cap = QubitLayout::kQubitsPerVertex * c.slab_counts[c.logical->slab];
    c.chain_holds = w <= cap && within_bound(*c.bound, w);
    if (auto d = c.params.d()) {
        c.chain_holds = c.chain_holds && *d <= w;
    }
    if (!c.chain_holds) {
        throw ConsistencyFault("d <= weight <= m * slab count <= bound chain fails");
    }
    c.status = "certified";
    return c;
}

}  // namespace

Certificate certify(const TwoBlockCode &code, const DistanceLimits &limits) {
    auto [na, nb] = normalize(code.a, code.b);
    Certificate cert;
    cert.input = code;
    cert.normalized = build_two_block(code.group, na, nb);
    cert.params = distance(code, limits);
    cert.decomposition = decompose(cert.normalized);
    ComponentCertificate first = certify_component(cert.decomposition.components.front(), limits);
    if (first.params.k * cert.decomposition.index() != cert.params.k) {
        throw ConsistencyFault("component dimensions do not add up to k");
    }
    auto d = cert.params.d();
    auto dc = first.params.d();
    if (d && dc && *d != *dc) {
        throw ConsistencyFault("component distance differs from the code distance");
    }
    cert.components.assign(cert.decomposition.index(), first);
    return cert;
}

}  // namespace bga
