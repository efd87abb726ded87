#include "bga/code.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bga/errors.hpp"
#include "bga/lattice.hpp"

namespace bga {

CssCode::CssCode(BitMatrix hx_, BitMatrix hz_) : hx(std::move(hx_)), hz(std::move(hz_)) {
    if (hx.cols() != hz.cols()) {
        throw InputError("H_X and H_Z have different column counts");
    }
    if (!(hx * hz.transposed()).is_zero()) {
        throw InputError("H_X H_Z^T is nonzero");
    }
}

TwoBlockCode build_two_block(const FiniteAbelianGroup &group, const GroupAlgebraElement &a,
                             const GroupAlgebraElement &b) {
    if (!(a.group() == group) || !(b.group() == group)) {
        throw InputError("a and b must belong to the same group algebra");
    }
    BitMatrix ma = algebra_to_matrix(a);
    BitMatrix mb = algebra_to_matrix(b);
    BitMatrix hx = BitMatrix::hstack(ma, mb);
    BitMatrix hz = BitMatrix::hstack(mb.transposed(), ma.transposed());
    TwoBlockCode code{group, a, b, CssCode(std::move(hx), std::move(hz))};
    code.trivial = a.is_zero() && b.is_zero();
    return code;
}

std::size_t dimension(const CssCode &code) {
    std::size_t used = rank(code.hx) + rank(code.hz);
    if (used > code.num_qubits()) {
        throw ConsistencyFault("rank H_X + rank H_Z exceeds N");
    }
    return code.num_qubits() - used;
}

std::optional<std::size_t> CodeParams::d() const {
    if (!dx || !dz) {
        return std::nullopt;
    }
    if (dx->exact && dz->exact) {
        return std::min(*dx->exact, *dz->exact);
    }
    if (dx->exact && *dx->exact <= dz->lower_bound) {
        return dx->exact;
    }
    if (dz->exact && *dz->exact <= dx->lower_bound) {
        return dz->exact;
    }
    return std::nullopt;
}

std::size_t CodeParams::d_lower_bound() const {
    if (!dx || !dz) {
        return 0;
    }
    return std::min(dx->lower_bound, dz->lower_bound);
}

std::string method_name(DistanceMethod m) {
    switch (m) {
        case DistanceMethod::Auto:
            return "auto";
        case DistanceMethod::Kernel:
            return "kernel";
        case DistanceMethod::Weight:
            return "weight";
        case DistanceMethod::Cluster:
            return "cluster";
    }
    return "unknown";
}

std::pair<GroupAlgebraElement, GroupAlgebraElement> normalize(const GroupAlgebraElement &a,
                                                              const GroupAlgebraElement &b) {
    if (a.is_zero() || b.is_zero()) {
        throw InputError("normalize requires nonzero a and b");
    }
    const auto &g = a.group();
    GroupAlgebraElement na = shift(a, g.inverse(a.support().front()));
    GroupAlgebraElement nb = shift(b, g.inverse(b.support().front()));
    return {na, nb};
}

bool is_normalized(const TwoBlockCode &code) {
    return code.a.contains(code.group.identity()) && code.b.contains(code.group.identity());
}

std::size_t Decomposition::original_qubit(std::size_t component, std::size_t q) const {
    std::size_t h = subgroup_elements.size();
    if (component >= coset_representatives.size() || q >= 2 * h) {
        throw InputError("component qubit out of range");
    }
    std::size_t block = q / h;
    std::size_t g = parent.multiply(coset_representatives[component], subgroup_elements[q % h]);
    return block * parent.order() + g;
}

Decomposition decompose(const TwoBlockCode &code) {
    if (!is_normalized(code)) {
        throw InputError("decompose requires a normalized code (e in both supports)");
    }
    const FiniteAbelianGroup &g = code.group;
    Decomposition out;
    out.parent = g;

    std::vector<std::size_t> gens;
    for (const auto *x : {&code.a, &code.b}) {
        for (std::size_t s : x->support()) {
            if (s != g.identity() && std::find(gens.begin(), gens.end(), s) == gens.end()) {
                gens.push_back(s);
            }
        }
    }
    std::size_t m = gens.size();
    std::size_t t = g.rank();

    std::vector<Exponents> sub_gens;  // images in G of the presentation's generators
    std::vector<int64_t> sub_orders;
    if (m > 0) {
        // Relation lattice of Z^m -> G: project the left kernel of [E; diag(d)].
        IntMatrix rel(m + t, t);
        for (std::size_t i = 0; i < m; i++) {
            Exponents e = g.exponents_of(gens[i]);
            for (std::size_t j = 0; j < t; j++) {
                rel(i, j) = static_cast<long>(e[j]);
            }
        }
        for (std::size_t j = 0; j < t; j++) {
            rel(m + j, j) = static_cast<long>(g.cyclic_orders()[j]);
        }
        SmithForm snf = smith_normal_form(rel);
        std::size_t r = 0;
        for (const auto &dv : snf.diagonal()) {
            if (dv != 0) {
                r++;
            }
        }
        IntMatrix kernel(m + t - r, m);
        for (std::size_t i = r; i < m + t; i++) {
            for (std::size_t j = 0; j < m; j++) {
                kernel(i - r, j) = snf.u(i, j);
            }
        }
        SmithForm ks = smith_normal_form(kernel);
        IntMatrix vinv = integer_inverse(ks.v);
        auto diag = ks.diagonal();
        for (std::size_t i = 0; i < m; i++) {
            Integer di = i < diag.size() ? diag[i] : Integer(0);
            if (di == 0) {
                throw ConsistencyFault("relation lattice of a finite subgroup is not full rank");
            }
            if (di == 1) {
                continue;
            }
            sub_orders.push_back(di.get_si());
            Exponents img(t, 0);
            for (std::size_t c = 0; c < m; c++) {
                Exponents e = g.exponents_of(gens[c]);
                Integer coeff = vinv(i, c);
                for (std::size_t j = 0; j < t; j++) {
                    Integer v = coeff * static_cast<long>(e[j]);
                    v %= static_cast<long>(g.cyclic_orders()[j]);
                    img[j] += v.get_si();
                }
            }
            sub_gens.push_back(img);
        }
    }
    out.subgroup = FiniteAbelianGroup(sub_orders);

    std::size_t h = out.subgroup.order();
    out.subgroup_elements.resize(h);
    std::vector<std::size_t> to_sub(g.order(), g.order());
    for (std::size_t idx = 0; idx < h; idx++) {
        Exponents c = out.subgroup.exponents_of(idx);
        Exponents e(t, 0);
        for (std::size_t i = 0; i < c.size(); i++) {
            for (std::size_t j = 0; j < t; j++) {
                e[j] += c[i] * sub_gens[i][j] % g.cyclic_orders()[j];
            }
        }
        std::size_t gi = g.index_of(e);
        if (to_sub[gi] != g.order()) {
            throw ConsistencyFault("subgroup presentation is not injective");
        }
        to_sub[gi] = idx;
        out.subgroup_elements[idx] = gi;
    }

    std::vector<bool> covered(g.order(), false);
    for (std::size_t x = 0; x < g.order(); x++) {
        if (covered[x]) {
            continue;
        }
        out.coset_representatives.push_back(x);
        for (std::size_t s : out.subgroup_elements) {
            covered[g.multiply(x, s)] = true;
        }
    }
    if (out.coset_representatives.size() * h != g.order()) {
        throw ConsistencyFault("cosets do not partition the group");
    }

    if (h == g.order()) {
        // H = G: keep G's own presentation so qubit indices are unchanged.
        out.subgroup = g;
        std::iota(out.subgroup_elements.begin(), out.subgroup_elements.end(), std::size_t{0});
        out.components.push_back(code);
        return out;
    }
    auto restrict = [&](const GroupAlgebraElement &x) {
        std::vector<std::size_t> sup;
        for (std::size_t s : x.support()) {
            if (to_sub[s] == g.order()) {
                throw ConsistencyFault("support element outside the generated subgroup");
            }
            sup.push_back(to_sub[s]);
        }
        std::sort(sup.begin(), sup.end());
        return GroupAlgebraElement(out.subgroup, sup);
    };
    TwoBlockCode component = build_two_block(out.subgroup, restrict(code.a), restrict(code.b));
    out.components.assign(out.coset_representatives.size(), component);
    return out;
}

}  // namespace bga
