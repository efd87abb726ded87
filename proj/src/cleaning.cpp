#include "bga/cleaning.hpp"

#include <algorithm>
#include <string>

#include "bga/errors.hpp"

namespace bga {

PauliOperator::PauliOperator(BitVec x_, BitVec z_) : x(std::move(x_)), z(std::move(z_)) {
    if (x.size() != z.size()) {
        throw InputError("x and z parts have different lengths");
    }
}

PauliOperator PauliOperator::from_symplectic(const BitVec &v) {
    if (v.size() % 2 != 0) {
        throw InputError("symplectic vector has odd length");
    }
    std::size_t n = v.size() / 2;
    BitVec x(n);
    BitVec z(n);
    for (std::size_t i : v.ones()) {
        if (i < n) {
            x.set(i);
        } else {
            z.set(i - n);
        }
    }
    return {x, z};
}

BitVec PauliOperator::symplectic() const {
    std::size_t n = num_qubits();
    BitVec v(2 * n);
    for (std::size_t i : x.ones()) {
        v.set(i);
    }
    for (std::size_t i : z.ones()) {
        v.set(n + i);
    }
    return v;
}

BitVec PauliOperator::support_mask() const {
    BitVec m = x;
    auto mw = m.words();
    auto zw = z.words();
    for (std::size_t i = 0; i < mw.size(); i++) {
        mw[i] |= zw[i];
    }
    return m;
}

PauliOperator PauliOperator::operator*(const PauliOperator &other) const { return {x ^ other.x, z ^ other.z}; }

PauliOperator PauliOperator::restricted(const std::vector<std::size_t> &region) const {
    PauliOperator out = identity(num_qubits());
    for (std::size_t q : region) {
        out.x.set(q, x.get(q));
        out.z.set(q, z.get(q));
    }
    return out;
}

bool symplectic_commutes(const PauliOperator &p, const PauliOperator &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw InputError("Pauli operators act on different numbers of qubits");
    }
    return p.x.dot(q.z) == p.z.dot(q.x);
}

StabilizerCodeView::StabilizerCodeView(BitMatrix checks)
    : h_(std::move(checks)), n_(h_.cols() / 2), stabilizers_(h_.cols()) {
    if (h_.cols() % 2 != 0) {
        throw InputError("symplectic check matrix needs an even number of columns");
    }
    for (std::size_t r = 0; r < h_.rows(); r++) {
        stabilizers_.add(h_.row(r));
    }
    BitMatrix ax = h_.col_block(0, n_);
    BitMatrix az = h_.col_block(n_, n_);
    if (!(ax * az.transposed() + az * ax.transposed()).is_zero()) {
        throw InputError("stabilizer generators do not commute");
    }
}

StabilizerCodeView StabilizerCodeView::from_css(const CssCode &code) {
    std::size_t n = code.num_qubits();
    BitMatrix top = BitMatrix::hstack(code.hx, BitMatrix(code.hx.rows(), n));
    BitMatrix bottom = BitMatrix::hstack(BitMatrix(code.hz.rows(), n), code.hz);
    return StabilizerCodeView(BitMatrix::vstack(top, bottom));
}

bool StabilizerCodeView::commutes_with_all(const PauliOperator &p) const {
    if (p.num_qubits() != n_) {
        throw InputError("operator length does not match the code");
    }
    // Row r commutes with p iff <(a_r | b_r), (z | x)> = 0.
    BitVec swapped = PauliOperator(p.z, p.x).symplectic();
    return h_.apply(swapped).is_zero();
}

std::vector<std::size_t> StabilizerCodeView::rows_touching(const std::vector<std::size_t> &region) const {
    BitVec mask(2 * n_);
    for (std::size_t q : region) {
        mask.set(q);
        mask.set(n_ + q);
    }
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < h_.rows(); r++) {
        if (!(h_.row(r) & mask).is_zero()) {
            rows.push_back(r);
        }
    }
    return rows;
}

std::optional<PauliOperator> StabilizerCodeView::any_logical() const {
    std::vector<std::size_t> all(n_);
    for (std::size_t i = 0; i < n_; i++) {
        all[i] = i;
    }
    return logical_in_region(*this, all);
}

std::optional<PauliOperator> logical_in_region(const StabilizerCodeView &code, const std::vector<std::size_t> &region) {
    if (region.empty()) {
        return std::nullopt;
    }
    std::size_t n = code.num_qubits();
    const BitMatrix &h = code.checks();
    std::vector<std::size_t> x_cols;  // columns pairing with an x variable: the Z part of each row
    std::vector<std::size_t> z_cols;
    for (std::size_t q : region) {
        if (q >= n) {
            throw InputError("region qubit out of range");
        }
        x_cols.push_back(n + q);
        z_cols.push_back(q);
    }
    BitMatrix system = BitMatrix::hstack(h.select_cols(x_cols), h.select_cols(z_cols));
    std::size_t m = region.size();
    for (const auto &sol : nullspace_basis(system)) {
        PauliOperator p = PauliOperator::identity(n);
        for (std::size_t i : sol.ones()) {
            if (i < m) {
                p.x.set(region[i]);
            } else {
                p.z.set(region[i - m]);
            }
        }
        if (!code.is_stabilizer(p)) {
            return p;
        }
    }
    return std::nullopt;
}

namespace {

/// Solves for a product of rows touching `region` that matches `op` there.
PauliOperator clean_unchecked(const StabilizerCodeView &code, const PauliOperator &op,
                              const std::vector<std::size_t> &region) {
    if (region.empty()) {
        return op;
    }
    std::size_t n = code.num_qubits();
    std::vector<std::size_t> cols;
    BitVec target(2 * region.size());
    for (std::size_t i = 0; i < region.size(); i++) {
        cols.push_back(region[i]);
        target.set(i, op.x.get(region[i]));
    }
    for (std::size_t i = 0; i < region.size(); i++) {
        cols.push_back(n + region[i]);
        target.set(region.size() + i, op.z.get(region[i]));
    }
    std::vector<std::size_t> rows = code.rows_touching(region);
    BitMatrix local = code.checks().select_rows(rows).select_cols(cols);
    auto coeffs = solve(local, target);
    if (!coeffs) {
        throw ConsistencyFault("no stabilizer cleans the operator although the region hosts no logical");
    }
    BitVec s(2 * n);
    for (std::size_t i : coeffs->ones()) {
        s ^= code.checks().row(rows[i]);
    }
    PauliOperator out = op * PauliOperator::from_symplectic(s);
    if (out.restricted(region).weight() != 0) {
        throw ConsistencyFault("cleaned operator still acts on the region");
    }
    return out;
}

void check_region_free(const StabilizerCodeView &code, const std::vector<std::size_t> &region) {
    if (logical_in_region(code, region)) {
        throw CleaningPreconditionViolated("a nontrivial logical operator is supported on the region");
    }
}

BitVec clean_sector(const BitMatrix &checks, const BitVec &part, const std::vector<std::size_t> &region) {
    BitVec target(region.size());
    for (std::size_t i = 0; i < region.size(); i++) {
        target.set(i, part.get(region[i]));
    }
    BitMatrix local = checks.select_cols(region);
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < local.rows(); r++) {
        if (local.row_weight(r) != 0) {
            rows.push_back(r);
        }
    }
    auto coeffs = solve(local.select_rows(rows), target);
    if (!coeffs) {
        throw ConsistencyFault("no stabilizer cleans the CSS sector although the region hosts no logical");
    }
    BitVec out = part;
    for (std::size_t i : coeffs->ones()) {
        out ^= checks.row(rows[i]);
    }
    return out;
}

}  // namespace

PauliOperator clean(const StabilizerCodeView &code, const PauliOperator &op, const std::vector<std::size_t> &region) {
    if (op.num_qubits() != code.num_qubits()) {
        throw InputError("operator length does not match the code");
    }
    check_region_free(code, region);
    return clean_unchecked(code, op, region);
}

PauliOperator clean_css(const CssCode &code, const PauliOperator &op, const std::vector<std::size_t> &region) {
    if (op.num_qubits() != code.num_qubits()) {
        throw InputError("operator length does not match the code");
    }
    check_region_free(StabilizerCodeView::from_css(code), region);
    if (region.empty()) {
        return op;
    }
    return {clean_sector(code.hx, op.x, region), clean_sector(code.hz, op.z, region)};
}

LocalizedLogical localize_on_slabs(const StabilizerCodeView &code, const std::vector<std::size_t> &slab_of_qubit,
                                   std::size_t mu) {
    std::size_t n = code.num_qubits();
    if (slab_of_qubit.size() != n) {
        throw InputError("slab assignment does not cover every qubit");
    }
    if (mu < 2 || mu % 2 != 0) {
        throw InputError("slab count must be even and at least 2");
    }
    if (code.k() == 0) {
        throw InputError("the code has no logical qubits");
    }
    std::vector<std::vector<std::size_t>> slabs(mu);
    for (std::size_t q = 0; q < n; q++) {
        if (slab_of_qubit[q] >= mu) {
            throw InputError("slab index out of range");
        }
        slabs[slab_of_qubit[q]].push_back(q);
    }

    for (std::size_t r = 0; r < code.checks().rows(); r++) {
        std::vector<std::size_t> touched;
        for (std::size_t q : code.row(r).support()) {
            if (std::find(touched.begin(), touched.end(), slab_of_qubit[q]) == touched.end()) {
                touched.push_back(slab_of_qubit[q]);
            }
        }
        bool ok = touched.size() <= 1 ||
                  (touched.size() == 2 && ((touched[0] + 1) % mu == touched[1] || (touched[1] + 1) % mu == touched[0]));
        if (!ok) {
            throw ConsistencyFault("check row " + std::to_string(r) + " spans more than two adjacent slabs");
        }
    }

    for (std::size_t k = 1; k < mu; k += 2) {
        if (auto op = logical_in_region(code, slabs[k])) {
            return {k, *op, true, slabs[k].size()};
        }
    }

    auto initial = code.any_logical();
    if (!initial) {
        throw ConsistencyFault("k > 0 but no nontrivial logical operator found");
    }
    PauliOperator op = *initial;
    for (std::size_t k = 1; k < mu; k += 2) {
        op = clean_unchecked(code, op, slabs[k]);
    }
    for (std::size_t k = 1; k < mu; k += 2) {
        if (op.restricted(slabs[k]).weight() != 0) {
            throw ConsistencyFault("cleaning an odd slab disturbed an earlier one");
        }
    }
    if (!code.is_nontrivial_logical(op) || !code.is_stabilizer(op * *initial)) {
        throw ConsistencyFault("cleaning changed the logical class");
    }
    for (std::size_t k = 0; k < mu; k += 2) {
        PauliOperator factor = op.restricted(slabs[k]);
        if (!code.commutes_with_all(factor)) {
            throw ConsistencyFault("even-slab factor anticommutes with a stabilizer");
        }
        if (!code.is_stabilizer(factor)) {
            return {k, factor, false, slabs[k].size()};
        }
    }
    throw ConsistencyFault("every even-slab factor is a stabilizer");
}

LocalizedLogical localize_logical(const StabilizerCodeView &code, const ParallelotopePartition &partition,
                                  const QubitLayout &layout) {
    if (layout.n() * QubitLayout::kQubitsPerVertex != code.num_qubits()) {
        throw InputError("layout does not match the code");
    }
    auto mu = static_cast<std::size_t>(partition.mu);
    std::vector<std::size_t> vertex_count(mu, 0);
    for (const auto &v : layout.vertex_of_element) {
        vertex_count[slab_index(partition, v)]++;
    }
    if (vertex_count != slab_populations(partition, layout.lattice)) {
        throw ConsistencyFault("layout vertices disagree with the quotient enumeration");
    }
    std::vector<std::size_t> slab_of_qubit(code.num_qubits());
    for (std::size_t q = 0; q < code.num_qubits(); q++) {
        slab_of_qubit[q] = slab_index(partition, layout.vertex_of_qubit(q));
    }
    LocalizedLogical out = localize_on_slabs(code, slab_of_qubit, mu);
    for (std::size_t q : out.op.support()) {
        if (slab_of_qubit[q] != out.slab) {
            throw ConsistencyFault("localized operator leaves its slab");
        }
    }
    if (!code.is_nontrivial_logical(out.op)) {
        throw ConsistencyFault("localized operator is not a nontrivial logical");
    }
    if (out.op.weight() > QubitLayout::kQubitsPerVertex * vertex_count[out.slab]) {
        throw ConsistencyFault("localized operator exceeds m times the slab population");
    }
    return out;
}

}  // namespace bga
