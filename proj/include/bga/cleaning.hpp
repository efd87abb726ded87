#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bga/code.hpp"
#include "bga/embedding.hpp"
#include "bga/f2.hpp"
#include "bga/lattice.hpp"

namespace bga {

/// Pauli operator up to phase, as (x | z) bit vectors.
struct PauliOperator {
    BitVec x;
    BitVec z;

    PauliOperator() = default;
    PauliOperator(BitVec x_, BitVec z_);
    static PauliOperator identity(std::size_t n) { return {BitVec(n), BitVec(n)}; }
    /// Splits a length-2N symplectic vector (x | z).
    static PauliOperator from_symplectic(const BitVec &v);

    std::size_t num_qubits() const { return x.size(); }
    BitVec symplectic() const;
    BitVec support_mask() const;
    std::vector<std::size_t> support() const { return support_mask().ones(); }
    std::size_t weight() const { return support_mask().popcount(); }
    /// Product up to phase.
    PauliOperator operator*(const PauliOperator &other) const;
    bool operator==(const PauliOperator &other) const = default;
    /// Restriction to the qubits in `region` (the rest set to identity).
    PauliOperator restricted(const std::vector<std::size_t> &region) const;
};

/// True iff x_p . z_q + z_p . x_q = 0.
bool symplectic_commutes(const PauliOperator &p, const PauliOperator &q);

/// Stabilizer code given by its symplectic check matrix H = (A_X | A_Z).
class StabilizerCodeView {
   public:
    /// Throws InputError if two rows anticommute.
    explicit StabilizerCodeView(BitMatrix checks);
    /// H = [H_X 0; 0 H_Z].
    static StabilizerCodeView from_css(const CssCode &code);

    std::size_t num_qubits() const { return n_; }
    const BitMatrix &checks() const { return h_; }
    std::size_t k() const { return n_ - stabilizers_.dim(); }
    PauliOperator row(std::size_t r) const { return PauliOperator::from_symplectic(h_.row(r)); }

    bool commutes_with_all(const PauliOperator &p) const;
    bool is_stabilizer(const PauliOperator &p) const { return stabilizers_.contains(p.symplectic()); }
    bool is_nontrivial_logical(const PauliOperator &p) const { return commutes_with_all(p) && !is_stabilizer(p); }
    /// Rows whose support meets `region`.
    std::vector<std::size_t> rows_touching(const std::vector<std::size_t> &region) const;
    /// The first nontrivial logical in the deterministic nullspace order.
    std::optional<PauliOperator> any_logical() const;

   private:
    BitMatrix h_;
    std::size_t n_;
    RowSpan stabilizers_;
};

/// A nontrivial logical supported on `region`, if one exists.
std::optional<PauliOperator> logical_in_region(const StabilizerCodeView &code, const std::vector<std::size_t> &region);

/// O times a stabilizer, acting trivially on `region`. Throws
/// CleaningPreconditionViolated if a logical lives in `region`, and
/// ConsistencyFault if no stabilizer does the job anyway.
PauliOperator clean(const StabilizerCodeView &code, const PauliOperator &op, const std::vector<std::size_t> &region);

/// Same contract for CSS codes, cleaning the X part with H_X and the Z part
/// with H_Z independently.
PauliOperator clean_css(const CssCode &code, const PauliOperator &op, const std::vector<std::size_t> &region);

struct LocalizedLogical {
    std::size_t slab = 0;
    PauliOperator op;
    bool from_odd_slab = false;  // found directly, without cleaning
    std::size_t slab_qubits = 0;
};

/// Slabs are given per qubit. Every check row must touch at most two slabs,
/// adjacent mod mu (ConsistencyFault otherwise); mu must be even.
LocalizedLogical localize_on_slabs(const StabilizerCodeView &code, const std::vector<std::size_t> &slab_of_qubit,
                                   std::size_t mu);

/// Localization on the slabs of a parallelotope partition. Asserts that the
/// result is a nontrivial logical supported in its slab, with weight at most
/// m times the slab's vertex count.
LocalizedLogical localize_logical(const StabilizerCodeView &code, const ParallelotopePartition &partition,
                                  const QubitLayout &layout);

}  // namespace bga
