#pragma once

#include <cstddef>
#include <vector>

#include "bga/code.hpp"
#include "bga/group_algebra.hpp"
#include "bga/lattice.hpp"

namespace bga {

/// Psi: Z^(r+s) -> G sending the i-th unit vector to the i-th generator.
///
/// Generators are the non-identity support elements of a, then of b, each in
/// group enumeration order. An element in both supports appears twice.
struct PsiMap {
    FiniteAbelianGroup group;
    std::vector<std::size_t> generators;
    std::size_t r = 0;  // generators taken from a
    std::size_t s = 0;  // generators taken from b

    std::size_t dim() const { return generators.size(); }
    /// Psi(x) as a group element index.
    std::size_t apply(const IntVector &x) const;
};

/// Requires e in both supports.
PsiMap build_psi(const GroupAlgebraElement &a, const GroupAlgebraElement &b);
bool is_surjective(const PsiMap &psi);
/// ker Psi as a full-rank lattice of Z^D. Requires Psi surjective and D >= 1.
IntegerLattice kernel_lattice(const PsiMap &psi);

/// Qubits j and n + j both sit on the canonical representative of Psi^{-1}(g_j).
struct QubitLayout {
    IntegerLattice lattice;
    std::vector<IntVector> vertex_of_element;
    static constexpr std::size_t kQubitsPerVertex = 2;

    std::size_t n() const { return vertex_of_element.size(); }
    const IntVector &vertex_of_qubit(std::size_t q) const { return vertex_of_element[q % n()]; }
    std::vector<IntVector> qubit_vertices() const;
};

QubitLayout qubit_layout(const TwoBlockCode &code, const PsiMap &psi);

struct LocalityReport {
    bool holds = false;
    Rational max_radius_sq;
    std::size_t worst_row = 0;  // index into [H_X; H_Z]
};

/// Each row of H_X and H_Z is centered on the vertex of g_i, its row index.
/// The radius is the largest quotient distance from the center to the
/// deduplicated vertex set of the row support.
LocalityReport verify_locality(const TwoBlockCode &code, const QubitLayout &layout, const Rational &rho);

/// Layout-agnostic variant for arbitrary check matrices. A row passes when some
/// vertex of its support has every other support vertex within rho.
LocalityReport verify_locality(const BitMatrix &checks, const std::vector<IntVector> &vertex_of_qubit,
                               const IntegerLattice &lattice, const Rational &rho);

}  // namespace bga
