#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bga/f2.hpp"
#include "bga/group_algebra.hpp"

namespace bga {

/// CSS code given by X and Z check matrices on N qubits.
struct CssCode {
    BitMatrix hx;
    BitMatrix hz;

    CssCode() = default;
    /// Throws InputError unless column counts agree and H_X H_Z^T = 0.
    CssCode(BitMatrix hx, BitMatrix hz);
    std::size_t num_qubits() const { return hx.cols(); }
};

/// H_X = [A | B], H_Z = [B^T | A^T] for a, b in F2[G].
struct TwoBlockCode {
    FiniteAbelianGroup group;
    GroupAlgebraElement a;
    GroupAlgebraElement b;
    CssCode css;
    bool trivial = false;  // a = b = 0

    std::size_t n() const { return group.order(); }
    std::size_t num_qubits() const { return 2 * group.order(); }
    /// Stabilizer generator weight |supp a| + |supp b|.
    std::size_t weight() const { return a.weight() + b.weight(); }
};

TwoBlockCode build_two_block(const FiniteAbelianGroup &group, const GroupAlgebraElement &a,
                             const GroupAlgebraElement &b);

/// k = N - rank H_X - rank H_Z.
std::size_t dimension(const CssCode &code);

enum class DistanceMethod {
    Auto,       // kernel exhaustion if small enough, else weight or cluster search
    Kernel,     // Gray-code walk over the whole kernel
    Weight,     // ascending weight, colexicographic combinations
    Cluster,    // ascending weight over connected supports
};

struct DistanceLimits {
    std::size_t kernel_dim_cap = 22;
    std::size_t max_weight = 8;
    DistanceMethod method = DistanceMethod::Auto;
    /// Auto picks Weight over Cluster when sum_{t <= max_weight} C(N, t) is at most this.
    double weight_enum_budget = 5e7;
    /// Cluster search seeds. Empty means every qubit. For codes with a
    /// transitive symmetry a single orbit representative per orbit suffices.
    std::vector<std::size_t> cluster_seeds;
};

/// Result of one sector's search: either an exact distance with a witness,
/// or a lower bound when the search budget ran out.
struct SectorDistance {
    std::optional<std::size_t> exact;
    std::size_t lower_bound = 0;
    std::optional<BitVec> witness;
    DistanceMethod method = DistanceMethod::Auto;
    bool resolved() const { return exact.has_value(); }
};

struct CodeParams {
    std::size_t n_qubits = 0;
    std::size_t k = 0;
    /// Unset when k = 0: the distance is undefined.
    std::optional<SectorDistance> dx;
    std::optional<SectorDistance> dz;

    bool distance_defined() const { return k > 0; }
    /// min(d_X, d_Z) when both are resolved.
    std::optional<std::size_t> d() const;
    /// Certified lower bound on d (exact value when resolved).
    std::size_t d_lower_bound() const;
};

/// d_X: minimum weight of v in ker H_X outside rowspace(H_Z).
SectorDistance sector_distance(const BitMatrix &checks, const BitMatrix &stabilizers, const DistanceLimits &limits);
CodeParams distance(const CssCode &code, const DistanceLimits &limits = {});
/// As above, with cluster seeds restricted to {0, n} using translation symmetry.
CodeParams distance(const TwoBlockCode &code, DistanceLimits limits = {});

std::string method_name(DistanceMethod m);

/// (g_a^{-1} a, g_b^{-1} b) where g_x is the first support element of x in
/// enumeration order, so that e lies in both supports.
std::pair<GroupAlgebraElement, GroupAlgebraElement> normalize(const GroupAlgebraElement &a,
                                                              const GroupAlgebraElement &b);
bool is_normalized(const TwoBlockCode &code);

/// The subgroup H generated by supp(a) and supp(b), and the [G:H] identical
/// component codes over H.
///
/// H is presented as a product of cyclic groups via the Smith form of its
/// relation lattice. subgroup_elements[h] is the index in G of the h-th
/// element of that presentation. Cosets are ordered by their smallest element
/// in G, which is also the representative.
struct Decomposition {
    FiniteAbelianGroup parent;
    FiniteAbelianGroup subgroup;
    std::vector<std::size_t> subgroup_elements;
    std::vector<std::size_t> coset_representatives;
    std::vector<TwoBlockCode> components;

    std::size_t index() const { return coset_representatives.size(); }
    /// Qubit of the original code carrying qubit q of component c.
    std::size_t original_qubit(std::size_t component, std::size_t q) const;
};

Decomposition decompose(const TwoBlockCode &code);

}  // namespace bga
