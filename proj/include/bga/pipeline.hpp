#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bga/bound.hpp"
#include "bga/cleaning.hpp"
#include "bga/code.hpp"
#include "bga/embedding.hpp"
#include "bga/lattice.hpp"

namespace bga {

/// Everything the pipeline derives for one indecomposable component.
struct ComponentCertificate {
    TwoBlockCode code;
    CodeParams params;
    std::size_t dim = 0;
    std::optional<IntegerLattice> lattice;
    std::optional<LocalityReport> locality;
    std::optional<BoundReport> bound;
    std::optional<GoodBasis> basis;
    std::optional<ParallelotopePartition> partition;
    std::vector<std::size_t> slab_counts;
    std::optional<LocalizedLogical> logical;
    /// Why later stages were skipped, if they were.
    std::string status;
    /// d <= weight(localized) <= m * slab count <= integral-point bound, where present.
    bool chain_holds = true;
};

struct Certificate {
    TwoBlockCode input;
    TwoBlockCode normalized;
    CodeParams params;
    Decomposition decomposition;
    std::vector<ComponentCertificate> components;
};

/// normalize -> decompose -> Psi -> ker Psi -> good basis -> partition ->
/// locality -> localized logical -> bound, for each component.
Certificate certify(const TwoBlockCode &code, const DistanceLimits &limits);

}  // namespace bga
