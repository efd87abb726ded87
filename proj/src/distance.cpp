#include <algorithm>
#include <bit>
#include <cmath>

#include "bga/code.hpp"
#include "bga/errors.hpp"

namespace bga {

namespace {

using Words = std::vector<uint64_t>;

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

bool any_set(const uint64_t *w, std::size_t n) {
    for (std::size_t i = 0; i < n; i++) {
        if (w[i]) {
            return true;
        }
    }
    return false;
}

std::size_t popcount(const uint64_t *w, std::size_t n) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; i++) {
        c += static_cast<std::size_t>(std::popcount(w[i]));
    }
    return c;
}

void xor_into(uint64_t *dst, const uint64_t *src, std::size_t n) {
    for (std::size_t i = 0; i < n; i++) {
        dst[i] ^= src[i];
    }
}

/// Shared data for one sector search: codewords are v with checks * v = 0, and
/// v is nontrivial iff it pairs to 1 with one of the k logical representatives
/// of ker(stabilizers) / rowspace(checks).
class SectorSearch {
   public:
    SectorSearch(const BitMatrix &checks, const BitMatrix &stabilizers) : checks_(checks) {
        n_ = checks.cols();
        RowSpan span(checks);
        for (const auto &u : nullspace_basis(stabilizers)) {
            if (span.add(u)) {
                logicals_.push_back(u);
            }
        }
        k_ = logicals_.size();
        kw_ = words_for(k_);
        masks_.assign(n_ * kw_, 0);
        for (std::size_t i = 0; i < k_; i++) {
            for (std::size_t q : logicals_[i].ones()) {
                masks_[q * kw_ + (i >> 6)] |= uint64_t{1} << (i & 63);
            }
        }
        sw_ = words_for(checks.rows());
        columns_.assign(n_ * sw_, 0);
        max_col_weight_ = 0;
        for (std::size_t q = 0; q < n_; q++) {
            BitVec c = checks.col(q);
            std::copy(c.words().begin(), c.words().end(), columns_.begin() + static_cast<std::ptrdiff_t>(q * sw_));
            max_col_weight_ = std::max(max_col_weight_, c.popcount());
        }
    }

    std::size_t k() const { return k_; }
    std::size_t n() const { return n_; }

    SectorDistance by_kernel(std::size_t cap) const {
        std::vector<BitVec> basis = nullspace_basis(checks_);
        if (basis.size() > cap || basis.size() >= 63) {
            throw BudgetExceeded("kernel dimension " + std::to_string(basis.size()) + " exceeds cap " +
                                 std::to_string(cap));
        }
        std::vector<Words> basis_masks;
        for (const auto &b : basis) {
            Words m(kw_, 0);
            for (std::size_t q : b.ones()) {
                xor_into(m.data(), mask(q), kw_);
            }
            basis_masks.push_back(std::move(m));
        }
        BitVec v(n_);
        Words m(kw_, 0);
        std::optional<BitVec> best;
        std::size_t best_weight = n_ + 1;
        uint64_t total = uint64_t{1} << basis.size();
        for (uint64_t i = 1; i < total; i++) {
            auto j = static_cast<std::size_t>(std::countr_zero(i));
            v ^= basis[j];
            xor_into(m.data(), basis_masks[j].data(), kw_);
            if (!any_set(m.data(), kw_)) {
                continue;
            }
            std::size_t w = v.popcount();
            if (w < best_weight || (w == best_weight && BitVec::colex_less(v, *best))) {
                best_weight = w;
                best = v;
            }
        }
        SectorDistance out;
        out.method = DistanceMethod::Kernel;
        if (!best) {
            throw ConsistencyFault("kernel exhaustion found no nontrivial codeword although k > 0");
        }
        out.exact = best_weight;
        out.lower_bound = best_weight;
        out.witness = best;
        return out;
    }

    SectorDistance by_weight(std::size_t max_weight) const {
        SectorDistance out;
        out.method = DistanceMethod::Weight;
        std::size_t limit = std::min(max_weight, n_);
        for (std::size_t t = 1; t <= limit; t++) {
            Words syn(sw_, 0);
            Words m(kw_, 0);
            std::vector<std::size_t> chosen;
            if (colex(t, n_, syn, m, chosen)) {
                out.exact = t;
                out.lower_bound = t;
                out.witness = BitVec::from_indices(n_, chosen);
                return out;
            }
        }
        out.lower_bound = limit + 1;
        return out;
    }

    SectorDistance by_cluster(std::size_t max_weight, const std::vector<std::size_t> &seeds_in) const {
        SectorDistance out;
        out.method = DistanceMethod::Cluster;
        build_neighbors();
        std::vector<std::size_t> seeds = seeds_in;
        if (seeds.empty()) {
            for (std::size_t q = 0; q < n_; q++) {
                seeds.push_back(q);
            }
        }
        std::size_t limit = std::min(max_weight, n_);
        for (std::size_t t = 1; t <= limit; t++) {
            for (std::size_t si = 0; si < seeds.size(); si++) {
                ClusterState st(*this, t);
                for (std::size_t sj = 0; sj < si; sj++) {
                    st.seen[seeds[sj]] = 1;
                }
                if (st.start(seeds[si])) {
                    out.exact = t;
                    out.lower_bound = t;
                    out.witness = BitVec::from_indices(n_, st.chosen);
                    return out;
                }
            }
        }
        out.lower_bound = limit + 1;
        return out;
    }

   private:
    const uint64_t *mask(std::size_t q) const { return masks_.data() + q * kw_; }
    const uint64_t *column(std::size_t q) const { return columns_.data() + q * sw_; }

    /// Combinations of `remaining` indices below `upper`, largest index
    /// outermost, so the first hit is the colex-first witness.
    bool colex(std::size_t remaining, std::size_t upper, Words &syn, Words &m,
               std::vector<std::size_t> &chosen) const {
        for (std::size_t x = remaining - 1; x < upper; x++) {
            xor_into(syn.data(), column(x), sw_);
            xor_into(m.data(), mask(x), kw_);
            chosen.push_back(x);
            bool hit;
            if (remaining == 1) {
                hit = !any_set(syn.data(), sw_) && any_set(m.data(), kw_);
            } else {
                hit = popcount(syn.data(), sw_) <= max_col_weight_ * (remaining - 1) &&
                      colex(remaining - 1, x, syn, m, chosen);
            }
            if (hit) {
                return true;
            }
            chosen.pop_back();
            xor_into(syn.data(), column(x), sw_);
            xor_into(m.data(), mask(x), kw_);
        }
        return false;
    }

    void build_neighbors() const {
        if (!neighbors_.empty() || n_ == 0) {
            return;
        }
        neighbors_.assign(n_, {});
        std::vector<std::vector<std::size_t>> row_support(checks_.rows());
        for (std::size_t r = 0; r < checks_.rows(); r++) {
            row_support[r] = checks_.row(r).ones();
        }
        std::vector<std::size_t> stamp(n_, n_);
        for (std::size_t q = 0; q < n_; q++) {
            stamp[q] = q;
            for (std::size_t r : checks_.col(q).ones()) {
                for (std::size_t p : row_support[r]) {
                    if (stamp[p] != q) {
                        stamp[p] = q;
                        neighbors_[q].push_back(p);
                    }
                }
            }
        }
    }

    /// Connected supports of fixed size containing a seed, enumerated once
    /// each by include/exclude branching on the frontier.
    struct ClusterState {
        const SectorSearch &s;
        std::size_t target;
        std::vector<char> seen;
        Words syn;
        Words m;
        std::vector<std::size_t> chosen;

        ClusterState(const SectorSearch &search, std::size_t t)
            : s(search), target(t), seen(search.n_, 0), syn(search.sw_, 0), m(search.kw_, 0) {}

        void toggle(std::size_t q) {
            xor_into(syn.data(), s.column(q), s.sw_);
            xor_into(m.data(), s.mask(q), s.kw_);
        }

        bool start(std::size_t seed) {
            seen[seed] = 1;
            toggle(seed);
            chosen.push_back(seed);
            std::vector<std::size_t> ext;
            for (std::size_t w : s.neighbors_[seed]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    ext.push_back(w);
                }
            }
            return grow(std::move(ext));
        }

        bool grow(std::vector<std::size_t> ext) {
            std::size_t size = chosen.size();
            if (size == target) {
                return !any_set(syn.data(), s.sw_) && any_set(m.data(), s.kw_);
            }
            if (popcount(syn.data(), s.sw_) > s.max_col_weight_ * (target - size)) {
                return false;
            }
            while (!ext.empty()) {
                std::size_t u = ext.back();
                ext.pop_back();
                toggle(u);
                chosen.push_back(u);
                std::vector<std::size_t> next = ext;
                std::size_t added_from = next.size();
                for (std::size_t w : s.neighbors_[u]) {
                    if (!seen[w]) {
                        seen[w] = 1;
                        next.push_back(w);
                    }
                }
                std::vector<std::size_t> added(next.begin() + static_cast<std::ptrdiff_t>(added_from), next.end());
                if (grow(std::move(next))) {
                    return true;
                }
                for (std::size_t w : added) {
                    seen[w] = 0;
                }
                chosen.pop_back();
                toggle(u);
            }
            return false;
        }
    };

    const BitMatrix &checks_;
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::size_t kw_ = 0;
    std::size_t sw_ = 0;
    std::size_t max_col_weight_ = 0;
    std::vector<BitVec> logicals_;
    Words masks_;
    Words columns_;
    mutable std::vector<std::vector<std::size_t>> neighbors_;
};

double combinations_up_to(std::size_t n, std::size_t t) {
    double total = 0;
    double c = 1;
    for (std::size_t i = 1; i <= std::min(n, t); i++) {
        c = c * static_cast<double>(n - i + 1) / static_cast<double>(i);
        total += c;
    }
    return total;
}

}  // namespace

SectorDistance sector_distance(const BitMatrix &checks, const BitMatrix &stabilizers, const DistanceLimits &limits) {
    SectorSearch search(checks, stabilizers);
    if (search.k() == 0) {
        throw InputError("sector distance is undefined for k = 0");
    }
    DistanceMethod method = limits.method;
    if (method == DistanceMethod::Auto) {
        std::size_t kernel_dim = checks.cols() - rank(checks);
        if (kernel_dim <= limits.kernel_dim_cap) {
            method = DistanceMethod::Kernel;
        } else if (combinations_up_to(checks.cols(), limits.max_weight) <= limits.weight_enum_budget) {
            method = DistanceMethod::Weight;
        } else {
            method = DistanceMethod::Cluster;
        }
    }
    switch (method) {
        case DistanceMethod::Kernel:
            return search.by_kernel(limits.kernel_dim_cap);
        case DistanceMethod::Weight:
            return search.by_weight(limits.max_weight);
        case DistanceMethod::Cluster:
            return search.by_cluster(limits.max_weight, limits.cluster_seeds);
        case DistanceMethod::Auto:
            break;
    }
    throw ConsistencyFault("unreachable distance method");
}

CodeParams distance(const CssCode &code, const DistanceLimits &limits) {
    CodeParams p;
    p.n_qubits = code.num_qubits();
    p.k = dimension(code);
    if (p.k == 0) {
        return p;
    }
    p.dx = sector_distance(code.hx, code.hz, limits);
    p.dz = sector_distance(code.hz, code.hx, limits);
    return p;
}

CodeParams distance(const TwoBlockCode &code, DistanceLimits limits) {
    if (limits.cluster_seeds.empty()) {
        limits.cluster_seeds = {0, code.n()};
    }
    return distance(code.css, limits);
}

}  // namespace bga
