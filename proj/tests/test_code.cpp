#include <random>

#include "gtest/gtest.h"

#include "bga/code.hpp"
#include "bga/errors.hpp"
#include "test_util.hpp"

using namespace bga;
using namespace bga::testing;

namespace {

/// Minimum weight of v with checks * v = 0 and v outside rowspace(stabilizers),
/// by walking all 2^N vectors.
std::optional<std::size_t> brute_force_distance(const BitMatrix &checks, const BitMatrix &stabilizers) {
    std::size_t n = checks.cols();
    std::optional<std::size_t> best;
    for (uint64_t bits = 1; bits < (uint64_t{1} << n); bits++) {
        std::size_t w = std::popcount(bits);
        if (best && w >= *best) {
            continue;
        }
        BitVec v(n);
        for (std::size_t i = 0; i < n; i++) {
            v.set(i, (bits >> i) & 1);
        }
        if (checks.apply(v).is_zero() && !in_rowspace(v, stabilizers)) {
            best = w;
        }
    }
    return best;
}

TwoBlockCode random_code(std::mt19937_64 &rng, std::size_t n_max) {
    FiniteAbelianGroup g = random_group(rng, n_max);
    std::size_t cap = std::min<std::size_t>(3, g.order());
    std::size_t wa = 1 + rng() % cap;
    std::size_t wb = 1 + rng() % cap;
    return build_two_block(g, random_element(rng, g, wa, false), random_element(rng, g, wb, false));
}

}  // namespace

TEST(code, css_condition_enforced) {
    BitMatrix hx = BitMatrix::from_strings(std::vector<std::string>{"110"});
    BitMatrix hz = BitMatrix::from_strings(std::vector<std::string>{"100"});
    ASSERT_THROW(CssCode(hx, hz), InputError);
    ASSERT_THROW(CssCode(hx, BitMatrix(1, 4)), InputError);
    ASSERT_NO_THROW(CssCode(hx, BitMatrix::from_strings(std::vector<std::string>{"111"})));
}

TEST(code, two_block_shape) {
    TwoBlockCode c = toric(3);
    ASSERT_EQ(c.num_qubits(), 18);
    ASSERT_EQ(c.css.hx.rows(), 9);
    ASSERT_EQ(c.weight(), 4);
    ASSERT_TRUE((c.css.hx * c.css.hz.transposed()).is_zero());
    ASSERT_EQ(c.css.hx.col_block(0, 9), algebra_to_matrix(c.a));
    ASSERT_EQ(c.css.hz.col_block(0, 9), algebra_to_matrix(c.b).transposed());
    for (std::size_t r = 0; r < 9; r++) {
        ASSERT_EQ(c.css.hx.row_weight(r), 4);
        ASSERT_EQ(c.css.hz.row_weight(r), 4);
    }
}

TEST(code, toric_parameters) {
    for (int64_t L : {3, 4, 5, 6}) {
        TwoBlockCode c = toric(L);
        CodeParams p = distance(c);
        ASSERT_EQ(p.n_qubits, static_cast<std::size_t>(2 * L * L));
        ASSERT_EQ(p.k, 2);
        ASSERT_EQ(p.d(), static_cast<std::size_t>(L)) << "L = " << L;
        ASSERT_EQ(p.dx->exact, p.dz->exact);
    }
}

TEST(code, toric_distance_each_method) {
    TwoBlockCode c = toric(4);
    for (DistanceMethod m : {DistanceMethod::Kernel, DistanceMethod::Weight, DistanceMethod::Cluster}) {
        DistanceLimits limits;
        limits.method = m;
        CodeParams p = distance(c, limits);
        ASSERT_EQ(p.d(), 4) << method_name(m);
        ASSERT_EQ(p.dx->method, m);
        ASSERT_TRUE(p.dx->witness.has_value());
        ASSERT_EQ(p.dx->witness->popcount(), 4);
        ASSERT_TRUE(c.css.hx.apply(*p.dx->witness).is_zero());
        ASSERT_FALSE(in_rowspace(*p.dx->witness, c.css.hz));
    }
}

TEST(code, trivial_supports_give_no_logicals) {
    FiniteAbelianGroup g({4});
    TwoBlockCode c = build_two_block(g, GroupAlgebraElement::one(g), GroupAlgebraElement::one(g));
    CodeParams p = distance(c);
    ASSERT_EQ(p.k, 0);
    ASSERT_FALSE(p.distance_defined());
    ASSERT_FALSE(p.d().has_value());
    ASSERT_FALSE(p.dx.has_value());
}

TEST(code, zero_code_is_flagged) {
    FiniteAbelianGroup g({3});
    TwoBlockCode c = build_two_block(g, GroupAlgebraElement::zero(g), GroupAlgebraElement::zero(g));
    ASSERT_TRUE(c.trivial);
    ASSERT_EQ(dimension(c.css), 6);
}

TEST(code, dimension_is_even) {
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 200; trial++) {
        TwoBlockCode c = random_code(rng, 30);
        std::size_t k = dimension(c.css);
        ASSERT_EQ(k % 2, 0);
        ASSERT_EQ(k, c.num_qubits() - naive_rank(c.css.hx) - naive_rank(c.css.hz));
        // rank H_X = rank H_Z since H_Z is H_X with the blocks transposed and swapped.
        ASSERT_EQ(rank(c.css.hx), rank(c.css.hz));
    }
}

TEST(code, methods_agree_with_brute_force) {
    std::mt19937_64 rng(52);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 30; trial++) {
        TwoBlockCode c = random_code(rng, 9);
        if (dimension(c.css) == 0) {
            continue;
        }
        auto expect_x = brute_force_distance(c.css.hx, c.css.hz);
        auto expect_z = brute_force_distance(c.css.hz, c.css.hx);
        ASSERT_EQ(expect_x, expect_z);
        for (DistanceMethod m : {DistanceMethod::Kernel, DistanceMethod::Weight, DistanceMethod::Cluster}) {
            DistanceLimits limits;
            limits.method = m;
            limits.max_weight = c.num_qubits();
            limits.kernel_dim_cap = 30;
            CodeParams p = distance(c.css, limits);
            ASSERT_EQ(p.dx->exact, expect_x) << method_name(m);
            ASSERT_EQ(p.dz->exact, expect_z) << method_name(m);
        }
        checked++;
    }
    ASSERT_EQ(checked, 30);
}

TEST(code, methods_agree_up_to_32_qubits) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 25; trial++) {
        TwoBlockCode c = random_code(rng, 16);
        if (dimension(c.css) == 0) {
            continue;
        }
        std::optional<std::size_t> first;
        for (DistanceMethod m : {DistanceMethod::Kernel, DistanceMethod::Weight, DistanceMethod::Cluster}) {
            DistanceLimits limits;
            limits.method = m;
            limits.max_weight = c.num_qubits();
            limits.kernel_dim_cap = 32;
            CodeParams p = distance(c.css, limits);
            ASSERT_TRUE(p.d().has_value());
            if (!first) {
                first = p.d();
            }
            ASSERT_EQ(p.d(), first) << method_name(m);
            ASSERT_EQ(p.dx->exact, p.dz->exact);
        }
        // Seeds {0, n} by translation symmetry give the same answer.
        ASSERT_EQ(distance(c).d(), first);
    }
}

TEST(code, weight_search_witness_is_colex_first) {
    TwoBlockCode c = toric(3);
    DistanceLimits limits;
    limits.method = DistanceMethod::Weight;
    SectorDistance s = sector_distance(c.css.hz, c.css.hx, limits);
    ASSERT_EQ(s.exact, 3);
    // Every weight-3 vector colex-before the witness is trivial or not in the kernel.
    std::size_t n = c.num_qubits();
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i + 1; j < n; j++) {
            for (std::size_t k = j + 1; k < n; k++) {
                std::vector<std::size_t> idx{i, j, k};
                BitVec v = BitVec::from_indices(n, idx);
                if (!BitVec::colex_less(v, *s.witness)) {
                    continue;
                }
                bool logical = c.css.hz.apply(v).is_zero() && !in_rowspace(v, c.css.hx);
                ASSERT_FALSE(logical);
            }
        }
    }
}

TEST(code, unresolved_search_reports_lower_bound) {
    TwoBlockCode c = toric(6);
    DistanceLimits limits;
    limits.method = DistanceMethod::Cluster;
    limits.max_weight = 4;
    CodeParams p = distance(c, limits);
    ASSERT_FALSE(p.d().has_value());
    ASSERT_EQ(p.dx->lower_bound, 5);
    ASSERT_EQ(p.d_lower_bound(), 5);
}

TEST(code, normalize_example) {
    FiniteAbelianGroup g({4});
    auto a = GroupAlgebraElement::from_exponents(g, std::vector<Exponents>{{1}, {2}});
    auto b = GroupAlgebraElement::from_exponents(g, std::vector<Exponents>{{0}, {3}});
    auto [na, nb] = normalize(a, b);
    ASSERT_EQ(na.support_exponents(), (std::vector<Exponents>{{0}, {1}}));
    ASSERT_EQ(nb, b);
    ASSERT_FALSE(is_normalized(build_two_block(g, a, b)));
    ASSERT_TRUE(is_normalized(build_two_block(g, na, nb)));
}

TEST(code, normalize_preserves_parameters) {
    std::mt19937_64 rng(54);
    for (int trial = 0; trial < 40; trial++) {
        TwoBlockCode c = random_code(rng, 14);
        auto [na, nb] = normalize(c.a, c.b);
        ASSERT_TRUE(na.contains(0));
        ASSERT_TRUE(nb.contains(0));
        TwoBlockCode d = build_two_block(c.group, na, nb);
        ASSERT_EQ(dimension(d.css), dimension(c.css));
        ASSERT_EQ(distance(d).d(), distance(c).d());
    }
}

TEST(code, decompose_split_example) {
    FiniteAbelianGroup g({4});
    auto a = GroupAlgebraElement::from_exponents(g, std::vector<Exponents>{{0}, {2}});
    TwoBlockCode c = build_two_block(g, a, a);
    Decomposition dec = decompose(c);
    ASSERT_EQ(dec.subgroup.order(), 2);
    ASSERT_EQ(dec.index(), 2);
    ASSERT_EQ(dec.coset_representatives, (std::vector<std::size_t>{0, 1}));
    ASSERT_EQ(dec.components.size(), 2);
    for (const auto &comp : dec.components) {
        ASSERT_EQ(comp.num_qubits(), 4);
    }
    ASSERT_EQ(dimension(c.css), 2 * dimension(dec.components[0].css));
}

TEST(code, decompose_indecomposable) {
    Decomposition dec = decompose(toric(3));
    ASSERT_EQ(dec.index(), 1);
    ASSERT_EQ(dec.subgroup.order(), 9);
}

TEST(code, decomposition_is_block_diagonal) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 40; trial++) {
        FiniteAbelianGroup g = random_group(rng, 30);
        std::size_t cap = std::min<std::size_t>(3, g.order() - 1);
        auto a = random_element(rng, g, 1 + rng() % cap, true);
        auto b = random_element(rng, g, 1 + rng() % cap, true);
        TwoBlockCode c = build_two_block(g, a, b);
        Decomposition dec = decompose(c);
        std::size_t h = dec.subgroup.order();
        ASSERT_EQ(h * dec.index(), g.order());
        std::size_t k_sum = 0;
        std::vector<bool> seen(c.num_qubits());
        for (std::size_t ci = 0; ci < dec.index(); ci++) {
            const TwoBlockCode &comp = dec.components[ci];
            ASSERT_EQ(comp.weight(), c.weight());
            k_sum += dimension(comp.css);
            for (std::size_t q = 0; q < 2 * h; q++) {
                std::size_t oq = dec.original_qubit(ci, q);
                ASSERT_FALSE(seen[oq]);
                seen[oq] = true;
            }
            for (std::size_t r = 0; r < h; r++) {
                std::size_t orow = dec.original_qubit(ci, r);
                for (std::size_t q = 0; q < 2 * h; q++) {
                    std::size_t oq = dec.original_qubit(ci, q);
                    ASSERT_EQ(comp.css.hx.get(r, q), c.css.hx.get(orow, oq));
                    ASSERT_EQ(comp.css.hz.get(r, q), c.css.hz.get(orow, oq));
                }
                ASSERT_EQ(c.css.hx.row_weight(orow), comp.css.hx.row_weight(r));
            }
        }
        ASSERT_EQ(k_sum, dimension(c.css));
        if (c.num_qubits() <= 40 && k_sum > 0) {
            ASSERT_EQ(distance(c).d(), distance(dec.components[0]).d());
        }
    }
}
