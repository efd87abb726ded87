#include <random>
#include <set>

#include "gtest/gtest.h"

#include "bga/embedding.hpp"
#include "bga/errors.hpp"
#include "test_util.hpp"

using namespace bga;
using namespace bga::testing;

namespace {

/// Subgroup generated by `gens`, by closure under multiplication.
std::set<std::size_t> closure(const FiniteAbelianGroup &g, const std::vector<std::size_t> &gens) {
    std::set<std::size_t> seen{g.identity()};
    std::vector<std::size_t> frontier{g.identity()};
    while (!frontier.empty()) {
        std::size_t x = frontier.back();
        frontier.pop_back();
        for (std::size_t s : gens) {
            std::size_t y = g.multiply(x, s);
            if (seen.insert(y).second) {
                frontier.push_back(y);
            }
        }
    }
    return seen;
}

TwoBlockCode random_normalized(std::mt19937_64 &rng, std::size_t n_max, std::size_t max_w) {
    FiniteAbelianGroup g = random_group(rng, n_max);
    std::size_t cap = std::min(max_w, g.order());
    auto a = random_element(rng, g, 1 + rng() % cap, true);
    auto b = random_element(rng, g, 1 + rng() % cap, true);
    return build_two_block(g, a, b);
}

}  // namespace

TEST(embedding, psi_dimension) {
    TwoBlockCode t = toric(5);
    PsiMap psi = build_psi(t.a, t.b);
    ASSERT_EQ(psi.dim(), 2);
    ASSERT_EQ(psi.r, 1);
    ASSERT_EQ(psi.s, 1);
    TwoBlockCode w6 = two_block({7, 7}, {{0, 0}, {1, 0}, {0, 1}}, {{0, 0}, {2, 3}, {3, 1}});
    ASSERT_EQ(build_psi(w6.a, w6.b).dim(), 4);
    FiniteAbelianGroup g({6});
    TwoBlockCode d1 = build_two_block(g, GroupAlgebraElement::one(g),
                                      GroupAlgebraElement::from_exponents(g, std::vector<Exponents>{{0}, {1}}));
    PsiMap p1 = build_psi(d1.a, d1.b);
    ASSERT_EQ(p1.dim(), 1);
    ASSERT_EQ(p1.r, 0);
    ASSERT_TRUE(is_surjective(p1));
    ASSERT_EQ(kernel_lattice(p1).det_abs(), 6);
    ASSERT_THROW(build_psi(GroupAlgebraElement(g, {1}), GroupAlgebraElement::one(g)), InputError);
}

TEST(embedding, psi_apply_is_homomorphism) {
    TwoBlockCode c = two_block({4, 6}, {{0, 0}, {1, 2}}, {{0, 0}, {3, 5}, {2, 2}});
    PsiMap psi = build_psi(c.a, c.b);
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<long> coord(-30, 30);
    for (int trial = 0; trial < 200; trial++) {
        IntVector x(psi.dim()), y(psi.dim());
        for (std::size_t i = 0; i < psi.dim(); i++) {
            x[i] = coord(rng);
            y[i] = coord(rng);
        }
        ASSERT_EQ(psi.apply(x + y), c.group.multiply(psi.apply(x), psi.apply(y)));
    }
    for (std::size_t i = 0; i < psi.dim(); i++) {
        IntVector e(psi.dim(), 0);
        e[i] = 1;
        ASSERT_EQ(psi.apply(e), psi.generators[i]);
    }
}

TEST(embedding, surjectivity_matches_closure) {
    std::mt19937_64 rng(62);
    int surjective = 0;
    int not_surjective = 0;
    for (int trial = 0; trial < 150; trial++) {
        TwoBlockCode c = random_normalized(rng, 40, 3);
        PsiMap psi = build_psi(c.a, c.b);
        bool expect = closure(c.group, psi.generators).size() == c.group.order();
        ASSERT_EQ(is_surjective(psi), expect);
        (expect ? surjective : not_surjective)++;
    }
    ASSERT_GT(surjective, 10);
    ASSERT_GT(not_surjective, 10);
}

TEST(embedding, kernel_lattice_is_kernel) {
    std::mt19937_64 rng(63);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 40; trial++) {
        TwoBlockCode c = random_normalized(rng, 40, 3);
        PsiMap psi = build_psi(c.a, c.b);
        if (psi.dim() == 0 || !is_surjective(psi)) {
            continue;
        }
        checked++;
        IntegerLattice l = kernel_lattice(psi);
        ASSERT_EQ(l.dim(), psi.dim());
        ASSERT_EQ(l.det_abs(), c.n());
        for (std::size_t i = 0; i < l.dim(); i++) {
            ASSERT_EQ(psi.apply(l.basis().row(i)), c.group.identity());
        }
        std::uniform_int_distribution<long> coord(-12, 12);
        for (int k = 0; k < 100; k++) {
            IntVector x(psi.dim());
            for (auto &xi : x) {
                xi = coord(rng);
            }
            ASSERT_EQ(l.contains(x), psi.apply(x) == c.group.identity());
        }
    }
    ASSERT_EQ(checked, 40);
}

TEST(embedding, toric_kernel) {
    TwoBlockCode t = toric(6);
    IntegerLattice l = kernel_lattice(build_psi(t.a, t.b));
    ASSERT_EQ(l.hnf(), IntegerLattice(IntMatrix{{6, 0}, {0, 6}}).hnf());
}

TEST(embedding, layout_is_bijection) {
    std::mt19937_64 rng(64);
    int checked = 0;
    for (int trial = 0; trial < 200 && checked < 30; trial++) {
        TwoBlockCode c = random_normalized(rng, 40, 3);
        PsiMap psi = build_psi(c.a, c.b);
        if (psi.dim() == 0 || !is_surjective(psi)) {
            continue;
        }
        checked++;
        QubitLayout layout = qubit_layout(c, psi);
        ASSERT_EQ(layout.n(), c.n());
        std::set<IntVector> vertices;
        for (std::size_t g = 0; g < c.n(); g++) {
            const IntVector &v = layout.vertex_of_element[g];
            ASSERT_EQ(psi.apply(v), g);
            ASSERT_EQ(layout.lattice.reduce(v), v);
            vertices.insert(v);
        }
        ASSERT_EQ(vertices.size(), c.n());
        auto qv = layout.qubit_vertices();
        ASSERT_EQ(qv.size(), c.num_qubits());
        for (std::size_t q = 0; q < c.num_qubits(); q++) {
            ASSERT_EQ(qv[q], layout.vertex_of_qubit(q));
            ASSERT_EQ(qv[q], layout.vertex_of_element[q % c.n()]);
        }
    }
    ASSERT_EQ(checked, 30);
}

TEST(embedding, toric_locality_radius_one) {
    TwoBlockCode t = toric(9);
    QubitLayout layout = qubit_layout(t, build_psi(t.a, t.b));
    LocalityReport r = verify_locality(t, layout, Rational(1));
    ASSERT_TRUE(r.holds);
    ASSERT_EQ(r.max_radius_sq, 1);
    auto generic = verify_locality(BitMatrix::vstack(t.css.hx, t.css.hz), layout.qubit_vertices(), layout.lattice,
                                   Rational(1));
    ASSERT_TRUE(generic.holds);
    ASSERT_EQ(generic.max_radius_sq, 1);
    ASSERT_FALSE(verify_locality(t, layout, Rational(1, 2)).holds);
}

TEST(embedding, two_block_codes_are_local) {
    std::mt19937_64 rng(65);
    int checked = 0;
    for (int trial = 0; trial < 300 && checked < 60; trial++) {
        TwoBlockCode c = random_normalized(rng, 60, 4);
        PsiMap psi = build_psi(c.a, c.b);
        if (psi.dim() == 0 || !is_surjective(psi)) {
            continue;
        }
        checked++;
        QubitLayout layout = qubit_layout(c, psi);
        LocalityReport r = verify_locality(c, layout, Rational(1));
        ASSERT_TRUE(r.holds);
        ASSERT_LE(r.max_radius_sq, 1);
    }
    ASSERT_EQ(checked, 60);
}

TEST(embedding, scattered_checks_are_not_local) {
    IntegerLattice l(IntMatrix{{10, 0}, {0, 10}});
    std::vector<IntVector> vertex_of_qubit;
    for (long x = 0; x < 10; x++) {
        for (long y = 0; y < 10; y++) {
            vertex_of_qubit.push_back(IntVector{x, y});
        }
    }
    BitMatrix checks(1, 100);
    checks.set(0, 0);
    checks.set(0, 55);
    auto r = verify_locality(checks, vertex_of_qubit, l, Rational(1));
    ASSERT_FALSE(r.holds);
    ASSERT_EQ(r.max_radius_sq, 50);
    BitMatrix near(1, 100);
    near.set(0, 0);
    near.set(0, 90);  // (9, 0) wraps to distance 1 from (0, 0)
    ASSERT_TRUE(verify_locality(near, vertex_of_qubit, l, Rational(1)).holds);
}
