// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <mpfr.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bga/bound.hpp"
#include "bga/cleaning.hpp"
#include "bga/cli.hpp"
#include "bga/code.hpp"
#include "bga/embedding.hpp"
#include "bga/errors.hpp"
#include "bga/hermite.hpp"
#include "bga/lattice.hpp"
#include "bga/pipeline.hpp"
#include "test_util.hpp"

using namespace bga;
using namespace bga::testing;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(const std::string &id, double limit_s, const std::function<Outcome()> &body) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception &e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        o.pass = false;
        o.detail += "; runtime over " + std::to_string(static_cast<int>(limit_s)) + " s";
    }
    if (!o.pass) {
        failures++;
    }
    std::printf("%s %s %s (%.1f s)\n", id.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string str(std::size_t v) { return std::to_string(v); }

/// Lattices shared by AC3, AC5 and AC6: D in {2, 3, 4}, |det| <= 2000.
std::vector<IntegerLattice> lattice_corpus() {
    std::mt19937_64 rng(2024);
    std::vector<IntegerLattice> out;
    for (int i = 0; i < 240; i++) {
        std::size_t d = 2 + i % 3;
        out.emplace_back(random_lattice_basis(rng, d, 2000));
    }
    return out;
}

/// (n / ||u*_D||)(lambda + sqrt D) rounded up at 128 bits.
bool count_within_upward_bound(const ParallelotopePartition &p, std::size_t count) {
    mpfr_t ell, lam, t, n;
    mpfr_inits2(128, ell, lam, t, n, nullptr);
    mpfr_set_q(ell, p.basis.last_len_sq.get_mpq_t(), MPFR_RNDD);
    mpfr_sqrt(ell, ell, MPFR_RNDD);
    mpfr_set_z(n, p.n().get_mpz_t(), MPFR_RNDU);
    mpfr_div(n, n, ell, MPFR_RNDU);
    mpfr_set_q(lam, p.lambda_sq.get_mpq_t(), MPFR_RNDU);
    mpfr_sqrt(lam, lam, MPFR_RNDU);
    mpfr_set_ui(t, p.dim(), MPFR_RNDU);
    mpfr_sqrt(t, t, MPFR_RNDU);
    mpfr_add(t, t, lam, MPFR_RNDU);
    mpfr_mul(t, t, n, MPFR_RNDU);
    bool ok = mpfr_cmp_ui(t, count) >= 0;
    mpfr_clears(ell, lam, t, n, nullptr);
    return ok;
}

/// Supports of weight 2 or 3 at arbitrary positions (not normalized).
TwoBlockCode random_code(std::mt19937_64 &rng, std::size_t n_max) {
    FiniteAbelianGroup g = random_group(rng, n_max);
    while (g.order() < 3) {
        g = random_group(rng, n_max);
    }
    return build_two_block(g, random_element(rng, g, 2 + rng() % 2, false),
                           random_element(rng, g, 2 + rng() % 2, false));
}

/// Scan rows used by AC7 and AC9: cyclic groups of order 2..30, products
/// Z_l x Z_m with 9 <= l, m <= 12 (applicable in dimension 2), and a slice of
/// dimension-3 codes over Z_l x Z_m with 27 <= l, m <= 32.
std::vector<cli::ScanRow> scan_corpus() {
    std::vector<cli::ScanRow> rows;
    auto run = [&](cli::ScanOptions o) {
        auto r = cli::run_scan(o);
        rows.insert(rows.end(), r.begin(), r.end());
    };
    cli::ScanOptions cyclic;
    cyclic.seed = 7;
    cyclic.count = 100;
    run(cyclic);
    cli::ScanOptions planar;
    planar.seed = 11;
    planar.factors = 2;
    planar.order_min = 9;
    planar.order_max = 12;
    planar.count = 60;
    planar.limits.max_weight = 12;
    run(planar);
    cli::ScanOptions solid;
    solid.seed = 2;
    solid.factors = 2;
    solid.order_min = 27;
    solid.order_max = 32;
    solid.weight_a = 3;
    solid.count = 40;
    solid.limits.max_weight = 10;
    run(solid);
    return rows;
}

bool resolved(const std::string &d) { return !d.empty() && d[0] != '>'; }

}  // namespace

int main() {
    // AC1: toric codes [[2L^2, 2, L]].
    report("AC1", 120, [] {
        Outcome o;
        std::ostringstream msg;
        for (int64_t L : {3, 4, 5}) {
            TwoBlockCode t = toric(L);
            DistanceLimits limits;
            limits.method = L <= 4 ? DistanceMethod::Kernel : DistanceMethod::Weight;
            limits.max_weight = 5;
            CodeParams p = distance(t.css, limits);
            bool ok = p.n_qubits == static_cast<std::size_t>(2 * L * L) && p.k == 2 &&
                      p.d() == static_cast<std::size_t>(L);
            o.pass = o.pass && ok;
            msg << "[[" << p.n_qubits << "," << p.k << "," << (p.d() ? std::to_string(*p.d()) : "?") << "]]"
                << " via " << method_name(p.dx->method) << (ok ? " " : " (wrong) ");
        }
        o.detail = msg.str();
        return o;
    });

    // AC2: k even, d_X = d_Z.
    report("AC2", 300, [] {
        std::mt19937_64 rng(99);
        std::size_t codes = 0, even = 0, nonzero = 0, both = 0, equal = 0;
        for (int i = 0; i < 150; i++) {
            TwoBlockCode c = random_code(rng, 30);
            CodeParams p = distance(c);
            codes++;
            even += p.k % 2 == 0;
            nonzero += p.k > 0;
            if (p.dx && p.dz && p.dx->resolved() && p.dz->resolved()) {
                both++;
                equal += *p.dx->exact == *p.dz->exact;
            }
        }
        Outcome o;
        o.pass = codes >= 100 && even == codes && equal == both;
        o.detail = str(codes) + " codes, k even in " + str(even) + " (k > 0 in " + str(nonzero) + "), d_X = d_Z in " +
                   str(equal) + "/" + str(both) + " resolved";
        return o;
    });

    auto lattices = lattice_corpus();

    // AC3: ||u*_D||^(2D) gamma_D^D >= n^2.
    report("AC3", 120, [&] {
        std::size_t ok = 0;
        for (const auto &l : lattices) {
            GoodBasis g = good_basis(l);
            Rational lhs = hermite(l.dim()).gamma_pow_dim;
            for (std::size_t i = 0; i < l.dim(); i++) {
                lhs *= g.last_len_sq;
            }
            ok += lhs >= Rational(l.det_abs() * l.det_abs());
        }
        return Outcome{ok == lattices.size() && lattices.size() >= 200,
                       str(ok) + "/" + str(lattices.size()) + " lattices"};
    });

    // AC4: hyperplane volume equals the brute-force Rankin minimum.
    report("AC4", 0, [] {
        std::mt19937_64 rng(404);
        std::size_t n = 0, agree = 0;
        for (int i = 0; i < 80; i++) {
            std::size_t d = 2 + i % 2;
            IntegerLattice l(random_lattice_basis(rng, d, 200));
            GoodBasis g = good_basis(l);
            n++;
            agree += g.hyperplane_vol_sq == Rational(rankin_oracle(l.hnf()));
        }
        return Outcome{agree == n && n >= 50, str(agree) + "/" + str(n) + " instances agree"};
    });

    std::vector<ParallelotopePartition> partitions;
    std::vector<const IntegerLattice *> partition_lattice;
    for (const auto &l : lattices) {
        if (partition_applicable(l.det_abs(), l.dim(), Rational(1))) {
            partitions.push_back(build_partition(good_basis(l), Rational(1)));
            partition_lattice.push_back(&l);
        }
    }

    // AC5: slab integral-point counts.
    report("AC5", 0, [&] {
        std::size_t ok = 0, slabs = 0;
        std::vector<std::size_t> by_dim(5);
        for (std::size_t i = 0; i < partitions.size(); i++) {
            const auto &p = partitions[i];
            auto counts = slab_populations(p, *partition_lattice[i]);
            std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
            bool good = total == p.n() && counts.size() == static_cast<std::size_t>(p.mu);
            for (std::size_t c : counts) {
                slabs++;
                good = good && count_within_upward_bound(p, c) && integral_point_bound_holds(p, c);
            }
            ok += good;
            by_dim[p.dim()]++;
        }
        std::string detail = str(ok) + "/" + str(partitions.size()) + " applicable partitions (D=2: " +
                             str(by_dim[2]) + ", D=3: " + str(by_dim[3]) + ", D=4: " + str(by_dim[4]) + "), " +
                             str(slabs) + " slabs";
        return Outcome{ok == partitions.size() && !partitions.empty(), detail};
    });

    // AC6: mu even, mu >= 2, 2 rho <= lambda < 4 rho.
    report("AC6", 0, [&] {
        std::size_t ok = 0;
        for (const auto &p : partitions) {
            ok += p.mu % 2 == 0 && p.mu >= 2 && p.lambda_sq >= 4 && p.lambda_sq < 16 &&
                  p.lambda_sq * p.mu * p.mu == p.basis.last_len_sq;
        }
        return Outcome{ok == partitions.size() && !partitions.empty(),
                       str(ok) + "/" + str(partitions.size()) + " partitions"};
    });

    std::vector<cli::ScanRow> rows;
    double scan_secs = 0;
    {
        auto t0 = Clock::now();
        rows = scan_corpus();
        scan_secs = std::chrono::duration<double>(Clock::now() - t0).count();
    }

    // AC7: locality radius^2 <= 1 on every scanned code.
    report("AC7", 0, [&] {
        std::size_t checked = 0, ok = 0;
        for (const auto &r : rows) {
            if (r.dim == 0) {
                continue;
            }
            checked++;
            ok += r.locality_holds && Rational(r.radius_sq) <= 1;
        }
        return Outcome{ok == checked && checked > 0, str(ok) + "/" + str(checked) + " scanned codes local (scan took " +
                                                         std::to_string(static_cast<int>(scan_secs)) + " s)"};
    });

    // AC8: constructive localization on the 9x9 toric code.
    report("AC8", 60, [] {
        TwoBlockCode t = toric(9);
        DistanceLimits limits;
        limits.max_weight = 10;
        Certificate cert = certify(t, limits);
        const ComponentCertificate &c = cert.components.at(0);
        Outcome o;
        if (!c.logical || !c.bound || !c.partition) {
            return Outcome{false, "pipeline did not localize: " + c.status};
        }
        StabilizerCodeView view = StabilizerCodeView::from_css(t.css);
        const PauliOperator &op = c.logical->op;
        bool commutes = true;
        for (std::size_t r = 0; r < view.checks().rows(); r++) {
            commutes = commutes && symplectic_commutes(op, view.row(r));
        }
        bool nontrivial = !view.is_stabilizer(op);
        QubitLayout layout = qubit_layout(t, build_psi(t.a, t.b));
        bool confined = true;
        for (std::size_t q : op.support()) {
            confined = confined && slab_index(*c.partition, layout.vertex_of_qubit(q)) == c.logical->slab;
        }
        std::size_t w = op.weight();
        std::size_t cap = 2 * c.slab_counts.at(c.logical->slab);
        bool chain = w <= cap && cap <= c.bound->bound_value && within_bound(*c.bound, cap);
        bool d_ok = cert.params.d() == 9 && 9 <= w;
        bool value_ok = std::abs(c.bound->bound_value - 104.72) < 0.01;
        o.pass = c.bound->applicable && commutes && nontrivial && confined && chain && d_ok && value_ok;
        o.detail = "slab " + str(c.logical->slab) + ", weight " + str(w) + " <= 2*" +
                   str(c.slab_counts.at(c.logical->slab)) + " <= " + c.bound->bound_decimal + ", d = " +
                   (cert.params.d() ? str(*cert.params.d()) : "?");
        return o;
    });

    // AC9: d <= bound on every scanned applicable code with resolved d.
    report("AC9", 0, [&] {
        std::size_t applicable = 0, ok = 0;
        std::vector<std::size_t> by_dim(8);
        for (const auto &r : rows) {
            if (!r.applicable || !resolved(r.d)) {
                continue;
            }
            applicable++;
            std::size_t d = std::stoul(r.d);
            BoundReport b = bt_bound(2, Rational(1), r.dim, Integer(static_cast<unsigned long>(r.n_component)));
            bool good = b.applicable && static_cast<double>(d) <= b.bound_value && r.d_le_bound == "true";
            ok += good;
            by_dim[std::min<std::size_t>(r.dim, 7)]++;
        }
        return Outcome{ok == applicable && applicable > 0,
                       str(ok) + "/" + str(applicable) + " applicable resolved codes (D=2: " + str(by_dim[2]) +
                           ", D=3: " + str(by_dim[3]) + ")"};
    });

    // AC10: cleaning lemma.
    report("AC10", 0, [] {
        std::mt19937_64 rng(1010);
        std::size_t clean_pairs = 0, clean_ok = 0, logical_pairs = 0, logical_ok = 0;
        for (int trial = 0; trial < 2000 && (clean_pairs < 60 || logical_pairs < 20); trial++) {
            TwoBlockCode c = random_code(rng, 16);
            if (dimension(c.css) == 0) {
                continue;
            }
            StabilizerCodeView view = StabilizerCodeView::from_css(c.css);
            std::size_t n = c.num_qubits();
            std::vector<std::size_t> region(n);
            std::iota(region.begin(), region.end(), std::size_t{0});
            std::shuffle(region.begin(), region.end(), rng);
            region.resize(1 + rng() % std::min<std::size_t>(6, n));
            std::sort(region.begin(), region.end());
            // Brute force over every Pauli on the region.
            bool has_logical = false;
            std::size_t m = region.size();
            for (uint64_t bits = 1; bits < (uint64_t{1} << (2 * m)) && !has_logical; bits++) {
                PauliOperator p = PauliOperator::identity(n);
                for (std::size_t i = 0; i < m; i++) {
                    p.x.set(region[i], (bits >> i) & 1);
                    p.z.set(region[i], (bits >> (m + i)) & 1);
                }
                has_logical = view.is_nontrivial_logical(p);
            }
            PauliOperator op = *view.any_logical();
            for (std::size_t r = 0; r < view.checks().rows(); r++) {
                if (rng() & 1) {
                    op = op * view.row(r);
                }
            }
            if (has_logical) {
                logical_pairs++;
                try {
                    clean(view, op, region);
                } catch (const CleaningPreconditionViolated &) {
                    logical_ok++;
                }
                continue;
            }
            clean_pairs++;
            PauliOperator out = clean(view, op, region);
            bool trivial = out.restricted(region) == PauliOperator::identity(n);
            bool equivalent = in_rowspace((op * out).symplectic(), view.checks());
            clean_ok += trivial && equivalent;
        }
        return Outcome{clean_pairs >= 50 && clean_ok == clean_pairs && logical_ok == logical_pairs,
                       str(clean_ok) + "/" + str(clean_pairs) + " cleaned, " + str(logical_ok) + "/" +
                           str(logical_pairs) + " logical-in-region pairs reported"};
    });

    // AC11: gamma(Lambda) <= 2/sqrt(3) on rank-2 lattices.
    report("AC11", 0, [] {
        std::mt19937_64 rng(1111);
        std::size_t n = 0, ok = 0;
        for (int i = 0; i < 1000; i++) {
            IntegerLattice l(random_lattice_basis(rng, 2, 400));
            IntVector v = shortest_vector(l);
            Integer len = dot(v, v);
            n++;
            ok += len == svp_oracle(lll_reduce(l.basis())) && 3 * len * len <= 4 * l.det_abs() * l.det_abs();
        }
        return Outcome{ok == n && n >= 1000, str(ok) + "/" + str(n) + " lattices"};
    });

    return failures == 0 ? 0 : 1;
}
