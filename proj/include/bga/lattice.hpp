#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace bga {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Dense integer matrix; rows are the natural unit (lattice bases are stored
/// row-wise).
class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector> &rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Integer &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    void set_row(std::size_t r, const IntVector &v);
    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t src, std::size_t dst, const Integer &factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t src, std::size_t dst, const Integer &factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    IntMatrix operator*(const IntMatrix &rhs) const;
    IntMatrix transposed() const;
    bool operator==(const IntMatrix &other) const = default;
    bool is_diagonal() const;

    /// Exact determinant (fraction-free elimination). Square matrices only.
    Integer determinant() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

Integer dot(const IntVector &a, const IntVector &b);
Rational dot(const RatVector &a, const RatVector &b);
IntVector operator-(const IntVector &a, const IntVector &b);
IntVector operator+(const IntVector &a, const IntVector &b);
/// x^T M for a coefficient row vector x.
IntVector combine_rows(const IntVector &x, const IntMatrix &m);
Integer floor_div(const Integer &a, const Integer &b);
Integer floor_of(const Rational &q);
/// Nearest integer, ties rounded up.
Integer round_of(const Rational &q);

/// Inverse of a unimodular matrix. Throws InputError if the inverse is not integral.
IntMatrix integer_inverse(const IntMatrix &m);

/// Row-style Hermite normal form: U M = H with U unimodular and H lower
/// triangular, positive diagonal, and 0 <= H(i, j) < H(j, j) for i > j.
struct HermiteForm {
    IntMatrix h;
    IntMatrix u;
};
/// Square nonsingular input only; throws InputError otherwise.
HermiteForm hermite_normal_form(const IntMatrix &m);

/// U M V = S with U, V unimodular and S diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
    IntMatrix s;
    IntMatrix u;
    IntMatrix v;
    std::vector<Integer> diagonal() const;
};
SmithForm smith_normal_form(const IntMatrix &m);

/// Full-rank sublattice of Z^D given by a nonsingular basis (rows).
class IntegerLattice {
   public:
    explicit IntegerLattice(IntMatrix basis);

    std::size_t dim() const { return basis_.rows(); }
    const IntMatrix &basis() const { return basis_; }
    /// n = |det| = |Z^D / Lambda|.
    const Integer &det_abs() const { return det_abs_; }
    const IntMatrix &hnf() const { return hnf_; }

    /// Canonical coset representative: 0 <= p_j < H(j, j) coordinate-wise.
    IntVector reduce(IntVector p) const;
    bool contains(const IntVector &p) const;
    /// Basis of n * Lambda^*, an integer lattice.
    IntMatrix scaled_dual_basis() const;

   private:
    IntMatrix basis_;
    IntMatrix hnf_;
    Integer det_abs_;
};

struct GramSchmidt {
    std::vector<RatVector> ortho;            // u*_i
    std::vector<Rational> norm_sq;           // ||u*_i||^2
    std::vector<std::vector<Rational>> mu;   // mu[i][j] = <u_i, u*_j> / ||u*_j||^2, j < i
};
GramSchmidt gram_schmidt(const IntMatrix &basis);

/// Exact LLL reduction of a basis (rows) with parameter delta.
IntMatrix lll_reduce(const IntMatrix &basis, const Rational &delta = Rational(3, 4));

constexpr std::size_t kDefaultMaxEnumDim = 8;
constexpr std::size_t kDefaultQuotientBudget = 1'000'000;

/// Canonical coset representatives in mixed-radix order (last coordinate
/// fastest) over the box given by the HNF diagonal.
std::vector<IntVector> enumerate_quotient(const IntegerLattice &lattice,
                                          std::size_t budget = kDefaultQuotientBudget);

/// Exact closest-vector search on a fixed lattice, reused across queries.
class QuotientMetric {
   public:
    explicit QuotientMetric(const IntegerLattice &lattice, std::size_t max_dim = kDefaultMaxEnumDim);
    /// min over g in Lambda of ||p - q - g||^2.
    Integer distance_sq(const IntVector &p, const IntVector &q) const;
    /// A lattice vector closest to t.
    IntVector closest_vector(const IntVector &t) const;

   private:
    IntMatrix reduced_;
    GramSchmidt gs_;
    std::vector<RatVector> inverse_;  // reduced_^{-1}
};

Integer quotient_distance_sq(const IntegerLattice &lattice, const IntVector &p, const IntVector &q);

/// All nonzero lattice vectors of minimal squared norm, each normalized so
/// its first nonzero coordinate is positive, sorted lexicographically.
std::vector<IntVector> minimal_vectors(const IntegerLattice &lattice, std::size_t max_dim = kDefaultMaxEnumDim);
/// The lexicographically smallest normalized minimal vector.
IntVector shortest_vector(const IntegerLattice &lattice, std::size_t max_dim = kDefaultMaxEnumDim);

/// A basis u_1..u_D of Lambda whose first D-1 vectors span a rank-(D-1)
/// sublattice of minimal volume.
///
/// The hyperplane is the orthogonal complement of a shortest dual vector y.
/// Coordinates in this basis satisfy x_D(p) = <p, y>, and y is stored scaled:
/// dual_direction = n * y is an integer vector.
struct GoodBasis {
    IntMatrix vectors;
    GramSchmidt gs;
    Integer n;
    IntVector dual_direction;
    Rational hyperplane_vol_sq;  // vol(u_1..u_{D-1})^2
    Rational last_len_sq;        // ||u*_D||^2
    std::size_t dim() const { return vectors.rows(); }
};
GoodBasis good_basis(const IntegerLattice &lattice, std::size_t max_dim = kDefaultMaxEnumDim);

/// mu slabs T_k = { x_D in [k/mu, (k+1)/mu) } of width lambda = ||u*_D|| / mu.
struct ParallelotopePartition {
    GoodBasis basis;
    Rational rho;
    int64_t mu = 0;
    Rational lambda_sq;
    std::size_t dim() const { return basis.dim(); }
    const Integer &n() const { return basis.n; }
};

/// True iff n^2 >= (8 rho)^(2D) gamma_D^D, with gamma_D^D from the Hermite table.
bool partition_applicable(const Integer &n, std::size_t dim, const Rational &rho);
/// Picks mu = floor(l / 2 rho), lowered by one if odd. Throws NotApplicable
/// when the applicability condition fails.
ParallelotopePartition build_partition(const GoodBasis &basis, const Rational &rho);

std::size_t slab_index(const ParallelotopePartition &partition, const IntVector &p);
/// Exact number of quotient points in each slab.
std::vector<std::size_t> slab_populations(const ParallelotopePartition &partition, const IntegerLattice &lattice,
                                          std::size_t budget = kDefaultQuotientBudget);
std::size_t count_integral_points(const ParallelotopePartition &partition, const IntegerLattice &lattice,
                                  std::size_t k, std::size_t budget = kDefaultQuotientBudget);
/// Exact test of count <= (n / ||u*_D||)(lambda + sqrt(D)).
bool integral_point_bound_holds(const ParallelotopePartition &partition, std::size_t count);

}  // namespace bga
