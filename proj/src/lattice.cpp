#include "bga/lattice.hpp"

#include <algorithm>
#include <string>

#include "bga/errors.hpp"
#include "bga/hermite.hpp"

namespace bga {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            throw InputError("ragged matrix literal");
        }
        for (long v : r) {
            data_.emplace_back(v);
        }
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m(i, i) = 1;
    }
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector> &rows) {
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw InputError("ragged matrix rows");
        }
        m.set_row(r, rows[r]);
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

void IntMatrix::set_row(std::size_t r, const IntVector &v) {
    std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t c = 0; c < cols_; c++) {
        std::swap((*this)(a, c), (*this)(b, c));
    }
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t r = 0; r < rows_; r++) {
        std::swap((*this)(r, a), (*this)(r, b));
    }
}

void IntMatrix::add_row_multiple(std::size_t src, std::size_t dst, const Integer &factor) {
    if (factor == 0) {
        return;
    }
    for (std::size_t c = 0; c < cols_; c++) {
        (*this)(dst, c) += factor * (*this)(src, c);
    }
}

void IntMatrix::add_col_multiple(std::size_t src, std::size_t dst, const Integer &factor) {
    if (factor == 0) {
        return;
    }
    for (std::size_t r = 0; r < rows_; r++) {
        (*this)(r, dst) += factor * (*this)(r, src);
    }
}

void IntMatrix::negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; c++) {
        (*this)(r, c) = -(*this)(r, c);
    }
}

void IntMatrix::negate_col(std::size_t c) {
    for (std::size_t r = 0; r < rows_; r++) {
        (*this)(r, c) = -(*this)(r, c);
    }
}

IntMatrix IntMatrix::operator*(const IntMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw InputError("integer matrix product shape mismatch");
    }
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; i++) {
        for (std::size_t k = 0; k < cols_; k++) {
            const Integer &a = (*this)(i, k);
            if (a == 0) {
                continue;
            }
            for (std::size_t j = 0; j < rhs.cols_; j++) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols_; c++) {
            if (r != c && (*this)(r, c) != 0) {
                return false;
            }
        }
    }
    return true;
}

Integer IntMatrix::determinant() const {
    if (rows_ != cols_) {
        throw InputError("determinant of a non-square matrix");
    }
    std::size_t n = rows_;
    if (n == 0) {
        return 1;
    }
    // Bareiss fraction-free elimination.
    IntMatrix a = *this;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; k++) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) {
                p++;
            }
            if (p == n) {
                return 0;
            }
            a.swap_rows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; i++) {
            for (std::size_t j = k + 1; j < n; j++) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = t;
            }
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

Integer dot(const IntVector &a, const IntVector &b) {
    if (a.size() != b.size()) {
        throw InputError("vector length mismatch");
    }
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        s += a[i] * b[i];
    }
    return s;
}

Rational dot(const RatVector &a, const RatVector &b) {
    if (a.size() != b.size()) {
        throw InputError("vector length mismatch");
    }
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        s += a[i] * b[i];
    }
    return s;
}

IntVector operator-(const IntVector &a, const IntVector &b) {
    if (a.size() != b.size()) {
        throw InputError("vector length mismatch");
    }
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        r[i] = a[i] - b[i];
    }
    return r;
}

IntVector operator+(const IntVector &a, const IntVector &b) {
    if (a.size() != b.size()) {
        throw InputError("vector length mismatch");
    }
    IntVector r(a.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        r[i] = a[i] + b[i];
    }
    return r;
}

IntVector combine_rows(const IntVector &x, const IntMatrix &m) {
    if (x.size() != m.rows()) {
        throw InputError("coefficient length does not match row count");
    }
    IntVector out(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); r++) {
        if (x[r] == 0) {
            continue;
        }
        for (std::size_t c = 0; c < m.cols(); c++) {
            out[c] += x[r] * m(r, c);
        }
    }
    return out;
}

Integer floor_div(const Integer &a, const Integer &b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor_of(const Rational &q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer round_of(const Rational &q) { return floor_of(q + Rational(1, 2)); }

HermiteForm hermite_normal_form(const IntMatrix &m) {
    if (m.rows() != m.cols()) {
        throw InputError("Hermite normal form requires a square matrix");
    }
    std::size_t n = m.rows();
    HermiteForm out{m, IntMatrix::identity(n)};
    IntMatrix &a = out.h;
    IntMatrix &u = out.u;
    for (std::size_t j = n; j-- > 0;) {
        while (true) {
            std::size_t pivot = n;
            for (std::size_t i = 0; i <= j; i++) {
                if (a(i, j) != 0 && (pivot == n || abs(a(i, j)) < abs(a(pivot, j)))) {
                    pivot = i;
                }
            }
            if (pivot == n) {
                throw InputError("Hermite normal form requires a nonsingular matrix");
            }
            bool clean = true;
            for (std::size_t i = 0; i <= j; i++) {
                if (i == pivot || a(i, j) == 0) {
                    continue;
                }
                Integer q = floor_div(a(i, j), a(pivot, j));
                a.add_row_multiple(pivot, i, -q);
                u.add_row_multiple(pivot, i, -q);
                if (a(i, j) != 0) {
                    clean = false;
                }
            }
            if (clean) {
                a.swap_rows(pivot, j);
                u.swap_rows(pivot, j);
                break;
            }
        }
        if (a(j, j) < 0) {
            a.negate_row(j);
            u.negate_row(j);
        }
    }
    for (std::size_t j = n; j-- > 0;) {
        for (std::size_t i = j + 1; i < n; i++) {
            Integer q = floor_div(a(i, j), a(j, j));
            a.add_row_multiple(j, i, -q);
            u.add_row_multiple(j, i, -q);
        }
    }
    return out;
}

std::vector<Integer> SmithForm::diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); i++) {
        d.push_back(s(i, i));
    }
    return d;
}

SmithForm smith_normal_form(const IntMatrix &m) {
    std::size_t rows = m.rows();
    std::size_t cols = m.cols();
    SmithForm out{m, IntMatrix::identity(rows), IntMatrix::identity(cols)};
    IntMatrix &a = out.s;
    for (std::size_t t = 0; t < std::min(rows, cols); t++) {
        bool finished = false;
        while (true) {
            std::size_t pr = rows;
            std::size_t pc = cols;
            for (std::size_t i = t; i < rows; i++) {
                for (std::size_t j = t; j < cols; j++) {
                    if (a(i, j) != 0 && (pr == rows || abs(a(i, j)) < abs(a(pr, pc)))) {
                        pr = i;
                        pc = j;
                    }
                }
            }
            if (pr == rows) {
                finished = true;
                break;
            }
            a.swap_rows(t, pr);
            out.u.swap_rows(t, pr);
            a.swap_cols(t, pc);
            out.v.swap_cols(t, pc);

            bool clear = true;
            for (std::size_t i = t + 1; i < rows; i++) {
                if (a(i, t) == 0) {
                    continue;
                }
                Integer q = floor_div(a(i, t), a(t, t));
                a.add_row_multiple(t, i, -q);
                out.u.add_row_multiple(t, i, -q);
                if (a(i, t) != 0) {
                    clear = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; j++) {
                if (a(t, j) == 0) {
                    continue;
                }
                Integer q = floor_div(a(t, j), a(t, t));
                a.add_col_multiple(t, j, -q);
                out.v.add_col_multiple(t, j, -q);
                if (a(t, j) != 0) {
                    clear = false;
                }
            }
            if (!clear) {
                continue;
            }
            // Divisibility chain: fold an offending row into the pivot row and retry.
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; i++) {
                for (std::size_t j = t + 1; j < cols; j++) {
                    if (a(i, j) % a(t, t) != 0) {
                        a.add_row_multiple(i, t, 1);
                        out.u.add_row_multiple(i, t, 1);
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) {
                break;
            }
        }
        if (finished) {
            break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            out.u.negate_row(t);
        }
    }
    return out;
}

namespace {

/// Exact inverse of a square nonsingular integer matrix.
std::vector<RatVector> rational_inverse(const IntMatrix &m) {
    std::size_t n = m.rows();
    std::vector<RatVector> a(n, RatVector(2 * n));
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            a[i][j] = m(i, j);
        }
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; c++) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) {
            p++;
        }
        if (p == n) {
            throw InputError("matrix is singular");
        }
        std::swap(a[p], a[c]);
        Rational inv = 1 / a[c][c];
        for (auto &x : a[c]) {
            x *= inv;
        }
        for (std::size_t r = 0; r < n; r++) {
            if (r == c || a[r][c] == 0) {
                continue;
            }
            Rational f = a[r][c];
            for (std::size_t k = 0; k < 2 * n; k++) {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    std::vector<RatVector> inv(n, RatVector(n));
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            inv[i][j] = a[i][n + j];
        }
    }
    return inv;
}

}  // namespace

IntMatrix integer_inverse(const IntMatrix &m) {
    if (m.rows() != m.cols()) {
        throw InputError("inverse of a non-square matrix");
    }
    auto inv = rational_inverse(m);
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); i++) {
        for (std::size_t j = 0; j < m.cols(); j++) {
            if (inv[i][j].get_den() != 1) {
                throw InputError("matrix is not unimodular");
            }
            out(i, j) = inv[i][j].get_num();
        }
    }
    return out;
}

namespace {

void check_dim(std::size_t dim, std::size_t max_dim) {
    if (dim > max_dim) {
        throw BudgetExceeded("lattice dimension " + std::to_string(dim) + " exceeds enumeration limit " +
                             std::to_string(max_dim));
    }
}

/// Depth-first Schnorr-Euchner enumeration of coefficient vectors x with
/// ||(x - tau) B||^2 within the current radius, evaluated exactly.
class Enumerator {
   public:
    using Leaf = std::function<void(const IntVector &, const Rational &)>;

    Enumerator(const GramSchmidt &gs, RatVector tau) : gs_(gs), tau_(std::move(tau)), x_(tau_.size(), 0) {}

    void run(std::optional<Rational> radius, bool inclusive, bool skip_zero, const Leaf &leaf) {
        radius_ = std::move(radius);
        inclusive_ = inclusive;
        skip_zero_ = skip_zero;
        leaf_ = &leaf;
        descend(static_cast<int>(x_.size()) - 1, Rational(0));
    }

    void set_radius(const Rational &r) { radius_ = r; }

   private:
    bool within(const Rational &v) const {
        if (!radius_) {
            return true;
        }
        return inclusive_ ? v <= *radius_ : v < *radius_;
    }

    void descend(int level, const Rational &partial) {
        if (level < 0) {
            if (skip_zero_ && std::all_of(x_.begin(), x_.end(), [](const Integer &v) { return v == 0; })) {
                return;
            }
            (*leaf_)(x_, partial);
            return;
        }
        auto l = static_cast<std::size_t>(level);
        Rational center = tau_[l];
        for (std::size_t j = l + 1; j < x_.size(); j++) {
            center -= gs_.mu[j][l] * (Rational(x_[j]) - tau_[j]);
        }
        const Rational &weight = gs_.norm_sq[l];
        Integer up = round_of(center);
        Integer down = up - 1;
        bool up_open = true;
        bool down_open = true;
        while (up_open || down_open) {
            bool take_up;
            if (up_open && down_open) {
                take_up = abs(Rational(up) - center) <= abs(center - Rational(down));
            } else {
                take_up = up_open;
            }
            Integer cand = take_up ? up : down;
            Rational diff = Rational(cand) - center;
            Rational value = partial + weight * diff * diff;
            if (!within(value)) {
                (take_up ? up_open : down_open) = false;
                continue;
            }
            x_[l] = cand;
            descend(level - 1, value);
            if (take_up) {
                up += 1;
            } else {
                down -= 1;
            }
        }
        x_[l] = 0;
    }

    const GramSchmidt &gs_;
    RatVector tau_;
    IntVector x_;
    std::optional<Rational> radius_;
    bool inclusive_ = false;
    bool skip_zero_ = false;
    const Leaf *leaf_ = nullptr;
};

bool lex_less(const IntVector &a, const IntVector &b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void normalize_sign(IntVector &v) {
    for (const auto &c : v) {
        if (c != 0) {
            if (c < 0) {
                for (auto &x : v) {
                    x = -x;
                }
            }
            return;
        }
    }
}

}  // namespace

IntegerLattice::IntegerLattice(IntMatrix basis) : basis_(std::move(basis)) {
    if (basis_.rows() != basis_.cols() || basis_.rows() == 0) {
        throw InputError("lattice basis must be a nonempty square matrix");
    }
    det_abs_ = abs(basis_.determinant());
    if (det_abs_ == 0) {
        throw InputError("lattice basis is singular");
    }
    hnf_ = hermite_normal_form(basis_).h;
}

IntVector IntegerLattice::reduce(IntVector p) const {
    std::size_t d = dim();
    if (p.size() != d) {
        throw InputError("point dimension does not match lattice dimension");
    }
    for (std::size_t j = d; j-- > 0;) {
        Integer q = floor_div(p[j], hnf_(j, j));
        if (q != 0) {
            for (std::size_t c = 0; c <= j; c++) {
                p[c] -= q * hnf_(j, c);
            }
        }
    }
    return p;
}

bool IntegerLattice::contains(const IntVector &p) const {
    IntVector r = reduce(p);
    return std::all_of(r.begin(), r.end(), [](const Integer &v) { return v == 0; });
}

IntMatrix IntegerLattice::scaled_dual_basis() const {
    auto inv = rational_inverse(basis_);
    std::size_t d = dim();
    IntMatrix out(d, d);
    for (std::size_t i = 0; i < d; i++) {
        for (std::size_t j = 0; j < d; j++) {
            // Row i of B^{-T} is column i of B^{-1}.
            Rational v = inv[j][i] * det_abs_;
            if (v.get_den() != 1) {
                throw ConsistencyFault("scaled dual basis is not integral");
            }
            out(i, j) = v.get_num();
        }
    }
    return out;
}

GramSchmidt gram_schmidt(const IntMatrix &basis) {
    std::size_t r = basis.rows();
    std::size_t c = basis.cols();
    GramSchmidt gs;
    gs.ortho.assign(r, RatVector(c));
    gs.norm_sq.assign(r, 0);
    gs.mu.assign(r, std::vector<Rational>(r, 0));
    for (std::size_t i = 0; i < r; i++) {
        RatVector v(c);
        for (std::size_t k = 0; k < c; k++) {
            v[k] = basis(i, k);
        }
        for (std::size_t j = 0; j < i; j++) {
            if (gs.norm_sq[j] == 0) {
                throw InputError("Gram-Schmidt on dependent vectors");
            }
            Rational proj = 0;
            for (std::size_t k = 0; k < c; k++) {
                proj += Rational(basis(i, k)) * gs.ortho[j][k];
            }
            Rational m = proj / gs.norm_sq[j];
            gs.mu[i][j] = m;
            for (std::size_t k = 0; k < c; k++) {
                v[k] -= m * gs.ortho[j][k];
            }
        }
        gs.mu[i][i] = 1;
        gs.norm_sq[i] = dot(v, v);
        gs.ortho[i] = std::move(v);
    }
    return gs;
}

IntMatrix lll_reduce(const IntMatrix &basis, const Rational &delta) {
    IntMatrix b = basis;
    std::size_t n = b.rows();
    if (n <= 1) {
        return b;
    }
    GramSchmidt gs = gram_schmidt(b);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            Integer q = round_of(gs.mu[k][j]);
            if (q == 0) {
                continue;
            }
            b.add_row_multiple(j, k, -q);
            for (std::size_t t = 0; t < j; t++) {
                gs.mu[k][t] -= Rational(q) * gs.mu[j][t];
            }
            gs.mu[k][j] -= Rational(q);
        }
        Rational m = gs.mu[k][k - 1];
        if (gs.norm_sq[k] >= (delta - m * m) * gs.norm_sq[k - 1]) {
            k++;
        } else {
            b.swap_rows(k, k - 1);
            gs = gram_schmidt(b);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return b;
}

std::vector<IntVector> enumerate_quotient(const IntegerLattice &lattice, std::size_t budget) {
    if (lattice.det_abs() > budget) {
        throw BudgetExceeded("quotient of size " + lattice.det_abs().get_str() + " exceeds enumeration budget " +
                             std::to_string(budget));
    }
    std::size_t d = lattice.dim();
    std::vector<std::size_t> radix(d);
    for (std::size_t j = 0; j < d; j++) {
        radix[j] = lattice.hnf()(j, j).get_ui();
    }
    std::size_t n = lattice.det_abs().get_ui();
    std::vector<IntVector> out;
    out.reserve(n);
    std::vector<std::size_t> digits(d, 0);
    for (std::size_t idx = 0; idx < n; idx++) {
        IntVector p(d);
        for (std::size_t j = 0; j < d; j++) {
            p[j] = static_cast<unsigned long>(digits[j]);
        }
        out.push_back(std::move(p));
        for (std::size_t j = d; j-- > 0;) {
            if (++digits[j] < radix[j]) {
                break;
            }
            digits[j] = 0;
        }
    }
    return out;
}

QuotientMetric::QuotientMetric(const IntegerLattice &lattice, std::size_t max_dim) {
    check_dim(lattice.dim(), max_dim);
    reduced_ = lll_reduce(lattice.basis());
    gs_ = gram_schmidt(reduced_);
    inverse_ = rational_inverse(reduced_);
}

IntVector QuotientMetric::closest_vector(const IntVector &t) const {
    std::size_t d = reduced_.rows();
    if (t.size() != d) {
        throw InputError("target dimension does not match lattice dimension");
    }
    RatVector tau(d, 0);
    for (std::size_t j = 0; j < d; j++) {
        for (std::size_t i = 0; i < d; i++) {
            tau[j] += Rational(t[i]) * inverse_[i][j];
        }
    }
    Enumerator e(gs_, tau);
    IntVector best;
    Enumerator::Leaf leaf = [&](const IntVector &x, const Rational &value) {
        best = x;
        e.set_radius(value);
    };
    e.run(std::nullopt, false, false, leaf);
    return combine_rows(best, reduced_);
}

Integer QuotientMetric::distance_sq(const IntVector &p, const IntVector &q) const {
    IntVector t = p - q;
    IntVector g = closest_vector(t);
    IntVector diff = t - g;
    return dot(diff, diff);
}

Integer quotient_distance_sq(const IntegerLattice &lattice, const IntVector &p, const IntVector &q) {
    return QuotientMetric(lattice).distance_sq(p, q);
}

std::vector<IntVector> minimal_vectors(const IntegerLattice &lattice, std::size_t max_dim) {
    check_dim(lattice.dim(), max_dim);
    IntMatrix reduced = lll_reduce(lattice.basis());
    GramSchmidt gs = gram_schmidt(reduced);
    std::size_t d = reduced.rows();
    Rational radius = 0;
    for (std::size_t i = 0; i < d; i++) {
        IntVector r = reduced.row(i);
        Rational len = dot(r, r);
        if (i == 0 || len < radius) {
            radius = len;
        }
    }
    Enumerator e(gs, RatVector(d, 0));
    Rational best = radius;
    std::vector<IntVector> found;
    Enumerator::Leaf leaf = [&](const IntVector &x, const Rational &value) {
        if (value < best) {
            best = value;
            found.clear();
            e.set_radius(value);
        }
        if (value == best) {
            found.push_back(x);
        }
    };
    e.run(radius, true, true, leaf);

    std::vector<IntVector> out;
    out.reserve(found.size());
    for (const auto &x : found) {
        IntVector v = combine_rows(x, reduced);
        normalize_sign(v);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.empty()) {
        throw ConsistencyFault("shortest-vector enumeration found no vector within the basis radius");
    }
    return out;
}

IntVector shortest_vector(const IntegerLattice &lattice, std::size_t max_dim) {
    return minimal_vectors(lattice, max_dim).front();
}

GoodBasis good_basis(const IntegerLattice &lattice, std::size_t max_dim) {
    std::size_t d = lattice.dim();
    check_dim(d, max_dim);
    const Integer &n = lattice.det_abs();
    IntegerLattice scaled_dual(lattice.scaled_dual_basis());
    IntVector w = shortest_vector(scaled_dual, max_dim);

    // Coefficients of y = w / n in the dual basis: z_i = <b_i, y>.
    IntVector z(d);
    Integer g = 0;
    for (std::size_t i = 0; i < d; i++) {
        Integer num = dot(lattice.basis().row(i), w);
        if (num % n != 0) {
            throw ConsistencyFault("dual vector pairs non-integrally with the lattice");
        }
        z[i] = num / n;
        g = gcd(g, z[i]);
    }
    if (g != 1) {
        throw ConsistencyFault("shortest dual vector is not primitive");
    }

    IntMatrix column(d, 1);
    for (std::size_t i = 0; i < d; i++) {
        column(i, 0) = z[i];
    }
    SmithForm snf = smith_normal_form(column);
    IntMatrix coeffs = snf.u;  // rows 1..D-1 are orthogonal to z, row 0 pairs to +-1

    IntMatrix vectors(d, d);
    if (d > 1) {
        IntMatrix hyper(d - 1, d);
        for (std::size_t i = 1; i < d; i++) {
            hyper.set_row(i - 1, combine_rows(coeffs.row(i), lattice.basis()));
        }
        hyper = lll_reduce(hyper);
        for (std::size_t i = 0; i + 1 < d; i++) {
            vectors.set_row(i, hyper.row(i));
        }
    }
    IntVector last = combine_rows(coeffs.row(0), lattice.basis());
    Integer pairing = dot(last, w);
    if (pairing == -n) {
        for (auto &x : last) {
            x = -x;
        }
    } else if (pairing != n) {
        throw ConsistencyFault("basis completion does not pair to one with the dual vector");
    }
    vectors.set_row(d - 1, last);

    GoodBasis out;
    out.vectors = vectors;
    out.gs = gram_schmidt(vectors);
    out.n = n;
    out.dual_direction = w;
    out.hyperplane_vol_sq = 1;
    for (std::size_t i = 0; i + 1 < d; i++) {
        out.hyperplane_vol_sq *= out.gs.norm_sq[i];
    }
    out.last_len_sq = out.gs.norm_sq[d - 1];

    Rational w_sq = dot(w, w);
    Rational n_sq = Rational(n * n);
    if (abs(vectors.determinant()) != n || out.hyperplane_vol_sq * out.last_len_sq != n_sq ||
        out.hyperplane_vol_sq != w_sq || out.last_len_sq != n_sq / w_sq) {
        throw ConsistencyFault("good basis volume identities failed");
    }
    return out;
}

bool partition_applicable(const Integer &n, std::size_t dim, const Rational &rho) {
    if (rho <= 0) {
        throw InputError("locality radius must be positive");
    }
    HermiteValue h = hermite(dim);
    Rational rhs = h.gamma_pow_dim;
    Rational eight_rho_sq = 64 * rho * rho;
    for (std::size_t i = 0; i < dim; i++) {
        rhs *= eight_rho_sq;
    }
    return Rational(n * n) >= rhs;
}

ParallelotopePartition build_partition(const GoodBasis &basis, const Rational &rho) {
    if (!partition_applicable(basis.n, basis.dim(), rho)) {
        throw NotApplicable("n^(1/D) < 8 rho sqrt(gamma_D): partition not applicable");
    }
    ParallelotopePartition p;
    p.basis = basis;
    p.rho = rho;
    // floor(l / 2rho) = isqrt(floor(l^2 / 4rho^2)).
    Rational ratio = basis.last_len_sq / (4 * rho * rho);
    Integer t = floor_of(ratio);
    mpz_sqrt(t.get_mpz_t(), t.get_mpz_t());
    Integer mu = (t % 2 == 0) ? t : t - 1;
    if (!mu.fits_slong_p()) {
        throw BudgetExceeded("slab count does not fit in a machine integer");
    }
    p.mu = mu.get_si();
    Rational two_rho_sq = 4 * rho * rho;
    if (p.mu < 2 || p.mu % 2 != 0) {
        throw ConsistencyFault("slab count must be even and at least 2 under the applicability condition");
    }
    p.lambda_sq = basis.last_len_sq / Rational(mu * mu);
    if (p.lambda_sq < two_rho_sq || p.lambda_sq >= 4 * two_rho_sq) {
        throw ConsistencyFault("slab width outside [2 rho, 4 rho)");
    }
    return p;
}

std::size_t slab_index(const ParallelotopePartition &partition, const IntVector &p) {
    const Integer &n = partition.n();
    Integer pairing = dot(p, partition.basis.dual_direction);
    Integer frac_num;
    mpz_fdiv_r(frac_num.get_mpz_t(), pairing.get_mpz_t(), n.get_mpz_t());
    Integer k = floor_div(frac_num * partition.mu, n);
    return k.get_ui();
}

std::vector<std::size_t> slab_populations(const ParallelotopePartition &partition, const IntegerLattice &lattice,
                                          std::size_t budget) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(partition.mu), 0);
    for (const auto &p : enumerate_quotient(lattice, budget)) {
        counts[slab_index(partition, p)]++;
    }
    return counts;
}

std::size_t count_integral_points(const ParallelotopePartition &partition, const IntegerLattice &lattice,
                                  std::size_t k, std::size_t budget) {
    if (k >= static_cast<std::size_t>(partition.mu)) {
        throw InputError("slab index out of range");
    }
    return slab_populations(partition, lattice, budget)[k];
}

bool integral_point_bound_holds(const ParallelotopePartition &partition, std::size_t count) {
    // (n/l)(lambda + sqrt D) = n/mu + n sqrt(D) / l, compared on squares.
    Rational n(partition.n());
    Rational excess = Rational(static_cast<unsigned long>(count)) - n / Rational(partition.mu);
    if (excess <= 0) {
        return true;
    }
    Rational rhs_sq = n * n * Rational(static_cast<unsigned long>(partition.dim())) / partition.basis.last_len_sq;
    return excess * excess <= rhs_sq;
}

}  // namespace bga
