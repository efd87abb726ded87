#include "bga/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace bga {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

BitVec::BitVec(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitVec BitVec::from_string(const std::string &bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1') {
            v.set(i);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string may only contain '0' and '1'");
        }
    }
    return v;
}

BitVec BitVec::from_indices(std::size_t size, std::span<const std::size_t> ones) {
    BitVec v(size);
    for (std::size_t i : ones) {
        if (i >= size) {
            throw std::out_of_range("bit index out of range");
        }
        v.set(i);
    }
    return v;
}

BitVec &BitVec::operator^=(const BitVec &other) {
    if (other.size_ != size_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    for (std::size_t k = 0; k < words_.size(); k++) {
        words_[k] ^= other.words_[k];
    }
    return *this;
}

BitVec BitVec::operator^(const BitVec &other) const {
    BitVec r = *this;
    r ^= other;
    return r;
}

BitVec BitVec::operator&(const BitVec &other) const {
    if (other.size_ != size_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    BitVec r = *this;
    for (std::size_t k = 0; k < words_.size(); k++) {
        r.words_[k] &= other.words_[k];
    }
    return r;
}

bool BitVec::dot(const BitVec &other) const {
    if (other.size_ != size_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    uint64_t acc = 0;
    for (std::size_t k = 0; k < words_.size(); k++) {
        acc ^= words_[k] & other.words_[k];
    }
    return std::popcount(acc) & 1;
}

std::size_t BitVec::popcount() const {
    std::size_t total = 0;
    for (uint64_t w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVec::is_zero() const {
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < words_.size(); k++) {
        uint64_t w = words_[k];
        while (w) {
            out.push_back(k * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

std::string BitVec::str() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; i++) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

bool BitVec::colex_less(const BitVec &a, const BitVec &b) {
    if (a.size_ != b.size_) {
        throw std::invalid_argument("BitVec length mismatch");
    }
    for (std::size_t k = a.words_.size(); k-- > 0;) {
        uint64_t diff = a.words_[k] ^ b.words_[k];
        if (diff) {
            uint64_t top = uint64_t{1} << (63 - std::countl_zero(diff));
            return (b.words_[k] & top) != 0;
        }
    }
    return false;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for(cols)), data_(rows * words_for(cols), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; i++) {
        m.set(i, i);
    }
    return m;
}

BitMatrix BitMatrix::from_rows(std::span<const BitVec> rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); r++) {
        if (rows[r].size() != cols) {
            throw std::invalid_argument("row length does not match column count");
        }
        std::copy(rows[r].words().begin(), rows[r].words().end(), m.row_words(r).begin());
    }
    return m;
}

BitMatrix BitMatrix::from_strings(std::span<const std::string> rows) {
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    std::vector<BitVec> vs;
    vs.reserve(rows.size());
    for (const auto &s : rows) {
        vs.push_back(BitVec::from_string(s));
    }
    return from_rows(vs, cols);
}

BitVec BitMatrix::row(std::size_t r) const {
    BitVec v(cols_);
    auto src = row_words(r);
    std::copy(src.begin(), src.end(), v.words().begin());
    return v;
}

BitVec BitMatrix::col(std::size_t c) const {
    BitVec v(rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        if (get(r, c)) {
            v.set(r);
        }
    }
    return v;
}

std::size_t BitMatrix::row_weight(std::size_t r) const {
    std::size_t total = 0;
    for (uint64_t w : row_words(r)) {
        total += std::popcount(w);
    }
    return total;
}

std::size_t BitMatrix::col_weight(std::size_t c) const {
    std::size_t total = 0;
    for (std::size_t r = 0; r < rows_; r++) {
        total += get(r, c);
    }
    return total;
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    uint64_t *d = data_.data() + dst * words_per_row_;
    const uint64_t *s = data_.data() + src * words_per_row_;
    for (std::size_t k = 0; k < words_per_row_; k++) {
        d[k] ^= s[k];
    }
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    std::swap_ranges(data_.begin() + a * words_per_row_, data_.begin() + (a + 1) * words_per_row_,
                     data_.begin() + b * words_per_row_);
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        auto words = row_words(r);
        for (std::size_t k = 0; k < words_per_row_; k++) {
            uint64_t w = words[k];
            while (w) {
                t.set(k * 64 + std::countr_zero(w), r);
                w &= w - 1;
            }
        }
    }
    return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix &rhs) const {
    if (cols_ != rhs.rows_) {
        throw std::invalid_argument("matrix product shape mismatch");
    }
    BitMatrix out(rows_, rhs.cols_);
    for (std::size_t r = 0; r < rows_; r++) {
        auto dst = out.row_words(r);
        for (std::size_t c = 0; c < cols_; c++) {
            if (get(r, c)) {
                auto src = rhs.row_words(c);
                for (std::size_t k = 0; k < dst.size(); k++) {
                    dst[k] ^= src[k];
                }
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::operator+(const BitMatrix &rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        throw std::invalid_argument("matrix sum shape mismatch");
    }
    BitMatrix out = *this;
    for (std::size_t k = 0; k < data_.size(); k++) {
        out.data_[k] ^= rhs.data_[k];
    }
    return out;
}

bool BitMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](uint64_t w) { return w == 0; });
}

BitVec BitMatrix::apply(const BitVec &v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("vector length does not match column count");
    }
    BitVec out(rows_);
    for (std::size_t r = 0; r < rows_; r++) {
        auto words = row_words(r);
        uint64_t acc = 0;
        for (std::size_t k = 0; k < words_per_row_; k++) {
            acc ^= words[k] & v.words()[k];
        }
        if (std::popcount(acc) & 1) {
            out.set(r);
        }
    }
    return out;
}

BitVec BitMatrix::combine_rows(const BitVec &x) const {
    if (x.size() != rows_) {
        throw std::invalid_argument("coefficient length does not match row count");
    }
    BitVec out(cols_);
    for (std::size_t r : x.ones()) {
        auto src = row_words(r);
        auto dst = out.words();
        for (std::size_t k = 0; k < words_per_row_; k++) {
            dst[k] ^= src[k];
        }
    }
    return out;
}

BitMatrix BitMatrix::col_block(std::size_t c0, std::size_t count) const {
    if (c0 + count > cols_) {
        throw std::out_of_range("column block out of range");
    }
    BitMatrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < count; c++) {
            if (get(r, c0 + c)) {
                out.set(r, c);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::select_cols(std::span<const std::size_t> cols) const {
    BitMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; r++) {
        for (std::size_t c = 0; c < cols.size(); c++) {
            if (get(r, cols[c])) {
                out.set(r, c);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> rows) const {
    BitMatrix out(rows.size(), cols_);
    for (std::size_t r = 0; r < rows.size(); r++) {
        auto src = row_words(rows[r]);
        std::copy(src.begin(), src.end(), out.row_words(r).begin());
    }
    return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix &left, const BitMatrix &right) {
    if (left.rows_ != right.rows_) {
        throw std::invalid_argument("hstack row count mismatch");
    }
    BitMatrix out(left.rows_, left.cols_ + right.cols_);
    for (std::size_t r = 0; r < left.rows_; r++) {
        auto src = left.row_words(r);
        std::copy(src.begin(), src.end(), out.row_words(r).begin());
        for (std::size_t c = 0; c < right.cols_; c++) {
            if (right.get(r, c)) {
                out.set(r, left.cols_ + c);
            }
        }
    }
    return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix &top, const BitMatrix &bottom) {
    if (top.cols_ != bottom.cols_) {
        throw std::invalid_argument("vstack column count mismatch");
    }
    BitMatrix out(top.rows_ + bottom.rows_, top.cols_);
    std::copy(top.data_.begin(), top.data_.end(), out.data_.begin());
    std::copy(bottom.data_.begin(), bottom.data_.end(), out.data_.begin() + top.data_.size());
    return out;
}

std::string BitMatrix::str() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; r++) {
        s += row(r).str();
        s += '\n';
    }
    return s;
}

EchelonForm echelon(const BitMatrix &m, bool track) {
    EchelonForm out{m, {}, std::nullopt};
    if (track) {
        out.transform = BitMatrix::identity(m.rows());
    }
    BitMatrix &a = out.reduced;
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < m.cols() && next_row < m.rows(); c++) {
        std::size_t pivot = next_row;
        while (pivot < m.rows() && !a.get(pivot, c)) {
            pivot++;
        }
        if (pivot == m.rows()) {
            continue;
        }
        a.swap_rows(pivot, next_row);
        if (track) {
            out.transform->swap_rows(pivot, next_row);
        }
        for (std::size_t r = 0; r < m.rows(); r++) {
            if (r != next_row && a.get(r, c)) {
                a.xor_row_into(next_row, r);
                if (track) {
                    out.transform->xor_row_into(next_row, r);
                }
            }
        }
        out.pivots.push_back(c);
        next_row++;
    }
    return out;
}

std::size_t rank(const BitMatrix &m) { return echelon(m).rank(); }

std::vector<BitVec> nullspace_basis(const BitMatrix &m) {
    EchelonForm e = echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t p : e.pivots) {
        is_pivot[p] = true;
    }
    std::vector<BitVec> basis;
    for (std::size_t free = 0; free < m.cols(); free++) {
        if (is_pivot[free]) {
            continue;
        }
        BitVec v(m.cols());
        v.set(free);
        for (std::size_t r = 0; r < e.rank(); r++) {
            if (e.reduced.get(r, free)) {
                v.set(e.pivots[r]);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

bool in_rowspace(const BitVec &v, const BitMatrix &m) {
    if (v.size() != m.cols()) {
        throw std::invalid_argument("in_rowspace: vector length does not match column count");
    }
    return RowSpan(m).contains(v);
}

std::optional<BitVec> solve(const BitMatrix &m, const BitVec &target) {
    if (target.size() != m.cols()) {
        throw std::invalid_argument("solve: target length does not match column count");
    }
    EchelonForm e = echelon(m, true);
    BitVec residual = target;
    BitVec coeffs(m.rows());
    for (std::size_t r = 0; r < e.rank(); r++) {
        if (residual.get(e.pivots[r])) {
            auto src = e.reduced.row_words(r);
            auto dst = residual.words();
            for (std::size_t k = 0; k < dst.size(); k++) {
                dst[k] ^= src[k];
            }
            coeffs ^= e.transform->row(r);
        }
    }
    if (!residual.is_zero()) {
        return std::nullopt;
    }
    return coeffs;
}

RowSpan::RowSpan(const BitMatrix &m) : cols_(m.cols()) {
    for (std::size_t r = 0; r < m.rows(); r++) {
        add(m.row(r));
    }
}

BitVec RowSpan::reduce(BitVec v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("RowSpan: vector length mismatch");
    }
    for (std::size_t i = 0; i < basis_.size(); i++) {
        if (v.get(pivot_[i])) {
            v ^= basis_[i];
        }
    }
    return v;
}

bool RowSpan::add(const BitVec &v) {
    BitVec r = reduce(v);
    if (r.is_zero()) {
        return false;
    }
    std::size_t p = r.ones().front();
    // Invariant: every pivot column is set in exactly one basis vector.
    for (auto &b : basis_) {
        if (b.get(p)) {
            b ^= r;
        }
    }
    basis_.push_back(std::move(r));
    pivot_.push_back(p);
    return true;
}

}  // namespace bga
