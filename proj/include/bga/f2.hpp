#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bga {

/// Packed bit vector over the two-element field.
///
/// Bits beyond size() in the last word are always zero, so word-level
/// comparisons and popcounts are exact.
class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(std::size_t size);
    static BitVec from_string(const std::string &bits);
    static BitVec from_indices(std::size_t size, std::span<const std::size_t> ones);

    std::size_t size() const { return size_; }
    std::size_t num_words() const { return words_.size(); }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool value = true) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

    BitVec &operator^=(const BitVec &other);
    BitVec operator^(const BitVec &other) const;
    BitVec operator&(const BitVec &other) const;
    bool operator==(const BitVec &other) const = default;

    /// Inner product over F2.
    bool dot(const BitVec &other) const;
    std::size_t popcount() const;
    bool is_zero() const;
    std::vector<std::size_t> ones() const;
    std::string str() const;

    std::span<uint64_t> words() { return words_; }
    std::span<const uint64_t> words() const { return words_; }

    /// Colexicographic order on supports: the set whose largest differing
    /// element is absent compares smaller.
    static bool colex_less(const BitVec &a, const BitVec &b);

   private:
    std::size_t size_ = 0;
    std::vector<uint64_t> words_;
};

/// Dense row-major bit matrix. Shape is fixed at construction.
class BitMatrix {
   public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);
    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(std::span<const BitVec> rows, std::size_t cols);
    static BitMatrix from_strings(std::span<const std::string> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_per_row_; }

    bool get(std::size_t r, std::size_t c) const {
        return (data_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool value = true) {
        uint64_t &w = data_[r * words_per_row_ + (c >> 6)];
        uint64_t mask = uint64_t{1} << (c & 63);
        if (value) {
            w |= mask;
        } else {
            w &= ~mask;
        }
    }
    void flip(std::size_t r, std::size_t c) { data_[r * words_per_row_ + (c >> 6)] ^= uint64_t{1} << (c & 63); }

    std::span<uint64_t> row_words(std::size_t r) { return {data_.data() + r * words_per_row_, words_per_row_}; }
    std::span<const uint64_t> row_words(std::size_t r) const {
        return {data_.data() + r * words_per_row_, words_per_row_};
    }
    BitVec row(std::size_t r) const;
    BitVec col(std::size_t c) const;
    std::size_t row_weight(std::size_t r) const;
    std::size_t col_weight(std::size_t c) const;
    void xor_row_into(std::size_t src, std::size_t dst);
    void swap_rows(std::size_t a, std::size_t b);

    BitMatrix transposed() const;
    BitMatrix operator*(const BitMatrix &rhs) const;
    BitMatrix operator+(const BitMatrix &rhs) const;
    bool operator==(const BitMatrix &other) const = default;
    bool is_zero() const;

    /// M v for a column vector v of length cols().
    BitVec apply(const BitVec &v) const;
    /// x^T M for a row-coefficient vector x of length rows().
    BitVec combine_rows(const BitVec &x) const;

    /// Columns [c0, c0 + count) as a new matrix.
    BitMatrix col_block(std::size_t c0, std::size_t count) const;
    /// Keeps the listed columns, in the given order.
    BitMatrix select_cols(std::span<const std::size_t> cols) const;
    BitMatrix select_rows(std::span<const std::size_t> rows) const;
    static BitMatrix hstack(const BitMatrix &left, const BitMatrix &right);
    static BitMatrix vstack(const BitMatrix &top, const BitMatrix &bottom);

    std::string str() const;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<uint64_t> data_;
};

/// Reduced row echelon form, pivoting on the leftmost column with the topmost
/// available row. When `track` is set, the row operations are also applied to
/// an identity matrix so that each reduced row can be expressed in terms of the
/// original rows.
struct EchelonForm {
    BitMatrix reduced;                 // rows [0, rank) are the nonzero RREF rows
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
    std::optional<BitMatrix> transform;  // transform * original == reduced
    std::size_t rank() const { return pivots.size(); }
};

EchelonForm echelon(const BitMatrix &m, bool track = false);

std::size_t rank(const BitMatrix &m);
std::vector<BitVec> nullspace_basis(const BitMatrix &m);
bool in_rowspace(const BitVec &v, const BitMatrix &m);
/// Finds x with x^T M = target, or nullopt if target is outside the row space.
std::optional<BitVec> solve(const BitMatrix &m, const BitVec &target);

/// Incrementally maintained row space with fast membership and reduction.
class RowSpan {
   public:
    explicit RowSpan(std::size_t cols) : cols_(cols) {}
    explicit RowSpan(const BitMatrix &m);

    std::size_t cols() const { return cols_; }
    std::size_t dim() const { return basis_.size(); }

    /// Reduces v against the current basis; result is zero iff v is in the span.
    BitVec reduce(BitVec v) const;
    bool contains(const BitVec &v) const { return reduce(v).is_zero(); }
    /// Adds v if independent. Returns true when the span grew.
    bool add(const BitVec &v);

   private:
    std::size_t cols_;
    std::vector<BitVec> basis_;
    std::vector<std::size_t> pivot_;
};

}  // namespace bga
