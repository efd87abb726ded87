#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bga/f2.hpp"

namespace bga {

using Exponents = std::vector<int64_t>;

/// G = Z_{d1} x ... x Z_{dt}, elements enumerated in mixed-radix order with the
/// last coordinate varying fastest. Element index 0 is the identity.
///
/// The empty presentation is the trivial group of order 1.
class FiniteAbelianGroup {
   public:
    FiniteAbelianGroup() = default;
    explicit FiniteAbelianGroup(std::vector<int64_t> cyclic_orders);

    const std::vector<int64_t> &cyclic_orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    std::size_t order() const { return order_; }

    std::size_t identity() const { return 0; }
    /// Index of an exponent vector; each entry is reduced into [0, d_i).
    std::size_t index_of(std::span<const int64_t> exponents) const;
    Exponents exponents_of(std::size_t index) const;
    std::size_t multiply(std::size_t g, std::size_t h) const;
    std::size_t inverse(std::size_t g) const;
    /// g^k for any integer k.
    std::size_t power(std::size_t g, int64_t k) const;
    /// Order of the element g.
    int64_t element_order(std::size_t g) const;

    bool operator==(const FiniteAbelianGroup &other) const { return orders_ == other.orders_; }

   private:
    std::vector<int64_t> orders_;
    std::vector<std::size_t> strides_;
    std::size_t order_ = 1;
};

/// An element of F2[G]: a set of group elements with implicit coefficient 1.
class GroupAlgebraElement {
   public:
    GroupAlgebraElement() = default;
    /// Support indices are sorted; duplicates are rejected.
    GroupAlgebraElement(FiniteAbelianGroup group, std::vector<std::size_t> support);
    static GroupAlgebraElement from_exponents(const FiniteAbelianGroup &group,
                                              std::span<const Exponents> support);
    static GroupAlgebraElement zero(const FiniteAbelianGroup &group) { return {group, {}}; }
    static GroupAlgebraElement one(const FiniteAbelianGroup &group) { return {group, {0}}; }

    const FiniteAbelianGroup &group() const { return group_; }
    const std::vector<std::size_t> &support() const { return support_; }
    std::size_t weight() const { return support_.size(); }
    bool is_zero() const { return support_.empty(); }
    bool contains(std::size_t g) const;

    /// Sum over F2 (symmetric difference of supports).
    GroupAlgebraElement operator+(const GroupAlgebraElement &other) const;
    GroupAlgebraElement operator*(const GroupAlgebraElement &other) const;
    bool operator==(const GroupAlgebraElement &other) const = default;

    std::vector<Exponents> support_exponents() const;

   private:
    FiniteAbelianGroup group_;
    std::vector<std::size_t> support_;
};

/// Permutation matrix with entry (i, j) set iff g_i = g * g_j.
BitMatrix regular_representation(const FiniteAbelianGroup &group, std::size_t g);
/// Sum of regular representations over the support of x.
BitMatrix algebra_to_matrix(const GroupAlgebraElement &x);
/// h * x: translates every support element by h.
GroupAlgebraElement shift(const GroupAlgebraElement &x, std::size_t h);

}  // namespace bga
