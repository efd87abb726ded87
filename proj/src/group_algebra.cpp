#include "bga/group_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bga {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int64_t> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    strides_.assign(orders_.size(), 1);
    order_ = 1;
    for (std::size_t i = orders_.size(); i-- > 0;) {
        if (orders_[i] < 2) {
            throw std::invalid_argument("cyclic order must be at least 2, got " + std::to_string(orders_[i]));
        }
        strides_[i] = order_;
        order_ *= static_cast<std::size_t>(orders_[i]);
    }
}

std::size_t FiniteAbelianGroup::index_of(std::span<const int64_t> exponents) const {
    if (exponents.size() != orders_.size()) {
        throw std::invalid_argument("exponent vector has length " + std::to_string(exponents.size()) +
                                    ", group has " + std::to_string(orders_.size()) + " factors");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); i++) {
        int64_t e = exponents[i] % orders_[i];
        if (e < 0) {
            e += orders_[i];
        }
        idx += static_cast<std::size_t>(e) * strides_[i];
    }
    return idx;
}

Exponents FiniteAbelianGroup::exponents_of(std::size_t index) const {
    if (index >= order_) {
        throw std::out_of_range("group element index out of range");
    }
    Exponents e(orders_.size());
    for (std::size_t i = 0; i < orders_.size(); i++) {
        e[i] = static_cast<int64_t>(index / strides_[i]) % orders_[i];
    }
    return e;
}

std::size_t FiniteAbelianGroup::multiply(std::size_t g, std::size_t h) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); i++) {
        auto d = static_cast<std::size_t>(orders_[i]);
        std::size_t a = (g / strides_[i]) % d;
        std::size_t b = (h / strides_[i]) % d;
        idx += ((a + b) % d) * strides_[i];
    }
    return idx;
}

std::size_t FiniteAbelianGroup::inverse(std::size_t g) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders_.size(); i++) {
        auto d = static_cast<std::size_t>(orders_[i]);
        std::size_t a = (g / strides_[i]) % d;
        idx += ((d - a) % d) * strides_[i];
    }
    return idx;
}

std::size_t FiniteAbelianGroup::power(std::size_t g, int64_t k) const {
    Exponents e = exponents_of(g);
    for (std::size_t i = 0; i < e.size(); i++) {
        // Reduce k first to keep the product in range.
        int64_t kk = k % orders_[i];
        e[i] = (e[i] * kk) % orders_[i];
    }
    return index_of(e);
}

int64_t FiniteAbelianGroup::element_order(std::size_t g) const {
    Exponents e = exponents_of(g);
    int64_t result = 1;
    for (std::size_t i = 0; i < e.size(); i++) {
        int64_t o = orders_[i] / std::gcd(orders_[i], e[i]);
        result = std::lcm(result, o);
    }
    return result;
}

GroupAlgebraElement::GroupAlgebraElement(FiniteAbelianGroup group, std::vector<std::size_t> support)
    : group_(std::move(group)), support_(std::move(support)) {
    std::sort(support_.begin(), support_.end());
    if (std::adjacent_find(support_.begin(), support_.end()) != support_.end()) {
        throw std::invalid_argument("group algebra support contains a repeated element");
    }
    if (!support_.empty() && support_.back() >= group_.order()) {
        throw std::out_of_range("group algebra support element out of range");
    }
}

GroupAlgebraElement GroupAlgebraElement::from_exponents(const FiniteAbelianGroup &group,
                                                        std::span<const Exponents> support) {
    std::vector<std::size_t> idx;
    idx.reserve(support.size());
    for (const auto &e : support) {
        idx.push_back(group.index_of(e));
    }
    return {group, std::move(idx)};
}

bool GroupAlgebraElement::contains(std::size_t g) const {
    return std::binary_search(support_.begin(), support_.end(), g);
}

GroupAlgebraElement GroupAlgebraElement::operator+(const GroupAlgebraElement &other) const {
    if (!(group_ == other.group_)) {
        throw std::invalid_argument("group algebra elements belong to different groups");
    }
    std::vector<std::size_t> out;
    std::set_symmetric_difference(support_.begin(), support_.end(), other.support_.begin(), other.support_.end(),
                                  std::back_inserter(out));
    return {group_, std::move(out)};
}

GroupAlgebraElement GroupAlgebraElement::operator*(const GroupAlgebraElement &other) const {
    if (!(group_ == other.group_)) {
        throw std::invalid_argument("group algebra elements belong to different groups");
    }
    std::vector<uint8_t> coeff(group_.order(), 0);
    for (std::size_t g : support_) {
        for (std::size_t h : other.support_) {
            coeff[group_.multiply(g, h)] ^= 1;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < coeff.size(); i++) {
        if (coeff[i]) {
            out.push_back(i);
        }
    }
    return {group_, std::move(out)};
}

std::vector<Exponents> GroupAlgebraElement::support_exponents() const {
    std::vector<Exponents> out;
    out.reserve(support_.size());
    for (std::size_t g : support_) {
        out.push_back(group_.exponents_of(g));
    }
    return out;
}

BitMatrix regular_representation(const FiniteAbelianGroup &group, std::size_t g) {
    std::size_t n = group.order();
    if (g >= n) {
        throw std::out_of_range("group element index out of range");
    }
    BitMatrix m(n, n);
    for (std::size_t j = 0; j < n; j++) {
        m.set(group.multiply(g, j), j);
    }
    return m;
}

BitMatrix algebra_to_matrix(const GroupAlgebraElement &x) {
    const auto &group = x.group();
    std::size_t n = group.order();
    BitMatrix m(n, n);
    for (std::size_t g : x.support()) {
        for (std::size_t j = 0; j < n; j++) {
            m.flip(group.multiply(g, j), j);
        }
    }
    return m;
}

GroupAlgebraElement shift(const GroupAlgebraElement &x, std::size_t h) {
    std::vector<std::size_t> out;
    out.reserve(x.weight());
    for (std::size_t g : x.support()) {
        out.push_back(x.group().multiply(h, g));
    }
    return {x.group(), std::move(out)};
}

}  // namespace bga
