#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "boomtab/gf2n.hpp"

namespace boomtab {

// Lookup-table map on GF(2^n). Keeps its own copy of the field, so boxes
// stay valid past the field object they were built from.
class SBox {
public:
    SBox(const Field& f, std::vector<FieldElem> lut)
        : field_(f), lut_(std::move(lut)) {
        if (lut_.size() != f.order())
            throw std::invalid_argument("lookup table size must equal the field order");
        for (FieldElem v : lut_)
            if (v >= f.order())
                throw std::invalid_argument("lookup table entry outside the field");
        std::vector<std::uint8_t> seen(lut_.size(), 0);
        is_perm_ = true;
        for (FieldElem v : lut_) {
            if (seen[v]) { is_perm_ = false; break; }
            seen[v] = 1;
        }
    }

    static SBox identity(const Field& f) {
        std::vector<FieldElem> lut(f.order());
        std::iota(lut.begin(), lut.end(), 0u);
        return SBox(f, std::move(lut));
    }

    // x -> x^(2^n - 2), the patched multiplicative inverse (0 -> 0)
    static SBox inverse(const Field& f) {
        std::vector<FieldElem> lut(f.order());
        for (std::uint32_t x = 0; x < f.order(); ++x) lut[x] = f.inv(x);
        return SBox(f, std::move(lut));
    }

    const Field& field() const { return field_; }
    std::uint32_t size() const { return std::uint32_t(lut_.size()); }
    FieldElem operator()(FieldElem x) const { return lut_[x]; }
    const std::vector<FieldElem>& lut() const { return lut_; }
    bool is_permutation() const { return is_perm_; }

    SBox compositional_inverse() const {
        if (!is_perm_)
            throw std::domain_error("compositional inverse requires a permutation");
        std::vector<FieldElem> inv_lut(lut_.size());
        for (std::uint32_t x = 0; x < lut_.size(); ++x) inv_lut[lut_[x]] = x;
        return SBox(field_, std::move(inv_lut));
    }

private:
    Field field_;
    std::vector<FieldElem> lut_;
    bool is_perm_;
};

}  // namespace boomtab
