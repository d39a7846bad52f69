#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace boomtab {

using FieldElem = std::uint32_t;

// ---------------------------------------------------------------------------
// GF(2^n) in polynomial basis, n <= 16.
//
// Multiplication and inversion run over log/antilog tables keyed to a
// primitive element found at construction time; a schoolbook carry-less
// multiply with explicit reduction is kept as the independent slow path
// (it also builds the tables). The reduction polynomial is validated by
// trial division. inv(0) = 0 by convention. Immutable after construction.
// ---------------------------------------------------------------------------
class Field {
public:
    static constexpr unsigned kMaxDegree = 16;

    explicit Field(unsigned degree) : Field(degree, default_poly(degree)) {}

    Field(unsigned degree, std::uint32_t reduction_poly)
        : n_(degree), poly_(reduction_poly) {
        if (n_ < 1 || n_ > kMaxDegree)
            throw std::invalid_argument("field degree must be in [1, 16]");
        if (poly_degree(poly_) != static_cast<int>(n_))
            throw std::invalid_argument("reduction polynomial degree does not match the field degree");
        if (!is_irreducible(poly_))
            throw std::invalid_argument("reduction polynomial is reducible");
        size_ = 1u << n_;
        build_tables();
    }

    unsigned degree() const { return n_; }
    std::uint32_t order() const { return size_; }
    std::uint32_t reduction_poly() const { return poly_; }

    FieldElem mul(FieldElem x, FieldElem y) const {
        if (x == 0 || y == 0) return 0;
        return alog_[std::uint32_t(log_[x]) + log_[y]];
    }

    FieldElem inv(FieldElem x) const {
        if (x == 0) return 0;
        return alog_[size_ - 1 - log_[x]];
    }

    FieldElem div(FieldElem x, FieldElem y) const {
        if (y == 0) throw std::domain_error("division by zero");
        return mul(x, inv(y));
    }

    FieldElem pow(FieldElem x, std::uint64_t e) const {
        if (x == 0) return e == 0 ? 1u : 0u;
        FieldElem r = 1, b = x;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    int trace(FieldElem x) const { return trace_[x]; }

    // Slow-path product: shift-and-xor, then degree-by-degree reduction.
    FieldElem mul_schoolbook(FieldElem x, FieldElem y) const {
        std::uint64_t acc = 0;
        for (unsigned i = 0; i < n_; ++i)
            if (y >> i & 1) acc ^= std::uint64_t(x) << i;
        for (int bit = 2 * int(n_) - 2; bit >= int(n_); --bit)
            if (acc >> bit & 1) acc ^= std::uint64_t(poly_) << (bit - n_);
        return FieldElem(acc);
    }

    // Roots of a x^2 + b x + c, ascending. Root count is 1 when b = 0,
    // otherwise 2 or 0 depending on trace(a c / b^2). Every returned root is
    // re-checked by substitution.
    std::vector<FieldElem> solve_quadratic(FieldElem a, FieldElem b, FieldElem c) const {
        if (a >= size_ || b >= size_ || c >= size_)
            throw std::invalid_argument("coefficient outside the field");
        if (a == 0)
            throw std::invalid_argument("leading coefficient is zero");
        std::vector<FieldElem> roots;
        if (b == 0) {
            // x^2 = c/a has the unique root (c/a)^(2^(n-1))
            FieldElem r = div(c, a);
            for (unsigned i = 1; i < n_; ++i) r = mul(r, r);
            roots.assign(1, r);
        } else {
            const FieldElem e = mul(mul(a, c), inv(mul(b, b)));
            if (trace_[e] == 0) {
                const FieldElem s = div(b, a);
                FieldElem r0 = mul(s, qroot_[e]);
                FieldElem r1 = r0 ^ s;
                if (r1 < r0) std::swap(r0, r1);
                roots = {r0, r1};
            }
        }
        for (FieldElem r : roots)
            if ((mul(a, mul(r, r)) ^ mul(b, r) ^ c) != 0)
                throw std::logic_error("quadratic root failed substitution");
        return roots;
    }

    // a^3 == d^3; for odd n this forces a == d, for even n each nonzero cube
    // has three preimages.
    bool cube_class_equal(FieldElem a, FieldElem d) const {
        if (a == 0 || d == 0 || a >= size_ || d >= size_)
            throw std::invalid_argument("cube classes are defined for nonzero field elements");
        return pow(a, 3) == pow(d, 3);
    }

    static std::uint32_t default_poly(unsigned degree) {
        // low-weight irreducibles, one per degree
        static constexpr std::uint32_t table[kMaxDegree + 1] = {
            0,      0x3,    0x7,    0xB,    0x13,   0x25,   0x43,   0x83,
            0x11B,  0x203,  0x409,  0x805,  0x1009, 0x201B, 0x4443, 0x8003,
            0x1100B,
        };
        if (degree < 1 || degree > kMaxDegree)
            throw std::invalid_argument("field degree must be in [1, 16]");
        return table[degree];
    }

    static int poly_degree(std::uint32_t p) { return std::bit_width(p) - 1; }

    static std::uint32_t poly_mod(std::uint32_t r, std::uint32_t q) {
        const int dq = poly_degree(q);
        for (int dr = poly_degree(r); r && dr >= dq; dr = poly_degree(r))
            r ^= q << (dr - dq);
        return r;
    }

    // Trial division by every polynomial of degree 1..deg/2.
    static bool is_irreducible(std::uint32_t poly) {
        const int n = poly_degree(poly);
        if (n < 1) return false;
        for (int d = 1; 2 * d <= n; ++d)
            for (std::uint32_t q = 1u << d; q < 2u << d; ++q)
                if (poly_mod(poly, q) == 0) return false;
        return true;
    }

private:
    void build_tables() {
        const std::uint32_t ord = size_ - 1;

        FieldElem g = 1;
        if (n_ > 1) {
            for (g = 2; g < size_; ++g) {
                std::uint32_t steps = 1;
                FieldElem p = g;
                while (p != 1) {
                    p = mul_schoolbook(p, g);
                    ++steps;
                }
                if (steps == ord) break;
            }
            if (g == size_) throw std::logic_error("no generator found");
        }

        alog_.assign(2u * ord, 0);
        log_.assign(size_, 0);
        alog_[0] = 1;
        for (std::uint32_t i = 1; i < ord; ++i)
            alog_[i] = mul_schoolbook(alog_[i - 1], g);
        for (std::uint32_t i = 0; i < ord; ++i) {
            alog_[i + ord] = alog_[i];
            log_[alog_[i]] = std::uint16_t(i);
        }

        // traces of the basis elements; general traces follow by linearity
        std::uint32_t basis_tr = 0;
        for (unsigned i = 0; i < n_; ++i) {
            FieldElem s = 1u << i, t = s;
            for (unsigned j = 1; j < n_; ++j) {
                s = mul_schoolbook(s, s);
                t ^= s;
            }
            if (t > 1) throw std::logic_error("trace fell outside GF(2)");
            basis_tr |= t << i;
        }
        trace_.assign(size_, 0);
        for (std::uint32_t x = 0; x < size_; ++x)
            trace_[x] = std::uint8_t(std::popcount(x & basis_tr) & 1);

        // solution table for y^2 + y = e; the two roots differ by 1, the even
        // one is stored
        qroot_.assign(size_, 0);
        for (FieldElem y = 0; y < size_; ++y)
            qroot_[mul(y, y) ^ y] = y & ~1u;
    }

    unsigned n_;
    std::uint32_t poly_;
    std::uint32_t size_ = 0;
    std::vector<std::uint16_t> log_;
    std::vector<FieldElem> alog_;
    std::vector<std::uint8_t> trace_;
    std::vector<FieldElem> qroot_;
};

// Exponential sum of (-1)^trace(x + x^(-1)) over the whole field; the x = 0
// term contributes +1 under the inv(0) = 0 convention.
inline long long kloosterman_k1_direct(const Field& f) {
    long long s = 0;
    for (FieldElem x = 0; x < f.order(); ++x)
        s += f.trace(f.inv(x) ^ x) ? -1 : 1;
    return s;
}

namespace detail {
inline std::uint64_t binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}
}  // namespace detail

// Binomial route to the same value:
//   1 + (-1)^(n-1) 2^(1-n) * sum_i (-1)^i C(n, 2i) 7^i
// computed over exact integers; the division must be exact.
inline long long kloosterman_k1_carlitz(unsigned n) {
    if (n < 1 || n > 32)
        throw std::invalid_argument("degree must be in [1, 32]");
    __int128 sum = 0, p7 = 1;
    for (unsigned i = 0; 2 * i <= n; ++i) {
        const __int128 term = __int128(detail::binom(n, 2 * i)) * p7;
        sum += (i & 1) ? -term : term;
        p7 *= 7;
    }
    const __int128 den = __int128(1) << (n - 1);
    if (sum % den != 0)
        throw std::logic_error("binomial sum not divisible by 2^(n-1)");
    __int128 q = sum / den;
    if (n % 2 == 0) q = -q;
    return static_cast<long long>(q + 1);
}

}  // namespace boomtab
