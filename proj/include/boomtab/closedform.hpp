#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>

#include "boomtab/tables.hpp"

namespace boomtab {

// ---------------------------------------------------------------------------
// O(1)-per-cell evaluation of every table of the patched-inverse box
// x -> x^(2^n - 2). Each function mirrors the case analysis of the
// corresponding count; all of them are cross-checked cell by cell against the
// brute-force builders in the test suite. Case lists are evaluated top-down,
// first match wins.
// ---------------------------------------------------------------------------

inline std::uint64_t ddt_inverse(const Field& f, FieldElem a, FieldElem b) {
    const std::uint32_t sz = f.order();
    if (a == 0 && b == 0) return sz;
    if (a == 0 || b == 0) return 0;
    if (f.mul(a, b) == 1) return f.trace(1) == 0 ? 4 : 2;
    return f.trace(f.inv(f.mul(a, b))) == 0 ? 2 : 0;
}

inline std::uint64_t ubct_inverse(const Field& f, FieldElem a, FieldElem b, FieldElem c) {
    const std::uint32_t sz = f.order();
    if (a == 0) return b == 0 ? sz : 0;
    if (b == 0) return 0;
    const bool odd = f.degree() & 1;
    const bool ab1 = f.mul(a, b) == 1;
    if (c == 0) {
        if (ab1) return odd ? 2 : 4;
        return f.trace(f.inv(f.mul(a, b))) == 0 ? 2 : 0;
    }
    if (b == c) {
        if (ab1) return odd ? 2 : 4;
        return f.trace(f.inv(f.mul(a, c))) == 0 ? 2 : 0;
    }
    if (!odd && ab1) {
        // a c^2 + a b c + b = 0
        const FieldElem lhs = f.mul(a, f.mul(c, c)) ^ f.mul(f.mul(a, b), c) ^ b;
        if (lhs == 0) return 4;
    }
    return 0;
}

inline std::uint64_t lbct_inverse(const Field& f, FieldElem b, FieldElem c, FieldElem d) {
    const std::uint32_t sz = f.order();
    if (c == 0) return d == 0 ? sz : 0;
    if (d == 0) return 0;
    const bool odd = f.degree() & 1;
    const bool cd1 = f.mul(c, d) == 1;
    if (b == 0 || b == c) {
        if (cd1) return odd ? 2 : 4;
        return f.trace(f.inv(f.mul(c, d))) == 0 ? 2 : 0;
    }
    if (!odd && cd1) {
        // d b^2 + c d b + c = 0
        const FieldElem lhs = f.mul(d, f.mul(b, b)) ^ f.mul(f.mul(c, d), b) ^ c;
        if (lhs == 0) return 4;
    }
    return 0;
}

// The composed-table case split for nonzero (a, d). For odd degrees the cube
// branch is unreachable (cubing is a bijection there), so a^3 = d^3 collapses
// into the diagonal.
enum class DbctCase {
    Boundary,      // a = 0 or d = 0
    Diagonal,      // a = d
    CubeEqual,     // a != d, a^3 = d^3 (even degree only)
    TraceZeroZero, // trace(a/d) = 0, trace(d/a) = 0
    TraceZeroOne,
    TraceOneZero,
    TraceOneOne,
};

inline DbctCase dbct_case(const Field& f, FieldElem a, FieldElem d) {
    if (a == 0 || d == 0) return DbctCase::Boundary;
    if (a == d) return DbctCase::Diagonal;
    if (f.degree() % 2 == 0 && f.cube_class_equal(a, d)) return DbctCase::CubeEqual;
    const int t1 = f.trace(f.div(a, d));
    const int t2 = f.trace(f.div(d, a));
    if (t1 == 0) return t2 == 0 ? DbctCase::TraceZeroZero : DbctCase::TraceZeroOne;
    return t2 == 0 ? DbctCase::TraceOneZero : DbctCase::TraceOneOne;
}

// The closed form covers odd n > 1 and even n > 2.
inline bool dbct_closed_form_applies(unsigned n) {
    return (n % 2 == 1) ? n > 1 : n > 2;
}

inline std::uint64_t dbct_inverse(const Field& f, FieldElem a, FieldElem d) {
    const unsigned n = f.degree();
    const std::uint64_t sz = f.order();
    if (a == 0 || d == 0) return sz * sz;
    if (!dbct_closed_form_applies(n)) {
        // out of closed-form range; count directly
        const SBox s = SBox::inverse(f);
        return dbct_entry(s, a, d);
    }
    const bool odd = n & 1;
    switch (dbct_case(f, a, d)) {
        case DbctCase::Boundary: return sz * sz;
        case DbctCase::Diagonal: return odd ? 2 * sz : 2 * sz + 8;
        case DbctCase::CubeEqual: return sz + (n % 4 == 0 ? 20 : 12);
        case DbctCase::TraceZeroZero: return sz + 4;
        case DbctCase::TraceZeroOne:
        case DbctCase::TraceOneZero: return sz;
        case DbctCase::TraceOneOne: return sz - 4;
    }
    throw std::logic_error("unreachable dbct case");
}

// Whole-table value histogram from the Kloosterman value alone; no table is
// materialized. Zero-count values are dropped, totals are asserted.
inline Spectrum dbct_spectrum_inverse(unsigned n, bool include_boundary = true) {
    if (!dbct_closed_form_applies(n))
        throw std::domain_error("closed-form spectrum needs degree 3, 4, 5, ... (odd > 1 or even > 2)");
    const long long k1 = kloosterman_k1_carlitz(n);
    if (k1 % 4 != 0) throw std::logic_error("kloosterman value not divisible by 4");
    const long long sz = 1ll << n;
    const long long nz = sz - 1;

    std::map<long long, long long> acc;
    const auto add = [&acc](long long value, long long count) {
        if (count < 0) throw std::logic_error("negative spectrum count");
        if (count > 0) acc[value] += count;
    };
    add(sz * sz, 2 * sz - 1);
    if (n % 2 == 1) {
        add(2 * sz, nz);
        add(sz + 4, (sz / 4 + k1 / 4 - 1) * nz);
        add(sz, (sz / 2 - k1 / 2) * nz);
        add(sz - 4, (sz / 4 + k1 / 4 - 1) * nz);
    } else if (n % 4 == 0) {
        add(2 * sz + 8, nz);
        add(sz + 20, 2 * nz);
        add(sz + 4, (sz / 4 + k1 / 4 - 4) * nz);
        add(sz, (sz / 2 - k1 / 2) * nz);
        add(sz - 4, (sz / 4 + k1 / 4) * nz);
    } else {
        add(2 * sz + 8, nz);
        add(sz + 12, 2 * nz);
        add(sz + 4, (sz / 4 + k1 / 4 - 2) * nz);
        add(sz, (sz / 2 - k1 / 2) * nz);
        add(sz - 4, (sz / 4 + k1 / 4 - 2) * nz);
    }
    if (!include_boundary) acc.erase(sz * sz);

    long long total = 0;
    for (const auto& [value, count] : acc) total += count;
    const long long want = include_boundary ? sz * sz : nz * nz;
    if (total != want) throw std::logic_error("spectrum counts do not cover the table");

    Spectrum out{include_boundary, {}};
    out.entries.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        out.entries.emplace_back(std::uint64_t(it->first), std::uint64_t(it->second));
    return out;
}

inline std::uint64_t beta_d_inverse(unsigned n) {
    if (!dbct_closed_form_applies(n))
        throw std::domain_error("closed-form uniformity needs degree 3, 4, 5, ... (odd > 1 or even > 2)");
    const std::uint64_t sz = 1ull << n;
    return (n % 2 == 1) ? 2 * sz : 2 * sz + 8;
}

inline bool is_hard_inverse(unsigned n) {
    if (n < 1) throw std::invalid_argument("degree must be positive");
    return n % 2 == 1;
}

}  // namespace boomtab
