#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "boomtab/sbox.hpp"

namespace boomtab {

// ---------------------------------------------------------------------------
// Difference tables of an S-box: the classic difference-count table, the
// boomerang connectivity table, per-index slices of the two 3-index boomerang
// refinements, and their composition. Builders count solutions of inverse-free
// equation systems, so none of them require the box to be a permutation
// (except bct, whose defining equation does).
// ---------------------------------------------------------------------------

enum class TableKind { Ddt, Bct, Dbct };

inline const char* table_kind_name(TableKind k) {
    switch (k) {
        case TableKind::Ddt: return "ddt";
        case TableKind::Bct: return "bct";
        case TableKind::Dbct: return "dbct";
    }
    return "?";
}

struct Table2D {
    unsigned n = 0;
    TableKind kind = TableKind::Ddt;
    std::vector<std::uint64_t> counts;  // 2^n x 2^n, row-major

    std::uint32_t dim() const { return 1u << n; }
    std::uint64_t operator()(FieldElem row, FieldElem col) const {
        return counts[(std::size_t(row) << n) | col];
    }
    bool operator==(const Table2D& o) const {
        return n == o.n && kind == o.kind && counts == o.counts;
    }
};

enum class SliceKind { UpperFixedA, LowerFixedD };

inline const char* slice_kind_name(SliceKind k) {
    return k == SliceKind::UpperFixedA ? "ubct-slice" : "lbct-slice";
}

// One fixed-index plane of a 3-index table, indexed grid[b][c].
struct TableSlice {
    unsigned n = 0;
    SliceKind kind = SliceKind::UpperFixedA;
    FieldElem fixed = 0;
    std::vector<std::uint32_t> counts;  // 2^n x 2^n, row-major over (b, c)

    std::uint32_t dim() const { return 1u << n; }
    std::uint32_t operator()(FieldElem b, FieldElem c) const {
        return counts[(std::size_t(b) << n) | c];
    }
    bool operator==(const TableSlice& o) const {
        return n == o.n && kind == o.kind && fixed == o.fixed && counts == o.counts;
    }
};

// Histogram of cell values, descending by value.
struct Spectrum {
    bool includes_boundary = true;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;  // (value, cell count)

    bool operator==(const Spectrum& o) const {
        return includes_boundary == o.includes_boundary && entries == o.entries;
    }
};

namespace detail {

inline unsigned resolve_workers(unsigned workers) {
    if (workers) return workers;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

// Run fn(lo, hi) over a contiguous partition of [0, count). Callers write
// disjoint output cells per index, so any worker count gives identical
// results.
template <typename Fn>
inline void parallel_ranges(std::uint32_t count, unsigned workers, Fn&& fn) {
    workers = std::min<std::uint32_t>(workers ? workers : 1, count);
    if (workers <= 1) {
        fn(0u, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint32_t chunk = count / workers, extra = count % workers;
    std::uint32_t lo = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint32_t hi = lo + chunk + (w < extra ? 1 : 0);
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
        lo = hi;
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

// counts[a][b] = #{x : F(x) + F(x+a) = b}
inline Table2D ddt(const SBox& s, unsigned workers = 0) {
    const unsigned n = s.field().degree();
    const std::uint32_t sz = s.size();
    Table2D t{n, TableKind::Ddt, std::vector<std::uint64_t>(std::size_t(sz) * sz, 0)};
    const auto& lut = s.lut();
    detail::parallel_ranges(sz, detail::resolve_workers(workers),
                            [&](std::uint32_t lo, std::uint32_t hi) {
        for (std::uint32_t a = lo; a < hi; ++a) {
            std::uint64_t* row = &t.counts[std::size_t(a) << n];
            for (std::uint32_t x = 0; x < sz; ++x) ++row[lut[x] ^ lut[x ^ a]];
        }
    });
    return t;
}

// counts[a][b] = #{x : G(F(x) + b) + G(F(x+a) + b) = a} with G the
// compositional inverse. Grouping x by x + G(F(x) + b) turns the condition
// into a bucket collision, so each column costs the sum of squared bucket
// sizes instead of 2^(2n).
inline Table2D bct(const SBox& s, unsigned workers = 0) {
    if (!s.is_permutation())
        throw std::domain_error("bct requires a permutation");
    const unsigned n = s.field().degree();
    const std::uint32_t sz = s.size();
    Table2D t{n, TableKind::Bct, std::vector<std::uint64_t>(std::size_t(sz) * sz, 0)};
    const auto& lut = s.lut();
    const SBox ginv = s.compositional_inverse();
    const auto& glut = ginv.lut();
    detail::parallel_ranges(sz, detail::resolve_workers(workers),
                            [&](std::uint32_t lo, std::uint32_t hi) {
        std::vector<std::vector<std::uint32_t>> buckets(sz);
        for (std::uint32_t b = lo; b < hi; ++b) {
            for (auto& v : buckets) v.clear();
            for (std::uint32_t x = 0; x < sz; ++x)
                buckets[x ^ glut[lut[x] ^ b]].push_back(x);
            for (const auto& v : buckets)
                for (std::uint32_t x : v)
                    for (std::uint32_t y : v)
                        ++t.counts[(std::size_t(x ^ y) << n) | b];
        }
    });
    return t;
}

// grid[b][c] = #{(x, y) : F(x)+F(y) = c, F(x+a)+F(y+a) = c, F(x)+F(x+a) = b}
inline TableSlice ubct_slice(const SBox& s, FieldElem a) {
    const unsigned n = s.field().degree();
    const std::uint32_t sz = s.size();
    if (a >= sz) throw std::invalid_argument("slice index outside the field");
    TableSlice t{n, SliceKind::UpperFixedA, a,
                 std::vector<std::uint32_t>(std::size_t(sz) * sz, 0)};
    const auto& lut = s.lut();
    for (std::uint32_t x = 0; x < sz; ++x) {
        const std::uint32_t fx = lut[x], fxa = lut[x ^ a];
        std::uint32_t* row = &t.counts[std::size_t(fx ^ fxa) << n];
        for (std::uint32_t y = 0; y < sz; ++y) {
            const std::uint32_t c = fx ^ lut[y];
            if ((fxa ^ lut[y ^ a]) == c) ++row[c];
        }
    }
    return t;
}

// grid[b][c] = #{x : F(x)+F(x+c) = d, F(x+b)+F(x+b+c) = d}. For each c the
// solutions of the first equation form a set M; the pair condition is an
// autocorrelation of M with itself.
inline TableSlice lbct_slice(const SBox& s, FieldElem d) {
    const unsigned n = s.field().degree();
    const std::uint32_t sz = s.size();
    if (d >= sz) throw std::invalid_argument("slice index outside the field");
    TableSlice t{n, SliceKind::LowerFixedD, d,
                 std::vector<std::uint32_t>(std::size_t(sz) * sz, 0)};
    const auto& lut = s.lut();
    std::vector<std::uint32_t> members;
    for (std::uint32_t c = 0; c < sz; ++c) {
        members.clear();
        for (std::uint32_t x = 0; x < sz; ++x)
            if ((lut[x] ^ lut[x ^ c]) == d) members.push_back(x);
        for (std::uint32_t x : members)
            for (std::uint32_t y : members)
                ++t.counts[(std::size_t(x ^ y) << n) | c];
    }
    return t;
}

// Same planes computed straight from the defining solution sets through the
// compositional inverse; permutations only. Kept as the cross-check route.
inline TableSlice ubct_slice_definitional(const SBox& s, FieldElem a) {
    const unsigned n = s.field().degree();
    const std::uint32_t sz = s.size();
    if (a >= sz) throw std::invalid_argument("slice index outside the field");
    const SBox ginv = s.compositional_inverse();
    const auto& lut = s.lut();
    const auto& glut = ginv.lut();
    TableSlice t{n, SliceKind::UpperFixedA, a,
                 std::vector<std::uint32_t>(std::size_t(sz) * sz, 0)};
    for (std::uint32_t c = 0; c < sz; ++c)
        for (std::uint32_t x = 0; x < sz; ++x) {
            const std::uint32_t fx = lut[x], fxa = lut[x ^ a];
            if ((glut[fx ^ c] ^ glut[fxa ^ c]) == a)
                ++t.counts[(std::size_t(fx ^ fxa) << n) | c];
        }
    return t;
}

inline TableSlice lbct_slice_definitional(const SBox& s, FieldElem d) {
    const unsigned n = s.field().degree();
    const std::uint32_t sz = s.size();
    if (d >= sz) throw std::invalid_argument("slice index outside the field");
    const SBox ginv = s.compositional_inverse();
    const auto& lut = s.lut();
    const auto& glut = ginv.lut();
    TableSlice t{n, SliceKind::LowerFixedD, d,
                 std::vector<std::uint32_t>(std::size_t(sz) * sz, 0)};
    for (std::uint32_t b = 0; b < sz; ++b)
        for (std::uint32_t x = 0; x < sz; ++x)
            if ((glut[lut[x] ^ d] ^ glut[lut[x ^ b] ^ d]) == b) {
                const std::uint32_t c = x ^ glut[lut[x] ^ d];
                ++t.counts[(std::size_t(b) << n) | c];
            }
    return t;
}

inline constexpr unsigned kDbctDegreeCap = 8;

// counts[a][d] = sum over (b, c) of upper(a,b,c) * lower(b,c,d). The two
// factor planes are rebuilt per middle index b, so memory stays at O(2^(2n))
// while the full product runs in O(2^(4n)).
inline Table2D dbct(const SBox& s, unsigned degree_cap = kDbctDegreeCap,
                    bool force = false, unsigned workers = 0) {
    const unsigned n = s.field().degree();
    if (n > degree_cap && !force)
        throw std::domain_error("dbct: field degree exceeds the brute-force cap; pass force to override");
    const std::uint32_t sz = s.size();
    Table2D t{n, TableKind::Dbct, std::vector<std::uint64_t>(std::size_t(sz) * sz, 0)};
    const auto& lut = s.lut();
    const unsigned nw = detail::resolve_workers(workers);
    std::vector<std::uint32_t> upper(std::size_t(sz) * sz), lower(std::size_t(sz) * sz);
    for (std::uint32_t b = 0; b < sz; ++b) {
        // upper[a][c] for this b
        std::fill(upper.begin(), upper.end(), 0u);
        for (std::uint32_t a = 0; a < sz; ++a) {
            std::uint32_t* row = &upper[std::size_t(a) << n];
            for (std::uint32_t x = 0; x < sz; ++x) {
                const std::uint32_t fx = lut[x], fxa = lut[x ^ a];
                if ((fx ^ fxa) != b) continue;
                for (std::uint32_t y = 0; y < sz; ++y) {
                    const std::uint32_t c = fx ^ lut[y];
                    if ((fxa ^ lut[y ^ a]) == c) ++row[c];
                }
            }
        }
        // lower[c][d] for this b
        std::fill(lower.begin(), lower.end(), 0u);
        for (std::uint32_t c = 0; c < sz; ++c) {
            std::uint32_t* row = &lower[std::size_t(c) << n];
            for (std::uint32_t x = 0; x < sz; ++x) {
                const std::uint32_t d = lut[x] ^ lut[x ^ c];
                if ((lut[x ^ b] ^ lut[x ^ b ^ c]) == d) ++row[d];
            }
        }
        detail::parallel_ranges(sz, nw, [&](std::uint32_t lo, std::uint32_t hi) {
            for (std::uint32_t a = lo; a < hi; ++a) {
                std::uint64_t* drow = &t.counts[std::size_t(a) << n];
                const std::uint32_t* urow = &upper[std::size_t(a) << n];
                for (std::uint32_t c = 0; c < sz; ++c) {
                    const std::uint64_t u = urow[c];
                    if (!u) continue;
                    const std::uint32_t* lrow = &lower[std::size_t(c) << n];
                    for (std::uint32_t d = 0; d < sz; ++d) drow[d] += u * lrow[d];
                }
            }
        });
    }
    return t;
}

// Single cell of the composed table: dot product of one upper plane with one
// lower plane over (b, c).
inline std::uint64_t dbct_entry(const SBox& s, FieldElem a, FieldElem d) {
    const TableSlice u = ubct_slice(s, a);
    const TableSlice l = lbct_slice(s, d);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < u.counts.size(); ++i)
        acc += std::uint64_t(u.counts[i]) * l.counts[i];
    return acc;
}

// True when the composed table carries no mass off the b = c diagonal for any
// nonzero (a, d); equivalently counts[a][d] equals the two-step difference
// convolution everywhere off the boundary.
inline bool is_hard(const SBox& s, unsigned degree_cap = kDbctDegreeCap,
                    bool force = false) {
    const Table2D comp = dbct(s, degree_cap, force);
    const Table2D diff = ddt(s);
    const unsigned n = comp.n;
    const std::uint32_t sz = 1u << n;
    for (std::uint32_t a = 1; a < sz; ++a)
        for (std::uint32_t d = 1; d < sz; ++d) {
            std::uint64_t conv = 0;
            for (std::uint32_t b = 0; b < sz; ++b)
                conv += diff.counts[(std::size_t(a) << n) | b] *
                        diff.counts[(std::size_t(b) << n) | d];
            if (conv != comp.counts[(std::size_t(a) << n) | d]) return false;
        }
    return true;
}

namespace detail {
inline std::uint64_t max_off_boundary(const Table2D& t) {
    const std::uint32_t sz = t.dim();
    std::uint64_t m = 0;
    for (std::uint32_t a = 1; a < sz; ++a)
        for (std::uint32_t b = 1; b < sz; ++b)
            m = std::max(m, t.counts[(std::size_t(a) << t.n) | b]);
    return m;
}
}  // namespace detail

// Maxima over the table with row 0 and column 0 excluded.
inline std::uint64_t differential_uniformity(const Table2D& t) {
    if (t.kind != TableKind::Ddt)
        throw std::invalid_argument("differential uniformity is read off a ddt");
    return detail::max_off_boundary(t);
}

inline std::uint64_t boomerang_uniformity(const Table2D& t) {
    if (t.kind != TableKind::Bct)
        throw std::invalid_argument("boomerang uniformity is read off a bct");
    return detail::max_off_boundary(t);
}

inline std::uint64_t double_boomerang_uniformity(const Table2D& t) {
    if (t.kind != TableKind::Dbct)
        throw std::invalid_argument("double boomerang uniformity is read off a dbct");
    return detail::max_off_boundary(t);
}

inline Spectrum spectrum(const Table2D& t, bool include_boundary) {
    std::map<std::uint64_t, std::uint64_t> acc;
    const std::uint32_t sz = t.dim();
    for (std::uint32_t a = 0; a < sz; ++a)
        for (std::uint32_t b = 0; b < sz; ++b) {
            if (!include_boundary && (a == 0 || b == 0)) continue;
            ++acc[t.counts[(std::size_t(a) << t.n) | b]];
        }
    Spectrum s{include_boundary, {}};
    s.entries.reserve(acc.size());
    for (auto it = acc.rbegin(); it != acc.rend(); ++it)
        s.entries.emplace_back(it->first, it->second);
    return s;
}

}  // namespace boomtab
