#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "boomtab/tables.hpp"

namespace boomtab {

inline constexpr const char* kToolName = "boomtab";
inline constexpr const char* kToolVersion = "0.1.0";

namespace io {

using ordered_json = nlohmann::ordered_json;

inline std::string poly_hex(std::uint32_t poly) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%x", poly);
    return buf;
}

inline std::uint32_t parse_poly_hex(const std::string& s) {
    std::size_t pos = 0;
    unsigned long v;
    try {
        v = std::stoul(s, &pos, 16);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad polynomial literal: " + s);
    }
    if (pos != s.size() || v == 0 || v > 0x1FFFFFul)
        throw std::invalid_argument("bad polynomial literal: " + s);
    return std::uint32_t(v);
}

namespace detail {
inline std::string csv_header(unsigned n, std::uint32_t poly, const std::string& kind) {
    return "# n=" + std::to_string(n) + " poly=" + poly_hex(poly) + " kind=" + kind + "\n";
}

template <typename Cell>
inline void csv_rows(std::string& out, const std::vector<Cell>& counts, std::uint32_t dim) {
    for (std::uint32_t r = 0; r < dim; ++r) {
        for (std::uint32_t c = 0; c < dim; ++c) {
            if (c) out += ',';
            out += std::to_string(counts[std::size_t(r) * dim + c]);
        }
        out += '\n';
    }
}

template <typename Cell>
inline ordered_json json_rows(const std::vector<Cell>& counts, std::uint32_t dim) {
    ordered_json rows = ordered_json::array();
    for (std::uint32_t r = 0; r < dim; ++r) {
        ordered_json row = ordered_json::array();
        for (std::uint32_t c = 0; c < dim; ++c)
            row.push_back(std::uint64_t(counts[std::size_t(r) * dim + c]));
        rows.push_back(std::move(row));
    }
    return rows;
}
}  // namespace detail

inline std::string table_csv(const Table2D& t, std::uint32_t poly) {
    std::string out = detail::csv_header(t.n, poly, table_kind_name(t.kind));
    detail::csv_rows(out, t.counts, t.dim());
    return out;
}

inline std::string slice_csv(const TableSlice& t, std::uint32_t poly) {
    std::string out = detail::csv_header(t.n, poly, slice_kind_name(t.kind));
    detail::csv_rows(out, t.counts, t.dim());
    return out;
}

inline ordered_json table_json(const Table2D& t, std::uint32_t poly) {
    ordered_json j;
    j["meta"]["n"] = t.n;
    j["meta"]["poly"] = poly_hex(poly);
    j["meta"]["kind"] = table_kind_name(t.kind);
    j["data"] = detail::json_rows(t.counts, t.dim());
    return j;
}

inline ordered_json slice_json(const TableSlice& t, std::uint32_t poly) {
    ordered_json j;
    j["meta"]["n"] = t.n;
    j["meta"]["poly"] = poly_hex(poly);
    j["meta"]["kind"] = slice_kind_name(t.kind);
    j["meta"]["index"] = t.fixed;
    j["data"] = detail::json_rows(t.counts, t.dim());
    return j;
}

inline ordered_json spectrum_json(const Spectrum& s, unsigned n, std::uint32_t poly,
                                  long long k1) {
    ordered_json j;
    j["meta"]["n"] = n;
    j["meta"]["poly"] = poly_hex(poly);
    j["meta"]["kind"] = "dbct-spectrum";
    j["meta"]["boundary"] = s.includes_boundary ? "included" : "excluded";
    j["meta"]["k1"] = k1;
    j["spectrum"] = ordered_json::array();
    for (const auto& [value, count] : s.entries)
        j["spectrum"].push_back({{"value", value}, {"count", count}});
    return j;
}

inline ordered_json sbox_json(const SBox& s) {
    ordered_json j;
    j["meta"]["n"] = s.field().degree();
    j["meta"]["poly"] = poly_hex(s.field().reduction_poly());
    j["lut"] = s.lut();
    return j;
}

inline std::string sbox_text(const SBox& s) {
    std::string out;
    for (std::uint32_t x = 0; x < s.size(); ++x) {
        if (x) out += ' ';
        out += std::to_string(s.lut()[x]);
    }
    out += '\n';
    return out;
}

// Accepts either a bare array or an object with "lut" plus a metadata block;
// when metadata is present it must agree with the requested field.
inline std::vector<FieldElem> lut_from_json(const ordered_json& j, unsigned expect_n,
                                            std::uint32_t expect_poly) {
    const ordered_json* arr = nullptr;
    if (j.is_array()) {
        arr = &j;
    } else if (j.is_object() && j.contains("lut")) {
        arr = &j.at("lut");
        if (j.contains("meta")) {
            const auto& meta = j.at("meta");
            if (meta.contains("n") && meta.at("n").get<unsigned>() != expect_n)
                throw std::invalid_argument("lookup table metadata disagrees on n");
            if (meta.contains("poly") &&
                parse_poly_hex(meta.at("poly").get<std::string>()) != expect_poly)
                throw std::invalid_argument("lookup table metadata disagrees on the polynomial");
        }
    } else {
        throw std::invalid_argument("lookup table json must be an array or carry a lut field");
    }
    if (!arr->is_array()) throw std::invalid_argument("lut field must be an array");
    std::vector<FieldElem> lut;
    lut.reserve(arr->size());
    for (const auto& v : *arr) {
        if (!v.is_number_unsigned())
            throw std::invalid_argument("lookup table entries must be nonnegative integers");
        lut.push_back(v.get<FieldElem>());
    }
    return lut;
}

// Whitespace-separated decimals until end of stream.
inline std::vector<FieldElem> lut_from_text(std::istream& in) {
    std::vector<FieldElem> lut;
    long long v;
    while (in >> v) {
        if (v < 0) throw std::invalid_argument("lookup table entries must be nonnegative");
        lut.push_back(FieldElem(v));
    }
    if (!in.eof()) throw std::invalid_argument("lookup table text contains a non-numeric token");
    return lut;
}

}  // namespace io
}  // namespace boomtab
