// boomtab: difference / boomerang-family tables of S-boxes over GF(2^n),
// with closed-form evaluation and self-verification for the patched-inverse
// box. Subcommands: table, verify, spectrum.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boomtab/boomtab.hpp"
#include "boomtab/io.hpp"

using namespace boomtab;

namespace {

constexpr unsigned kFullTableDegreeCap = 12;  // ddt/bct/slice refusal point

struct Options {
    unsigned n = 0;
    std::string poly;
    std::string sbox = "inverse";
    std::string kind;
    unsigned index = 1;
    std::string format = "csv";
    std::string out;
    std::vector<std::string> checks;
    std::string mode = "closed-form";
    bool exclude_boundary = false;
    bool force = false;
    unsigned workers = 0;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool sbox_is_file(const std::string& src) {
    return src != "inverse" && src != "identity";
}

std::optional<io::ordered_json> read_sbox_json(const std::string& path) {
    if (!std::filesystem::path(path).extension().string().starts_with(".json"))
        return std::nullopt;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sbox file: " + path);
    io::ordered_json j;
    in >> j;
    return j;
}

std::uint32_t resolve_poly(const Options& o) {
    if (!o.poly.empty()) return io::parse_poly_hex(o.poly);
    if (sbox_is_file(o.sbox)) {
        if (auto j = read_sbox_json(o.sbox);
            j && j->is_object() && j->contains("meta") && j->at("meta").contains("poly"))
            return io::parse_poly_hex(j->at("meta").at("poly").get<std::string>());
    }
    return Field::default_poly(o.n);
}

SBox make_sbox(const Field& f, const Options& o) {
    if (o.sbox == "inverse") return SBox::inverse(f);
    if (o.sbox == "identity") return SBox::identity(f);
    if (auto j = read_sbox_json(o.sbox))
        return SBox(f, io::lut_from_json(*j, f.degree(), f.reduction_poly()));
    std::ifstream in(o.sbox);
    if (!in) throw std::runtime_error("cannot open sbox file: " + o.sbox);
    return SBox(f, io::lut_from_text(in));
}

void write_file(const std::string& path, const std::string& payload) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << payload;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string json_payload(io::ordered_json j) {
    j["meta"]["tool"] = std::string(kToolName) + " " + kToolVersion;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- table ----

int cmd_table(const Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint32_t poly = resolve_poly(o);
    const Field f(o.n, poly);
    const SBox s = make_sbox(f, o);

    const bool is_slice = o.kind == "ubct-slice" || o.kind == "lbct-slice";
    if (o.kind == "dbct") {
        if (o.n > kDbctDegreeCap && !o.force)
            throw std::domain_error("n=" + std::to_string(o.n) +
                                    " exceeds the dbct brute-force cap (" +
                                    std::to_string(kDbctDegreeCap) + "); pass --force to override");
    } else if (o.n > kFullTableDegreeCap && !o.force) {
        throw std::domain_error("n=" + std::to_string(o.n) +
                                " exceeds the brute-force cap (" +
                                std::to_string(kFullTableDegreeCap) + "); pass --force to override");
    }
    if (is_slice && o.index >= f.order())
        throw std::invalid_argument("--index outside the field");

    std::string payload;
    std::string report;
    if (o.kind == "ddt" || o.kind == "bct" || o.kind == "dbct") {
        Table2D t;
        if (o.kind == "ddt") {
            t = ddt(s, o.workers);
            report = "differential uniformity = " + std::to_string(differential_uniformity(t));
        } else if (o.kind == "bct") {
            t = bct(s, o.workers);
            report = "boomerang uniformity = " + std::to_string(boomerang_uniformity(t));
        } else {
            t = dbct(s, kDbctDegreeCap, o.force, o.workers);
            report = "double boomerang uniformity = " + std::to_string(double_boomerang_uniformity(t));
        }
        payload = o.format == "csv" ? io::table_csv(t, poly)
                                    : json_payload(io::table_json(t, poly));
    } else {
        const TableSlice t = o.kind == "ubct-slice" ? ubct_slice(s, o.index)
                                                    : lbct_slice(s, o.index);
        std::uint32_t peak = 0;
        for (std::uint32_t v : t.counts) peak = std::max(peak, v);
        report = "max cell = " + std::to_string(peak);
        payload = o.format == "csv" ? io::slice_csv(t, poly)
                                    : json_payload(io::slice_json(t, poly));
    }

    const std::string out_path =
        o.out.empty() ? o.kind + "_n" + std::to_string(o.n) +
                            (o.format == "csv" ? ".csv" : ".json")
                      : o.out;
    write_file(out_path, payload);

    std::cout << "kind=" << o.kind << " n=" << o.n << " poly=" << io::poly_hex(poly)
              << " sbox=" << o.sbox;
    if (is_slice) std::cout << " index=" << o.index;
    std::cout << "\n" << report << "\n"
              << "wrote " << out_path << " (" << payload.size() << " bytes) in "
              << seconds_since(t0) << " s\n";
    return 0;
}

// --------------------------------------------------------------- verify ----

struct CheckOutcome {
    bool pass = true;
    std::string detail;
};

using CheckFn = CheckOutcome (*)(const Field&, const Options&);

CheckOutcome check_kloosterman(const Field& f, const Options&) {
    const long long direct = kloosterman_k1_direct(f);
    const long long carlitz = kloosterman_k1_carlitz(f.degree());
    if (direct != carlitz)
        return {false, "direct=" + std::to_string(direct) + " carlitz=" + std::to_string(carlitz)};
    return {true, "K(1) = " + std::to_string(direct)};
}

CheckOutcome check_ddt(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    const Table2D t = ddt(s, o.workers);
    const std::uint32_t sz = f.order();
    for (std::uint32_t a = 0; a < sz; ++a)
        for (std::uint32_t b = 0; b < sz; ++b)
            if (t(a, b) != ddt_inverse(f, a, b))
                return {false, "first mismatch at (a=" + std::to_string(a) + ", b=" +
                                   std::to_string(b) + "): table=" + std::to_string(t(a, b)) +
                                   " closed=" + std::to_string(ddt_inverse(f, a, b))};
    return {true, std::to_string(std::uint64_t(sz) * sz) + " cells"};
}

CheckOutcome check_ubct(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    const std::uint32_t sz = f.order();
    for (std::uint32_t a = 0; a < sz; ++a) {
        const TableSlice t = ubct_slice(s, a);
        for (std::uint32_t b = 0; b < sz; ++b)
            for (std::uint32_t c = 0; c < sz; ++c)
                if (t(b, c) != ubct_inverse(f, a, b, c))
                    return {false, "first mismatch at (a=" + std::to_string(a) + ", b=" +
                                       std::to_string(b) + ", c=" + std::to_string(c) +
                                       "): table=" + std::to_string(t(b, c)) +
                                       " closed=" + std::to_string(ubct_inverse(f, a, b, c))};
    }
    return {true, std::to_string(std::uint64_t(sz) * sz * sz) + " cells"};
}

CheckOutcome check_lbct(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    const std::uint32_t sz = f.order();
    for (std::uint32_t d = 0; d < sz; ++d) {
        const TableSlice t = lbct_slice(s, d);
        for (std::uint32_t b = 0; b < sz; ++b)
            for (std::uint32_t c = 0; c < sz; ++c)
                if (t(b, c) != lbct_inverse(f, b, c, d))
                    return {false, "first mismatch at (b=" + std::to_string(b) + ", c=" +
                                       std::to_string(c) + ", d=" + std::to_string(d) +
                                       "): table=" + std::to_string(t(b, c)) +
                                       " closed=" + std::to_string(lbct_inverse(f, b, c, d))};
    }
    return {true, std::to_string(std::uint64_t(sz) * sz * sz) + " cells"};
}

CheckOutcome check_definitions(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    if (!s.is_permutation()) return {false, "selected sbox is not a permutation"};
    const std::uint32_t sz = f.order();
    for (std::uint32_t i = 0; i < sz; ++i) {
        if (!(ubct_slice(s, i) == ubct_slice_definitional(s, i)))
            return {false, "upper slices disagree at fixed index " + std::to_string(i)};
        if (!(lbct_slice(s, i) == lbct_slice_definitional(s, i)))
            return {false, "lower slices disagree at fixed index " + std::to_string(i)};
    }
    return {true, std::to_string(2 * sz) + " slices"};
}

CheckOutcome check_dbct(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    const std::uint32_t sz = f.order();
    for (std::uint32_t a = 0; a < sz; ++a)
        for (std::uint32_t d = 0; d < sz; ++d)
            if (dbct_entry(s, a, d) != dbct_inverse(f, a, d))
                return {false, "first mismatch at (a=" + std::to_string(a) + ", d=" +
                                   std::to_string(d) +
                                   "): table=" + std::to_string(dbct_entry(s, a, d)) +
                                   " closed=" + std::to_string(dbct_inverse(f, a, d))};
    return {true, std::to_string(std::uint64_t(sz) * sz) + " cells"};
}

CheckOutcome check_spectrum(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    const Spectrum brute = spectrum(dbct(s, kDbctDegreeCap, true, o.workers), true);
    const Spectrum closed = dbct_spectrum_inverse(f.degree(), true);
    if (!(brute == closed)) {
        std::ostringstream msg;
        msg << "brute {";
        for (const auto& [v, c] : brute.entries) msg << " " << v << ":" << c;
        msg << " } closed {";
        for (const auto& [v, c] : closed.entries) msg << " " << v << ":" << c;
        msg << " }";
        return {false, msg.str()};
    }
    std::ostringstream msg;
    for (const auto& [v, c] : closed.entries) msg << v << ":" << c << " ";
    return {true, msg.str()};
}

CheckOutcome check_hardness(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    const bool brute = is_hard(s, kDbctDegreeCap, true);
    const bool closed = is_hard_inverse(f.degree());
    if (brute != closed)
        return {false, std::string("table scan says ") + (brute ? "hard" : "not hard") +
                           ", closed form says " + (closed ? "hard" : "not hard")};
    return {true, brute ? "hard" : "not hard"};
}

CheckOutcome check_uniformity(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    const std::uint64_t delta = differential_uniformity(ddt(s, o.workers));
    const std::uint64_t delta_want = f.degree() % 2 ? 2 : 4;
    if (delta != delta_want)
        return {false, "differential uniformity " + std::to_string(delta) + " != " +
                           std::to_string(delta_want)};
    const std::uint64_t beta = double_boomerang_uniformity(dbct(s, kDbctDegreeCap, true, o.workers));
    const std::uint64_t beta_want = beta_d_inverse(f.degree());
    if (beta != beta_want)
        return {false, "double boomerang uniformity " + std::to_string(beta) + " != " +
                           std::to_string(beta_want)};
    return {true, "delta = " + std::to_string(delta) + ", beta_d = " + std::to_string(beta)};
}

CheckOutcome check_properties(const Field& f, const Options& o) {
    const SBox s = make_sbox(f, o);
    const std::uint32_t sz = f.order();
    const Table2D difft = ddt(s, o.workers);
    for (std::uint32_t a = 0; a < sz; ++a) {
        std::uint64_t sum = 0;
        for (std::uint32_t b = 0; b < sz; ++b) sum += difft(a, b);
        if (sum != sz) return {false, "ddt row " + std::to_string(a) + " sums to " + std::to_string(sum)};
    }
    if (s.is_permutation()) {
        const Table2D boom = bct(s, o.workers);
        for (std::uint32_t a = 0; a < sz; ++a) {
            const TableSlice u = ubct_slice(s, a);
            for (std::uint32_t c = 0; c < sz; ++c) {
                std::uint64_t sum = 0;
                for (std::uint32_t b = 0; b < sz; ++b) sum += u(b, c);
                if (sum != boom(a, c))
                    return {false, "sum_b upper(a,b,c) != bct at (a=" + std::to_string(a) +
                                       ", c=" + std::to_string(c) + ")"};
            }
        }
        for (std::uint32_t d = 0; d < sz; ++d) {
            const TableSlice l = lbct_slice(s, d);
            for (std::uint32_t b = 0; b < sz; ++b) {
                std::uint64_t sum = 0;
                for (std::uint32_t c = 0; c < sz; ++c) sum += l(b, c);
                if (sum != boom(b, d))
                    return {false, "sum_c lower(b,c,d) != bct at (b=" + std::to_string(b) +
                                       ", d=" + std::to_string(d) + ")"};
            }
        }
        const Table2D comp = dbct(s, kDbctDegreeCap, true, o.workers);
        const std::uint64_t corner = std::uint64_t(sz) * sz;
        for (std::uint32_t i = 0; i < sz; ++i)
            if (comp(0, i) != corner || comp(i, 0) != corner)
                return {false, "boundary row/column cell " + std::to_string(i) + " != 2^(2n)"};
        for (std::uint32_t a = 1; a < sz; ++a)
            for (std::uint32_t d = 1; d < sz; ++d) {
                std::uint64_t conv = 0;
                for (std::uint32_t b = 0; b < sz; ++b) conv += difft(a, b) * difft(b, d);
                if (comp(a, d) < conv)
                    return {false, "composed count below the two-step convolution at (a=" +
                                       std::to_string(a) + ", d=" + std::to_string(d) + ")"};
            }
        if (!(comp == dbct(s, kDbctDegreeCap, true, 1)) ||
            !(comp == dbct(s, kDbctDegreeCap, true, 3)))
            return {false, "worker count changed the composed table"};
    }
    if (!(difft == ddt(s, 1)) || !(difft == ddt(s, 3)))
        return {false, "worker count changed the difference table"};
    return {true, "row sums, slice sums, boundary, convolution bound, worker invariance"};
}

struct CheckSpec {
    const char* name;
    unsigned min_n;
    unsigned max_n;
    CheckFn fn;
};

const CheckSpec kChecks[] = {
    {"kloosterman", 1, 16, check_kloosterman},
    {"ddt", 1, 12, check_ddt},
    {"ubct", 1, 8, check_ubct},
    {"lbct", 1, 8, check_lbct},
    {"definitions", 1, 8, check_definitions},
    {"dbct", 1, 7, check_dbct},
    {"spectrum", 3, 7, check_spectrum},
    {"hardness", 1, 7, check_hardness},
    {"uniformity", 3, 7, check_uniformity},
    {"properties", 1, 7, check_properties},
};

int cmd_verify(const Options& o) {
    std::vector<const CheckSpec*> selected;
    std::vector<std::string> names = o.checks.empty() ? std::vector<std::string>{"all"} : o.checks;
    for (const std::string& name : names) {
        if (name == "all") {
            for (const CheckSpec& c : kChecks) selected.push_back(&c);
            continue;
        }
        bool found = false;
        for (const CheckSpec& c : kChecks)
            if (name == c.name) {
                selected.push_back(&c);
                found = true;
                break;
            }
        if (!found) throw std::invalid_argument("unknown check: " + name);
    }
    for (const CheckSpec* c : selected)
        if (o.n < c->min_n || o.n > c->max_n)
            throw std::invalid_argument("check '" + std::string(c->name) + "' supports n in [" +
                                        std::to_string(c->min_n) + ", " + std::to_string(c->max_n) + "]");

    const std::uint32_t poly = resolve_poly(o);
    const Field f(o.n, poly);
    std::cout << "verify n=" << o.n << " poly=" << io::poly_hex(poly) << " sbox=" << o.sbox << "\n";
    unsigned failures = 0;
    for (const CheckSpec* c : selected) {
        const auto t0 = std::chrono::steady_clock::now();
        const CheckOutcome r = c->fn(f, o);
        failures += r.pass ? 0 : 1;
        std::cout << (r.pass ? "PASS " : "FAIL ") << c->name << ": " << r.detail << " ("
                  << seconds_since(t0) << " s)\n";
    }
    std::cout << (failures ? "verification failed (" + std::to_string(failures) + " check(s))"
                           : "all checks passed")
              << "\n";
    return failures ? 1 : 0;
}

// ------------------------------------------------------------- spectrum ----

int cmd_spectrum(const Options& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint32_t poly = resolve_poly(o);
    const Field f(o.n, poly);
    const bool include_boundary = !o.exclude_boundary;

    Spectrum hist;
    if (o.mode == "closed-form") {
        if (o.sbox != "inverse")
            throw std::invalid_argument("closed-form spectrum is defined for --sbox inverse");
        hist = dbct_spectrum_inverse(o.n, include_boundary);
    } else if (o.mode == "brute-force") {
        if (o.n > kDbctDegreeCap && !o.force)
            throw std::domain_error("n=" + std::to_string(o.n) +
                                    " exceeds the dbct brute-force cap (" +
                                    std::to_string(kDbctDegreeCap) + "); pass --force to override");
        const SBox s = make_sbox(f, o);
        hist = spectrum(dbct(s, kDbctDegreeCap, o.force, o.workers), include_boundary);
    } else {
        throw std::invalid_argument("unknown mode: " + o.mode);
    }

    const long long k1 = kloosterman_k1_carlitz(o.n);
    const std::string payload = json_payload(io::spectrum_json(hist, o.n, poly, k1));
    const std::string out_path =
        o.out.empty() ? "spectrum_n" + std::to_string(o.n) + ".json" : o.out;
    write_file(out_path, payload);

    std::cout << "kind=dbct-spectrum n=" << o.n << " poly=" << io::poly_hex(poly)
              << " boundary=" << (include_boundary ? "included" : "excluded")
              << " K(1)=" << k1 << "\n";
    std::cout << "spectrum =";
    for (const auto& [value, count] : hist.entries) std::cout << " " << value << ":" << count;
    std::cout << "\nwrote " << out_path << " (" << payload.size() << " bytes) in "
              << seconds_since(t0) << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"difference and boomerang-family tables of S-boxes over GF(2^n)"};
    app.require_subcommand(1);

    const auto add_common = [&o](CLI::App* cmd, bool with_sbox) {
        cmd->add_option("--n", o.n, "field degree (1..16)")->required();
        cmd->add_option("--poly", o.poly, "reduction polynomial, hex bitmask incl. the top term")
            ->check([](const std::string& s) {
                return s.empty() ? std::string("--poly requires a value") : std::string();
            });
        cmd->add_option("--workers", o.workers, "worker threads (default: hardware parallelism)");
        if (with_sbox)
            cmd->add_option("--sbox", o.sbox, "inverse | identity | path to a lut file (json or text)");
    };

    CLI::App* t = app.add_subcommand("table", "compute a table and write it to a file");
    add_common(t, true);
    t->add_option("--kind", o.kind, "ddt | bct | ubct-slice | lbct-slice | dbct")
        ->required()
        ->check(CLI::IsMember({"ddt", "bct", "ubct-slice", "lbct-slice", "dbct"}));
    t->add_option("--index", o.index, "fixed index for the slice kinds (default 1)");
    t->add_option("--format", o.format, "csv | json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    t->add_option("--out", o.out, "output path (default <kind>_n<n>.<format>)");
    t->add_flag("--force", o.force, "override the brute-force degree caps");

    CLI::App* v = app.add_subcommand("verify", "check closed forms against brute-force tables");
    add_common(v, true);
    v->add_option("--checks", o.checks,
                  "all | kloosterman | ddt | ubct | lbct | definitions | dbct | spectrum | "
                  "hardness | uniformity | properties")
        ->delimiter(',');

    CLI::App* sp = app.add_subcommand("spectrum", "value histogram of the composed table");
    add_common(sp, true);
    sp->add_option("--mode", o.mode, "closed-form | brute-force (default closed-form)")
        ->check(CLI::IsMember({"closed-form", "brute-force"}));
    sp->add_flag("--exclude-boundary", o.exclude_boundary,
                 "drop row 0 and column 0 from the histogram");
    sp->add_option("--out", o.out, "output path (default spectrum_n<n>.json)");
    sp->add_flag("--force", o.force, "override the brute-force degree cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (o.n < 1 || o.n > Field::kMaxDegree)
            throw std::invalid_argument("--n must be in [1, 16]");
        if (app.got_subcommand(t)) return cmd_table(o);
        if (app.got_subcommand(v)) return cmd_verify(o);
        return cmd_spectrum(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
