// Drives the installed binary end to end through std::system. Each run's
// stdout+stderr land in a per-call log under a scratch directory.

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "boomtab/io.hpp"

using namespace boomtab;

namespace {

const std::string& tmp_dir() {
    static const std::string d = [] {
        const std::string t =
            ::testing::TempDir() + "boomtab_cli_" + std::to_string(::getpid());
        std::filesystem::create_directories(t);
        return t;
    }();
    return d;
}

std::string tmp_path(const std::string& name) { return tmp_dir() + "/" + name; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    EXPECT_TRUE(in.good()) << "missing file: " << path;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CmdResult {
    int code = -1;
    std::string text;  // combined stdout + stderr
};

CmdResult run_raw(const std::string& shell_cmd) {
    static int seq = 0;
    const std::string log = tmp_path("log" + std::to_string(seq++) + ".txt");
    const int raw = std::system((shell_cmd + " > " + log + " 2>&1").c_str());
    CmdResult r;
    if (WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
    r.text = read_file(log);
    return r;
}

CmdResult run_cli(const std::string& args) {
    return run_raw(std::string(BOOMTAB_CLI_PATH) + " " + args);
}

::testing::AssertionResult contains(const std::string& text, const std::string& needle) {
    if (text.find(needle) != std::string::npos) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "expected to find \"" << needle << "\" in:\n" << text;
}

}  // namespace

TEST(Cli, TableDdtCsvGoldenAndReport) {
    const std::string out = tmp_path("id_ddt.csv");
    const CmdResult r = run_cli("table --n 2 --kind ddt --sbox identity --out " + out);
    ASSERT_EQ(r.code, 0) << r.text;
    EXPECT_TRUE(contains(r.text, "differential uniformity = 4"));
    EXPECT_TRUE(contains(r.text, "wrote " + out));
    EXPECT_EQ(read_file(out),
              "# n=2 poly=0x7 kind=ddt\n"
              "4,0,0,0\n"
              "0,4,0,0\n"
              "0,0,4,0\n"
              "0,0,0,4\n");
}

TEST(Cli, TableBctJsonMeta) {
    const std::string out = tmp_path("bct.json");
    const CmdResult r = run_cli("table --n 3 --kind bct --format json --out " + out);
    ASSERT_EQ(r.code, 0) << r.text;
    EXPECT_TRUE(contains(r.text, "boomerang uniformity = "));
    const auto j = io::ordered_json::parse(read_file(out));
    EXPECT_EQ(j["meta"]["n"], 3u);
    EXPECT_EQ(j["meta"]["poly"], "0xb");
    EXPECT_EQ(j["meta"]["kind"], "bct");
    EXPECT_EQ(j["meta"]["tool"], "boomtab 0.1.0");
    ASSERT_EQ(j["data"].size(), 8u);
    for (int i = 0; i < 8; ++i) {
        EXPECT_EQ(j["data"][0][i], 8u);  // fixed differences 0 always come back
        EXPECT_EQ(j["data"][i][0], 8u);
    }
}

TEST(Cli, TableDefaultOutputName) {
    const std::string dir = tmp_path("defname");
    std::filesystem::create_directories(dir);
    const CmdResult r = run_raw("cd " + dir + " && " + BOOMTAB_CLI_PATH +
                          " table --n 3 --kind ubct-slice --index 2");
    ASSERT_EQ(r.code, 0) << r.text;
    EXPECT_TRUE(contains(r.text, "index=2"));
    EXPECT_TRUE(contains(r.text, "max cell = "));
    const std::string body = read_file(dir + "/ubct-slice_n3.csv");
    EXPECT_TRUE(contains(body, "# n=3 poly=0xb kind=ubct-slice\n"));
}

TEST(Cli, TableSliceIndexOutOfRange) {
    const CmdResult r = run_cli("table --n 3 --kind ubct-slice --index 8 --out " + tmp_path("x.csv"));
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.text, "--index outside the field"));
}

TEST(Cli, TableCapRefusals) {
    const CmdResult big_dbct = run_cli("table --n 9 --kind dbct --out " + tmp_path("no1.csv"));
    EXPECT_EQ(big_dbct.code, 2);
    EXPECT_TRUE(contains(big_dbct.text, "brute-force cap (8)"));
    EXPECT_TRUE(contains(big_dbct.text, "--force"));
    const CmdResult big_ddt = run_cli("table --n 13 --kind ddt --out " + tmp_path("no2.csv"));
    EXPECT_EQ(big_ddt.code, 2);
    EXPECT_TRUE(contains(big_ddt.text, "brute-force cap (12)"));
    const CmdResult big_bct = run_cli("table --n 13 --kind bct --out " + tmp_path("no3.csv"));
    EXPECT_EQ(big_bct.code, 2);
}

TEST(Cli, TableWorkerCountLeavesBytesAlone) {
    const std::string w1 = tmp_path("dbct_w1.csv"), w3 = tmp_path("dbct_w3.csv");
    ASSERT_EQ(run_cli("table --n 4 --kind dbct --workers 1 --out " + w1).code, 0);
    ASSERT_EQ(run_cli("table --n 4 --kind dbct --workers 3 --out " + w3).code, 0);
    EXPECT_EQ(read_file(w1), read_file(w3));
    const std::string d2 = tmp_path("ddt_w2.csv"), d5 = tmp_path("ddt_w5.csv");
    ASSERT_EQ(run_cli("table --n 5 --kind ddt --workers 2 --out " + d2).code, 0);
    ASSERT_EQ(run_cli("table --n 5 --kind ddt --workers 5 --out " + d5).code, 0);
    EXPECT_EQ(read_file(d2), read_file(d5));
}

TEST(Cli, SboxFileInputs) {
    const Field f3(3);
    const SBox inv3 = SBox::inverse(f3);
    const std::string json_path = tmp_path("inv3.json");
    const std::string text_path = tmp_path("inv3.txt");
    std::ofstream(json_path) << io::sbox_json(inv3).dump(2) << "\n";
    std::ofstream(text_path) << io::sbox_text(inv3);

    const std::string ref = tmp_path("ref.csv"), via_json = tmp_path("vj.csv"),
                      via_text = tmp_path("vt.csv");
    ASSERT_EQ(run_cli("table --n 3 --kind ddt --out " + ref).code, 0);
    ASSERT_EQ(run_cli("table --n 3 --kind ddt --sbox " + json_path + " --out " + via_json).code, 0);
    ASSERT_EQ(run_cli("table --n 3 --kind ddt --sbox " + text_path + " --out " + via_text).code, 0);
    EXPECT_EQ(read_file(ref), read_file(via_json));
    EXPECT_EQ(read_file(ref), read_file(via_text));

    // the polynomial travels with the json metadata unless --poly overrides it
    const Field alt(4, 0x19);
    const std::string alt_path = tmp_path("inv4_alt.json");
    std::ofstream(alt_path) << io::sbox_json(SBox::inverse(alt)).dump(2) << "\n";
    const std::string alt_out = tmp_path("alt.csv");
    ASSERT_EQ(run_cli("table --n 4 --kind ddt --sbox " + alt_path + " --out " + alt_out).code, 0);
    EXPECT_TRUE(contains(read_file(alt_out), "# n=4 poly=0x19 kind=ddt\n"));
    const CmdResult clash = run_cli("table --n 4 --kind ddt --poly 0x13 --sbox " + alt_path +
                              " --out " + tmp_path("clash.csv"));
    EXPECT_EQ(clash.code, 2);
    EXPECT_TRUE(contains(clash.text, "disagrees on the polynomial"));
}

TEST(Cli, SboxFileErrors) {
    const std::string bad_text = tmp_path("bad.txt");
    std::ofstream(bad_text) << "0 1 junk 3\n";
    const CmdResult garbage = run_cli("table --n 2 --kind ddt --sbox " + bad_text + " --out " +
                                tmp_path("g.csv"));
    EXPECT_EQ(garbage.code, 2);
    EXPECT_TRUE(contains(garbage.text, "non-numeric"));

    // poly matches the requested field so the lut metadata check is what trips
    const std::string wrong_n = tmp_path("wrong_n.json");
    std::ofstream(wrong_n) << R"({"meta":{"n":3,"poly":"0x7"},"lut":[0,1,2,3]})" << "\n";
    const CmdResult mism = run_cli("table --n 2 --kind ddt --sbox " + wrong_n + " --out " +
                             tmp_path("m.csv"));
    EXPECT_EQ(mism.code, 2);
    EXPECT_TRUE(contains(mism.text, "disagrees on n"));

    const std::string constant = tmp_path("const.txt");
    std::ofstream(constant) << "0 0 0 0\n";
    const CmdResult nonperm = run_cli("table --n 2 --kind bct --sbox " + constant + " --out " +
                                tmp_path("np.csv"));
    EXPECT_EQ(nonperm.code, 2);
    EXPECT_TRUE(contains(nonperm.text, "permutation"));
}

TEST(Cli, VerifyAllPassesOnEvenDegree) {
    const CmdResult r = run_cli("verify --n 4 --checks all");
    ASSERT_EQ(r.code, 0) << r.text;
    for (const char* name : {"kloosterman", "ddt", "ubct", "lbct", "definitions", "dbct",
                             "spectrum", "hardness", "uniformity", "properties"})
        EXPECT_TRUE(contains(r.text, std::string("PASS ") + name));
    EXPECT_TRUE(contains(r.text, "all checks passed"));
    EXPECT_TRUE(contains(r.text, "PASS hardness: not hard"));
    EXPECT_TRUE(contains(r.text, "delta = 4, beta_d = 40"));
}

TEST(Cli, VerifyOddDegreeChecks) {
    const CmdResult r = run_cli("verify --n 5 --checks spectrum,uniformity,hardness");
    ASSERT_EQ(r.code, 0) << r.text;
    EXPECT_TRUE(contains(r.text, "PASS spectrum: 1024:63 64:31 36:310 32:310 28:310"));
    EXPECT_TRUE(contains(r.text, "delta = 2, beta_d = 64"));
    EXPECT_TRUE(contains(r.text, "PASS hardness: hard"));
}

TEST(Cli, VerifyDegreeOne) {
    const CmdResult r = run_cli(
        "verify --n 1 --checks kloosterman,ddt,ubct,lbct,definitions,dbct,hardness,properties");
    ASSERT_EQ(r.code, 0) << r.text;
    EXPECT_TRUE(contains(r.text, "PASS kloosterman: K(1) = 2"));
    EXPECT_TRUE(contains(r.text, "all checks passed"));
}

TEST(Cli, VerifyDetectsMismatch) {
    const CmdResult r = run_cli("verify --n 3 --checks ddt --sbox identity");
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(contains(r.text, "FAIL ddt: first mismatch"));
    EXPECT_TRUE(contains(r.text, "verification failed (1 check(s))"));
}

TEST(Cli, VerifyUsageErrors) {
    const CmdResult unknown = run_cli("verify --n 3 --checks nope");
    EXPECT_EQ(unknown.code, 2);
    EXPECT_TRUE(contains(unknown.text, "unknown check: nope"));
    const CmdResult range = run_cli("verify --n 9 --checks dbct");
    EXPECT_EQ(range.code, 2);
    EXPECT_TRUE(contains(range.text, "supports n in [1, 7]"));
    const CmdResult small = run_cli("verify --n 2 --checks spectrum");
    EXPECT_EQ(small.code, 2);
    EXPECT_TRUE(contains(small.text, "supports n in [3, 7]"));
}

TEST(Cli, SpectrumClosedMatchesBruteBytes) {
    const std::string closed = tmp_path("spec_c.json"), brute = tmp_path("spec_b.json");
    ASSERT_EQ(run_cli("spectrum --n 4 --out " + closed).code, 0);
    ASSERT_EQ(run_cli("spectrum --n 4 --mode brute-force --out " + brute).code, 0);
    EXPECT_EQ(read_file(closed), read_file(brute));

    const std::string nc = tmp_path("spec_nc.json"), nb = tmp_path("spec_nb.json");
    ASSERT_EQ(run_cli("spectrum --n 3 --exclude-boundary --out " + nc).code, 0);
    ASSERT_EQ(
        run_cli("spectrum --n 3 --mode brute-force --exclude-boundary --out " + nb).code, 0);
    EXPECT_EQ(read_file(nc), read_file(nb));
    EXPECT_EQ(io::ordered_json::parse(read_file(nc))["meta"]["boundary"], "excluded");
}

TEST(Cli, SpectrumContentAndK1) {
    const std::string out = tmp_path("spec4.json");
    const CmdResult r = run_cli("spectrum --n 4 --out " + out);
    ASSERT_EQ(r.code, 0) << r.text;
    EXPECT_TRUE(contains(r.text, "K(1)=0"));
    const auto j = io::ordered_json::parse(read_file(out));
    EXPECT_EQ(j["meta"]["k1"], 0);
    EXPECT_FALSE(j["meta"].contains("mode"));
    EXPECT_EQ(j["spectrum"][0]["value"], 256u);
    EXPECT_EQ(j["spectrum"][0]["count"], 31u);
    ASSERT_EQ(run_cli("spectrum --n 3 --out " + tmp_path("spec3.json")).code, 0);
    EXPECT_EQ(io::ordered_json::parse(read_file(tmp_path("spec3.json")))["meta"]["k1"], -4);
}

TEST(Cli, SpectrumClosedFormNeedsInverseBox) {
    const CmdResult r = run_cli("spectrum --n 3 --sbox identity --out " + tmp_path("si.json"));
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(contains(r.text, "defined for --sbox inverse"));
    const CmdResult cap = run_cli("spectrum --n 9 --mode brute-force --out " + tmp_path("sc.json"));
    EXPECT_EQ(cap.code, 2);
    EXPECT_TRUE(contains(cap.text, "brute-force cap"));
}

TEST(Cli, GlobalUsageErrors) {
    EXPECT_EQ(run_cli("").code, 2);                                       // subcommand required
    EXPECT_EQ(run_cli("table --n 3").code, 2);                            // --kind required
    EXPECT_EQ(run_cli("table --n 3 --kind nope").code, 2);                // bad kind
    EXPECT_EQ(run_cli("table --n 0 --kind ddt").code, 2);                 // degree too small
    EXPECT_EQ(run_cli("table --n 17 --kind ddt").code, 2);                // degree too large
    EXPECT_EQ(run_cli("table --n 3 --kind ddt --format yaml").code, 2);   // bad format
    EXPECT_EQ(run_cli("spectrum --n 3 --mode psychic").code, 2);          // bad mode
    EXPECT_EQ(run_cli("table --n 3 --kind ddt --poly 0xc --out " +
                      tmp_path("rp.csv")).code, 2);                       // reducible polynomial
}

TEST(Cli, HelpExitsCleanly) {
    EXPECT_EQ(run_cli("--help").code, 0);
    const CmdResult sub = run_cli("table --help");
    EXPECT_EQ(sub.code, 0);
    EXPECT_TRUE(contains(sub.text, "--kind"));
}
