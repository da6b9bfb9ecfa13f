#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "experiments.hpp"

namespace fs = std::filesystem;
using namespace semilab::cli;

namespace {

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("semilab_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int cli(const std::string& args) {
    const std::string cmd = std::string(SEMILAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("sha256 digest") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("config loading") {
    const auto dir = scratch("config");
    write(dir / "model.ini", "[model]\nkind = control\n[controls]\nb_max = 1\n");
    write(dir / "run.ini", "[experiment]\nname = hjb-compare\nmodel = model.ini\noutput = out\n[grid]\ndx = 0.05\n");
    const auto c = load_config(dir / "run.ini");
    CHECK(c.experiment == "hjb-compare");
    CHECK(c.model.kind == "control");
    CHECK(c.model.b_max == 1.0);
    CHECK(c.dx == 0.05);
    CHECK(c.output_dir == dir / "out");
    CHECK_FALSE(c.tolerance.has_value());
    CHECK(c.effective_tolerance() == 5e-2);
    CHECK_NOTHROW(c.validate());

    write(dir / "bad_key.ini", "[grid]\nspan = 8\nspacing = 0.1\n");
    CHECK_THROWS_AS(load_config(dir / "bad_key.ini"), UsageError);
    write(dir / "bad_section.ini", "[plot]\ncolor = red\n");
    CHECK_THROWS_AS(load_config(dir / "bad_section.ini"), UsageError);
    write(dir / "bad_value.ini", "[grid]\ndx = fine\n");
    CHECK_THROWS_AS(load_config(dir / "bad_value.ini"), UsageError);

    ExperimentConfig neg;
    neg.experiment = "talagrand";
    neg.tolerance = -1.0;
    CHECK_THROWS_AS(neg.validate(), UsageError);
    neg.tolerance = 1e-9;
    neg.family = {{0.0, -1.0}};
    CHECK_THROWS_AS(neg.validate(), UsageError);
}

TEST_CASE("model hash tracks the model only") {
    ModelSpec a, b;
    CHECK(a.canonical() == b.canonical());
    b.theta = 2.0;
    CHECK(sha256_hex(a.canonical()) != sha256_hex(b.canonical()));
}

TEST_CASE("talagrand table closed forms") {
    ExperimentConfig c;
    c.experiment = "talagrand";
    c.t = 0.5;
    c.family = {{0.0, 1.0}, {0.7, 1.0}, {0.0, 0.25}, {0.0, 0.5}, {0.0, 2.0}, {0.0, 4.0}};
    const auto out = talagrand(c);
    CHECK(out.passed());
    const auto& rows = out.report["rows"];
    CHECK(rows[0]["w2"] == 0.0);
    CHECK(rows[0]["entropy"] == 0.0);
    CHECK(rows[1]["w2"].get<double>() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(rows[1]["entropy"].get<double>() == doctest::Approx(0.49 / (2 * 0.5)).epsilon(1e-12));
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i]["slack"].get<double>() > 1e-9);
    c.family = {{0.0, -1.0}};
    CHECK_THROWS(talagrand(c));
}

TEST_CASE("runner exit codes and artifacts") {
    const auto dir = scratch("run");
    const auto out = dir / "tal";
    REQUIRE(cli("talagrand --out " + out.string()) == 0);
    CHECK(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "MANIFEST.json"));
    const auto csv = slurp(out / "tables" / "talagrand.csv");
    CHECK(csv.rfind("mean,variance,w2,entropy,slack\n", 0) == 0);
    const auto manifest = semilab::Json::parse(slurp(out / "MANIFEST.json"));
    CHECK(manifest["model_hash"] == sha256_hex(ModelSpec{}.canonical()));
    CHECK(manifest["tool_version"] == kToolVersion);
    for (const auto& f : manifest["files"]) CHECK(f["sha256"] == sha256_hex(slurp(out / f["path"].get<std::string>())));

    SUBCASE("reruns are byte identical") {
        const auto first = slurp(out / "tables" / "talagrand.csv");
        const auto first_report = slurp(out / "report.json");
        REQUIRE(cli("talagrand --out " + out.string()) == 0);
        CHECK(slurp(out / "tables" / "talagrand.csv") == first);
        CHECK(slurp(out / "report.json") == first_report);
    }
    SUBCASE("failed checks exit 1") { CHECK(cli("talagrand --tolerance 1 --out " + (dir / "strict").string()) == 1); }
    SUBCASE("usage errors exit 2") {
        CHECK(cli("no-such-experiment --out " + (dir / "x").string()) == 2);
        CHECK(cli("talagrand") == 2);
        CHECK(cli("talagrand --tolerance -1 --out " + (dir / "x").string()) == 2);
        write(dir / "bad.ini", "[grid]\nwidth = 3\n");
        CHECK(cli("talagrand --config " + (dir / "bad.ini").string() + " --out " + (dir / "x").string()) == 2);
        write(dir / "other.ini", "[experiment]\nname = gamma-demo\n");
        CHECK(cli("talagrand --config " + (dir / "other.ini").string() + " --out " + (dir / "x").string()) == 2);
    }
    SUBCASE("resume with a different model is refused") {
        write(dir / "model.ini", "[model]\ntheta = 2\n");
        write(dir / "resume.ini", "[experiment]\nmodel = model.ini\n");
        CHECK(cli("talagrand --config " + (dir / "resume.ini").string() + " --out " + out.string()) == 2);
        CHECK(semilab::Json::parse(slurp(out / "MANIFEST.json"))["model_hash"] == sha256_hex(ModelSpec{}.canonical()));
    }
}

TEST_CASE("gamma demo and generator check pass on shipped configs") {
    const auto dir = scratch("configs");
    const fs::path configs = fs::path(SEMILAB_CONFIG_DIR);
    CHECK(cli("gamma-demo --quiet --config " + (configs / "gamma-demo.ini").string() + " --out " + (dir / "g").string()) ==
          0);
    CHECK(cli("gen-check --quiet --config " + (configs / "gen-check.ini").string() + " --out " + (dir / "q").string()) ==
          0);
    const auto csv = slurp(dir / "q" / "tables" / "lipschitz.csv");
    CHECK(csv.find("root,upper,no,") != std::string::npos);
}
