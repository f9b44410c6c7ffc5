#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "illiqnet/config.hpp"
#include "illiqnet/errors.hpp"
#include "illiqnet/pipeline.hpp"

using namespace illiqnet;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "illiqnet_cli_tests";

struct RunResult {
    int status;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    fs::path log = kRoot / "cli.log";
    std::string cmd = std::string(ILLIQNET_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream buf;
    buf << in.rdbuf();
    return {status == 0 ? 0 : 1, buf.str()};
}

std::string write_config(const std::string& name, const std::string& extra = "") {
    fs::create_directories(kRoot);
    fs::path p = kRoot / name;
    std::ofstream out(p);
    out << "seed=321\n"
        << "crash_threshold=7\n"
        << "peak_min_height=2\n"
        << "synth.n_stocks=18\n"
        << "synth.n_days=14\n"
        << "synth.crash_days=8,9\n"
        << "synth.snapshot_rate=1\n"
        << extra;
    return p.string();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("config parsing rejects unknown keys and bad values") {
    std::istringstream unknown("bogus_key=1\n");
    CHECK_THROWS_AS(PipelineConfig::parse(unknown), ConfigError);
    std::istringstream bad("bins=999\n");
    CHECK_THROWS_AS(PipelineConfig::parse(bad), ConfigError);
    std::istringstream no_eq("bins\n");
    CHECK_THROWS_AS(PipelineConfig::parse(no_eq), ConfigError);
    std::istringstream fine("bins=12\n# comment\nthreshold_step=0.02\n");
    auto cfg = PipelineConfig::parse(fine);
    CHECK(cfg.bins == 12);
    CHECK(cfg.threshold_step == 0.02);
}

TEST_CASE("config hash ignores execution-only keys") {
    PipelineConfig a, b;
    b.workers = 16;
    b.out = "elsewhere";
    CHECK(a.hash() == b.hash());
    b.seed = 999;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("full pipeline via the CLI") {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
    std::string cfg = write_config("pipeline.ini");
    std::string out = (kRoot / "out").string();
    std::string base = "--config " + cfg + " --out " + out + " --workers 2 ";

    CHECK(run_cli(base + "synth").status == 0);
    CHECK(fs::exists(fs::path(out) / "manifest.json"));

    // stage-dependency error: net before illiq names the producer
    auto premature = run_cli(base + "net");
    CHECK(premature.status != 0);
    CHECK(premature.output.find("illiq") != std::string::npos);

    CHECK(run_cli(base + "illiq").status == 0);
    CHECK(run_cli(base + "net").status == 0);
    CHECK(run_cli(base + "dynamics").status == 0);
    CHECK(run_cli(base + "cascade").status == 0);
    CHECK(run_cli(base + "warn").status == 0);
    CHECK(run_cli(base + "evaluate").status == 0);
    CHECK(run_cli(base + "report").status == 0);

    for (const char* artifact :
         {"meta.csv", "illiq/daily.csv", "illiq/episodes.csv", "cascade/failures.csv",
          "cascade/crash_days.csv", "dynamics/evolution.csv", "dynamics/scores.csv",
          "signal/signal.csv", "signal/evaluation.json", "report/daily_illiquidity.svg",
          "report/nmi_mean_std.svg", "report/gcc_ratio.svg", "report/signal_timeline.svg",
          "report/summary.json"})
        CHECK_MESSAGE(fs::exists(fs::path(out) / artifact), artifact);

    // per-day artifacts for all 14 days
    int series_files = 0, matrices = 0;
    for (const auto& e : fs::directory_iterator(fs::path(out) / "series")) {
        (void)e;
        ++series_files;
    }
    for (const auto& e : fs::directory_iterator(fs::path(out) / "matrix"))
        matrices += e.path().extension() == ".ilqm" ? 1 : 0;
    CHECK(series_files == 14);
    CHECK(matrices == 14);

    SUBCASE("report regeneration is byte-identical") {
        auto before = slurp(fs::path(out) / "report" / "gcc_ratio.svg");
        auto summary_before = slurp(fs::path(out) / "report" / "summary.json");
        CHECK(run_cli(base + "report").status == 0);
        CHECK(slurp(fs::path(out) / "report" / "gcc_ratio.svg") == before);
        CHECK(slurp(fs::path(out) / "report" / "summary.json") == summary_before);
    }

    SUBCASE("a different config hash refuses to touch the artifacts") {
        std::string other_cfg = write_config("other.ini", "seed=777\n");
        auto mixed = run_cli("--config " + other_cfg + " --out " + out + " net");
        CHECK(mixed.status != 0);
        CHECK(mixed.output.find("refusing to mix") != std::string::npos);
    }

    SUBCASE("--days restricts per-day stages") {
        std::string narrow = (kRoot / "narrow").string();
        CHECK(run_cli(base + "synth").status == 0);
        CHECK(run_cli("--config " + cfg + " --out " + out + " --days 0-4 illiq --workers 2")
                  .status == 0);
        (void)narrow;
    }
}

TEST_CASE("ingest validates external files into the canonical layout") {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
    std::string cfg = write_config("ingest.ini");
    std::string seed_out = (kRoot / "seed_out").string();
    std::string base = "--config " + cfg + " --out " + seed_out + " ";
    REQUIRE(run_cli(base + "synth").status == 0);

    // copy one generated day and append a malformed row
    fs::path day_file;
    for (const auto& e : fs::directory_iterator(fs::path(seed_out) / "quotes")) day_file = e.path();
    fs::path external = kRoot / day_file.filename();
    fs::copy_file(day_file, external);
    {
        std::ofstream app(external, std::ios::app);
        app << "BAD,0,9.0,100,10.0,100\n";  // crossed book
    }

    std::string ingest_out = (kRoot / "ingest_out").string();
    auto r = run_cli("--config " + cfg + " --out " + ingest_out + " ingest --quotes " +
                     external.string() + " --meta " + seed_out + "/meta.csv");
    CHECK(r.status == 0);
    CHECK(r.output.find("rejected line") != std::string::npos);
    CHECK(fs::exists(fs::path(ingest_out) / "quotes" / day_file.filename()));
    CHECK(fs::exists(fs::path(ingest_out) / "coverage.json"));
    CHECK(fs::exists(fs::path(ingest_out) / "meta.csv"));
}

TEST_CASE("unknown subcommand and bad flags produce usage errors") {
    auto r = run_cli("frobnicate");
    CHECK(r.status != 0);
    auto bad_days = run_cli("--days 9-2 synth");
    CHECK(bad_days.status != 0);
}

TEST_CASE("ILLIQNET_OUT acts as the output-dir fallback") {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);
    std::string cfg = write_config("env.ini", "synth.n_days=2\nsynth.crash_days=\n");
    fs::path env_out = kRoot / "env_out";
    std::string cmd = "ILLIQNET_OUT=" + env_out.string() + " " + ILLIQNET_CLI_PATH +
                      " --config " + cfg + " synth > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(env_out / "manifest.json"));
}
