#include <sys/wait.h>

#include <cstdlib>

#include "doctest.h"
#include "esgsent/fileio.hpp"
#include "test_helpers.hpp"

using esg::test::TempDir;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int status;
    std::string err;
};

Outcome run_cli(const std::string& args, const TempDir& tmp, const std::string& env = "") {
    const auto err_file = tmp / "stderr.txt";
    const std::string cmd = env + " \"" + std::string(ESGSENT_CLI_PATH) + "\" " + args + " >\"" +
                            (tmp / "stdout.txt").string() + "\" 2>\"" + err_file.string() + "\"";
    const int raw = std::system(cmd.c_str());
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, esg::read_file(err_file)};
}

std::string golden_config() { return (esg::test::source_dir() / "fixtures/golden/config.json").string(); }

}  // namespace

TEST_CASE("run reproduces the checked-in golden outputs") {
    TempDir tmp;
    const auto out = tmp / "out";
    const auto r = run_cli("run --config \"" + golden_config() + "\" --out \"" + out.string() + "\"", tmp,
                           "ESGSENT_ISA=scalar");
    REQUIRE(r.status == 0);
    CHECK(r.err.empty());
    const auto golden = esg::test::source_dir() / "tests/golden";
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(golden)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), golden);
        CAPTURE(rel.string());
        REQUIRE(fs::exists(out / rel.string()));
        CHECK(esg::read_file(out / rel.string()) == esg::read_file(entry.path()));
        ++compared;
    }
    CHECK(compared == 16);
}

TEST_CASE("staged commands compose") {
    TempDir tmp;
    const std::string common = " --config \"" + golden_config() + "\" --out \"" + (tmp / "out").string() + "\"";
    for (const auto* stage : {"ingest", "score", "aggregate", "prices", "analyze", "report"}) {
        CAPTURE(stage);
        CHECK(run_cli(std::string(stage) + common, tmp).status == 0);
    }
    CHECK(fs::exists(tmp / "out/summary.csv"));
}

TEST_CASE("flags override the config file") {
    TempDir tmp;
    const auto r = run_cli("ingest --config \"" + golden_config() + "\" --tickers HSBC --window 2022-07-11:2022-07-12 --out \"" +
                               (tmp / "out").string() + "\"",
                           tmp);
    CHECK(r.status == 0);
    const auto corpus = esg::read_file(tmp / "out/corpus.jsonl");
    CHECK(corpus.find("\"GS\"") == std::string::npos);
    CHECK(corpus.find("\"HSBC\"") != std::string::npos);
}

TEST_CASE("errors exit with the mapped code and a one-line message") {
    TempDir tmp;
    const std::string out = " --out \"" + (tmp / "out").string() + "\"";

    esg::write_file_atomic(tmp / "bad/GS/tweets.jsonl", "{not json\n");
    esg::write_file_atomic(tmp / "bad/GS/news.jsonl", "");
    auto r = run_cli("ingest --tickers GS --window 2022-07-11:2022-07-20 --fixtures \"" + (tmp / "bad").string() +
                         "\"" + out,
                     tmp);
    CHECK(r.status == 2);
    CHECK(r.err.rfind("esgsent: error[schema]: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);

    r = run_cli("ingest --tickers ZZZ --window 2022-07-11:2022-07-20 --fixtures \"" + (tmp / "bad").string() + "\"" +
                    out,
                tmp);
    CHECK(r.status == 3);
    CHECK(r.err.rfind("esgsent: error[transport]: ", 0) == 0);

    r = run_cli("score --tickers GS --window 2022-07-11:2022-07-20 --out \"" + (tmp / "empty").string() + "\"", tmp);
    CHECK(r.status == 1);
    CHECK(r.err.rfind("esgsent: error[io]: ", 0) == 0);

    r = run_cli("ingest --window 2022-07-11:2022-07-20" + out, tmp);
    CHECK(r.status == 1);
    CHECK(r.err.rfind("esgsent: error[config]: ", 0) == 0);

    r = run_cli("ingest --tickers GS --window 2022-07-20:2022-07-11" + out, tmp);
    CHECK(r.status == 2);

    CHECK(run_cli("bogus", tmp).status == 1);
}

TEST_CASE("kernels subcommand names the active variant") {
    TempDir tmp;
    CHECK(run_cli("kernels", tmp, "ESGSENT_ISA=scalar").status == 0);
    CHECK(esg::read_file(tmp / "stdout.txt") == "scalar\n");
}
