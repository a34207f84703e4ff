// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Tolerances and sizes are fixed below.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "esgsent/aggregation.hpp"
#include "esgsent/analysis.hpp"
#include "esgsent/error.hpp"
#include "esgsent/fileio.hpp"
#include "esgsent/market.hpp"
#include "esgsent/pipeline.hpp"
#include "esgsent/sentiment.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace esg;
namespace fs = std::filesystem;

namespace {

constexpr std::size_t kCompositeTrials = 10'000;
constexpr double kCompositeSeconds = 1.0;
constexpr std::size_t kPearsonTrials = 1'000;
constexpr std::size_t kPearsonMinLen = 3;
constexpr std::size_t kPearsonMaxLen = 50;
constexpr double kPearsonOracleTol = 1e-12;
constexpr double kPearsonPropertyTol = 1e-9;
constexpr double kPearsonSeconds = 5.0;
constexpr std::size_t kCompoundTrials = 500;
constexpr double kCompoundRelTol = 1e-9;
constexpr std::size_t kTailDays = 20;
constexpr std::size_t kShuffles = 100;
constexpr std::uint64_t kSeed = 20220720;

struct Verdict {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path golden_dir() { return esg::test::source_dir() / "fixtures/golden"; }

RunConfig golden_config(const fs::path& out) {
    auto partial = load_config_file(golden_dir() / "config.json");
    partial.out = out;
    return finalize_config(partial, std::chrono::year{2022} / std::chrono::July / 20);
}

Verdict composite_law() {
    Verdict v;
    std::mt19937_64 rng(kSeed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const SentimentLabel labels[] = {SentimentLabel::Positive, SentimentLabel::Neutral, SentimentLabel::Negative};
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < kCompositeTrials; ++i) {
        double score = unit(rng);
        if (i % 97 == 0) score = 0.0;
        if (i % 89 == 0) score = 1.0;
        const auto label = labels[rng() % 3];
        const double c = composite(SentimentVerdict::make(label, score)).value;
        v.require(c == weight(label) * score, "composite != weight * score");
        v.require(c >= -1.0 && c <= 1.0, "composite outside [-1, 1]");
    }
    const double secs = seconds_since(t0);
    v.require(secs < kCompositeSeconds, "took " + std::to_string(secs) + " s");
    if (v.pass) v.detail = std::to_string(kCompositeTrials) + " verdicts in " + std::to_string(secs) + " s";
    return v;
}

Verdict weight_mapping() {
    Verdict v;
    v.require(weight(SentimentLabel::Positive) == 1, "positive weight");
    v.require(weight(SentimentLabel::Neutral) == 0, "neutral weight");
    v.require(weight(SentimentLabel::Negative) == -1, "negative weight");
    if (v.pass) v.detail = "(+1, 0, -1)";
    return v;
}

Verdict pearson_oracle() {
    Verdict v;
    std::mt19937_64 rng(kSeed + 3);
    std::uniform_real_distribution<double> coef(0.1, 10.0);
    double worst = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t trial = 0; trial < kPearsonTrials; ++trial) {
        const std::size_t n = kPearsonMinLen + rng() % (kPearsonMaxLen - kPearsonMinLen + 1);
        const auto x = esg::test::random_series(rng, n, -100.0, 100.0);
        const auto y = esg::test::random_series(rng, n, -1.0, 1.0);
        const double r = pearson(x, y);
        const double err = std::abs(r - esg::test::definitional_pearson(x, y));
        worst = std::max(worst, err);
        v.require(err <= kPearsonOracleTol, "oracle mismatch " + std::to_string(err) + " at n=" + std::to_string(n));
        v.require(std::abs(pearson(y, x) - r) <= kPearsonPropertyTol, "symmetry");

        const double a = coef(rng);
        const double c = coef(rng);
        const double b = coef(rng) - 5.0;
        std::vector<double> ax(n);
        std::vector<double> cy(n);
        for (std::size_t i = 0; i < n; ++i) {
            ax[i] = a * x[i] + b;
            cy[i] = c * y[i] + b;
        }
        v.require(std::abs(pearson(ax, cy) - r) <= kPearsonPropertyTol, "affine invariance");
    }
    const double secs = seconds_since(t0);
    v.require(secs < kPearsonSeconds, "took " + std::to_string(secs) + " s");
    if (v.pass) {
        std::ostringstream os;
        os << kPearsonTrials << " series, max oracle error " << worst << ", " << secs << " s";
        v.detail = os.str();
    }
    return v;
}

Verdict return_compounding() {
    Verdict v;
    std::mt19937_64 rng(kSeed + 4);
    double worst = 0;
    for (std::size_t trial = 0; trial < kCompoundTrials; ++trial) {
        const std::size_t n = 2 + rng() % 60;
        PriceSeries s{"X", {}};
        std::chrono::sys_days day{std::chrono::year{2022} / std::chrono::January / 3};
        for (double o : esg::test::random_series(rng, n, 1.0, 1000.0)) {
            s.bars.push_back({Date{day}, o, o * 1.05, o * 0.95, o, 100});
            day += std::chrono::days{1};
        }
        std::vector<double> pct;
        for (const auto& r : daily_open_returns(s)) pct.push_back(r.percent);
        const double total = percent_change_open(s);
        const double rel = std::abs(esg::test::compound_percent(pct) - total) / std::max(1.0, std::abs(total));
        worst = std::max(worst, rel);
        v.require(rel <= kCompoundRelTol, "relative error " + std::to_string(rel));
    }
    if (v.pass) {
        std::ostringstream os;
        os << kCompoundTrials << " series, max relative error " << worst;
        v.detail = os.str();
    }
    return v;
}

Verdict golden_sign_pattern() {
    Verdict v;
    esg::test::TempDir out;
    const auto cfg = golden_config(out.path());
    std::ostringstream log;
    StageIo io{log, {}};
    cmd_ingest(cfg, io);
    cmd_score(cfg, io);
    const auto aggs = cmd_aggregate(cfg, io);
    const auto rank = rank_affinity(aggs);
    std::map<std::string, Affinity> cls;
    for (const auto& a : aggs) cls[a.ticker] = a.classification;
    v.require(cls["GS"] == Affinity::Affine, "GS not Affine");
    v.require(cls["AMZN"] == Affinity::Affine, "AMZN not Affine");
    v.require(cls["TSLA"] == Affinity::Affine, "TSLA not Affine");
    v.require(cls["HSBC"] == Affinity::Averse, "HSBC not Averse");
    v.require(rank == std::vector<std::string>{"GS", "AMZN", "TSLA", "HSBC"}, "rank order");
    std::string ranked;
    for (const auto& k : rank) ranked += (ranked.empty() ? "" : " ") + k;
    if (v.pass) v.detail = "rank " + ranked;
    return v;
}

int run_cli_to(const fs::path& out) {
    const std::string cmd = "\"" + std::string(ESGSENT_CLI_PATH) + "\" run --config \"" +
                            (golden_dir() / "config.json").string() + "\" --out \"" + out.string() +
                            "\" >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Verdict determinism() {
    Verdict v;
    esg::test::TempDir tmp;
    const auto a = tmp / "a";
    const auto b = tmp / "b";
    v.require(run_cli_to(a) == 0, "first run failed");
    v.require(run_cli_to(b) == 0, "second run failed");
    if (!v.pass) return v;
    std::size_t files = 0;
    for (const auto& entry : fs::recursive_directory_iterator(a)) {
        if (!entry.is_regular_file()) continue;
        const auto rel = fs::relative(entry.path(), a);
        const auto other = b / rel.string();
        v.require(fs::exists(other) && read_file(entry.path()) == read_file(other), rel.string() + " differs");
        ++files;
    }
    std::size_t files_b = 0;
    for (const auto& entry : fs::recursive_directory_iterator(b)) files_b += entry.is_regular_file() ? 1 : 0;
    v.require(files == files_b, "different file sets");
    v.require(files >= 15, "too few outputs");
    if (v.pass) v.detail = std::to_string(files) + " files byte-identical";
    return v;
}

Verdict tail_behaviour() {
    Verdict v;
    std::size_t checked = 0;
    for (const auto* key : {"AMZN", "GS", "HSBC", "TSLA"}) {
        const auto full = load_prices(golden_dir() / key / "prices.csv", key);
        v.require(full.size() == 25, std::string(key) + " fixture is not 25 bars");
        const auto tail = tail_n(full, kTailDays);
        v.require(tail.size() == kTailDays, "tail size");
        v.require(std::equal(tail.bars.begin(), tail.bars.end(), full.bars.end() - kTailDays), "not the last bars");
        for (std::size_t n = 1; n <= 5; ++n) {
            PriceSeries shortened{key, {full.bars.end() - static_cast<long>(n), full.bars.end()}};
            v.require(tail_n(shortened, kTailDays) == shortened, "short series did not clamp");
        }
        ++checked;
    }
    if (v.pass) v.detail = std::to_string(checked) + " fixtures: 25 -> 20 bars; 1..5 bars clamp";
    return v;
}

Verdict order_invariance() {
    Verdict v;
    esg::test::TempDir out;
    const auto cfg = golden_config(out.path());
    std::ostringstream log;
    StageIo io{log, {}};
    cmd_ingest(cfg, io);
    cmd_score(cfg, io);
    auto scored = read_scored(cfg.scored_file().string());
    const auto keys = cfg.ticker_keys();
    const auto reference = aggregate_by_ticker(scored, keys, cfg.thresholds);
    std::mt19937_64 rng(kSeed + 8);
    for (std::size_t i = 0; i < kShuffles; ++i) {
        std::shuffle(scored.begin(), scored.end(), rng);
        v.require(aggregate_by_ticker(scored, keys, cfg.thresholds) == reference,
                  "shuffle " + std::to_string(i) + " changed the aggregates");
    }
    if (v.pass) v.detail = std::to_string(kShuffles) + " shuffles of " + std::to_string(scored.size()) + " documents";
    return v;
}

template <class F>
bool throws_schema(F&& f) {
    try {
        f();
    } catch (const SchemaError&) {
        return true;
    } catch (...) {
        return false;
    }
    return false;
}

Verdict round_trip() {
    Verdict v;
    const ParseOptions strict{true, {}};
    std::size_t docs = 0;
    std::size_t scored_lines = 0;
    std::size_t price_rows = 0;
    const auto each_line = [](const std::string& text, const std::function<void(std::string_view)>& f) {
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) {
            if (!line.empty()) f(line);
        }
    };
    const std::string header = "Date,Open,High,Low,Close,Adj Close,Volume\n";
    for (const auto* key : {"AMZN", "GS", "HSBC", "TSLA"}) {
        for (const auto* file : {"tweets.jsonl", "news.jsonl"}) {
            each_line(read_file(golden_dir() / key / file), [&](std::string_view line) {
                const auto d = parse_document_line(line, strict);
                v.require(parse_document_line(serialize_document(d), strict) == d,
                          std::string(key) + "/" + file + " line does not round-trip");
                ++docs;
            });
        }
        const auto prices = read_file(golden_dir() / key / "prices.csv");
        each_line(prices.substr(prices.find('\n') + 1), [&](std::string_view line) {
            const auto once = parse_prices(header + std::string(line) + "\n", key);
            v.require(parse_prices(serialize_prices(once), key) == once, std::string(key) + " price row");
            ++price_rows;
        });
    }

    esg::test::TempDir out;
    const auto cfg = golden_config(out.path());
    std::ostringstream log;
    StageIo io{log, {}};
    cmd_ingest(cfg, io);
    cmd_score(cfg, io);
    each_line(read_file(cfg.scored_file()), [&](std::string_view line) {
        const auto s = parse_scored_line(line, strict);
        v.require(parse_scored_line(serialize_scored(s), strict) == s, "scored line does not round-trip");
        ++scored_lines;
    });

    const char* bad_docs[] = {
        "{not json",
        R"({"id":"1","source":"tweet","timestamp":"2022-07-12T10:00:00Z","ticker":"GS"})",
        R"({"id":"1","source":"blog","timestamp":"2022-07-12T10:00:00Z","ticker":"GS","text":"x"})",
        R"({"id":"1","source":"tweet","timestamp":"12/07/2022","ticker":"GS","text":"x"})",
        R"({"id":"1","source":"tweet","timestamp":"2022-07-12T10:00:00Z","ticker":"GS","text":"x","mood":"sunny"})",
    };
    for (const auto* line : bad_docs) {
        v.require(throws_schema([&] { parse_document_line(line, strict); }), std::string("accepted: ") + line);
    }
    const char* bad_scored[] = {
        R"({"id":"1","source":"tweet","ticker":"GS","timestamp":"2022-07-12T10:00:00Z","label":"positive","score":0.5,"composite":-0.5})",
        R"({"id":"1","source":"tweet","ticker":"GS","timestamp":"2022-07-12T10:00:00Z","label":"great","score":0.5,"composite":0.5})",
        R"({"id":"1","source":"tweet","ticker":"GS","timestamp":"2022-07-12T10:00:00Z","label":"positive","composite":0.5})",
    };
    for (const auto* line : bad_scored) {
        v.require(throws_schema([&] { parse_scored_line(line, strict); }), std::string("accepted: ") + line);
    }
    for (const auto* row : {"2022-07-12,abc,11,9,10,10,100", "2022-07-12,10,11,9,10,10", "2022/07/12,10,11,9,10,10,1"}) {
        v.require(throws_schema([&] { parse_prices(header + row + "\n", "X"); }), std::string("accepted: ") + row);
    }
    if (v.pass) {
        v.detail = std::to_string(docs) + " documents, " + std::to_string(scored_lines) + " scored, " +
                   std::to_string(price_rows) + " price rows; 11 malformed lines rejected";
    }
    return v;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"composite law", composite_law},
        {"weight mapping", weight_mapping},
        {"pearson oracle equivalence", pearson_oracle},
        {"return compounding", return_compounding},
        {"golden sign pattern", golden_sign_pattern},
        {"determinism", determinism},
        {"tail(20) window", tail_behaviour},
        {"aggregation order invariance", order_invariance},
        {"round-trip integrity", round_trip},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail = std::string("exception: ") + e.what();
        }
        std::cout << (v.pass ? "PASS" : "FAIL") << " [" << index << "] " << name << ": " << v.detail << "\n";
        failures += v.pass ? 0 : 1;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
