// esgsent: ESG sentiment vs. stock price pipeline.
//
//   esgsent run --config fixtures/golden/config.json --out out/
//   esgsent ingest --tickers HSBC,TSLA --window 2022-07-11:2022-07-20 --fixtures fixtures/golden

#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "esgsent/kernels.hpp"
#include "esgsent/pipeline.hpp"

namespace {

struct Flags {
    std::string config;
    std::string tickers;
    std::string window;
    long long price_days = 0;
    std::string lexicon;
    std::string external_verdicts;
    std::string thresholds;
    std::string fixtures;
    std::string out;
    std::string record;
    bool strict = false;
};

void add_common(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config, "JSON run configuration");
    cmd.add_option("--tickers", f.tickers, "Comma-separated keys, optionally KEY=Display Name");
    cmd.add_option("--window", f.window, "Document window START:END (YYYY-MM-DD)");
    cmd.add_option("--price-days", f.price_days, "Trading days of prices to keep (default 20)");
    cmd.add_option("--lexicon", f.lexicon, "Directory with positive.txt, negative.txt, negators.txt");
    cmd.add_option("--external-verdicts", f.external_verdicts, "CSV of externally produced verdicts");
    cmd.add_option("--thresholds", f.thresholds, "AFFINE,AVERSE classification thresholds");
    cmd.add_option("--fixtures", f.fixtures, "Replay fixture directory");
    cmd.add_option("--out", f.out, "Output directory (default ./out)");
    cmd.add_option("--record", f.record, "Write every fetched payload into this fixture directory");
    cmd.add_flag("--strict", f.strict, "Reject unknown fields instead of warning");
}

esg::RunConfig build_config(const Flags& f) {
    esg::PartialConfig base;
    if (!f.config.empty()) {
        base = esg::load_config_file(f.config);
    }
    esg::PartialConfig flags;
    if (!f.tickers.empty()) flags.tickers = esg::parse_ticker_list(f.tickers);
    if (!f.window.empty()) flags.window = esg::TimeWindow::parse(f.window);
    if (f.price_days != 0) flags.price_days = f.price_days;
    if (!f.thresholds.empty()) flags.thresholds = esg::AffinityThresholds::parse(f.thresholds);
    if (!f.lexicon.empty()) flags.lexicon = f.lexicon;
    if (!f.external_verdicts.empty()) flags.external_verdicts = f.external_verdicts;
    if (!f.fixtures.empty()) flags.fixtures = f.fixtures;
    if (!f.out.empty()) flags.out = f.out;
    if (!f.record.empty()) flags.record = f.record;
    if (f.strict) flags.strict = true;

    // Flags naming only keys pick up display names from the config file.
    if (flags.tickers && base.tickers) {
        for (auto& [key, name] : *flags.tickers) {
            if (!name.empty()) continue;
            for (const auto& [bkey, bname] : *base.tickers) {
                if (bkey == key) name = bname;
            }
        }
    }
    const auto today = std::chrono::year_month_day{
        std::chrono::floor<std::chrono::days>(std::chrono::system_clock::now())};
    return esg::finalize_config(esg::overlay(std::move(base), flags), today);
}

std::string one_line(std::string text) {
    for (char& c : text) {
        if (c == '\n' || c == '\r') c = ' ';
    }
    return text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ESG sentiment and stock price pipeline"};
    app.require_subcommand(1);
    Flags flags;

    struct Stage {
        const char* name;
        const char* help;
        void (*run)(const esg::RunConfig&, esg::StageIo&);
    };
    const Stage stages[] = {
        {"ingest", "Fetch documents and write the corpus",
         [](const esg::RunConfig& c, esg::StageIo& io) { esg::cmd_ingest(c, io); }},
        {"score", "Score the corpus",
         [](const esg::RunConfig& c, esg::StageIo& io) { esg::cmd_score(c, io); }},
        {"aggregate", "Aggregate composite scores per ticker",
         [](const esg::RunConfig& c, esg::StageIo& io) { esg::cmd_aggregate(c, io); }},
        {"prices", "Fetch and window daily prices",
         [](const esg::RunConfig& c, esg::StageIo& io) { esg::cmd_prices(c, io); }},
        {"analyze", "Relate daily sentiment to price changes",
         [](const esg::RunConfig& c, esg::StageIo& io) { esg::cmd_analyze(c, io); }},
        {"report", "Write summary CSV, analyses and candlestick charts",
         [](const esg::RunConfig& c, esg::StageIo& io) { esg::cmd_report(c, io); }},
        {"run", "Run every stage in order", [](const esg::RunConfig& c, esg::StageIo& io) { esg::cmd_run(c, io); }},
    };
    const Stage* selected = nullptr;
    for (const auto& stage : stages) {
        auto* cmd = app.add_subcommand(stage.name, stage.help);
        add_common(*cmd, flags);
        cmd->callback([&selected, &stage] { selected = &stage; });
    }
    app.add_subcommand("kernels", "Print the selected SIMD kernel variant")->callback([] {
        std::cout << esg::kernels::to_string(esg::kernels::active().isa) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "esgsent: error[usage]: " << one_line(e.what()) << "\n";
        return 1;
    }
    if (selected == nullptr) {
        return 0;
    }

    esg::StageIo io{std::cout, [](std::string_view msg) { std::cerr << "esgsent: warning: " << msg << "\n"; }};
    try {
        selected->run(build_config(flags), io);
    } catch (const esg::Error& e) {
        std::cerr << "esgsent: error[" << e.kind() << "]: " << one_line(e.what()) << "\n";
        return esg::exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "esgsent: error[internal]: " << one_line(e.what()) << "\n";
        return 1;
    }
    return 0;
}
