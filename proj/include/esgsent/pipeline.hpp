#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esgsent/aggregation.hpp"
#include "esgsent/analysis.hpp"
#include "esgsent/error.hpp"
#include "esgsent/corpus.hpp"
#include "esgsent/report.hpp"
#include "esgsent/transport.hpp"

namespace esg {

/// Bad or inconsistent run configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char* kind() const noexcept override { return "config"; }
};

inline constexpr int kDefaultWindowDays = 10;
inline constexpr std::size_t kDefaultPriceDays = 20;

/// Config values as read from a JSON file or from flags; unset fields
/// fall through to the next layer.
struct PartialConfig {
    /// (key, display name); an empty name means "look it up".
    std::optional<std::vector<std::pair<std::string, std::string>>> tickers;
    std::optional<TimeWindow> window;
    std::optional<int> window_days;
    std::optional<long long> price_days;
    std::optional<AffinityThresholds> thresholds;
    std::optional<std::filesystem::path> fixtures;
    std::optional<std::filesystem::path> corpus;
    std::optional<std::filesystem::path> prices;
    std::optional<std::filesystem::path> lexicon;
    std::optional<std::filesystem::path> external_verdicts;
    std::optional<std::filesystem::path> out;
    std::optional<std::filesystem::path> record;
    std::optional<std::string> tweets_url;
    std::optional<std::string> news_url;
    std::optional<std::string> prices_url;
    std::optional<bool> strict;
};

/// Parses a JSON config. Relative paths resolve against `base_dir`.
/// Throws ConfigError on unknown keys or mistyped values.
PartialConfig parse_config_json(std::string_view text, const std::filesystem::path& base_dir);
PartialConfig load_config_file(const std::filesystem::path& path);

/// Fields set in `top` win over `base`.
PartialConfig overlay(PartialConfig base, const PartialConfig& top);

/// Parses `K1,K2` or `GS=Goldman Sachs,TSLA`.
std::vector<std::pair<std::string, std::string>> parse_ticker_list(std::string_view text);

/// Display name for the four companies the pipeline ships fixtures for;
/// the key itself otherwise.
std::string default_display_name(const std::string& key);

struct RunConfig {
    std::vector<Ticker> tickers;
    TimeWindow document_window;
    std::size_t price_days = kDefaultPriceDays;
    AffinityThresholds thresholds;
    struct Paths {
        std::filesystem::path fixtures;
        std::filesystem::path corpus;
        /// Directory of `<KEY>.csv` price files used instead of a transport.
        std::filesystem::path prices;
        std::filesystem::path lexicon;
        std::filesystem::path external_verdicts;
        std::filesystem::path out = "out";
        std::filesystem::path record;
    } paths;
    HttpEndpoints endpoints;
    bool strict = false;

    [[nodiscard]] std::filesystem::path corpus_file() const;
    [[nodiscard]] std::filesystem::path scored_file() const;
    [[nodiscard]] std::filesystem::path aggregates_file() const;
    [[nodiscard]] std::filesystem::path summary_file() const;
    [[nodiscard]] std::filesystem::path price_file(const Ticker& t) const;
    [[nodiscard]] std::filesystem::path analysis_file(const Ticker& t) const;
    [[nodiscard]] std::filesystem::path chart_file(const Ticker& t) const;
    [[nodiscard]] std::vector<std::string> ticker_keys() const;
};

/// Applies defaults and validates. When no window is given, the document
/// window is `window_days` (default 10) days ending on `today`.
RunConfig finalize_config(const PartialConfig& partial, Date today);

/// Sinks for stage output. `warn` may be called from worker threads; the
/// pipeline serializes those calls.
struct StageIo {
    std::ostream& log;
    std::function<void(std::string_view)> warn;
};

struct IngestReport {
    std::size_t total = 0;
    std::vector<std::pair<std::string, std::size_t>> per_ticker;
};
IngestReport cmd_ingest(const RunConfig& config, StageIo& io);

struct ScoreReport {
    std::size_t scored = 0;
    std::size_t external = 0;
};
ScoreReport cmd_score(const RunConfig& config, StageIo& io);

std::vector<TickerAggregate> cmd_aggregate(const RunConfig& config, StageIo& io);

std::vector<PriceSeries> cmd_prices(const RunConfig& config, StageIo& io);

/// One entry per configured ticker; empty where the price data was
/// insufficient. Throws InsufficientData when every ticker lacks data.
std::vector<std::optional<AnalysisResult>> cmd_analyze(const RunConfig& config, StageIo& io);

std::vector<SummaryRow> cmd_report(const RunConfig& config, StageIo& io);

void cmd_run(const RunConfig& config, StageIo& io);

/// Process exit code for an error: 2 schema/invariant, 3 transport,
/// 4 insufficient data, 1 anything else.
int exit_code_for(const Error& error);

}  // namespace esg
