#include "esgsent/pipeline.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <ostream>
#include <set>

#include "esgsent/csv.hpp"
#include "esgsent/fileio.hpp"
#include "esgsent/report.hpp"
#include "json.hpp"

namespace esg {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Configuration ---------------------------------------------------------------

namespace {

fs::path resolve(const fs::path& base, const std::string& value) {
    fs::path p(value);
    return p.is_relative() && !base.empty() ? base / p : p;
}

std::string expect_string(const json& v, const std::string& name) {
    if (!v.is_string()) {
        throw ConfigError("config field '" + name + "' must be a string");
    }
    return v.get<std::string>();
}

double expect_number(const json& v, const std::string& name) {
    if (!v.is_number()) {
        throw ConfigError("config field '" + name + "' must be a number");
    }
    return v.get<double>();
}

long long expect_integer(const json& v, const std::string& name) {
    if (!v.is_number_integer()) {
        throw ConfigError("config field '" + name + "' must be an integer");
    }
    return v.get<long long>();
}

template <class F>
auto wrap_config(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError("config field '" + name + "': " + e.what());
    }
}

}  // namespace

PartialConfig parse_config_json(std::string_view text, const fs::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    PartialConfig cfg;
    for (const auto& [name, value] : root.items()) {
        if (name == "tickers") {
            if (!value.is_array()) {
                throw ConfigError("config field 'tickers' must be an array");
            }
            std::vector<std::pair<std::string, std::string>> tickers;
            for (const auto& t : value) {
                if (t.is_string()) {
                    tickers.emplace_back(t.get<std::string>(), "");
                } else if (t.is_object() && t.contains("key")) {
                    for (const auto& [k, v] : t.items()) {
                        if (k != "key" && k != "name") {
                            throw ConfigError("unknown ticker field '" + k + "'");
                        }
                    }
                    tickers.emplace_back(expect_string(t["key"], "tickers.key"),
                                         t.contains("name") ? expect_string(t["name"], "tickers.name") : "");
                } else {
                    throw ConfigError("tickers entries must be strings or {key, name} objects");
                }
            }
            cfg.tickers = std::move(tickers);
        } else if (name == "window") {
            if (value.is_string()) {
                cfg.window = wrap_config(name, [&] { return TimeWindow::parse(value.get<std::string>()); });
            } else if (value.is_object() && value.contains("start") && value.contains("end")) {
                cfg.window = wrap_config(name, [&] {
                    return TimeWindow::make(parse_date(expect_string(value["start"], "window.start")),
                                            parse_date(expect_string(value["end"], "window.end")));
                });
            } else {
                throw ConfigError("config field 'window' must be \"START:END\" or {start, end}");
            }
        } else if (name == "window_days") {
            cfg.window_days = static_cast<int>(expect_integer(value, name));
        } else if (name == "price_days") {
            cfg.price_days = expect_integer(value, name);
        } else if (name == "thresholds") {
            if (!value.is_object() || !value.contains("affine") || !value.contains("averse")) {
                throw ConfigError("config field 'thresholds' must be {affine, averse}");
            }
            cfg.thresholds = wrap_config(name, [&] {
                return AffinityThresholds::make(expect_number(value["affine"], "thresholds.affine"),
                                                expect_number(value["averse"], "thresholds.averse"));
            });
        } else if (name == "strict") {
            if (!value.is_boolean()) {
                throw ConfigError("config field 'strict' must be a boolean");
            }
            cfg.strict = value.get<bool>();
        } else if (name == "paths") {
            if (!value.is_object()) {
                throw ConfigError("config field 'paths' must be an object");
            }
            for (const auto& [pname, pvalue] : value.items()) {
                const auto p = resolve(base_dir, expect_string(pvalue, "paths." + pname));
                if (pname == "fixtures") cfg.fixtures = p;
                else if (pname == "corpus") cfg.corpus = p;
                else if (pname == "prices") cfg.prices = p;
                else if (pname == "lexicon") cfg.lexicon = p;
                else if (pname == "external_verdicts") cfg.external_verdicts = p;
                else if (pname == "out") cfg.out = p;
                else if (pname == "record") cfg.record = p;
                else throw ConfigError("unknown config field 'paths." + pname + "'");
            }
        } else if (name == "endpoints") {
            if (!value.is_object()) {
                throw ConfigError("config field 'endpoints' must be an object");
            }
            for (const auto& [ename, evalue] : value.items()) {
                const auto url = expect_string(evalue, "endpoints." + ename);
                if (ename == "tweets") cfg.tweets_url = url;
                else if (ename == "news") cfg.news_url = url;
                else if (ename == "prices") cfg.prices_url = url;
                else throw ConfigError("unknown config field 'endpoints." + ename + "'");
            }
        } else {
            throw ConfigError("unknown config field '" + name + "'");
        }
    }
    return cfg;
}

PartialConfig load_config_file(const fs::path& path) {
    return parse_config_json(read_file(path), path.parent_path());
}

PartialConfig overlay(PartialConfig base, const PartialConfig& top) {
    const auto take = [](auto& dst, const auto& src) {
        if (src) {
            dst = src;
        }
    };
    take(base.tickers, top.tickers);
    take(base.window, top.window);
    take(base.window_days, top.window_days);
    take(base.price_days, top.price_days);
    take(base.thresholds, top.thresholds);
    take(base.fixtures, top.fixtures);
    take(base.corpus, top.corpus);
    take(base.prices, top.prices);
    take(base.lexicon, top.lexicon);
    take(base.external_verdicts, top.external_verdicts);
    take(base.out, top.out);
    take(base.record, top.record);
    take(base.tweets_url, top.tweets_url);
    take(base.news_url, top.news_url);
    take(base.prices_url, top.prices_url);
    take(base.strict, top.strict);
    return base;
}

std::vector<std::pair<std::string, std::string>> parse_ticker_list(std::string_view text) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& item : csv::split_line(text)) {
        const auto trimmed = csv::trim(item);
        if (trimmed.empty()) {
            continue;
        }
        const auto eq = trimmed.find('=');
        if (eq == std::string_view::npos) {
            out.emplace_back(std::string(trimmed), "");
        } else {
            out.emplace_back(std::string(csv::trim(trimmed.substr(0, eq))),
                             std::string(csv::trim(trimmed.substr(eq + 1))));
        }
    }
    return out;
}

std::string default_display_name(const std::string& key) {
    static const std::map<std::string, std::string> names{
        {"AMZN", "Amazon"}, {"GS", "Goldman Sachs"}, {"HSBC", "HSBC"}, {"TSLA", "Tesla"}};
    const auto it = names.find(key);
    return it == names.end() ? key : it->second;
}

RunConfig finalize_config(const PartialConfig& partial, Date today) {
    RunConfig cfg;
    if (!partial.tickers || partial.tickers->empty()) {
        throw ConfigError("at least one ticker is required (--tickers or config 'tickers')");
    }
    std::set<std::string> seen;
    for (const auto& [key, name] : *partial.tickers) {
        if (!seen.insert(key).second) {
            throw ConfigError("ticker '" + key + "' listed twice");
        }
        try {
            cfg.tickers.push_back(Ticker::make(key, name.empty() ? default_display_name(key) : name));
        } catch (const InvariantError& e) {
            throw ConfigError(e.what());
        }
    }

    const int window_days = partial.window_days.value_or(kDefaultWindowDays);
    if (window_days < 1) {
        throw ConfigError("window_days must be at least 1");
    }
    cfg.document_window = partial.window ? *partial.window : TimeWindow::ending_on(today, window_days);

    const long long price_days = partial.price_days.value_or(static_cast<long long>(kDefaultPriceDays));
    if (price_days < 2) {
        throw ConfigError("price days must be at least 2");
    }
    cfg.price_days = static_cast<std::size_t>(price_days);
    cfg.thresholds = partial.thresholds.value_or(AffinityThresholds{});
    cfg.strict = partial.strict.value_or(false);

    cfg.paths.fixtures = partial.fixtures.value_or(fs::path{});
    cfg.paths.corpus = partial.corpus.value_or(fs::path{});
    cfg.paths.prices = partial.prices.value_or(fs::path{});
    cfg.paths.lexicon = partial.lexicon.value_or(fs::path{});
    cfg.paths.external_verdicts = partial.external_verdicts.value_or(fs::path{});
    cfg.paths.out = partial.out.value_or(fs::path{"out"});
    cfg.paths.record = partial.record.value_or(fs::path{});
    cfg.endpoints.tweets = partial.tweets_url.value_or("");
    cfg.endpoints.news = partial.news_url.value_or("");
    cfg.endpoints.prices = partial.prices_url.value_or("");
    return cfg;
}

fs::path RunConfig::corpus_file() const {
    return paths.corpus.empty() ? paths.out / "corpus.jsonl" : paths.corpus;
}
fs::path RunConfig::scored_file() const { return paths.out / "scored.jsonl"; }
fs::path RunConfig::aggregates_file() const { return paths.out / "aggregates.csv"; }
fs::path RunConfig::summary_file() const { return paths.out / "summary.csv"; }
fs::path RunConfig::price_file(const Ticker& t) const { return paths.out / "prices" / (t.key() + ".csv"); }
fs::path RunConfig::analysis_file(const Ticker& t) const {
    return paths.out / "analysis" / (t.key() + ".json");
}
fs::path RunConfig::chart_file(const Ticker& t) const { return paths.out / "charts" / (t.key() + ".svg"); }

std::vector<std::string> RunConfig::ticker_keys() const {
    std::vector<std::string> keys;
    for (const auto& t : tickers) {
        keys.push_back(t.key());
    }
    return keys;
}

// Stages ----------------------------------------------------------------------

namespace {

struct Transports {
    std::shared_ptr<DocumentTransport> documents;
    std::shared_ptr<PriceTransport> prices;
};

Transports make_transports(const RunConfig& config) {
    Transports t;
    if (!config.paths.fixtures.empty()) {
        auto replay = std::make_shared<ReplayTransport>(config.paths.fixtures);
        t = {replay, replay};
    } else if (!config.endpoints.tweets.empty() || !config.endpoints.news.empty() ||
               !config.endpoints.prices.empty()) {
        auto http = std::make_shared<HttpTransport>(config.endpoints);
        t = {http, http};
    } else {
        throw ConfigError("no data source: set --fixtures or config 'endpoints'");
    }
    if (!config.paths.record.empty()) {
        auto rec = std::make_shared<RecordingTransport>(t.documents, t.prices, config.paths.record);
        t = {rec, rec};
    }
    return t;
}

/// Serializes warnings coming from worker threads.
class SafeWarn {
  public:
    explicit SafeWarn(StageIo& io) : io_(io) {}
    void operator()(std::string_view msg) {
        std::lock_guard lock(mu_);
        if (io_.warn) {
            io_.warn(msg);
        }
    }
    std::function<void(std::string_view)> fn() {
        return [this](std::string_view msg) { (*this)(msg); };
    }

  private:
    StageIo& io_;
    std::mutex mu_;
};

ParseOptions parse_options(const RunConfig& config, SafeWarn& warn) {
    return ParseOptions{config.strict, warn.fn()};
}

std::vector<ScoredDocument> configured_scored(const RunConfig& config, SafeWarn& warn) {
    auto scored = read_scored(config.scored_file().string(), parse_options(config, warn));
    const auto keys = config.ticker_keys();
    std::set<std::string> ignored;
    std::erase_if(scored, [&](const ScoredDocument& d) {
        if (std::find(keys.begin(), keys.end(), d.ticker) == keys.end()) {
            ignored.insert(d.ticker);
            return true;
        }
        return false;
    });
    for (const auto& key : ignored) {
        warn("ignoring scored documents for unconfigured ticker " + key);
    }
    return scored;
}

PriceSeries read_windowed_prices(const RunConfig& config, const Ticker& ticker) {
    return load_prices(config.price_file(ticker), ticker.key());
}

std::optional<AnalysisResult> analyze_ticker(const RunConfig& config, const Ticker& ticker,
                                             const std::vector<ScoredDocument>& scored,
                                             const PriceSeries& series, SafeWarn& warn) {
    try {
        auto result = analyze(scored, series, ticker.key(), config.thresholds);
        write_file_atomic(config.analysis_file(ticker), analysis_json(result));
        return result;
    } catch (const InsufficientData& e) {
        warn(ticker.key() + ": insufficient-data: " + e.what());
        nlohmann::ordered_json obj;
        obj["ticker"] = ticker.key();
        obj["error"] = "insufficient-data";
        obj["message"] = e.what();
        write_file_atomic(config.analysis_file(ticker), obj.dump(2) + "\n");
        return std::nullopt;
    }
}

}  // namespace

IngestReport cmd_ingest(const RunConfig& config, StageIo& io) {
    SafeWarn warn(io);
    const auto transports = make_transports(config);
    const auto options = parse_options(config, warn);

    std::vector<std::future<std::vector<Document>>> jobs;
    for (const auto& ticker : config.tickers) {
        jobs.push_back(std::async(std::launch::async, [&, ticker] {
            auto docs = fetch_documents(ticker, config.document_window, *transports.documents, options);
            return filter_window(dedupe(std::move(docs)), config.document_window);
        }));
    }
    std::vector<Document> all;
    std::optional<std::exception_ptr> failure;
    for (auto& job : jobs) {
        try {
            auto docs = job.get();
            all.insert(all.end(), std::make_move_iterator(docs.begin()), std::make_move_iterator(docs.end()));
        } catch (...) {
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(*failure);
    }
    all = dedupe(std::move(all));
    std::sort(all.begin(), all.end(), document_order);
    write_file_atomic(config.corpus_file(), serialize_corpus(all));

    IngestReport report;
    report.total = all.size();
    for (const auto& ticker : config.tickers) {
        const auto n = static_cast<std::size_t>(std::count_if(
            all.begin(), all.end(), [&](const Document& d) { return d.ticker == ticker.key(); }));
        report.per_ticker.emplace_back(ticker.key(), n);
        io.log << "ingest: " << ticker.key() << " " << n << " documents\n";
    }
    if (all.empty()) {
        warn("corpus is empty for window " + format_date(config.document_window.start) + ":" +
             format_date(config.document_window.end));
    }
    io.log << "ingest: wrote " << all.size() << " documents to " << config.corpus_file().string() << "\n";
    return report;
}

ScoreReport cmd_score(const RunConfig& config, StageIo& io) {
    SafeWarn warn(io);
    const auto docs = read_corpus(config.corpus_file().string(), parse_options(config, warn));
    std::set<DocumentKey> keys;
    for (const auto& d : docs) {
        if (!keys.insert(d.key()).second) {
            throw SchemaError("corpus contains duplicate document " + std::string(to_string(d.source)) +
                              "/" + d.id);
        }
    }
    const Lexicon lexicon = config.paths.lexicon.empty() ? Lexicon::builtin() : Lexicon::load(config.paths.lexicon);
    std::optional<ExternalVerdicts> external;
    if (!config.paths.external_verdicts.empty()) {
        external = import_external_verdicts(config.paths.external_verdicts);
    }
    const auto scored = score_corpus(docs, lexicon, external ? &*external : nullptr);

    ScoreReport report;
    report.scored = scored.size();
    std::string out;
    for (std::size_t i = 0; i < scored.size(); ++i) {
        out += serialize_scored(scored[i]);
        out += '\n';
        if (external && external->find(docs[i].key())) {
            ++report.external;
        }
    }
    write_file_atomic(config.scored_file(), out);
    io.log << "score: " << report.scored << " documents (" << report.external << " external verdicts) to "
           << config.scored_file().string() << "\n";
    return report;
}

std::vector<TickerAggregate> cmd_aggregate(const RunConfig& config, StageIo& io) {
    SafeWarn warn(io);
    const auto scored = configured_scored(config, warn);
    auto aggregates = aggregate_by_ticker(scored, config.ticker_keys(), config.thresholds);
    write_file_atomic(config.aggregates_file(), aggregates_csv(aggregates));
    io.log << "aggregate: rank";
    for (const auto& key : rank_affinity(aggregates)) {
        io.log << " " << key;
    }
    io.log << "\n";
    return aggregates;
}

std::vector<PriceSeries> cmd_prices(const RunConfig& config, StageIo& io) {
    SafeWarn warn(io);
    std::optional<Transports> transports;
    if (config.paths.prices.empty()) {
        transports = make_transports(config);
    }
    std::vector<std::future<PriceSeries>> jobs;
    for (const auto& ticker : config.tickers) {
        jobs.push_back(std::async(std::launch::async, [&, ticker] {
            auto full = config.paths.prices.empty()
                            ? fetch_prices(ticker, config.document_window, *transports->prices)
                            : load_prices(config.paths.prices / (ticker.key() + ".csv"), ticker.key());
            return tail_n(up_to(full, config.document_window.end), config.price_days);
        }));
    }
    std::vector<PriceSeries> out;
    std::optional<std::exception_ptr> failure;
    for (auto& job : jobs) {
        try {
            out.push_back(job.get());
        } catch (...) {
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(*failure);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        const auto& ticker = config.tickers[i];
        write_file_atomic(config.price_file(ticker), serialize_prices(out[i]));
        if (out[i].size() < config.price_days) {
            warn(ticker.key() + ": only " + std::to_string(out[i].size()) + " of " +
                 std::to_string(config.price_days) + " price days available");
        }
        io.log << "prices: " << ticker.key() << " " << out[i].size() << " bars\n";
    }
    return out;
}

std::vector<std::optional<AnalysisResult>> cmd_analyze(const RunConfig& config, StageIo& io) {
    SafeWarn warn(io);
    const auto scored = configured_scored(config, warn);
    std::vector<std::optional<AnalysisResult>> out;
    for (const auto& ticker : config.tickers) {
        out.push_back(analyze_ticker(config, ticker, scored, read_windowed_prices(config, ticker), warn));
        if (out.back()) {
            const auto& r = *out.back();
            io.log << "analyze: " << ticker.key() << " change " << fixed6(r.percent_change) << "% mean "
                   << fixed6(r.mean_composite) << " " << to_string(r.sign_agreement) << "\n";
        }
    }
    if (std::none_of(out.begin(), out.end(), [](const auto& r) { return r.has_value(); })) {
        throw InsufficientData("no ticker has enough price data to analyze");
    }
    return out;
}

std::vector<SummaryRow> cmd_report(const RunConfig& config, StageIo& io) {
    SafeWarn warn(io);
    const auto scored = configured_scored(config, warn);
    const auto aggregates = aggregate_by_ticker(scored, config.ticker_keys(), config.thresholds);
    std::vector<AnalysisResult> analyses;
    for (const auto& ticker : config.tickers) {
        const auto series = read_windowed_prices(config, ticker);
        if (auto r = analyze_ticker(config, ticker, scored, series, warn)) {
            analyses.push_back(std::move(*r));
        }
        const auto title = ticker.display_name() + " (" + ticker.key() + "), " +
                           std::to_string(series.size()) + " trading days";
        write_file_atomic(config.chart_file(ticker), render_candlestick_svg(series, title));
    }
    auto rows = summary_rows(aggregates, analyses);
    write_file_atomic(config.summary_file(), summary_csv(rows));
    for (const auto& r : rows) {
        io.log << "report: " << r.ticker << " " << to_string(r.classification) << " mean "
               << fixed6(r.mean_composite) << " change "
               << (r.percent_change ? fixed6(*r.percent_change) + "%" : std::string("n/a")) << " "
               << to_string(r.sign_agreement) << "\n";
    }
    io.log << "report: wrote " << config.summary_file().string() << "\n";
    return rows;
}

void cmd_run(const RunConfig& config, StageIo& io) {
    cmd_ingest(config, io);
    cmd_score(config, io);
    cmd_aggregate(config, io);
    cmd_prices(config, io);
    cmd_analyze(config, io);
    cmd_report(config, io);
}

int exit_code_for(const Error& error) {
    const std::string_view kind = error.kind();
    if (kind == "schema" || kind == "invariant") {
        return 2;
    }
    if (kind == "transport") {
        return 3;
    }
    if (kind == "insufficient-data") {
        return 4;
    }
    return 1;
}

}  // namespace esg
