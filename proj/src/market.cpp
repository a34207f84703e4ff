#include "esgsent/market.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "esgsent/corpus.hpp"
#include "esgsent/csv.hpp"
#include "esgsent/error.hpp"
#include "esgsent/fileio.hpp"
#include "esgsent/kernels.hpp"
#include "esgsent/transport.hpp"

namespace esg {

namespace {

constexpr std::string_view kHeader = "Date,Open,High,Low,Close,Adj Close,Volume";

double parse_price(std::string_view text, const char* column) {
    text = csv::trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw SchemaError(std::string(column) + " value '" + std::string(text) + "' is not a number");
    }
    return value;
}

std::uint64_t parse_volume(std::string_view text) {
    text = csv::trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw SchemaError("Volume value '" + std::string(text) + "' is not a non-negative integer");
    }
    return value;
}

}  // namespace

void validate_bar(const PriceBar& bar) {
    const auto where = " on " + format_date(bar.date);
    for (double p : {bar.open, bar.high, bar.low, bar.close}) {
        if (!std::isfinite(p) || p <= 0.0) {
            throw InvariantError("non-positive or non-finite price" + where);
        }
    }
    if (bar.low > bar.high) {
        throw InvariantError("low above high" + where);
    }
    if (bar.open < bar.low || bar.open > bar.high) {
        throw InvariantError("open outside [low, high]" + where);
    }
    if (bar.close < bar.low || bar.close > bar.high) {
        throw InvariantError("close outside [low, high]" + where);
    }
}

PriceSeries parse_prices(std::string_view text, std::string ticker, const std::string& origin) {
    auto rows = csv::lines(text);
    if (rows.empty() || csv::trim(rows.front()) != kHeader) {
        throw SchemaError(origin + ": header must be '" + std::string(kHeader) + "'");
    }
    PriceSeries series;
    series.ticker = std::move(ticker);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (csv::trim(rows[i]).empty()) {
            continue;
        }
        const auto where = origin + ":" + std::to_string(i + 1) + ": ";
        PriceBar bar;
        try {
            const auto f = csv::split_line(rows[i]);
            if (f.size() != 7) {
                throw SchemaError("expected 7 fields, got " + std::to_string(f.size()));
            }
            bar.date = parse_date(csv::trim(f[0]));
            bar.open = parse_price(f[1], "Open");
            bar.high = parse_price(f[2], "High");
            bar.low = parse_price(f[3], "Low");
            bar.close = parse_price(f[4], "Close");
            parse_price(f[5], "Adj Close");
            bar.volume = parse_volume(f[6]);
        } catch (const SchemaError& e) {
            throw SchemaError(where + e.what());
        }
        try {
            validate_bar(bar);
        } catch (const InvariantError& e) {
            throw InvariantError(where + e.what());
        }
        series.bars.push_back(bar);
    }
    std::sort(series.bars.begin(), series.bars.end(),
              [](const PriceBar& a, const PriceBar& b) { return a.date < b.date; });
    const auto dup = std::adjacent_find(series.bars.begin(), series.bars.end(),
                                        [](const PriceBar& a, const PriceBar& b) { return a.date == b.date; });
    if (dup != series.bars.end()) {
        throw InvariantError(origin + ": duplicate date " + format_date(dup->date));
    }
    return series;
}

PriceSeries load_prices(const std::filesystem::path& path, std::string ticker) {
    return parse_prices(read_file(path), std::move(ticker), path.string());
}

std::string serialize_prices(const PriceSeries& series) {
    std::string out(kHeader);
    out += '\n';
    for (const auto& bar : series.bars) {
        out += format_date(bar.date) + "," + shortest(bar.open) + "," + shortest(bar.high) + "," +
               shortest(bar.low) + "," + shortest(bar.close) + "," + shortest(bar.close) + "," +
               std::to_string(bar.volume) + "\n";
    }
    return out;
}

PriceSeries fetch_prices(const Ticker& ticker, const TimeWindow& window, PriceTransport& transport) {
    return parse_prices(transport.fetch_prices(ticker, window), ticker.key(),
                        ticker.key() + "/prices");
}

PriceSeries up_to(const PriceSeries& series, Date last) {
    PriceSeries out{series.ticker, {}};
    for (const auto& bar : series.bars) {
        if (bar.date <= last) {
            out.bars.push_back(bar);
        }
    }
    return out;
}

PriceSeries tail_n(const PriceSeries& series, std::size_t n) {
    if (n < 1) {
        throw InvariantError("tail length must be at least 1");
    }
    const std::size_t keep = std::min(n, series.bars.size());
    PriceSeries out{series.ticker, {}};
    out.bars.assign(series.bars.end() - static_cast<std::ptrdiff_t>(keep), series.bars.end());
    return out;
}

double percent_change_open(const PriceSeries& series) {
    if (series.bars.size() < 2) {
        throw InsufficientData("percent change needs at least 2 bars for " + series.ticker + ", have " +
                               std::to_string(series.bars.size()));
    }
    const double first = series.bars.front().open;
    const double last = series.bars.back().open;
    return 100.0 * (last - first) / first;
}

std::pair<PriceSeries, PriceSeries> split_halves(const PriceSeries& series) {
    const auto n = series.bars.size();
    if (n < 2 || n % 2 != 0) {
        throw InsufficientData("split needs an even number of bars (>= 2) for " + series.ticker +
                               ", have " + std::to_string(n));
    }
    const auto mid = series.bars.begin() + static_cast<std::ptrdiff_t>(n / 2);
    return {PriceSeries{series.ticker, {series.bars.begin(), mid}},
            PriceSeries{series.ticker, {mid, series.bars.end()}}};
}

std::vector<DailyReturn> daily_open_returns(const PriceSeries& series) {
    if (series.bars.size() < 2) {
        throw InsufficientData("daily returns need at least 2 bars for " + series.ticker + ", have " +
                               std::to_string(series.bars.size()));
    }
    std::vector<double> opens;
    opens.reserve(series.bars.size());
    for (const auto& bar : series.bars) {
        opens.push_back(bar.open);
    }
    std::vector<double> pct(opens.size() - 1);
    kernels::open_returns(opens, pct);
    std::vector<DailyReturn> out;
    out.reserve(pct.size());
    for (std::size_t i = 0; i < pct.size(); ++i) {
        out.push_back({series.bars[i + 1].date, pct[i]});
    }
    return out;
}

}  // namespace esg
