#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esgsent/dates.hpp"

namespace esg {

class PriceTransport;
class Ticker;

/// One trading day. Volume is validated and carried but enters no formula.
struct PriceBar {
    Date date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    std::uint64_t volume = 0;

    friend bool operator==(const PriceBar&, const PriceBar&) = default;
};

/// Throws InvariantError unless prices are positive and finite and
/// low <= open, close <= high.
void validate_bar(const PriceBar& bar);

/// Daily bars for one ticker, strictly increasing by date.
struct PriceSeries {
    std::string ticker;
    std::vector<PriceBar> bars;

    [[nodiscard]] std::size_t size() const { return bars.size(); }
    [[nodiscard]] bool empty() const { return bars.empty(); }

    friend bool operator==(const PriceSeries&, const PriceSeries&) = default;
};

/// Parses a Yahoo-compatible CSV (`Date,Open,High,Low,Close,Adj Close,Volume`).
/// Rows may arrive in any order; the result is sorted. Adj Close is ignored.
/// Throws SchemaError on malformed rows, InvariantError on bad bars or
/// repeated dates.
PriceSeries parse_prices(std::string_view csv, std::string ticker,
                         const std::string& origin = "prices");
PriceSeries load_prices(const std::filesystem::path& path, std::string ticker);

/// Writes the same CSV layout; Adj Close repeats Close.
std::string serialize_prices(const PriceSeries& series);

/// Pulls a CSV payload from `transport` and parses it.
PriceSeries fetch_prices(const Ticker& ticker, const TimeWindow& window, PriceTransport& transport);

/// Bars dated on or before `last`.
PriceSeries up_to(const PriceSeries& series, Date last);

/// Last min(n, size) bars. Throws InvariantError when n < 1.
PriceSeries tail_n(const PriceSeries& series, std::size_t n);

/// Percent change from the first bar's open to the last bar's open.
/// Throws InsufficientData with fewer than two bars.
double percent_change_open(const PriceSeries& series);

/// Splits an even-length series into equal halves.
/// Throws InsufficientData on odd length or fewer than two bars.
std::pair<PriceSeries, PriceSeries> split_halves(const PriceSeries& series);

struct DailyReturn {
    Date date;
    double percent = 0.0;

    friend bool operator==(const DailyReturn&, const DailyReturn&) = default;
};

/// Open-to-open percent returns, dated at the later bar.
/// Throws InsufficientData with fewer than two bars.
std::vector<DailyReturn> daily_open_returns(const PriceSeries& series);

}  // namespace esg
