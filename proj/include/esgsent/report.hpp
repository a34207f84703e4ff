#pragma once

#include <optional>
#include <string>
#include <vector>

#include "esgsent/aggregation.hpp"
#include "esgsent/analysis.hpp"
#include "esgsent/market.hpp"

namespace esg {

inline constexpr int kChartWidth = 800;
inline constexpr int kChartHeight = 400;

/// Candlestick chart on a fixed 800x400 viewBox, one `<g>` per trading day
/// in date order. Rising or flat days (close >= open) get class `up` and a
/// hollow body; falling days get class `down` and a filled body.
std::string render_candlestick_svg(const PriceSeries& series, const std::string& title);

struct SummaryRow {
    std::string ticker;
    std::size_t n_docs = 0;
    double mean_composite = 0.0;
    Affinity classification = Affinity::Neutral;
    /// Absent when the ticker lacked price data.
    std::optional<double> percent_change;
    SignAgreement sign_agreement = SignAgreement::Indeterminate;
};

/// Rows ordered by mean composite, highest first, ties by ticker.
std::vector<SummaryRow> summary_rows(const std::vector<TickerAggregate>& aggregates,
                                     const std::vector<AnalysisResult>& analyses);

/// CSV with header
/// `ticker,n_docs,mean_composite,classification,percent_change,sign_agreement`.
std::string summary_csv(const std::vector<SummaryRow>& rows);

}  // namespace esg
