#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "esgsent/aggregation.hpp"
#include "esgsent/market.hpp"
#include "esgsent/sentiment.hpp"

namespace esg {

struct DailyPoint {
    Date date;
    double mean_composite = 0.0;
    std::size_t n_docs = 0;

    friend bool operator==(const DailyPoint&, const DailyPoint&) = default;
};

/// Per-day mean composite for one ticker. Days without documents are absent.
struct DailySentimentIndex {
    std::string ticker;
    std::vector<DailyPoint> points;
};

DailySentimentIndex daily_index(const std::vector<ScoredDocument>& scored, const std::string& ticker);

/// Sentiment and return values paired on identical dates.
struct AlignedSeries {
    std::vector<Date> dates;
    std::vector<double> sentiment;
    std::vector<double> returns;

    [[nodiscard]] std::size_t size() const { return dates.size(); }
};

/// Inner join on date, ordered by date.
AlignedSeries align(const DailySentimentIndex& index, const std::vector<DailyReturn>& returns);

inline constexpr std::size_t kMinCorrelationDays = 3;

/// Population Pearson correlation, clamped to [-1, 1].
/// Throws InsufficientData below three points (or on unequal lengths) and
/// DegenerateSeries when either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

enum class SignAgreement { Concordant, Discordant, Indeterminate };

std::string_view to_string(SignAgreement agreement);

SignAgreement sign_agreement(double mean_composite, double percent_change);

struct AnalysisResult {
    std::string ticker;
    double percent_change = 0.0;
    std::size_t n_docs = 0;
    double sum_composite = 0.0;
    double mean_composite = 0.0;
    Affinity classification = Affinity::Neutral;
    std::optional<double> pearson_r;
    std::size_t n_aligned_days = 0;
    SignAgreement sign_agreement = SignAgreement::Indeterminate;
    /// Opening-price change over each half of the window, when the series
    /// splits evenly.
    std::optional<double> first_half_change;
    std::optional<double> second_half_change;
    DailySentimentIndex index;
};

/// Full per-ticker analysis. An undefined correlation is reported as an
/// absent `pearson_r`. Throws InsufficientData only when the price series
/// has fewer than two bars.
AnalysisResult analyze(const std::vector<ScoredDocument>& scored, const PriceSeries& series,
                       const std::string& ticker, const AffinityThresholds& thresholds = {});

/// Pretty-printed JSON with every result field; absent values are null.
std::string analysis_json(const AnalysisResult& result);

}  // namespace esg
