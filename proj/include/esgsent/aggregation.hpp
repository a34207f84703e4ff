#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "esgsent/sentiment.hpp"

namespace esg {

enum class Affinity { Averse, Neutral, Affine };

std::string_view to_string(Affinity affinity);

struct AffinityThresholds {
    double affine_min = 0.15;
    double averse_max = -0.15;

    /// Throws InvariantError unless averse_max < 0 < affine_min.
    static AffinityThresholds make(double affine_min, double averse_max);
    /// Parses `AFFINE,AVERSE`, e.g. `0.15,-0.15`.
    static AffinityThresholds parse(std::string_view text);
};

struct TickerAggregate {
    std::string ticker;
    std::size_t n_docs = 0;
    double sum_composite = 0.0;
    double mean_composite = 0.0;
    Affinity classification = Affinity::Neutral;

    friend bool operator==(const TickerAggregate&, const TickerAggregate&) = default;
};

Affinity classify(double mean_composite, const AffinityThresholds& thresholds);
Affinity classify(const TickerAggregate& aggregate, const AffinityThresholds& thresholds);

/// One aggregate per ticker seen in `scored` plus every key in
/// `configured_tickers`, sorted by ticker. Composites are summed in
/// `scored_order` so the result does not depend on input order.
std::vector<TickerAggregate> aggregate_by_ticker(const std::vector<ScoredDocument>& scored,
                                                 const std::vector<std::string>& configured_tickers = {},
                                                 const AffinityThresholds& thresholds = {});

/// Ticker keys by mean composite, highest first; ties by key.
std::vector<std::string> rank_affinity(const std::vector<TickerAggregate>& aggregates);

/// CSV with header `ticker,n_docs,sum_composite,mean_composite,classification`.
std::string aggregates_csv(const std::vector<TickerAggregate>& aggregates);

}  // namespace esg
