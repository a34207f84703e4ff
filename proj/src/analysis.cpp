#include "esgsent/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "esgsent/error.hpp"
#include "esgsent/kernels.hpp"
#include "json.hpp"

namespace esg {

DailySentimentIndex daily_index(const std::vector<ScoredDocument>& scored, const std::string& ticker) {
    std::vector<const ScoredDocument*> mine;
    for (const auto& doc : scored) {
        if (doc.ticker == ticker) {
            mine.push_back(&doc);
        }
    }
    std::sort(mine.begin(), mine.end(),
              [](const ScoredDocument* a, const ScoredDocument* b) { return scored_order(*a, *b); });

    DailySentimentIndex index{ticker, {}};
    double sum = 0.0;
    for (const auto* doc : mine) {
        const Date day = utc_date(doc->timestamp);
        if (index.points.empty() || index.points.back().date != day) {
            if (!index.points.empty()) {
                auto& last = index.points.back();
                last.mean_composite = sum / static_cast<double>(last.n_docs);
            }
            index.points.push_back({day, 0.0, 0});
            sum = 0.0;
        }
        sum += doc->composite.value;
        index.points.back().n_docs += 1;
    }
    if (!index.points.empty()) {
        auto& last = index.points.back();
        last.mean_composite = sum / static_cast<double>(last.n_docs);
    }
    return index;
}

AlignedSeries align(const DailySentimentIndex& index, const std::vector<DailyReturn>& returns) {
    std::map<Date, double> by_date;
    for (const auto& r : returns) {
        by_date.emplace(r.date, r.percent);
    }
    std::vector<const DailyPoint*> points;
    for (const auto& p : index.points) {
        points.push_back(&p);
    }
    std::stable_sort(points.begin(), points.end(),
                     [](const DailyPoint* a, const DailyPoint* b) { return a->date < b->date; });
    AlignedSeries out;
    for (const auto* p : points) {
        if (auto it = by_date.find(p->date); it != by_date.end()) {
            if (!out.dates.empty() && out.dates.back() == p->date) {
                continue;
            }
            out.dates.push_back(p->date);
            out.sentiment.push_back(p->mean_composite);
            out.returns.push_back(it->second);
        }
    }
    return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InsufficientData("correlation inputs differ in length");
    }
    if (x.size() < kMinCorrelationDays) {
        throw InsufficientData("correlation needs at least 3 points, have " + std::to_string(x.size()));
    }
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
    };
    if (constant(x) || constant(y)) {
        throw DegenerateSeries("correlation input has zero variance");
    }
    const auto m = kernels::moments(x, y);
    if (m.sxx <= 0.0 || m.syy <= 0.0) {
        throw DegenerateSeries("correlation input has zero variance");
    }
    const double r = m.sxy / std::sqrt(m.sxx * m.syy);
    return std::clamp(r, -1.0, 1.0);
}

std::string_view to_string(SignAgreement agreement) {
    switch (agreement) {
        case SignAgreement::Concordant:
            return "Concordant";
        case SignAgreement::Discordant:
            return "Discordant";
        case SignAgreement::Indeterminate:
            return "Indeterminate";
    }
    return "Indeterminate";
}

SignAgreement sign_agreement(double mean_composite, double percent_change) {
    if (mean_composite == 0.0 || percent_change == 0.0 || std::isnan(mean_composite) ||
        std::isnan(percent_change)) {
        return SignAgreement::Indeterminate;
    }
    return (mean_composite > 0.0) == (percent_change > 0.0) ? SignAgreement::Concordant
                                                             : SignAgreement::Discordant;
}

AnalysisResult analyze(const std::vector<ScoredDocument>& scored, const PriceSeries& series,
                       const std::string& ticker, const AffinityThresholds& thresholds) {
    AnalysisResult result;
    result.ticker = ticker;
    result.percent_change = percent_change_open(series);

    std::vector<ScoredDocument> mine;
    std::copy_if(scored.begin(), scored.end(), std::back_inserter(mine),
                 [&](const ScoredDocument& d) { return d.ticker == ticker; });
    const auto aggregates = aggregate_by_ticker(mine, {ticker}, thresholds);
    const auto& agg = aggregates.front();
    result.n_docs = agg.n_docs;
    result.sum_composite = agg.sum_composite;
    result.mean_composite = agg.mean_composite;
    result.classification = agg.classification;

    result.index = daily_index(mine, ticker);
    const auto aligned = align(result.index, daily_open_returns(series));
    result.n_aligned_days = aligned.size();
    try {
        result.pearson_r = pearson(aligned.sentiment, aligned.returns);
    } catch (const InsufficientData&) {
    } catch (const DegenerateSeries&) {
    }

    if (series.size() % 2 == 0 && series.size() >= 4) {
        const auto [first, second] = split_halves(series);
        result.first_half_change = percent_change_open(first);
        result.second_half_change = percent_change_open(second);
    }
    result.sign_agreement = sign_agreement(result.mean_composite, result.percent_change);
    return result;
}

std::string analysis_json(const AnalysisResult& result) {
    using ordered_json = nlohmann::ordered_json;
    const auto opt = [](const std::optional<double>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    ordered_json obj;
    obj["ticker"] = result.ticker;
    obj["percent_change"] = result.percent_change;
    obj["n_docs"] = result.n_docs;
    obj["sum_composite"] = result.sum_composite;
    obj["mean_composite"] = result.mean_composite;
    obj["classification"] = std::string(to_string(result.classification));
    obj["pearson_r"] = opt(result.pearson_r);
    obj["n_aligned_days"] = result.n_aligned_days;
    obj["sign_agreement"] = std::string(to_string(result.sign_agreement));
    obj["first_half_change"] = opt(result.first_half_change);
    obj["second_half_change"] = opt(result.second_half_change);
    auto points = ordered_json::array();
    for (const auto& p : result.index.points) {
        ordered_json point;
        point["date"] = format_date(p.date);
        point["mean_composite"] = p.mean_composite;
        point["n_docs"] = p.n_docs;
        points.push_back(std::move(point));
    }
    obj["daily_index"] = std::move(points);
    return obj.dump(2) + "\n";
}

}  // namespace esg
