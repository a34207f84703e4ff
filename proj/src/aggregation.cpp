#include "esgsent/aggregation.hpp"

#include <algorithm>
#include <map>

#include "esgsent/csv.hpp"
#include "esgsent/error.hpp"
#include "esgsent/fileio.hpp"

namespace esg {

std::string_view to_string(Affinity affinity) {
    switch (affinity) {
        case Affinity::Averse:
            return "Averse";
        case Affinity::Neutral:
            return "Neutral";
        case Affinity::Affine:
            return "Affine";
    }
    return "Neutral";
}

AffinityThresholds AffinityThresholds::make(double affine_min, double averse_max) {
    if (!(averse_max < 0.0 && 0.0 < affine_min)) {
        throw InvariantError("thresholds need averse_max < 0 < affine_min, got " +
                             shortest(affine_min) + "," + shortest(averse_max));
    }
    return AffinityThresholds{affine_min, averse_max};
}

AffinityThresholds AffinityThresholds::parse(std::string_view text) {
    const auto fields = csv::split_line(text);
    if (fields.size() != 2) {
        throw SchemaError("thresholds must be AFFINE,AVERSE, got '" + std::string(text) + "'");
    }
    double values[2];
    for (int i = 0; i < 2; ++i) {
        const std::string field(csv::trim(fields[i]));
        std::size_t used = 0;
        try {
            values[i] = std::stod(field, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != field.size()) {
            throw SchemaError("threshold '" + field + "' is not a number");
        }
    }
    return make(values[0], values[1]);
}

Affinity classify(double mean_composite, const AffinityThresholds& thresholds) {
    if (mean_composite >= thresholds.affine_min) {
        return Affinity::Affine;
    }
    if (mean_composite <= thresholds.averse_max) {
        return Affinity::Averse;
    }
    return Affinity::Neutral;
}

Affinity classify(const TickerAggregate& aggregate, const AffinityThresholds& thresholds) {
    return classify(aggregate.mean_composite, thresholds);
}

std::vector<TickerAggregate> aggregate_by_ticker(const std::vector<ScoredDocument>& scored,
                                                 const std::vector<std::string>& configured_tickers,
                                                 const AffinityThresholds& thresholds) {
    std::vector<const ScoredDocument*> ordered;
    ordered.reserve(scored.size());
    for (const auto& doc : scored) {
        ordered.push_back(&doc);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const ScoredDocument* a, const ScoredDocument* b) { return scored_order(*a, *b); });

    std::map<std::string, TickerAggregate> by_ticker;
    for (const auto& key : configured_tickers) {
        by_ticker[key].ticker = key;
    }
    for (const auto* doc : ordered) {
        auto& agg = by_ticker[doc->ticker];
        agg.ticker = doc->ticker;
        agg.n_docs += 1;
        agg.sum_composite += doc->composite.value;
    }

    std::vector<TickerAggregate> out;
    out.reserve(by_ticker.size());
    for (auto& [key, agg] : by_ticker) {
        if (agg.n_docs > 0) {
            agg.mean_composite = agg.sum_composite / static_cast<double>(agg.n_docs);
        }
        agg.classification = classify(agg, thresholds);
        out.push_back(std::move(agg));
    }
    return out;
}

std::vector<std::string> rank_affinity(const std::vector<TickerAggregate>& aggregates) {
    std::vector<const TickerAggregate*> order;
    for (const auto& agg : aggregates) {
        order.push_back(&agg);
    }
    std::sort(order.begin(), order.end(), [](const TickerAggregate* a, const TickerAggregate* b) {
        if (a->mean_composite != b->mean_composite) {
            return a->mean_composite > b->mean_composite;
        }
        return a->ticker < b->ticker;
    });
    std::vector<std::string> keys;
    keys.reserve(order.size());
    for (const auto* agg : order) {
        keys.push_back(agg->ticker);
    }
    return keys;
}

std::string aggregates_csv(const std::vector<TickerAggregate>& aggregates) {
    std::string out = "ticker,n_docs,sum_composite,mean_composite,classification\n";
    for (const auto& agg : aggregates) {
        out += agg.ticker + "," + std::to_string(agg.n_docs) + "," + fixed6(agg.sum_composite) +
               "," + fixed6(agg.mean_composite) + "," + std::string(to_string(agg.classification)) +
               "\n";
    }
    return out;
}

}  // namespace esg
