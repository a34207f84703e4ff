#include <random>

#include "doctest.h"
#include "esgsent/analysis.hpp"
#include "esgsent/error.hpp"
#include "oracles.hpp"

using namespace esg;
using namespace std::chrono;

namespace {

ScoredDocument at(const std::string& id, const std::string& ts, double comp, const std::string& ticker = "GS") {
    ScoredDocument d;
    d.key = {Source::News, id};
    d.ticker = ticker;
    d.timestamp = parse_timestamp(ts);
    d.verdict = comp >= 0 ? SentimentVerdict{comp > 0 ? SentimentLabel::Positive : SentimentLabel::Neutral, comp}
                          : SentimentVerdict{SentimentLabel::Negative, -comp};
    d.composite = composite(d.verdict);
    return d;
}

PriceSeries rising(int n, const std::string& ticker = "GS") {
    PriceSeries s{ticker, {}};
    sys_days day{year{2022} / July / 1};
    for (int i = 0; i < n; ++i) {
        const double o = 100.0 + 2.0 * i + (i % 3 == 0 ? 1.0 : 0.0);
        s.bars.push_back({Date{day}, o, o + 1.5, o - 0.5, o + 1.0, 1000});
        day += days{1};
    }
    return s;
}

Date d(int day) { return year{2022} / July / day; }

}  // namespace

TEST_CASE("daily_index averages composites per UTC day") {
    const auto idx = daily_index({at("1", "2022-07-12T09:00:00Z", 1.0), at("2", "2022-07-12T23:59:59Z", -0.5),
                                  at("3", "2022-07-13T00:30:00+02:00", 0.4), at("4", "2022-07-12T10:00:00Z", 0.9, "HSBC")},
                                 "GS");
    CHECK(idx.ticker == "GS");
    REQUIRE(idx.points.size() == 1);
    CHECK(idx.points[0].date == d(12));
    CHECK(idx.points[0].n_docs == 3);
    CHECK(idx.points[0].mean_composite == doctest::Approx((1.0 - 0.5 + 0.4) / 3).epsilon(1e-15));

    const auto two = daily_index({at("1", "2022-07-12T09:00:00Z", 1.0), at("2", "2022-07-12T10:00:00Z", -0.5)}, "GS");
    CHECK(two.points[0].mean_composite == 0.25);

    CHECK(daily_index({}, "GS").points.empty());
    const auto one = daily_index({at("1", "2022-07-14T09:00:00Z", -0.3)}, "GS");
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].mean_composite == -0.3);
    CHECK(one.points[0].n_docs == 1);
}

TEST_CASE("property: per-day means recombine to the overall mean") {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ScoredDocument> docs;
        double total = 0;
        const int n = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) {
            const int day = 10 + static_cast<int>(rng() % 8);
            auto doc = at(std::to_string(i), "2022-07-" + std::to_string(day) + "T12:00:00Z", unit(rng));
            total += doc.composite.value;
            docs.push_back(doc);
        }
        const auto idx = daily_index(docs, "GS");
        double weighted = 0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < idx.points.size(); ++i) {
            if (i > 0) CHECK(idx.points[i - 1].date < idx.points[i].date);
            weighted += idx.points[i].mean_composite * static_cast<double>(idx.points[i].n_docs);
            count += idx.points[i].n_docs;
        }
        CHECK(count == docs.size());
        CHECK(weighted / count == doctest::Approx(total / n).epsilon(1e-9));
    }
}

TEST_CASE("align is an inner join on dates") {
    DailySentimentIndex idx{"GS", {{d(11), 0.5, 1}, {d(12), -0.2, 2}, {d(14), 0.1, 1}}};
    const std::vector<DailyReturn> returns{{d(12), 1.5}, {d(13), -2.0}, {d(14), 0.7}, {d(15), 0.3}};
    const auto a = align(idx, returns);
    CHECK(a.dates == std::vector<Date>{d(12), d(14)});
    CHECK(a.sentiment == std::vector<double>{-0.2, 0.1});
    CHECK(a.returns == std::vector<double>{1.5, 0.7});

    CHECK(align({"GS", {}}, returns).size() == 0);
    CHECK(align(idx, {}).size() == 0);
    CHECK(align(idx, {{d(1), 1.0}}).size() == 0);
}

TEST_CASE("property: aligned length is bounded by both inputs") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        DailySentimentIndex idx{"GS", {}};
        std::vector<DailyReturn> returns;
        for (int day = 1; day <= 28; ++day) {
            if (rng() % 2) idx.points.push_back({d(day), 0.1, 1});
            if (rng() % 2) returns.push_back({d(day), 0.2});
        }
        const auto a = align(idx, returns);
        CHECK(a.size() <= idx.points.size());
        CHECK(a.size() <= returns.size());
        CHECK(a.sentiment.size() == a.size());
        CHECK(a.returns.size() == a.size());
    }
}

TEST_CASE("pearson examples") {
    const std::vector<double> x{1, 2, 3};
    CHECK(pearson(x, std::vector<double>{2, 4, 6}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pearson(x, std::vector<double>{6, 4, 2}) == doctest::Approx(-1.0).epsilon(1e-15));
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> b{1, 3, 2, 5};
    const double r = pearson(a, b);
    CHECK(std::abs(r - esg::test::definitional_pearson(a, b)) <= 1e-12);
    // cov = 1.375, var_a = 1.25, var_b = 2.1875
    CHECK(std::abs(r - 1.375 / std::sqrt(1.25 * 2.1875)) <= 1e-12);
}

TEST_CASE("pearson errors") {
    const std::vector<double> two{1, 2};
    CHECK_THROWS_AS(pearson(two, two), InsufficientData);
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), InsufficientData);
    CHECK_THROWS_AS(pearson(std::vector<double>{5, 5, 5}, std::vector<double>{1, 2, 3}), DegenerateSeries);
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{0, 0, 0}), DegenerateSeries);
}

TEST_CASE("property: pearson matches the definition and its symmetries") {
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + rng() % 48;
        const auto x = esg::test::random_series(rng, n, -5.0, 5.0);
        const auto y = esg::test::random_series(rng, n, -50.0, 50.0);
        const double r = pearson(x, y);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
        CHECK(std::abs(r - esg::test::definitional_pearson(x, y)) <= 1e-12);
        CHECK(std::abs(pearson(y, x) - r) <= 1e-9);

        std::uniform_real_distribution<double> coef(0.1, 10.0);
        const double a = coef(rng);
        const double c = coef(rng);
        const double b = coef(rng) - 5.0;
        std::vector<double> ax(n);
        std::vector<double> cy(n);
        std::vector<double> neg(n);
        for (std::size_t i = 0; i < n; ++i) {
            ax[i] = a * x[i] + b;
            cy[i] = c * y[i] - b;
            neg[i] = -a * x[i] + b;
        }
        CHECK(std::abs(pearson(ax, cy) - r) <= 1e-9);
        CHECK(std::abs(pearson(neg, y) + r) <= 1e-9);
        CHECK(std::abs(pearson(x, x) - 1.0) <= 1e-9);
    }
}

TEST_CASE("sign_agreement") {
    CHECK(sign_agreement(0.4, 3.0) == SignAgreement::Concordant);
    CHECK(sign_agreement(-0.4, -3.0) == SignAgreement::Concordant);
    CHECK(sign_agreement(0.4, -3.0) == SignAgreement::Discordant);
    CHECK(sign_agreement(-0.1, 2.0) == SignAgreement::Discordant);
    CHECK(sign_agreement(0.0, 2.0) == SignAgreement::Indeterminate);
    CHECK(sign_agreement(0.3, 0.0) == SignAgreement::Indeterminate);
    CHECK(to_string(SignAgreement::Concordant) == "Concordant");
}

TEST_CASE("analyze with positive documents on a rising series") {
    std::vector<ScoredDocument> docs;
    const double comps[] = {0.2, 0.9, 0.5, 0.7, 0.3, 0.8};
    for (int i = 0; i < 6; ++i) {
        docs.push_back(at(std::to_string(i), "2022-07-0" + std::to_string(2 + i) + "T15:00:00Z", comps[i]));
    }
    const auto result = analyze(docs, rising(10), "GS");
    CHECK(result.ticker == "GS");
    CHECK(result.n_docs == 6);
    CHECK(result.percent_change > 0);
    CHECK(result.sign_agreement == SignAgreement::Concordant);
    CHECK(result.classification == Affinity::Affine);
    CHECK(result.n_aligned_days == 6);
    REQUIRE(result.pearson_r.has_value());
    CHECK(*result.pearson_r >= -1.0);
    CHECK(*result.pearson_r <= 1.0);
    REQUIRE(result.first_half_change.has_value());
    CHECK(*result.first_half_change > 0);
    CHECK(result.index.points.size() == 6);
}

TEST_CASE("analyze without enough overlap leaves pearson absent") {
    const auto result = analyze({at("1", "2022-07-02T15:00:00Z", 0.5), at("2", "2022-07-03T15:00:00Z", -0.2)},
                                rising(10), "GS");
    CHECK(result.n_aligned_days == 2);
    CHECK_FALSE(result.pearson_r.has_value());

    const auto empty = analyze({}, rising(5), "GS");
    CHECK(empty.n_docs == 0);
    CHECK(empty.mean_composite == 0.0);
    CHECK(empty.sign_agreement == SignAgreement::Indeterminate);
    CHECK(empty.classification == Affinity::Neutral);
    CHECK_FALSE(empty.first_half_change.has_value());

    CHECK_THROWS_AS(analyze({}, rising(1), "GS"), InsufficientData);
}

TEST_CASE("analysis_json encodes absent values as null") {
    const auto json = analysis_json(analyze({}, rising(3), "GS"));
    CHECK(json.find("\"pearson_r\": null") != std::string::npos);
    CHECK(json.find("\"ticker\": \"GS\"") != std::string::npos);
    CHECK(json.find("\"sign_agreement\": \"Indeterminate\"") != std::string::npos);
}
