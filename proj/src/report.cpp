#include "esgsent/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

#include "esgsent/fileio.hpp"

namespace esg {

namespace {

constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 40.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    return s == "-0.00" ? "0.00" : s;
}

std::string escape_xml(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_candlestick_svg(const PriceSeries& series, const std::string& title) {
    const double plot_w = kChartWidth - kLeft - kRight;
    const double plot_h = kChartHeight - kTop - kBottom;

    double lo = 0.0;
    double hi = 1.0;
    if (!series.bars.empty()) {
        lo = series.bars.front().low;
        hi = series.bars.front().high;
        for (const auto& b : series.bars) {
            lo = std::min(lo, b.low);
            hi = std::max(hi, b.high);
        }
    }
    if (hi - lo <= 0.0) {
        hi += 0.5;
        lo -= 0.5;
    }
    const auto y = [&](double price) { return kTop + (hi - price) / (hi - lo) * plot_h; };
    const double slot = series.bars.empty() ? plot_w : plot_w / static_cast<double>(series.bars.size());
    const double body_w = slot * 0.6;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 400\" width=\"800\" height=\"400\">\n";
    out += "<style>.wick{stroke:#444;stroke-width:1}.up .body{fill:none;stroke:#2e7d32;stroke-width:1.5}"
           ".down .body{fill:#c62828;stroke:#c62828;stroke-width:1.5}"
           ".axis{stroke:#999;stroke-width:1}text{font-family:sans-serif;font-size:12px;fill:#222}</style>\n";
    out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"#fff\"/>\n";
    out += "<text x=\"" + num(kLeft) + "\" y=\"24\" font-size=\"16\">" + escape_xml(title) + "</text>\n";
    out += "<line class=\"axis\" x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(kLeft) +
           "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
    out += "<line class=\"axis\" x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" +
           num(kLeft + plot_w) + "\" y2=\"" + num(kTop + plot_h) + "\"/>\n";
    out += "<text x=\"4\" y=\"" + num(y(hi) + 4) + "\">" + num(hi) + "</text>\n";
    out += "<text x=\"4\" y=\"" + num(y(lo) + 4) + "\">" + num(lo) + "</text>\n";
    if (!series.bars.empty()) {
        out += "<text x=\"" + num(kLeft) + "\" y=\"" + num(kChartHeight - 14) + "\">" +
               format_date(series.bars.front().date) + "</text>\n";
        out += "<text x=\"" + num(kLeft + plot_w) + "\" y=\"" + num(kChartHeight - 14) +
               "\" text-anchor=\"end\">" + format_date(series.bars.back().date) + "</text>\n";
    }

    for (std::size_t i = 0; i < series.bars.size(); ++i) {
        const auto& b = series.bars[i];
        const bool rising = b.close >= b.open;
        const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
        const double top = y(std::max(b.open, b.close));
        const double body_h = std::max(1.0, y(std::min(b.open, b.close)) - top);
        out += "<g class=\"candle " + std::string(rising ? "up" : "down") + "\" data-date=\"" +
               format_date(b.date) + "\" data-open=\"" + shortest(b.open) + "\" data-close=\"" +
               shortest(b.close) + "\" data-volume=\"" + std::to_string(b.volume) + "\">";
        out += "<line class=\"wick\" x1=\"" + num(cx) + "\" y1=\"" + num(y(b.high)) + "\" x2=\"" +
               num(cx) + "\" y2=\"" + num(y(b.low)) + "\"/>";
        out += "<rect class=\"body\" x=\"" + num(cx - body_w / 2) + "\" y=\"" + num(top) +
               "\" width=\"" + num(body_w) + "\" height=\"" + num(body_h) + "\"/>";
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

std::vector<SummaryRow> summary_rows(const std::vector<TickerAggregate>& aggregates,
                                     const std::vector<AnalysisResult>& analyses) {
    std::map<std::string, const AnalysisResult*> by_ticker;
    for (const auto& a : analyses) {
        by_ticker[a.ticker] = &a;
    }
    std::map<std::string, const TickerAggregate*> aggs;
    for (const auto& a : aggregates) {
        aggs[a.ticker] = &a;
    }
    std::vector<SummaryRow> rows;
    for (const auto& key : rank_affinity(aggregates)) {
        const auto& agg = *aggs.at(key);
        SummaryRow row{agg.ticker, agg.n_docs, agg.mean_composite, agg.classification, std::nullopt,
                       SignAgreement::Indeterminate};
        if (auto it = by_ticker.find(key); it != by_ticker.end()) {
            row.percent_change = it->second->percent_change;
            row.sign_agreement = it->second->sign_agreement;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "ticker,n_docs,mean_composite,classification,percent_change,sign_agreement\n";
    for (const auto& r : rows) {
        out += r.ticker + "," + std::to_string(r.n_docs) + "," + fixed6(r.mean_composite) + "," +
               std::string(to_string(r.classification)) + "," +
               (r.percent_change ? fixed6(*r.percent_change) : std::string()) + "," +
               std::string(to_string(r.sign_agreement)) + "\n";
    }
    return out;
}

}  // namespace esg
