#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "esgsent/corpus.hpp"

namespace esg {

/// Source of raw document payloads. A payload is JSONL in the corpus schema.
class DocumentTransport {
  public:
    virtual ~DocumentTransport() = default;
    virtual std::string fetch(const Ticker& ticker, Source source, const TimeWindow& window) = 0;
};

/// Source of raw daily price payloads (Yahoo-compatible CSV).
class PriceTransport {
  public:
    virtual ~PriceTransport() = default;
    virtual std::string fetch_prices(const Ticker& ticker, const TimeWindow& window) = 0;
};

/// Reads recorded payloads from `<root>/<KEY>/{tweets.jsonl,news.jsonl,prices.csv}`.
/// A missing file is a TransportError. The window is not applied here.
class ReplayTransport final : public DocumentTransport, public PriceTransport {
  public:
    explicit ReplayTransport(std::filesystem::path root);

    std::string fetch(const Ticker& ticker, Source source, const TimeWindow& window) override;
    std::string fetch_prices(const Ticker& ticker, const TimeWindow& window) override;

    [[nodiscard]] std::filesystem::path document_path(const Ticker& ticker, Source source) const;
    [[nodiscard]] std::filesystem::path price_path(const Ticker& ticker) const;

  private:
    std::filesystem::path root_;
};

/// HTTP endpoints for live retrieval. Each URL is `http://host[:port]/path`;
/// the query string carries `q`, `ticker`, `start` and `end`. An empty URL
/// disables that source.
struct HttpEndpoints {
    std::string tweets;
    std::string news;
    std::string prices;
};

/// Plain GET against the configured endpoints. Any connection failure or
/// non-200 status is a TransportError.
class HttpTransport final : public DocumentTransport, public PriceTransport {
  public:
    explicit HttpTransport(HttpEndpoints endpoints, int timeout_seconds = 30);

    std::string fetch(const Ticker& ticker, Source source, const TimeWindow& window) override;
    std::string fetch_prices(const Ticker& ticker, const TimeWindow& window) override;

  private:
    std::string get(const std::string& url, const Ticker& ticker, const TimeWindow& window);

    HttpEndpoints endpoints_;
    int timeout_seconds_;
};

/// Forwards to another transport and writes every payload it returns into a
/// fixture tree readable by ReplayTransport.
class RecordingTransport final : public DocumentTransport, public PriceTransport {
  public:
    RecordingTransport(std::shared_ptr<DocumentTransport> documents,
                       std::shared_ptr<PriceTransport> prices, std::filesystem::path root);

    std::string fetch(const Ticker& ticker, Source source, const TimeWindow& window) override;
    std::string fetch_prices(const Ticker& ticker, const TimeWindow& window) override;

  private:
    std::shared_ptr<DocumentTransport> documents_;
    std::shared_ptr<PriceTransport> prices_;
    ReplayTransport layout_;
};

/// URL-encodes a query component (RFC 3986 unreserved set kept verbatim).
std::string url_encode(std::string_view text);

}  // namespace esg
