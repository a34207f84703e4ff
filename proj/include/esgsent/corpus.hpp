#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esgsent/dates.hpp"

namespace esg {

class DocumentTransport;

/// A company tracked by the pipeline. `key` is the short uppercase symbol
/// (HSBC, TSLA, ...); the search query is derived from the display name.
class Ticker {
  public:
    /// Throws InvariantError if `key` is empty, not uppercase, or contains
    /// whitespace, or if `display_name` is empty.
    static Ticker make(std::string key, std::string display_name);

    [[nodiscard]] const std::string& key() const { return key_; }
    [[nodiscard]] const std::string& display_name() const { return display_name_; }
    [[nodiscard]] const std::string& query_label() const { return query_label_; }

    friend bool operator==(const Ticker&, const Ticker&) = default;

  private:
    Ticker() = default;
    std::string key_;
    std::string display_name_;
    std::string query_label_;
};

/// Returns the search query for a ticker, e.g. "ESG Investing HSBC".
std::string build_query(const Ticker& ticker);

/// True when `key` is a well-formed company key.
bool is_valid_ticker_key(std::string_view key);

enum class Source { Tweet, News };

std::string_view to_string(Source source);
/// Accepts "tweet" / "news". Throws SchemaError otherwise.
Source parse_source(std::string_view text);

/// Identity of a document across the pipeline.
struct DocumentKey {
    Source source = Source::Tweet;
    std::string id;

    friend auto operator<=>(const DocumentKey&, const DocumentKey&) = default;
};

/// One tweet or news article. Tweets score on `text`; for news, `text`
/// carries the article title.
struct Document {
    std::string id;
    Source source = Source::Tweet;
    Timestamp timestamp{};
    std::string ticker;
    std::string text;
    std::optional<std::string> author;
    std::optional<std::uint64_t> followers;
    std::optional<std::string> place;
    std::optional<std::string> url;
    std::optional<std::string> title;

    [[nodiscard]] DocumentKey key() const { return {source, id}; }

    friend bool operator==(const Document&, const Document&) = default;
};

/// Total order used for every sort in the pipeline: timestamp, then id,
/// then source, then ticker.
bool document_order(const Document& a, const Document& b);

struct ParseOptions {
    /// Reject unknown fields instead of warning about them.
    bool strict = false;
    /// Receives non-fatal diagnostics. May be empty.
    std::function<void(std::string_view)> warn;
};

/// Parses one corpus line. Throws SchemaError on malformed JSON, a missing
/// or mistyped field, empty text, or (strict mode) an unknown field.
Document parse_document_line(std::string_view line, const ParseOptions& options = {});

/// Serializes to one JSON line (no trailing newline) with fields in schema order.
std::string serialize_document(const Document& doc);

/// Removes repeated (source, id) keys. The survivor of each key is the
/// record that sorts first by `document_order`; survivors keep input order.
std::vector<Document> dedupe(std::vector<Document> docs);

/// Keeps documents whose UTC calendar date lies in the closed window.
std::vector<Document> filter_window(std::vector<Document> docs, const TimeWindow& window);

/// Pulls tweets and news for `ticker` from `transport`, keeps records for
/// this ticker inside `window`, and returns them sorted by `document_order`.
/// Throws TransportError or SchemaError.
std::vector<Document> fetch_documents(const Ticker& ticker, const TimeWindow& window,
                                      DocumentTransport& transport,
                                      const ParseOptions& options = {});

/// Reads a JSONL corpus. Blank lines are skipped. Errors carry the line number.
std::vector<Document> read_corpus(const std::string& path, const ParseOptions& options = {});
std::string serialize_corpus(const std::vector<Document>& docs);

}  // namespace esg
