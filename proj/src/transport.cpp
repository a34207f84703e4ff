#include "esgsent/transport.hpp"

#include "esgsent/error.hpp"
#include "esgsent/fileio.hpp"
#include "httplib.h"

namespace esg {

namespace fs = std::filesystem;

std::string url_encode(std::string_view text) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : text) {
        const bool unreserved = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                                (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' ||
                                c == '~';
        if (unreserved) {
            out += static_cast<char>(c);
        } else {
            out += '%';
            out += kHex[c >> 4];
            out += kHex[c & 0xF];
        }
    }
    return out;
}

// Replay --------------------------------------------------------------------

ReplayTransport::ReplayTransport(fs::path root) : root_(std::move(root)) {}

fs::path ReplayTransport::document_path(const Ticker& ticker, Source source) const {
    return root_ / ticker.key() / (source == Source::Tweet ? "tweets.jsonl" : "news.jsonl");
}

fs::path ReplayTransport::price_path(const Ticker& ticker) const {
    return root_ / ticker.key() / "prices.csv";
}

namespace {

std::string read_fixture(const fs::path& path) {
    if (!fs::is_regular_file(path)) {
        throw TransportError("fixture not found: '" + path.string() + "'");
    }
    try {
        return read_file(path);
    } catch (const IoError& e) {
        throw TransportError(e.what());
    }
}

}  // namespace

std::string ReplayTransport::fetch(const Ticker& ticker, Source source, const TimeWindow&) {
    return read_fixture(document_path(ticker, source));
}

std::string ReplayTransport::fetch_prices(const Ticker& ticker, const TimeWindow&) {
    return read_fixture(price_path(ticker));
}

// HTTP ----------------------------------------------------------------------

HttpTransport::HttpTransport(HttpEndpoints endpoints, int timeout_seconds)
    : endpoints_(std::move(endpoints)), timeout_seconds_(timeout_seconds) {}

std::string HttpTransport::get(const std::string& url, const Ticker& ticker,
                               const TimeWindow& window) {
    constexpr std::string_view kScheme = "http://";
    if (url.rfind(kScheme, 0) != 0) {
        throw TransportError("unsupported endpoint URL '" + url + "' (expected http://)");
    }
    const auto path_start = url.find('/', kScheme.size());
    const std::string host_port = url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);
    path += path.find('?') == std::string::npos ? '?' : '&';
    path += "q=" + url_encode(build_query(ticker));
    path += "&ticker=" + url_encode(ticker.key());
    path += "&start=" + format_date(window.start);
    path += "&end=" + format_date(window.end);

    httplib::Client client(host_port);
    client.set_connection_timeout(timeout_seconds_);
    client.set_read_timeout(timeout_seconds_);
    auto res = client.Get(path);
    if (!res) {
        throw TransportError("GET " + host_port + path + " failed: " +
                             httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw TransportError("GET " + host_port + path + " returned HTTP " +
                             std::to_string(res->status));
    }
    return res->body;
}

std::string HttpTransport::fetch(const Ticker& ticker, Source source, const TimeWindow& window) {
    const auto& url = source == Source::Tweet ? endpoints_.tweets : endpoints_.news;
    if (url.empty()) {
        return {};
    }
    return get(url, ticker, window);
}

std::string HttpTransport::fetch_prices(const Ticker& ticker, const TimeWindow& window) {
    if (endpoints_.prices.empty()) {
        throw TransportError("no price endpoint configured");
    }
    return get(endpoints_.prices, ticker, window);
}

// Recording -----------------------------------------------------------------

RecordingTransport::RecordingTransport(std::shared_ptr<DocumentTransport> documents,
                                       std::shared_ptr<PriceTransport> prices, fs::path root)
    : documents_(std::move(documents)), prices_(std::move(prices)), layout_(std::move(root)) {}

std::string RecordingTransport::fetch(const Ticker& ticker, Source source,
                                      const TimeWindow& window) {
    auto payload = documents_->fetch(ticker, source, window);
    write_file_atomic(layout_.document_path(ticker, source), payload);
    return payload;
}

std::string RecordingTransport::fetch_prices(const Ticker& ticker, const TimeWindow& window) {
    auto payload = prices_->fetch_prices(ticker, window);
    write_file_atomic(layout_.price_path(ticker), payload);
    return payload;
}

}  // namespace esg
