#include "esgsent/corpus.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "esgsent/error.hpp"
#include "esgsent/fileio.hpp"
#include "esgsent/transport.hpp"
#include "json.hpp"

namespace esg {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kWhitespace = " \t\r\n\f\v";

bool is_blank(std::string_view text) {
    return text.find_first_not_of(kWhitespace) == std::string_view::npos;
}

std::string required_string(const json& obj, const char* field) {
    const auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) {
        throw SchemaError(std::string("missing required field '") + field + "'");
    }
    if (!it->is_string()) {
        throw SchemaError(std::string("field '") + field + "' must be a string");
    }
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* field) {
    const auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) {
        return std::nullopt;
    }
    if (!it->is_string()) {
        throw SchemaError(std::string("field '") + field + "' must be a string");
    }
    return it->get<std::string>();
}

constexpr std::string_view kKnownFields[] = {"id",     "source", "timestamp", "ticker",
                                             "text",   "author", "followers", "place",
                                             "url",    "title"};

}  // namespace

Ticker Ticker::make(std::string key, std::string display_name) {
    if (!is_valid_ticker_key(key)) {
        throw InvariantError("ticker key '" + key + "' must be non-empty uppercase without spaces");
    }
    if (is_blank(display_name)) {
        throw InvariantError("ticker '" + key + "' needs a display name");
    }
    Ticker t;
    t.key_ = std::move(key);
    t.display_name_ = std::move(display_name);
    t.query_label_ = "ESG Investing " + t.display_name_;
    return t;
}

std::string build_query(const Ticker& ticker) { return ticker.query_label(); }

bool is_valid_ticker_key(std::string_view key) {
    if (key.empty()) {
        return false;
    }
    return std::all_of(key.begin(), key.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '-' ||
               c == '^' || c == '=';
    });
}

std::string_view to_string(Source source) { return source == Source::Tweet ? "tweet" : "news"; }

Source parse_source(std::string_view text) {
    if (text == "tweet") {
        return Source::Tweet;
    }
    if (text == "news") {
        return Source::News;
    }
    throw SchemaError("unknown source '" + std::string(text) + "' (expected tweet|news)");
}

bool document_order(const Document& a, const Document& b) {
    return std::tie(a.timestamp, a.id, a.source, a.ticker) <
           std::tie(b.timestamp, b.id, b.source, b.ticker);
}

Document parse_document_line(std::string_view line, const ParseOptions& options) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) {
        throw SchemaError("corpus line must be a JSON object");
    }
    for (const auto& [name, value] : obj.items()) {
        const bool known = std::find(std::begin(kKnownFields), std::end(kKnownFields), name) !=
                           std::end(kKnownFields);
        if (!known) {
            if (options.strict) {
                throw SchemaError("unknown field '" + name + "'");
            }
            if (options.warn) {
                options.warn("ignoring unknown field '" + name + "'");
            }
        }
    }

    Document doc;
    doc.id = required_string(obj, "id");
    if (doc.id.empty()) {
        throw SchemaError("field 'id' is empty");
    }
    doc.source = parse_source(required_string(obj, "source"));
    doc.timestamp = parse_timestamp(required_string(obj, "timestamp"));
    doc.ticker = required_string(obj, "ticker");
    if (!is_valid_ticker_key(doc.ticker)) {
        throw SchemaError("field 'ticker' is not a valid key: '" + doc.ticker + "'");
    }
    doc.text = required_string(obj, "text");
    if (is_blank(doc.text)) {
        throw SchemaError("field 'text' is empty for document '" + doc.id + "'");
    }
    doc.author = optional_string(obj, "author");
    doc.place = optional_string(obj, "place");
    doc.url = optional_string(obj, "url");
    doc.title = optional_string(obj, "title");
    if (const auto it = obj.find("followers"); it != obj.end() && !it->is_null()) {
        if (!it->is_number_unsigned()) {
            throw SchemaError("field 'followers' must be a non-negative integer");
        }
        doc.followers = it->get<std::uint64_t>();
    }
    return doc;
}

std::string serialize_document(const Document& doc) {
    ordered_json obj;
    obj["id"] = doc.id;
    obj["source"] = std::string(to_string(doc.source));
    obj["timestamp"] = format_timestamp(doc.timestamp);
    obj["ticker"] = doc.ticker;
    obj["text"] = doc.text;
    if (doc.author) {
        obj["author"] = *doc.author;
    }
    if (doc.followers) {
        obj["followers"] = *doc.followers;
    }
    if (doc.place) {
        obj["place"] = *doc.place;
    }
    if (doc.url) {
        obj["url"] = *doc.url;
    }
    if (doc.title) {
        obj["title"] = *doc.title;
    }
    return obj.dump(-1, ' ', false, ordered_json::error_handler_t::strict);
}

std::vector<Document> dedupe(std::vector<Document> docs) {
    std::map<DocumentKey, std::size_t> winner;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto [it, inserted] = winner.try_emplace(docs[i].key(), i);
        if (!inserted && document_order(docs[i], docs[it->second])) {
            it->second = i;
        }
    }
    std::vector<bool> keep(docs.size(), false);
    for (const auto& [key, index] : winner) {
        keep[index] = true;
    }
    std::vector<Document> out;
    out.reserve(winner.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (keep[i]) {
            out.push_back(std::move(docs[i]));
        }
    }
    return out;
}

std::vector<Document> filter_window(std::vector<Document> docs, const TimeWindow& window) {
    std::erase_if(docs, [&](const Document& d) { return !window.contains(d.timestamp); });
    return docs;
}

namespace {

void parse_payload(std::string_view payload, const std::string& origin,
                   const ParseOptions& options, std::vector<Document>& out) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= payload.size()) {
        auto nl = payload.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = payload.size();
        }
        auto line = payload.substr(pos, nl - pos);
        ++line_no;
        pos = nl + 1;
        if (is_blank(line)) {
            continue;
        }
        try {
            out.push_back(parse_document_line(line, options));
        } catch (const SchemaError& e) {
            throw SchemaError(origin + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

}  // namespace

std::vector<Document> fetch_documents(const Ticker& ticker, const TimeWindow& window,
                                      DocumentTransport& transport, const ParseOptions& options) {
    std::vector<Document> docs;
    for (Source source : {Source::Tweet, Source::News}) {
        const auto payload = transport.fetch(ticker, source, window);
        parse_payload(payload, ticker.key() + "/" + std::string(to_string(source)), options, docs);
    }
    std::erase_if(docs, [&](const Document& d) {
        return d.ticker != ticker.key() || !window.contains(d.timestamp);
    });
    std::sort(docs.begin(), docs.end(), document_order);
    return docs;
}

std::vector<Document> read_corpus(const std::string& path, const ParseOptions& options) {
    std::vector<Document> docs;
    parse_payload(read_file(path), path, options, docs);
    return docs;
}

std::string serialize_corpus(const std::vector<Document>& docs) {
    std::string out;
    for (const auto& doc : docs) {
        out += serialize_document(doc);
        out += '\n';
    }
    return out;
}

}  // namespace esg
