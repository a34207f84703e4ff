#include "esgsent/sentiment.hpp"

#include <algorithm>
#include <cmath>

#include "esgsent/csv.hpp"
#include "esgsent/error.hpp"
#include "esgsent/fileio.hpp"
#include "esgsent/kernels.hpp"
#include "json.hpp"

namespace esg {

namespace detail {
// Generated from data/lexicon at build time.
extern const char* const kBuiltinPositive;
extern const char* const kBuiltinNegative;
extern const char* const kBuiltinNegators;
}  // namespace detail

std::string_view to_string(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::Positive:
            return "positive";
        case SentimentLabel::Neutral:
            return "neutral";
        case SentimentLabel::Negative:
            return "negative";
    }
    return "neutral";
}

SentimentLabel parse_label(std::string_view text) {
    std::string lower(csv::trim(text));
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "positive") {
        return SentimentLabel::Positive;
    }
    if (lower == "neutral") {
        return SentimentLabel::Neutral;
    }
    if (lower == "negative") {
        return SentimentLabel::Negative;
    }
    throw SchemaError("unknown sentiment label '" + std::string(text) + "'");
}

int weight(SentimentLabel label) {
    switch (label) {
        case SentimentLabel::Positive:
            return 1;
        case SentimentLabel::Neutral:
            return 0;
        case SentimentLabel::Negative:
            return -1;
    }
    return 0;
}

SentimentVerdict SentimentVerdict::make(SentimentLabel label, double score) {
    if (!(score >= 0.0 && score <= 1.0)) {
        throw InvariantError("sentiment score " + shortest(score) + " outside [0, 1]");
    }
    return SentimentVerdict{label, score};
}

CompositeScore composite(const SentimentVerdict& verdict) {
    return CompositeScore{static_cast<double>(weight(verdict.label)) * verdict.score + 0.0};
}

// Lexicon -------------------------------------------------------------------

namespace {

bool has_space_or_upper(std::string_view term) {
    return std::any_of(term.begin(), term.end(), [](unsigned char c) {
        return std::isspace(c) || (c >= 'A' && c <= 'Z');
    });
}

template <class Set>
void check_terms(const Set& terms, const char* what) {
    for (const auto& t : terms) {
        if (t.empty() || has_space_or_upper(t)) {
            throw InvariantError(std::string(what) + " term '" + t +
                                 "' must be non-empty lowercase without whitespace");
        }
    }
}

}  // namespace

Lexicon Lexicon::make(std::set<std::string> positive, std::set<std::string> negative,
                      std::set<std::string> negators) {
    check_terms(positive, "positive");
    check_terms(negative, "negative");
    check_terms(negators, "negator");
    for (const auto& t : positive) {
        if (negative.count(t) != 0) {
            throw InvariantError("term '" + t + "' is both positive and negative");
        }
    }
    Lexicon lex;
    lex.positive_.insert(positive.begin(), positive.end());
    lex.negative_.insert(negative.begin(), negative.end());
    lex.negators_.insert(negators.begin(), negators.end());
    return lex;
}

std::set<std::string> parse_word_list(std::string_view content, const std::string& origin) {
    std::set<std::string> words;
    std::size_t line_no = 0;
    for (auto line : csv::lines(content)) {
        ++line_no;
        const auto term = csv::trim(line);
        if (term.empty() || term.front() == '#') {
            continue;
        }
        if (has_space_or_upper(term)) {
            throw SchemaError(origin + ":" + std::to_string(line_no) + ": term '" +
                              std::string(term) + "' must be lowercase without whitespace");
        }
        words.emplace(term);
    }
    return words;
}

Lexicon Lexicon::load(const std::filesystem::path& dir) {
    auto list = [&](const char* name) {
        const auto path = dir / name;
        return parse_word_list(read_file(path), path.string());
    };
    return make(list("positive.txt"), list("negative.txt"), list("negators.txt"));
}

const Lexicon& Lexicon::builtin() {
    static const Lexicon lex = make(parse_word_list(detail::kBuiltinPositive, "builtin/positive"),
                                    parse_word_list(detail::kBuiltinNegative, "builtin/negative"),
                                    parse_word_list(detail::kBuiltinNegators, "builtin/negators"));
    return lex;
}

bool Lexicon::is_positive(std::string_view token) const { return positive_.find(token) != positive_.end(); }
bool Lexicon::is_negative(std::string_view token) const { return negative_.find(token) != negative_.end(); }
bool Lexicon::is_negator(std::string_view token) const { return negators_.find(token) != negators_.end(); }

Lexicon Lexicon::swapped() const {
    Lexicon lex;
    lex.positive_ = negative_;
    lex.negative_ = positive_;
    lex.negators_ = negators_;
    return lex;
}

// Tokenizer -----------------------------------------------------------------

namespace {

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80;
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.substr(0, prefix.size()) == prefix;
}

std::string normalize(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        // U+2018 / U+2019 curly apostrophes fold to ASCII.
        if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x80 &&
            (static_cast<unsigned char>(text[i + 2]) == 0x98 ||
             static_cast<unsigned char>(text[i + 2]) == 0x99)) {
            out += '\'';
            i += 2;
        } else if (c >= 'A' && c <= 'Z') {
            out += static_cast<char>(c - 'A' + 'a');
        } else {
            out += static_cast<char>(c);
        }
    }
    return out;
}

void emit_words(std::string_view chunk, std::vector<std::string>& out) {
    std::size_t i = 0;
    while (i < chunk.size()) {
        if (!is_word_byte(static_cast<unsigned char>(chunk[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < chunk.size()) {
            const auto c = static_cast<unsigned char>(chunk[j]);
            if (is_word_byte(c)) {
                ++j;
            } else if ((c == '\'' || c == '-') && j + 1 < chunk.size() &&
                       is_word_byte(static_cast<unsigned char>(chunk[j + 1]))) {
                j += 2;
            } else {
                break;
            }
        }
        out.emplace_back(chunk.substr(i, j - i));
        i = j;
    }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    const std::string lowered = normalize(text);
    std::vector<std::string> tokens;
    std::string_view rest = lowered;
    constexpr std::string_view ws = " \t\r\n\f\v";
    while (!rest.empty()) {
        const auto start = rest.find_first_not_of(ws);
        if (start == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(start);
        const auto end = std::min(rest.find_first_of(ws), rest.size());
        std::string_view chunk = rest.substr(0, end);
        rest.remove_prefix(end);

        // Leading brackets/quotes do not hide a URL or mention.
        while (!chunk.empty() && !is_word_byte(static_cast<unsigned char>(chunk.front())) &&
               chunk.front() != '#' && chunk.front() != '@') {
            chunk.remove_prefix(1);
        }
        if (starts_with(chunk, "http://") || starts_with(chunk, "https://") ||
            starts_with(chunk, "www.") || starts_with(chunk, "@")) {
            continue;
        }
        while (!chunk.empty() && chunk.front() == '#') {
            chunk.remove_prefix(1);
        }
        emit_words(chunk, tokens);
    }
    return tokens;
}

SentimentVerdict score_tokens(const std::vector<std::string>& tokens, const Lexicon& lexicon) {
    std::size_t positive = 0;
    std::size_t negative = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        int polarity = 0;
        if (lexicon.is_positive(tokens[i])) {
            polarity = 1;
        } else if (lexicon.is_negative(tokens[i])) {
            polarity = -1;
        } else {
            continue;
        }
        const std::size_t from = i >= kNegationWindow ? i - kNegationWindow : 0;
        for (std::size_t k = from; k < i; ++k) {
            if (lexicon.is_negator(tokens[k])) {
                polarity = -polarity;
                break;
            }
        }
        (polarity > 0 ? positive : negative) += 1;
    }
    if (positive == negative) {
        return SentimentVerdict{SentimentLabel::Neutral, 0.0};
    }
    const auto total = static_cast<double>(positive + negative);
    const auto margin = static_cast<double>(positive > negative ? positive - negative
                                                                 : negative - positive);
    return SentimentVerdict{positive > negative ? SentimentLabel::Positive
                                                : SentimentLabel::Negative,
                            margin / total};
}

// External verdicts ---------------------------------------------------------

std::optional<SentimentVerdict> ExternalVerdicts::find(const DocumentKey& key) const {
    if (auto it = by_key_.find(key); it != by_key_.end()) {
        return it->second;
    }
    if (auto it = by_id_.find(key.id); it != by_id_.end()) {
        return it->second;
    }
    return std::nullopt;
}

void ExternalVerdicts::insert(DocumentKey key, SentimentVerdict verdict) {
    const std::string id = key.id;
    if (!by_key_.emplace(std::move(key), verdict).second) {
        throw SchemaError("duplicate external verdict for '" + id + "'");
    }
}

void ExternalVerdicts::insert_any_source(std::string id, SentimentVerdict verdict) {
    if (!by_id_.emplace(id, verdict).second) {
        throw SchemaError("duplicate external verdict for '" + id + "'");
    }
}

ExternalVerdicts parse_external_verdicts(std::string_view csv_text, const std::string& origin) {
    const auto rows = csv::lines(csv_text);
    if (rows.empty()) {
        throw SchemaError(origin + ": missing header");
    }
    const auto header = csv::split_line(rows.front());
    const std::vector<std::string> four{"id", "source", "label", "score"};
    const std::vector<std::string> three{"id", "label", "score"};
    std::vector<std::string> normalized;
    for (const auto& h : header) {
        normalized.emplace_back(csv::trim(h));
    }
    const bool with_source = normalized == four;
    if (!with_source && normalized != three) {
        throw SchemaError(origin + ": header must be 'id,source,label,score' or 'id,label,score'");
    }

    ExternalVerdicts verdicts;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto where = origin + ":" + std::to_string(i + 1) + ": ";
        if (csv::trim(rows[i]).empty()) {
            continue;
        }
        try {
            const auto fields = csv::split_line(rows[i]);
            if (fields.size() != normalized.size()) {
                throw SchemaError("expected " + std::to_string(normalized.size()) + " fields, got " +
                                  std::to_string(fields.size()));
            }
            const std::string id(csv::trim(fields[0]));
            if (id.empty()) {
                throw SchemaError("empty id");
            }
            const auto label = parse_label(fields[with_source ? 2 : 1]);
            const std::string score_text(csv::trim(fields[with_source ? 3 : 2]));
            double score = 0.0;
            std::size_t used = 0;
            try {
                score = std::stod(score_text, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != score_text.size()) {
                throw SchemaError("score '" + score_text + "' is not a number");
            }
            if (!(score >= 0.0 && score <= 1.0)) {
                throw SchemaError("score " + score_text + " outside [0, 1]");
            }
            const SentimentVerdict verdict{label, score};
            if (with_source) {
                verdicts.insert(DocumentKey{parse_source(csv::trim(fields[1])), id}, verdict);
            } else {
                verdicts.insert_any_source(id, verdict);
            }
        } catch (const SchemaError& e) {
            throw SchemaError(where + e.what());
        }
    }
    return verdicts;
}

ExternalVerdicts import_external_verdicts(const std::filesystem::path& path) {
    return parse_external_verdicts(read_file(path), path.string());
}

// Scoring -------------------------------------------------------------------

bool scored_order(const ScoredDocument& a, const ScoredDocument& b) {
    return std::tie(a.timestamp, a.key.id, a.key.source, a.ticker) <
           std::tie(b.timestamp, b.key.id, b.key.source, b.ticker);
}

SentimentVerdict score_document(const Document& doc, const Lexicon& lexicon) {
    return score_tokens(tokenize(doc.text), lexicon);
}

std::vector<ScoredDocument> score_corpus(const std::vector<Document>& docs, const Lexicon& lexicon,
                                         const ExternalVerdicts* external) {
    std::vector<ScoredDocument> out;
    out.reserve(docs.size());
    std::vector<std::int8_t> weights;
    std::vector<double> scores;
    weights.reserve(docs.size());
    scores.reserve(docs.size());
    for (const auto& doc : docs) {
        std::optional<SentimentVerdict> verdict;
        if (external != nullptr) {
            verdict = external->find(doc.key());
        }
        if (!verdict) {
            verdict = score_document(doc, lexicon);
        }
        out.push_back(ScoredDocument{doc.key(), doc.ticker, doc.timestamp, *verdict, {}});
        weights.push_back(static_cast<std::int8_t>(weight(verdict->label)));
        scores.push_back(verdict->score);
    }
    std::vector<double> composites(out.size());
    kernels::composite_batch(weights, scores, composites);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].composite = CompositeScore{composites[i]};
    }
    return out;
}

// Scored JSONL --------------------------------------------------------------

namespace {

using json = nlohmann::json;

constexpr std::string_view kScoredFields[] = {"id",    "source", "ticker",   "timestamp",
                                              "label", "score",  "composite"};

const json& field(const json& obj, const char* name) {
    const auto it = obj.find(name);
    if (it == obj.end() || it->is_null()) {
        throw SchemaError(std::string("missing required field '") + name + "'");
    }
    return *it;
}

std::string string_field(const json& obj, const char* name) {
    const auto& v = field(obj, name);
    if (!v.is_string()) {
        throw SchemaError(std::string("field '") + name + "' must be a string");
    }
    return v.get<std::string>();
}

double number_field(const json& obj, const char* name) {
    const auto& v = field(obj, name);
    if (!v.is_number()) {
        throw SchemaError(std::string("field '") + name + "' must be a number");
    }
    return v.get<double>();
}

}  // namespace

std::string serialize_scored(const ScoredDocument& doc) {
    nlohmann::ordered_json obj;
    obj["id"] = doc.key.id;
    obj["source"] = std::string(to_string(doc.key.source));
    obj["ticker"] = doc.ticker;
    obj["timestamp"] = format_timestamp(doc.timestamp);
    obj["label"] = std::string(to_string(doc.verdict.label));
    obj["score"] = doc.verdict.score;
    obj["composite"] = doc.composite.value;
    return obj.dump();
}

ScoredDocument parse_scored_line(std::string_view line, const ParseOptions& options) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) {
        throw SchemaError("scored line must be a JSON object");
    }
    for (const auto& [name, value] : obj.items()) {
        if (std::find(std::begin(kScoredFields), std::end(kScoredFields), name) ==
            std::end(kScoredFields)) {
            if (options.strict) {
                throw SchemaError("unknown field '" + name + "'");
            }
            if (options.warn) {
                options.warn("ignoring unknown field '" + name + "'");
            }
        }
    }
    ScoredDocument doc;
    doc.key.id = string_field(obj, "id");
    if (doc.key.id.empty()) {
        throw SchemaError("field 'id' is empty");
    }
    doc.key.source = parse_source(string_field(obj, "source"));
    doc.ticker = string_field(obj, "ticker");
    if (!is_valid_ticker_key(doc.ticker)) {
        throw SchemaError("field 'ticker' is not a valid key: '" + doc.ticker + "'");
    }
    doc.timestamp = parse_timestamp(string_field(obj, "timestamp"));
    const auto label = parse_label(string_field(obj, "label"));
    const double score = number_field(obj, "score");
    if (!(score >= 0.0 && score <= 1.0)) {
        throw SchemaError("score outside [0, 1]");
    }
    doc.verdict = SentimentVerdict{label, score};
    doc.composite = CompositeScore{number_field(obj, "composite")};
    if (doc.composite != composite(doc.verdict)) {
        throw SchemaError("composite " + shortest(doc.composite.value) +
                          " disagrees with label weight times score for '" + doc.key.id + "'");
    }
    return doc;
}

std::vector<ScoredDocument> read_scored(const std::string& path, const ParseOptions& options) {
    std::vector<ScoredDocument> out;
    const std::string text = read_file(path);
    std::size_t line_no = 0;
    for (auto line : csv::lines(text)) {
        ++line_no;
        if (csv::trim(line).empty()) {
            continue;
        }
        try {
            out.push_back(parse_scored_line(line, options));
        } catch (const SchemaError& e) {
            throw SchemaError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace esg
