#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "esgsent/corpus.hpp"

namespace esg {

enum class SentimentLabel { Positive, Neutral, Negative };

std::string_view to_string(SentimentLabel label);
/// Case-insensitive "positive" / "neutral" / "negative". Throws SchemaError.
SentimentLabel parse_label(std::string_view text);

/// +1, 0 or -1.
int weight(SentimentLabel label);

struct SentimentVerdict {
    SentimentLabel label = SentimentLabel::Neutral;
    double score = 0.0;

    /// Throws InvariantError unless 0 <= score <= 1.
    static SentimentVerdict make(SentimentLabel label, double score);

    friend bool operator==(const SentimentVerdict&, const SentimentVerdict&) = default;
};

/// Signed polarity, weight(label) * score, always in [-1, 1].
struct CompositeScore {
    double value = 0.0;
    friend bool operator==(const CompositeScore&, const CompositeScore&) = default;
};

CompositeScore composite(const SentimentVerdict& verdict);

/// Financial polarity word lists plus negators. Immutable once built.
class Lexicon {
  public:
    /// Throws InvariantError if a term is not lowercase, contains whitespace,
    /// or appears in both polarity sets.
    static Lexicon make(std::set<std::string> positive, std::set<std::string> negative,
                        std::set<std::string> negators);

    /// Loads positive.txt, negative.txt and negators.txt from `dir`.
    static Lexicon load(const std::filesystem::path& dir);

    /// The word lists shipped with the library.
    static const Lexicon& builtin();

    [[nodiscard]] bool is_positive(std::string_view token) const;
    [[nodiscard]] bool is_negative(std::string_view token) const;
    [[nodiscard]] bool is_negator(std::string_view token) const;

    [[nodiscard]] const std::set<std::string, std::less<>>& positive_terms() const { return positive_; }
    [[nodiscard]] const std::set<std::string, std::less<>>& negative_terms() const { return negative_; }
    [[nodiscard]] const std::set<std::string, std::less<>>& negators() const { return negators_; }

    /// Same lexicon with the polarity lists exchanged.
    [[nodiscard]] Lexicon swapped() const;

  private:
    Lexicon() = default;
    std::set<std::string, std::less<>> positive_;
    std::set<std::string, std::less<>> negative_;
    std::set<std::string, std::less<>> negators_;
};

/// Parses a lexicon word file: one term per line, '#' comments, blank lines
/// skipped. Throws SchemaError on uppercase or embedded whitespace.
std::set<std::string> parse_word_list(std::string_view content, const std::string& origin);

/// Lowercase word tokens. Drops URLs, @-mentions and bare punctuation, and
/// strips '#' from hashtags. Non-ASCII bytes are kept as word characters.
std::vector<std::string> tokenize(std::string_view text);

/// Number of preceding tokens searched for a negator.
inline constexpr std::size_t kNegationWindow = 3;

/// Counts lexicon hits, flipping a hit's polarity when a negator occurs in
/// the preceding window. Net polarity |p - n| / (p + n) becomes the score;
/// no hits or a tie gives (Neutral, 0).
SentimentVerdict score_tokens(const std::vector<std::string>& tokens, const Lexicon& lexicon);

/// Verdicts produced outside the pipeline (e.g. by a transformer model),
/// keyed by document. Rows from a three-column file (`id,label,score`) match
/// a document of either source.
class ExternalVerdicts {
  public:
    [[nodiscard]] std::optional<SentimentVerdict> find(const DocumentKey& key) const;
    [[nodiscard]] std::size_t size() const { return by_key_.size() + by_id_.size(); }
    [[nodiscard]] bool empty() const { return size() == 0; }

    void insert(DocumentKey key, SentimentVerdict verdict);
    void insert_any_source(std::string id, SentimentVerdict verdict);

  private:
    std::map<DocumentKey, SentimentVerdict> by_key_;
    std::map<std::string, SentimentVerdict, std::less<>> by_id_;
};

/// Parses the external verdict CSV. The header is `id,source,label,score`
/// or `id,label,score`. Throws SchemaError on an unknown label, a score
/// outside [0, 1], a duplicate row, or a malformed line.
ExternalVerdicts parse_external_verdicts(std::string_view csv, const std::string& origin = "verdicts");
ExternalVerdicts import_external_verdicts(const std::filesystem::path& path);

struct ScoredDocument {
    DocumentKey key;
    std::string ticker;
    Timestamp timestamp{};
    SentimentVerdict verdict;
    CompositeScore composite;

    friend bool operator==(const ScoredDocument&, const ScoredDocument&) = default;
};

bool scored_order(const ScoredDocument& a, const ScoredDocument& b);

/// Scores a single document on its text (news text is the article title).
SentimentVerdict score_document(const Document& doc, const Lexicon& lexicon);

/// One result per input document, in input order. An external verdict
/// replaces the lexicon verdict when one exists for the document.
std::vector<ScoredDocument> score_corpus(const std::vector<Document>& docs, const Lexicon& lexicon,
                                         const ExternalVerdicts* external = nullptr);

/// One JSON line: id, source, ticker, timestamp, label, score, composite.
std::string serialize_scored(const ScoredDocument& doc);
/// Throws SchemaError, including when composite disagrees with label * score.
ScoredDocument parse_scored_line(std::string_view line, const ParseOptions& options = {});
std::vector<ScoredDocument> read_scored(const std::string& path, const ParseOptions& options = {});

}  // namespace esg
