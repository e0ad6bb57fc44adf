#pragma once

#include "newsbias/corpus.hpp"
#include "newsbias/features.hpp"
#include "newsbias/learn.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace newsbias {

struct RankedFeature {
    std::string surface;
    FeatureKind kind = FeatureKind::unigram;
    double weight = 0.0;
};

struct RankedFeatures {
    std::size_t k = 0;
    std::vector<RankedFeature> female;  // largest positive weight first
    std::vector<RankedFeature> male;    // most negative weight first
};

/// Top-k positive weights for female and top-k negative weights for male.
/// Zero weights never appear; equal weights keep feature-space order.
RankedFeatures rank_features(const LinearModel& model, const FeatureSpace& space, std::size_t k);

// ---------------------------------------------------------------------------
// Concordance

/// raw: the tokenized article text; masked: what the classifier sees.
enum class TextMode { raw, masked };
std::string_view to_string(TextMode m) noexcept;
TextMode parse_text_mode(std::string_view text);

/// One article prepared for concordance queries.
struct ConcordanceDoc {
    std::string article_id;
    std::vector<Token> tokens;  // headline then body
    // True for tokens in a sentence that names a registered politician.
    std::vector<bool> named_sentence;
    // Genders of the politicians the article features.
    std::array<bool, 2> groups{};
};

/// Documents ordered by article id.
std::vector<ConcordanceDoc> build_concordance_docs(std::span<const Article> articles, const Registry& registry,
                                                   TextMode mode, const LabelOptions& options = {});

struct ConcordanceLine {
    std::string article_id;
    std::size_t position = 0;
    std::vector<std::string> left;
    std::string keyword;
    std::vector<std::string> right;

    friend bool operator==(const ConcordanceLine&, const ConcordanceLine&) = default;
};

inline constexpr std::size_t kDefaultKwicWindow = 8;

struct KwicQuery {
    std::string term;
    std::size_t window = kDefaultKwicWindow;
    std::optional<Gender> group;
    bool require_cooccurrence = false;
};

/// Every occurrence of a single-token term with up to `window` tokens of
/// context on each side, ordered by (article id, position). A term that
/// tokenizes to more than one token is a ConfigError.
std::vector<ConcordanceLine> kwic(std::span<const ConcordanceDoc> docs, const KwicQuery& query);

/// Occurrences of the term in articles featuring the group.
std::size_t term_count(std::span<const ConcordanceDoc> docs, std::string_view term, Gender group);

/// Writes `article_id,position,left,keyword,right,tag`.
void write_kwic_csv(std::ostream& out, std::span<const ConcordanceLine> lines, std::string_view tag = {});

// ---------------------------------------------------------------------------
// Time-normalized rates

struct RateStat {
    std::string term;
    Gender group = Gender::female;
    std::size_t count = 0;
    double years = 0.0;
    double rate = 0.0;
};

/// count / years; years must be positive.
double rate(std::size_t count, double years);
RateStat make_rate_stat(std::string term, Gender group, std::size_t count, double years);

struct RateRatio {
    double value = 0.0;
    // Set when b has no occurrences; value is then +infinity.
    bool infinite = false;
};

RateRatio rate_ratio(const RateStat& a, const RateStat& b);

/// Writes `term,group,count,years,rate`.
void write_stats_csv(std::ostream& out, std::span<const RateStat> stats);

} // namespace newsbias
