#pragma once

#include "newsbias/text.hpp"

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace newsbias {

using Date = std::chrono::year_month_day;

/// Parses a strict ISO 8601 calendar date `YYYY-MM-DD`.
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// Classification target. `female` orders first and wins every tie.
enum class Gender { female = 0, male = 1 };

inline constexpr Gender kGenders[] = {Gender::female, Gender::male};

std::string_view to_string(Gender g) noexcept;
Gender parse_gender(std::string_view text);

struct Article {
    std::string id;
    std::string source;
    Date date{};
    std::string section;
    std::string headline;
    std::string body;

    friend bool operator==(const Article&, const Article&) = default;
};

/// Half-open calendar interval [start, end).
struct DateRange {
    Date start{};
    Date end{};
};

struct OfficeTerm {
    std::string portfolio;
    Date start{};
    Date end{};
};

struct PoliticianRecord {
    std::string id;
    Gender gender = Gender::female;
    std::string given_name;
    std::string surname;
    std::vector<std::string> extra_variants;
    std::vector<OfficeTerm> terms;
};

/// Validated politician records plus the name index used for matching.
class Registry {
public:
    Registry() = default;
    /// Throws DataError on empty names, duplicate ids, start >= end or
    /// overlapping terms within one record.
    explicit Registry(std::vector<PoliticianRecord> records);

    std::span<const PoliticianRecord> records() const noexcept { return records_; }
    const PoliticianRecord* find(std::string_view id) const;
    bool empty() const noexcept { return records_.empty(); }

    struct Variant {
        std::vector<std::string> tokens;
        NameForm form;
        std::size_t record;
    };
    /// Name variants keyed by their first token.
    const std::multimap<std::string, Variant>& variants() const noexcept { return variants_; }

private:
    std::vector<PoliticianRecord> records_;
    std::multimap<std::string, Variant> variants_;
};

std::vector<Article> load_articles(const std::filesystem::path& path);
std::vector<Article> parse_articles(std::istream& in);
void write_articles(std::ostream& out, std::span<const Article> articles);

Registry load_registry(const std::filesystem::path& path);
Registry parse_registry(std::string_view json_text);
std::string registry_to_json(const Registry& registry);

enum class TextField { headline, body };

/// One name occurrence. When several politicians share the matched
/// variant (two ministers named Lenihan), all of them are listed.
struct Mention {
    TextField field = TextField::body;
    Span span;
    NameForm form = NameForm::full;
    std::vector<std::string> politician_ids;
};

/// Tokenized headline and body, each split into sentences.
struct ArticleText {
    TokenStream headline;
    TokenStream body;
};

ArticleText analyze_text(const Article& article, const WordSet& abbreviations = default_abbreviations());

/// Scans a token stream left to right for registry name variants. At each
/// position the longest matching variant wins; the last token of a
/// variant also matches its possessive ("harney's"). Mentions come back in
/// text order and never overlap.
std::vector<Mention> find_mentions(const TokenStream& stream, TextField field, const Registry& registry);

struct PoliticianMatch {
    std::string politician_id;
    Gender gender = Gender::female;
    std::vector<Mention> mentions;
    bool headline_mention = false;
};

/// Politicians named in the headline or body, ordered by id.
std::vector<PoliticianMatch> match_politicians(const ArticleText& text, const Registry& registry);
std::vector<PoliticianMatch> match_politicians(const Article& article, const Registry& registry);

struct LabeledInstance {
    std::string article_id;
    Gender label = Gender::female;
    std::vector<std::string> politician_ids;
    bool headline_mention = false;
    std::string section;
    // Headline tokens followed by body tokens, masked.
    std::vector<Token> masked_tokens;
    std::vector<Span> masked_sentences;
};

struct LabelOptions {
    WordSet abbreviations = default_abbreviations();
    WordSet gendered = default_gendered_signals();
};

/// Headline and body as one stream (headline first) with every registry
/// mention masked.
TokenStream masked_document(const ArticleText& text, std::span<const PoliticianMatch> matches,
                            const WordSet& gendered = default_gendered_signals());

/// One instance per gender with at least one matched politician, in
/// article order, female before male.
std::vector<LabeledInstance> label_instances(std::span<const Article> articles, const Registry& registry,
                                             const LabelOptions& options = {});

inline constexpr double kDaysPerYear = 365.25;

/// Days of overlap between the record's terms and the window, in years.
/// When `portfolio` is set only terms with that portfolio count.
double years_in_office(const PoliticianRecord& record, const DateRange& window,
                       std::optional<std::string_view> portfolio = std::nullopt);

/// years_in_office summed over every record of one gender.
double group_years(const Registry& registry, Gender gender, const DateRange& window,
                   std::optional<std::string_view> portfolio = std::nullopt);

} // namespace newsbias
