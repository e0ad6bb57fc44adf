#pragma once

#include "newsbias/corpus.hpp"

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace newsbias {

/// Feature family. Each extraction scheme produces terms of its own kind.
enum class FeatureKind { unigram, adjective, verb, lexicon_category, section, nameform };
using Scheme = FeatureKind;

enum class Window { article, sentence };
enum class Representation { boolean, count, tfidf };

std::string_view to_string(FeatureKind k) noexcept;
std::string_view to_string(Window w) noexcept;
std::string_view to_string(Representation r) noexcept;
FeatureKind parse_scheme(std::string_view text);
Window parse_window(std::string_view text);
Representation parse_representation(std::string_view text);

struct Term {
    std::string surface;
    FeatureKind kind = FeatureKind::unigram;

    friend auto operator<=>(const Term& a, const Term& b) {
        if (const auto c = a.kind <=> b.kind; c != 0) return c;
        return a.surface.compare(b.surface) <=> 0;
    }
    friend bool operator==(const Term&, const Term&) = default;
};

/// Term multiset.
using TermBag = std::map<Term, int>;

/// Word categories such as the General Inquirer POWER and ACTIVE lists.
class LexiconSet {
public:
    LexiconSet() = default;
    explicit LexiconSet(std::string name) : name_(std::move(name)) {}

    void add(std::string_view word, std::string_view category);

    const std::string& name() const noexcept { return name_; }
    const std::map<std::string, std::set<std::string>>& categories() const noexcept { return categories_; }
    /// Categories containing the word, in name order.
    std::vector<std::string> categories_of(std::string_view word) const;

private:
    std::string name_;
    std::map<std::string, std::set<std::string>> categories_;
    std::map<std::string, std::set<std::string>, std::less<>> by_word_;
};

/// Lines `WORD<TAB>CAT1,CAT2,...`; `#` starts a comment. Words are
/// lowercased and categories uppercased. An empty category list or name
/// is a DataError.
LexiconSet load_lexicon(const std::filesystem::path& path);
LexiconSet parse_lexicon(std::string_view text, std::string name = "lexicon");

enum class PosTag { adj, verb, noun, other };
std::string_view to_string(PosTag t) noexcept;
PosTag parse_pos_tag(std::string_view text);

class PosLexicon {
public:
    struct Entry {
        PosTag primary = PosTag::other;
        std::set<PosTag> allowed;
    };

    void add(std::string_view word, PosTag primary, std::span<const PosTag> alternatives = {});
    const Entry* find(std::string_view word) const;
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<std::string, Entry, std::less<>> entries_;
};

/// Lines `word<TAB>PRIMARY<TAB>alt1,alt2`; the third column is optional.
PosLexicon load_pos_lexicon(const std::filesystem::path& path);
PosLexicon parse_pos_lexicon(std::string_view text);

/// Assigns one tag per token. Implementations may use context.
class PosTagger {
public:
    virtual ~PosTagger() = default;
    virtual std::vector<PosTag> tag(std::span<const Token> tokens) const = 0;
};

/// Context-free tagger: each word gets its primary lexicon tag, everything
/// else (unknown words included) is `other`.
class LexiconTagger final : public PosTagger {
public:
    explicit LexiconTagger(PosLexicon lexicon) : lexicon_(std::move(lexicon)) {}
    std::vector<PosTag> tag(std::span<const Token> tokens) const override;

private:
    PosLexicon lexicon_;
};

struct ExtractOptions {
    Window window = Window::article;
    const PosTagger* tagger = nullptr;
    std::span<const LexiconSet> lexicons;
};

/// Terms of one scheme from a labeled instance. With the sentence window
/// only sentences holding a name marker contribute (the section scheme
/// ignores the window). Throws ConfigError when the scheme's resource is
/// missing.
TermBag extract_terms(const LabeledInstance& instance, Scheme scheme, const ExtractOptions& options);

/// Indexed vocabulary with document frequencies. Immutable once built.
class FeatureSpace {
public:
    FeatureSpace() = default;
    FeatureSpace(std::vector<Term> entries, std::vector<int> doc_freq, std::size_t n_docs);

    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t n_docs() const noexcept { return n_docs_; }
    const Term& entry(std::uint32_t id) const { return entries_.at(id); }
    std::span<const Term> entries() const noexcept { return entries_; }
    int doc_freq(std::uint32_t id) const { return doc_freq_.at(id); }
    std::optional<std::uint32_t> find(const Term& term) const;

    friend bool operator==(const FeatureSpace&, const FeatureSpace&) = default;

private:
    std::vector<Term> entries_;
    std::vector<int> doc_freq_;
    std::map<Term, std::uint32_t> index_;
    std::size_t n_docs_ = 0;
};

inline constexpr int kDefaultMinDf = 3;

/// Keeps terms found in at least `min_df` documents, ordered by
/// (kind, surface). Throws DataError when nothing survives.
FeatureSpace build_space(std::span<const TermBag> docs, int min_df = kDefaultMinDf);

struct FeatureEntry {
    std::uint32_t id = 0;
    double value = 0.0;
    friend bool operator==(const FeatureEntry&, const FeatureEntry&) = default;
};

/// Sparse vector, ids strictly increasing, values > 0.
struct FeatureVector {
    std::vector<FeatureEntry> entries;
    Representation representation = Representation::boolean;
    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

/// boolean: 1 per present feature; count: raw count; tfidf: count times
/// ln(n_docs / doc_freq), natural log, no normalization or smoothing.
/// Terms outside the space are ignored and zero values are dropped.
FeatureVector vectorize(const TermBag& terms, const FeatureSpace& space, Representation representation);

} // namespace newsbias
