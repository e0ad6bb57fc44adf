#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace newsbias {

enum class TokenKind { word, number, punct, marker };

struct Token {
    std::string surface;
    TokenKind kind = TokenKind::word;

    friend bool operator==(const Token&, const Token&) = default;
};

/// Half-open token index range [begin, end).
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
    bool empty() const noexcept { return begin == end; }
    bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
    friend bool operator==(const Span&, const Span&) = default;
};

struct TokenStream {
    std::vector<Token> tokens;
    // Empty until split_sentences runs. Once set, the spans partition the
    // token indices in order.
    std::vector<Span> sentences;

    friend bool operator==(const TokenStream&, const TokenStream&) = default;
};

/// How a politician was named in the text.
enum class NameForm { full, surname, given };

/// Marker token surfaces that replace name mentions.
inline constexpr std::string_view kMarkerFull = "NAMEFORM_FULL";
inline constexpr std::string_view kMarkerSurname = "NAMEFORM_SURNAME";
inline constexpr std::string_view kMarkerGiven = "NAMEFORM_GIVEN";

std::string_view marker_for(NameForm form) noexcept;
std::string_view to_string(NameForm form) noexcept;
NameForm parse_name_form(std::string_view text);

/// A name mention to be replaced by one marker token.
struct NameMention {
    Span span;
    NameForm form = NameForm::full;
};

using WordSet = std::unordered_set<std::string>;

/// Pronouns and titles that reveal the gender of the person discussed.
const WordSet& default_gendered_signals();

/// Abbreviations whose trailing period does not end a sentence.
const WordSet& default_abbreviations();

/// Reads a one-entry-per-line list. Blank lines and `#` comments are
/// skipped; entries are trimmed and lowercased.
WordSet load_word_list(const std::filesystem::path& path);
WordSet parse_word_list(std::string_view text);

/// Splits UTF-8 text into lowercased words, number-words and punctuation.
///
/// Words are runs of Unicode letters (with combining marks), keeping
/// apostrophes and hyphens that sit between two letters; typographic
/// apostrophes and hyphens are normalized to ASCII. A number-word is a run
/// of digits with dots between digits and optional trailing letters
/// ("3.4bn"). Every other non-space code point is a punctuation token.
/// Invalid UTF-8 bytes become U+FFFD punctuation.
TokenStream tokenize(std::string_view text);

/// Sets sentence spans. A sentence ends after `.`, `!`, `?` or `…`, together
/// with any further terminal punctuation and closing quotes or brackets
/// that follow. A period after a listed abbreviation or a single-letter
/// word (an initial) does not end a sentence. Trailing tokens form a final
/// sentence.
TokenStream split_sentences(TokenStream stream, const WordSet& abbreviations = default_abbreviations());

/// Deletes gendered-signal word tokens and replaces each mention span with
/// its name-form marker. Sentence spans are re-indexed and sentences that
/// end up empty are dropped. Throws InvariantError when mentions overlap or
/// fall outside the stream.
TokenStream mask_gender_signals(const TokenStream& stream, std::span<const NameMention> mentions,
                                const WordSet& gendered = default_gendered_signals());

/// Drops word tokens found in the stoplist. Markers, numbers and
/// punctuation are kept.
TokenStream remove_stopwords(const TokenStream& stream, const WordSet& stoplist);

/// Replaces each plain a-z word token by its Porter stem. Words with
/// apostrophes, hyphens or non-ASCII letters are left as they are.
TokenStream stem(const TokenStream& stream);

/// The Porter (1980) suffix-stripping algorithm, following the reference
/// ANSI C release. Input must be lowercase ASCII; words of two letters or
/// fewer are returned unchanged.
std::string porter_stem(std::string_view word);

} // namespace newsbias
