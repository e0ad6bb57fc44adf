#include "newsbias/text.hpp"

#include "newsbias/error.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

namespace newsbias {

namespace {

constexpr UChar32 kReplacement = 0xFFFD;

bool is_apostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }
bool is_hyphen(UChar32 c) { return c == 0x2D || c == 0x2010 || c == 0x2011; }
bool is_letter(UChar32 c) { return u_isalpha(c) != 0; }
bool is_mark(UChar32 c) {
    const auto mask = U_GET_GC_MASK(c);
    return (mask & U_GC_M_MASK) != 0;
}
bool is_digit(UChar32 c) { return u_isdigit(c) != 0; }
bool is_space(UChar32 c) {
    if (u_isUWhiteSpace(c)) return true;
    const auto type = u_charType(c);
    return type == U_CONTROL_CHAR || type == U_FORMAT_CHAR;
}

void append_utf8(std::string& out, UChar32 c) {
    char buf[U8_MAX_LENGTH];
    int32_t len = 0;
    UBool error = false;
    U8_APPEND(reinterpret_cast<uint8_t*>(buf), len, U8_MAX_LENGTH, c, error);
    if (error) {
        len = 0;
        U8_APPEND_UNSAFE(reinterpret_cast<uint8_t*>(buf), len, kReplacement);
    }
    out.append(buf, static_cast<std::size_t>(len));
}

// Decodes the whole input up front; tokenizing needs one code point of
// lookahead at word-internal apostrophes and number dots.
std::vector<UChar32> decode(std::string_view text) {
    std::vector<UChar32> out;
    out.reserve(text.size());
    const auto* s = reinterpret_cast<const uint8_t*>(text.data());
    const auto length = static_cast<int32_t>(text.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c = 0;
        U8_NEXT(s, i, length, c);
        out.push_back(c < 0 ? kReplacement : c);
    }
    return out;
}

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string ascii_lower(std::string s) {
    for (auto& ch : s)
        if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
    return s;
}

bool is_sentence_final(const Token& t) {
    return t.kind == TokenKind::punct &&
           (t.surface == "." || t.surface == "!" || t.surface == "?" || t.surface == "…");
}

bool is_closing(const Token& t) {
    if (t.kind != TokenKind::punct) return false;
    static const WordSet closers = {"\"", "'", ")", "]", "}", "”", "’", "»"};
    return closers.contains(t.surface);
}

// Rebuilds a stream from per-token decisions. `emit[i]` is the token that
// old index i contributes, if any. Sentence spans follow their tokens.
TokenStream rebuild(const TokenStream& in, std::vector<std::optional<Token>> emit) {
    TokenStream out;
    std::vector<std::size_t> start_of(in.tokens.size() + 1, 0);
    for (std::size_t i = 0; i < in.tokens.size(); ++i) {
        start_of[i] = out.tokens.size();
        if (emit[i]) out.tokens.push_back(std::move(*emit[i]));
    }
    start_of[in.tokens.size()] = out.tokens.size();
    for (const auto& s : in.sentences) {
        Span mapped{start_of[s.begin], start_of[s.end]};
        if (!mapped.empty()) out.sentences.push_back(mapped);
    }
    return out;
}

} // namespace

std::string_view marker_for(NameForm form) noexcept {
    switch (form) {
    case NameForm::full: return kMarkerFull;
    case NameForm::surname: return kMarkerSurname;
    case NameForm::given: return kMarkerGiven;
    }
    return kMarkerFull;
}

std::string_view to_string(NameForm form) noexcept {
    switch (form) {
    case NameForm::full: return "full";
    case NameForm::surname: return "surname";
    case NameForm::given: return "given";
    }
    return "full";
}

NameForm parse_name_form(std::string_view text) {
    if (text == "full") return NameForm::full;
    if (text == "surname") return NameForm::surname;
    if (text == "given") return NameForm::given;
    throw DataError("unknown name form '" + std::string(text) + "'");
}

const WordSet& default_gendered_signals() {
    static const WordSet words = {"he",        "him",       "his",      "himself",     "she",
                                  "her",       "hers",      "herself",  "mr",          "mrs",
                                  "ms",        "miss",      "madam",    "sir",         "spokesman",
                                  "spokeswoman", "chairman", "chairwoman"};
    return words;
}

const WordSet& default_abbreviations() {
    static const WordSet words = {"mr", "mrs", "ms", "dr", "st"};
    return words;
}

WordSet parse_word_list(std::string_view text) {
    WordSet out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto entry = trim(line);
        if (!entry.empty()) out.insert(ascii_lower(std::move(entry)));
    }
    return out;
}

WordSet load_word_list(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open word list " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_word_list(buf.str());
}

TokenStream tokenize(std::string_view text) {
    const auto cps = decode(text);
    const std::size_t n = cps.size();
    TokenStream out;

    std::size_t i = 0;
    while (i < n) {
        const UChar32 c = cps[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (is_letter(c)) {
            Token t{{}, TokenKind::word};
            while (i < n) {
                const UChar32 d = cps[i];
                if (is_letter(d) || is_mark(d)) {
                    append_utf8(t.surface, u_tolower(d));
                    ++i;
                } else if ((is_apostrophe(d) || is_hyphen(d)) && i + 1 < n && is_letter(cps[i + 1])) {
                    t.surface.push_back(is_apostrophe(d) ? '\'' : '-');
                    ++i;
                } else {
                    break;
                }
            }
            out.tokens.push_back(std::move(t));
            continue;
        }
        if (is_digit(c)) {
            Token t{{}, TokenKind::number};
            while (i < n) {
                const UChar32 d = cps[i];
                if (is_digit(d)) {
                    append_utf8(t.surface, d);
                    ++i;
                } else if (d == '.' && i + 1 < n && is_digit(cps[i + 1])) {
                    t.surface.push_back('.');
                    ++i;
                } else {
                    break;
                }
            }
            while (i < n && (is_letter(cps[i]) || is_mark(cps[i]))) {
                append_utf8(t.surface, u_tolower(cps[i]));
                ++i;
            }
            out.tokens.push_back(std::move(t));
            continue;
        }
        Token t{{}, TokenKind::punct};
        append_utf8(t.surface, c);
        out.tokens.push_back(std::move(t));
        ++i;
    }
    return out;
}

TokenStream split_sentences(TokenStream stream, const WordSet& abbreviations) {
    stream.sentences.clear();
    const auto& toks = stream.tokens;
    std::size_t begin = 0;
    std::size_t i = 0;
    while (i < toks.size()) {
        if (!is_sentence_final(toks[i])) {
            ++i;
            continue;
        }
        if (toks[i].surface == "." && i > 0 && toks[i - 1].kind == TokenKind::word) {
            const auto& prev = toks[i - 1].surface;
            const bool initial = prev.size() == 1;
            if (initial || abbreviations.contains(prev)) {
                ++i;
                continue;
            }
        }
        ++i;
        while (i < toks.size() && (is_sentence_final(toks[i]) || is_closing(toks[i]))) ++i;
        stream.sentences.push_back({begin, i});
        begin = i;
    }
    if (begin < toks.size()) stream.sentences.push_back({begin, toks.size()});
    return stream;
}

TokenStream mask_gender_signals(const TokenStream& stream, std::span<const NameMention> mentions,
                                const WordSet& gendered) {
    std::vector<NameMention> sorted(mentions.begin(), mentions.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const NameMention& a, const NameMention& b) { return a.span.begin < b.span.begin; });
    for (std::size_t m = 0; m < sorted.size(); ++m) {
        const auto& s = sorted[m].span;
        if (s.empty() || s.end > stream.tokens.size())
            throw InvariantError("mention span out of bounds");
        if (m > 0 && sorted[m - 1].span.end > s.begin)
            throw InvariantError("overlapping mention spans");
    }

    std::vector<std::optional<Token>> emit(stream.tokens.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
        if (next < sorted.size() && sorted[next].span.contains(i)) {
            if (i == sorted[next].span.begin)
                emit[i] = Token{std::string(marker_for(sorted[next].form)), TokenKind::marker};
            if (i + 1 == sorted[next].span.end) ++next;
            continue;
        }
        const auto& t = stream.tokens[i];
        if (t.kind == TokenKind::word && gendered.contains(t.surface)) continue;
        emit[i] = t;
    }
    return rebuild(stream, std::move(emit));
}

TokenStream remove_stopwords(const TokenStream& stream, const WordSet& stoplist) {
    std::vector<std::optional<Token>> emit(stream.tokens.size());
    for (std::size_t i = 0; i < stream.tokens.size(); ++i) {
        const auto& t = stream.tokens[i];
        if (t.kind == TokenKind::word && stoplist.contains(t.surface)) continue;
        emit[i] = t;
    }
    return rebuild(stream, std::move(emit));
}

TokenStream stem(const TokenStream& stream) {
    TokenStream out = stream;
    for (auto& t : out.tokens) {
        if (t.kind != TokenKind::word) continue;
        const bool plain = std::all_of(t.surface.begin(), t.surface.end(),
                                       [](char ch) { return ch >= 'a' && ch <= 'z'; });
        if (plain) t.surface = porter_stem(t.surface);
    }
    return out;
}

} // namespace newsbias
