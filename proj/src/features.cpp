#include "newsbias/features.hpp"

#include "newsbias/error.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace newsbias {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string ascii_lower(std::string s) {
    for (auto& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

std::string ascii_upper(std::string s) {
    for (auto& c : s)
        if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
    return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string read_file(const std::filesystem::path& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(std::string("cannot open ") + what + " " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string strip_comment(std::string line) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

std::string_view to_string(FeatureKind k) noexcept {
    switch (k) {
    case FeatureKind::unigram: return "unigram";
    case FeatureKind::adjective: return "adjective";
    case FeatureKind::verb: return "verb";
    case FeatureKind::lexicon_category: return "lexicon_category";
    case FeatureKind::section: return "section";
    case FeatureKind::nameform: return "nameform";
    }
    return "unigram";
}

std::string_view to_string(Window w) noexcept { return w == Window::article ? "article" : "sentence"; }

std::string_view to_string(Representation r) noexcept {
    switch (r) {
    case Representation::boolean: return "boolean";
    case Representation::count: return "count";
    case Representation::tfidf: return "tfidf";
    }
    return "boolean";
}

FeatureKind parse_scheme(std::string_view text) {
    for (const auto k : {FeatureKind::unigram, FeatureKind::adjective, FeatureKind::verb, FeatureKind::lexicon_category,
                         FeatureKind::section, FeatureKind::nameform})
        if (text == to_string(k)) return k;
    throw ConfigError("unknown feature scheme '" + std::string(text) + "'");
}

Window parse_window(std::string_view text) {
    if (text == "article") return Window::article;
    if (text == "sentence") return Window::sentence;
    throw ConfigError("unknown window '" + std::string(text) + "', expected article or sentence");
}

Representation parse_representation(std::string_view text) {
    if (text == "boolean") return Representation::boolean;
    if (text == "count" || text == "bag-of-words") return Representation::count;
    if (text == "tfidf" || text == "tf-idf") return Representation::tfidf;
    throw ConfigError("unknown representation '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Lexicons

void LexiconSet::add(std::string_view word, std::string_view category) {
    auto w = ascii_lower(trim(word));
    auto c = ascii_upper(trim(category));
    if (w.empty()) throw DataError("empty lexicon word");
    if (c.empty()) throw DataError("empty category for lexicon word '" + w + "'");
    categories_[c].insert(w);
    by_word_[w].insert(std::move(c));
}

std::vector<std::string> LexiconSet::categories_of(std::string_view word) const {
    const auto it = by_word_.find(word);
    if (it == by_word_.end()) return {};
    return {it->second.begin(), it->second.end()};
}

LexiconSet parse_lexicon(std::string_view text, std::string name) {
    LexiconSet out(std::move(name));
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(std::move(line));
        if (trim(line).empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError("lexicon line " + std::to_string(lineno) + ": expected WORD<TAB>CATEGORIES");
        const auto word = line.substr(0, tab);
        for (const auto& cat : split(std::string_view(line).substr(tab + 1), ',')) {
            if (cat.empty())
                throw DataError("lexicon line " + std::to_string(lineno) + ": empty category for '" + trim(word) + "'");
            out.add(word, cat);
        }
    }
    return out;
}

LexiconSet load_lexicon(const std::filesystem::path& path) {
    return parse_lexicon(read_file(path, "lexicon"), path.stem().string());
}

std::string_view to_string(PosTag t) noexcept {
    switch (t) {
    case PosTag::adj: return "ADJ";
    case PosTag::verb: return "VERB";
    case PosTag::noun: return "NOUN";
    case PosTag::other: return "OTHER";
    }
    return "OTHER";
}

PosTag parse_pos_tag(std::string_view text) {
    const auto t = ascii_upper(trim(text));
    if (t == "ADJ") return PosTag::adj;
    if (t == "VERB") return PosTag::verb;
    if (t == "NOUN") return PosTag::noun;
    if (t == "OTHER") return PosTag::other;
    throw DataError("unknown POS tag '" + std::string(text) + "'");
}

void PosLexicon::add(std::string_view word, PosTag primary, std::span<const PosTag> alternatives) {
    auto& e = entries_[ascii_lower(trim(word))];
    e.primary = primary;
    e.allowed.insert(primary);
    e.allowed.insert(alternatives.begin(), alternatives.end());
}

const PosLexicon::Entry* PosLexicon::find(std::string_view word) const {
    const auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
}

PosLexicon parse_pos_lexicon(std::string_view text) {
    PosLexicon out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_comment(std::move(line));
        if (trim(line).empty()) continue;
        const auto cols = split(line, '\t');
        if (cols.size() < 2 || cols[0].empty())
            throw DataError("POS lexicon line " + std::to_string(lineno) + ": expected word<TAB>TAG");
        std::vector<PosTag> alts;
        if (cols.size() > 2)
            for (const auto& a : split(cols[2], ','))
                if (!a.empty()) alts.push_back(parse_pos_tag(a));
        out.add(cols[0], parse_pos_tag(cols[1]), alts);
    }
    return out;
}

PosLexicon load_pos_lexicon(const std::filesystem::path& path) {
    return parse_pos_lexicon(read_file(path, "POS lexicon"));
}

std::vector<PosTag> LexiconTagger::tag(std::span<const Token> tokens) const {
    std::vector<PosTag> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        const auto* e = t.kind == TokenKind::word ? lexicon_.find(t.surface) : nullptr;
        out.push_back(e ? e->primary : PosTag::other);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Term extraction

TermBag extract_terms(const LabeledInstance& instance, Scheme scheme, const ExtractOptions& options) {
    TermBag bag;
    const auto& toks = instance.masked_tokens;

    if (scheme == FeatureKind::section) {
        auto section = ascii_lower(trim(instance.section));
        if (!section.empty()) bag[{std::move(section), FeatureKind::section}] = 1;
        return bag;
    }

    std::vector<bool> active(toks.size(), options.window == Window::article);
    if (options.window == Window::sentence) {
        for (const auto& s : instance.masked_sentences) {
            if (s.end > toks.size()) throw InvariantError("sentence span outside token stream");
            const bool named = std::any_of(toks.begin() + static_cast<std::ptrdiff_t>(s.begin),
                                           toks.begin() + static_cast<std::ptrdiff_t>(s.end),
                                           [](const Token& t) { return t.kind == TokenKind::marker; });
            if (named) std::fill(active.begin() + static_cast<std::ptrdiff_t>(s.begin),
                                 active.begin() + static_cast<std::ptrdiff_t>(s.end), true);
        }
    }

    switch (scheme) {
    case FeatureKind::unigram:
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (active[i] && (toks[i].kind == TokenKind::word || toks[i].kind == TokenKind::marker))
                ++bag[{toks[i].surface, FeatureKind::unigram}];
        break;
    case FeatureKind::adjective:
    case FeatureKind::verb: {
        if (options.tagger == nullptr)
            throw ConfigError(std::string("scheme ") + std::string(to_string(scheme)) + " needs a POS lexicon");
        const auto tags = options.tagger->tag(toks);
        const auto wanted = scheme == FeatureKind::adjective ? PosTag::adj : PosTag::verb;
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (active[i] && toks[i].kind == TokenKind::word && tags[i] == wanted) ++bag[{toks[i].surface, scheme}];
        break;
    }
    case FeatureKind::lexicon_category:
        if (options.lexicons.empty()) throw ConfigError("scheme lexicon_category needs at least one lexicon");
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (!active[i] || toks[i].kind != TokenKind::word) continue;
            for (const auto& lex : options.lexicons)
                for (auto& cat : lex.categories_of(toks[i].surface))
                    ++bag[{std::move(cat), FeatureKind::lexicon_category}];
        }
        break;
    case FeatureKind::nameform:
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (active[i] && toks[i].kind == TokenKind::marker) ++bag[{toks[i].surface, FeatureKind::nameform}];
        break;
    case FeatureKind::section:
        break;
    }
    return bag;
}

// ---------------------------------------------------------------------------
// Spaces and vectors

FeatureSpace::FeatureSpace(std::vector<Term> entries, std::vector<int> doc_freq, std::size_t n_docs)
    : entries_(std::move(entries)), doc_freq_(std::move(doc_freq)), n_docs_(n_docs) {
    if (entries_.size() != doc_freq_.size()) throw InvariantError("feature space: entry/doc_freq size mismatch");
    for (std::uint32_t id = 0; id < entries_.size(); ++id) {
        if (doc_freq_[id] < 1 || static_cast<std::size_t>(doc_freq_[id]) > n_docs_)
            throw InvariantError("feature space: document frequency out of range");
        if (!index_.emplace(entries_[id], id).second) throw InvariantError("feature space: duplicate term");
    }
}

std::optional<std::uint32_t> FeatureSpace::find(const Term& term) const {
    const auto it = index_.find(term);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

FeatureSpace build_space(std::span<const TermBag> docs, int min_df) {
    if (min_df < 1) throw ConfigError("min_df must be at least 1");
    std::map<Term, int> df;
    for (const auto& bag : docs)
        for (const auto& [term, count] : bag)
            if (count > 0) ++df[term];
    std::vector<Term> entries;
    std::vector<int> freq;
    for (const auto& [term, n] : df)
        if (n >= min_df) {
            entries.push_back(term);
            freq.push_back(n);
        }
    if (entries.empty()) throw DataError("no features survive min_df=" + std::to_string(min_df));
    return FeatureSpace(std::move(entries), std::move(freq), docs.size());
}

FeatureVector vectorize(const TermBag& terms, const FeatureSpace& space, Representation representation) {
    FeatureVector out;
    out.representation = representation;
    for (const auto& [term, count] : terms) {
        if (count <= 0) continue;
        const auto id = space.find(term);
        if (!id) continue;
        double value = 0.0;
        switch (representation) {
        case Representation::boolean: value = 1.0; break;
        case Representation::count: value = count; break;
        case Representation::tfidf:
            value = count * std::log(static_cast<double>(space.n_docs()) / space.doc_freq(*id));
            break;
        }
        if (value > 0.0) out.entries.push_back({*id, value});
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const FeatureEntry& a, const FeatureEntry& b) { return a.id < b.id; });
    return out;
}

} // namespace newsbias
