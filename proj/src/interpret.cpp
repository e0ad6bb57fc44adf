#include "newsbias/interpret.hpp"

#include "newsbias/error.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

namespace newsbias {

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join(const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out;
}

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

Token query_token(std::string_view term) {
    auto stream = tokenize(term);
    if (stream.tokens.size() != 1)
        throw ConfigError("query '" + std::string(term) + "' is " + std::to_string(stream.tokens.size()) +
                          " tokens; give a single word (phrase search is not supported)");
    return std::move(stream.tokens.front());
}

std::vector<bool> named_flags(std::size_t n, std::span<const Span> sentences, std::span<const Span> mentions) {
    std::vector<bool> flags(n, false);
    for (const auto& s : sentences) {
        const bool named = std::any_of(mentions.begin(), mentions.end(), [&](const Span& m) {
            return m.begin < s.end && s.begin < m.end;
        });
        if (named) std::fill(flags.begin() + static_cast<std::ptrdiff_t>(s.begin),
                             flags.begin() + static_cast<std::ptrdiff_t>(s.end), true);
    }
    return flags;
}

} // namespace

RankedFeatures rank_features(const LinearModel& model, const FeatureSpace& space, std::size_t k) {
    if (k < 1) throw ConfigError("rank k must be at least 1");
    if (model.weights.size() != space.size())
        throw InvariantError("model has " + std::to_string(model.weights.size()) + " weights for a space of " +
                             std::to_string(space.size()));

    std::vector<std::uint32_t> positive;
    std::vector<std::uint32_t> negative;
    for (std::uint32_t id = 0; id < model.weights.size(); ++id) {
        if (model.weights[id] > 0.0) positive.push_back(id);
        else if (model.weights[id] < 0.0) negative.push_back(id);
    }
    const auto& w = model.weights;
    std::stable_sort(positive.begin(), positive.end(), [&](auto a, auto b) { return w[a] > w[b]; });
    std::stable_sort(negative.begin(), negative.end(), [&](auto a, auto b) { return w[a] < w[b]; });

    RankedFeatures out;
    out.k = k;
    for (std::size_t i = 0; i < std::min(k, positive.size()); ++i) {
        const auto& t = space.entry(positive[i]);
        out.female.push_back({t.surface, t.kind, w[positive[i]]});
    }
    for (std::size_t i = 0; i < std::min(k, negative.size()); ++i) {
        const auto& t = space.entry(negative[i]);
        out.male.push_back({t.surface, t.kind, w[negative[i]]});
    }
    return out;
}

std::string_view to_string(TextMode m) noexcept { return m == TextMode::raw ? "raw" : "masked"; }

TextMode parse_text_mode(std::string_view text) {
    if (text == "raw") return TextMode::raw;
    if (text == "masked") return TextMode::masked;
    throw ConfigError("unknown text mode '" + std::string(text) + "', expected raw or masked");
}

std::vector<ConcordanceDoc> build_concordance_docs(std::span<const Article> articles, const Registry& registry,
                                                   TextMode mode, const LabelOptions& options) {
    std::vector<ConcordanceDoc> docs;
    docs.reserve(articles.size());
    for (const auto& article : articles) {
        const auto text = analyze_text(article, options.abbreviations);
        const auto matches = match_politicians(text, registry);

        ConcordanceDoc doc;
        doc.article_id = article.id;
        for (const auto& m : matches) doc.groups[static_cast<int>(m.gender)] = true;

        if (mode == TextMode::masked) {
            auto masked = masked_document(text, matches, options.gendered);
            std::vector<Span> markers;
            for (std::size_t i = 0; i < masked.tokens.size(); ++i)
                if (masked.tokens[i].kind == TokenKind::marker) markers.push_back({i, i + 1});
            doc.named_sentence = named_flags(masked.tokens.size(), masked.sentences, markers);
            doc.tokens = std::move(masked.tokens);
        } else {
            const std::size_t offset = text.headline.tokens.size();
            doc.tokens = text.headline.tokens;
            doc.tokens.insert(doc.tokens.end(), text.body.tokens.begin(), text.body.tokens.end());
            std::vector<Span> sentences = text.headline.sentences;
            for (const auto& s : text.body.sentences) sentences.push_back({s.begin + offset, s.end + offset});
            std::vector<Span> mentions;
            for (const auto& m : matches)
                for (const auto& mention : m.mentions) {
                    const std::size_t shift = mention.field == TextField::body ? offset : 0;
                    mentions.push_back({mention.span.begin + shift, mention.span.end + shift});
                }
            doc.named_sentence = named_flags(doc.tokens.size(), sentences, mentions);
        }
        docs.push_back(std::move(doc));
    }
    std::sort(docs.begin(), docs.end(),
              [](const ConcordanceDoc& a, const ConcordanceDoc& b) { return a.article_id < b.article_id; });
    return docs;
}

std::vector<ConcordanceLine> kwic(std::span<const ConcordanceDoc> docs, const KwicQuery& query) {
    if (query.window < 1) throw ConfigError("concordance window must be at least 1");
    const Token needle = query_token(query.term);

    std::vector<ConcordanceLine> lines;
    for (const auto& doc : docs) {
        if (query.group && !doc.groups[static_cast<int>(*query.group)]) continue;
        const auto& toks = doc.tokens;
        for (std::size_t i = 0; i < toks.size(); ++i) {
            if (toks[i].surface != needle.surface || toks[i].kind != needle.kind) continue;
            if (query.require_cooccurrence && !doc.named_sentence[i]) continue;
            ConcordanceLine line;
            line.article_id = doc.article_id;
            line.position = i;
            line.keyword = toks[i].surface;
            const std::size_t lo = i >= query.window ? i - query.window : 0;
            const std::size_t hi = std::min(toks.size(), i + 1 + query.window);
            for (std::size_t j = lo; j < i; ++j) line.left.push_back(toks[j].surface);
            for (std::size_t j = i + 1; j < hi; ++j) line.right.push_back(toks[j].surface);
            lines.push_back(std::move(line));
        }
    }
    std::stable_sort(lines.begin(), lines.end(), [](const ConcordanceLine& a, const ConcordanceLine& b) {
        if (a.article_id != b.article_id) return a.article_id < b.article_id;
        return a.position < b.position;
    });
    return lines;
}

std::size_t term_count(std::span<const ConcordanceDoc> docs, std::string_view term, Gender group) {
    KwicQuery q;
    q.term = std::string(term);
    q.group = group;
    return kwic(docs, q).size();
}

void write_kwic_csv(std::ostream& out, std::span<const ConcordanceLine> lines, std::string_view tag) {
    out << "article_id,position,left,keyword,right,tag\n";
    for (const auto& l : lines)
        out << csv_field(l.article_id) << ',' << l.position << ',' << csv_field(join(l.left)) << ','
            << csv_field(l.keyword) << ',' << csv_field(join(l.right)) << ',' << csv_field(tag) << '\n';
}

double rate(std::size_t count, double years) {
    if (!(years > 0.0)) throw DataError("rate needs a positive number of years");
    return static_cast<double>(count) / years;
}

RateStat make_rate_stat(std::string term, Gender group, std::size_t count, double years) {
    return {std::move(term), group, count, years, rate(count, years)};
}

RateRatio rate_ratio(const RateStat& a, const RateStat& b) {
    const double ra = rate(a.count, a.years);
    const double rb = rate(b.count, b.years);
    if (b.count == 0) return {std::numeric_limits<double>::infinity(), true};
    return {ra / rb, false};
}

void write_stats_csv(std::ostream& out, std::span<const RateStat> stats) {
    out << "term,group,count,years,rate\n";
    for (const auto& s : stats)
        out << csv_field(s.term) << ',' << to_string(s.group) << ',' << s.count << ',' << fixed6(s.years) << ','
            << fixed6(s.rate) << '\n';
}

} // namespace newsbias
