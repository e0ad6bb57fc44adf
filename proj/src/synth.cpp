#include "newsbias/synth.hpp"

#include "newsbias/error.hpp"
#include "newsbias/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace newsbias {

namespace {

constexpr const char* kFiller[] = {
    "government", "policy",     "minister",   "department", "budget",    "plan",       "report",     "public",
    "said",       "new",        "year",       "week",       "people",    "service",    "cost",       "million",
    "time",       "country",    "party",      "cabinet",    "decision",  "issue",      "support",    "funding",
    "health",     "education",  "transport",  "housing",    "scheme",    "proposal",   "meeting",    "council",
    "local",      "national",   "state",      "office",     "staff",     "review",     "committee",  "debate",
    "vote",       "election",   "member",     "leader",     "opposition", "coalition", "programme",  "strategy",
    "future",     "current",    "recent",     "major",      "further",   "increase",   "reduce",     "change",
    "system",     "sector",     "industry",   "business",   "economy",   "tax",        "income",     "jobs",
    "work",       "workers",    "union",      "talks",      "agreement", "deal",       "pressure",   "concern",
    "question",   "answer",     "statement",  "announced",  "confirmed", "expected",   "described",  "agreed",
    "rejected",   "welcomed",   "criticised", "defended",   "called",    "told",       "asked",      "added",
    "warned",     "claimed",    "insisted",   "stressed",   "noted",     "argued",     "accepted",   "denied",
    "the",        "a",          "of",         "to",         "and",       "in",         "on",         "for",
    "with",       "at",         "by",         "from",       "that",      "this",       "it",         "was",
    "is",         "be",         "has",        "had",        "would",     "will",       "could",      "should",
    "not",        "but",        "or",         "as",         "an",        "about",      "after",      "before",
    "over",       "under",      "into",       "than",       "more",      "most",       "some",       "all",
    "last",       "first",      "next",       "two",        "three",     "many",       "several",    "other",
    "there",      "their",      "they",       "which",      "who",       "what",       "when",       "where",
    "hospital",   "school",     "road",       "water",      "energy",    "farm",       "tourism",    "justice",
    "court",      "garda",      "prison",     "sport",      "arts",      "culture",    "science",    "trade",
    "enterprise", "employment", "social",     "welfare",    "pension",   "childcare",  "family",     "children",
    "community",  "rural",      "urban",      "city",       "county",    "region",     "european",   "international",
    "bill",       "law",        "legislation", "amendment", "act",       "regulation", "inquiry",    "tribunal",
    "crisis",     "problem",    "solution",   "target",     "figure",    "rate",       "level",      "growth",
    "spending",   "investment", "capital",    "project",    "contract",  "tender",     "grant",      "payment",
    "fee",        "charge",     "price",      "market",     "bank",      "finance",    "debt",       "deficit",
    "strong",     "weak",       "clear",      "difficult",  "important", "significant", "serious",   "key",
    "early",      "late",       "long",       "short",      "high",      "low",        "large",      "small",
    "yesterday",  "today",      "tomorrow",   "morning",    "evening",   "night",      "month",      "decade",
};
constexpr std::size_t kFillerCount = std::size(kFiller);

constexpr const char* kSections[] = {"News", "Politics", "Business", "Opinion", "Health", "Sport", "Features",
                                     "Letters"};
constexpr const char* kSources[] = {"The Daily Record", "The Evening Ledger"};

struct Minister {
    const char* id;
    Gender gender;
    const char* given;
    const char* surname;
};

constexpr Minister kMinisters[] = {
    {"f01", Gender::female, "Aoife", "Brennan"},   {"f02", Gender::female, "Siobhan", "Keane"},
    {"f03", Gender::female, "Niamh", "Dolan"},     {"f04", Gender::female, "Orla", "Fitzgerald"},
    {"f05", Gender::female, "Ciara", "Moran"},     {"f06", Gender::female, "Grainne", "Walsh"},
    {"m01", Gender::male, "Declan", "Byrne"},      {"m02", Gender::male, "Ronan", "Doyle"},
    {"m03", Gender::male, "Eamon", "Kelly"},       {"m04", Gender::male, "Padraig", "Nolan"},
    {"m05", Gender::male, "Cathal", "Ryan"},       {"m06", Gender::male, "Fergal", "Quinn"},
};

constexpr const char* kPortfolios[] = {"Health", "Education", "Justice", "Enterprise", "Social Welfare", "Transport"};

Date make_date(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

Registry synthetic_registry() {
    std::vector<PoliticianRecord> records;
    for (std::size_t i = 0; i < std::size(kMinisters); ++i) {
        const auto& m = kMinisters[i];
        PoliticianRecord r;
        r.id = m.id;
        r.gender = m.gender;
        r.given_name = m.given;
        r.surname = m.surname;
        // Paired portfolios: the i-th woman and i-th man hold the same one.
        const auto slot = i % 6;
        const int start = 1997 + static_cast<int>(slot) * 2;
        r.terms.push_back({kPortfolios[slot], make_date(start, 6, 26), make_date(start + 3, 6, 26)});
        records.push_back(std::move(r));
    }
    return Registry(std::move(records));
}

class ZipfSampler {
public:
    explicit ZipfSampler(std::size_t n) : cumulative_(n) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            total += 1.0 / std::pow(static_cast<double>(i + 1), 0.8);
            cumulative_[i] = total;
        }
        for (auto& c : cumulative_) c /= total;
    }

    std::size_t operator()(Rng& rng) const {
        const double u = rng.uniform01();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return std::min(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

private:
    std::vector<double> cumulative_;
};

std::string capitalize(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

std::string join_sentence(std::vector<std::string> words) {
    if (words.empty()) return {};
    words[0] = capitalize(std::move(words[0]));
    std::string out;
    for (const auto& w : words) {
        if (!out.empty()) out += ' ';
        out += w;
    }
    return out + '.';
}

class ArticleWriter {
public:
    ArticleWriter(const SynthParams& params, Rng& rng, const ZipfSampler& zipf)
        : params_(params), rng_(rng), zipf_(zipf) {}

    std::string filler(Gender g) {
        for (const auto& p : params_.planted)
            if (rng_.bernoulli(g == Gender::female ? p.p_female : p.p_male)) return p.term;
        return kFiller[zipf_(rng_)];
    }

    std::vector<std::string> name(const Minister& m) {
        const auto form = rng_.uniform_below(3);
        std::vector<std::string> out;
        if (form != 2 && rng_.bernoulli(0.3)) out.emplace_back(m.gender == Gender::female ? "Ms" : "Mr");
        if (form == 0 || form == 2) out.emplace_back(m.given);
        if (form == 0 || form == 1) out.emplace_back(m.surname);
        return out;
    }

    std::string sentence(const Minister& m, bool mention) {
        std::vector<std::string> words;
        const auto length = 8 + rng_.uniform_below(7);
        for (std::size_t i = 0; i < length; ++i) words.push_back(filler(m.gender));
        if (mention) {
            auto n = name(m);
            const auto at = rng_.uniform_below(words.size() / 2);
            words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), n.begin(), n.end());
        }
        if (rng_.bernoulli(0.5)) {
            const bool f = m.gender == Gender::female;
            const auto which = rng_.uniform_below(3);
            const char* pronoun = which == 0 ? (f ? "she" : "he") : which == 1 ? (f ? "her" : "his") : (f ? "herself" : "himself");
            const auto at = 1 + rng_.uniform_below(words.size() - 1);
            words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), pronoun);
        }
        return join_sentence(std::move(words));
    }

    std::string headline(const Minister& m) {
        std::vector<std::string> words;
        const auto length = 4 + rng_.uniform_below(3);
        for (std::size_t i = 0; i < length; ++i) words.push_back(filler(m.gender));
        if (rng_.bernoulli(0.3)) words.insert(words.begin(), m.surname);
        std::string out;
        for (auto& w : words) {
            if (!out.empty()) out += ' ';
            out += capitalize(w);
        }
        return out;
    }

    std::string body(const Minister& m) {
        const auto n = 4 + rng_.uniform_below(5);
        std::string out;
        for (std::size_t s = 0; s < n; ++s) {
            if (!out.empty()) out += ' ';
            out += sentence(m, s == 0 || rng_.bernoulli(0.4));
        }
        return out;
    }

private:
    const SynthParams& params_;
    Rng& rng_;
    const ZipfSampler& zipf_;
};

} // namespace

PlantedTerm parse_planted_term(std::string_view spec) {
    const auto a = spec.find(':');
    const auto b = a == std::string_view::npos ? a : spec.find(':', a + 1);
    if (a == std::string_view::npos || b == std::string_view::npos || a == 0)
        throw ConfigError("planted term '" + std::string(spec) + "' must look like term:p_female:p_male");
    PlantedTerm t;
    t.term = std::string(spec.substr(0, a));
    try {
        t.p_female = std::stod(std::string(spec.substr(a + 1, b - a - 1)));
        t.p_male = std::stod(std::string(spec.substr(b + 1)));
    } catch (const std::exception&) {
        throw ConfigError("planted term '" + std::string(spec) + "' has a non-numeric probability");
    }
    for (const double p : {t.p_female, t.p_male})
        if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("planted probabilities must lie in [0, 1]");
    return t;
}

SynthCorpus generate_synthetic(const SynthParams& params) {
    if (!(params.female_share >= 0.0 && params.female_share <= 1.0))
        throw ConfigError("female share must lie in [0, 1]");

    SynthCorpus corpus;
    corpus.registry = synthetic_registry();

    Rng rng(params.seed);
    const auto n_female = static_cast<std::size_t>(std::llround(static_cast<double>(params.n_articles) * params.female_share));
    corpus.labels.assign(params.n_articles, Gender::male);
    std::fill_n(corpus.labels.begin(), std::min(n_female, params.n_articles), Gender::female);
    rng.shuffle(std::span<Gender>(corpus.labels));

    const ZipfSampler zipf(kFillerCount);
    ArticleWriter writer(params, rng, zipf);

    std::array<std::vector<const Minister*>, 2> by_gender;
    for (const auto& m : kMinisters) by_gender[static_cast<int>(m.gender)].push_back(&m);

    for (std::size_t i = 0; i < params.n_articles; ++i) {
        const Gender g = corpus.labels[i];
        const auto& pool = by_gender[static_cast<int>(g)];
        const Minister& m = *pool[rng.uniform_below(pool.size())];
        const auto* record = corpus.registry.find(m.id);
        const auto& term = record->terms.front();
        const auto span_days = (std::chrono::sys_days{term.end} - std::chrono::sys_days{term.start}).count();

        Article a;
        char id[32];
        std::snprintf(id, sizeof id, "synth-%05zu", i + 1);
        a.id = id;
        a.source = kSources[rng.uniform_below(std::size(kSources))];
        a.date = Date{std::chrono::sys_days{term.start} +
                      std::chrono::days{static_cast<long>(rng.uniform_below(static_cast<std::uint64_t>(span_days)))}};
        a.section = kSections[rng.uniform_below(std::size(kSections))];
        a.headline = writer.headline(m);
        a.body = writer.body(m);
        corpus.articles.push_back(std::move(a));
    }
    return corpus;
}

void write_synthetic(const SynthCorpus& corpus, const SynthParams& params, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        std::ofstream out(dir / "articles.jsonl", std::ios::binary);
        if (!out) throw DataError("cannot write " + (dir / "articles.jsonl").string());
        write_articles(out, corpus.articles);
    }
    {
        std::ofstream out(dir / "registry.json", std::ios::binary);
        if (!out) throw DataError("cannot write " + (dir / "registry.json").string());
        out << registry_to_json(corpus.registry);
    }

    nlohmann::ordered_json planted = nlohmann::ordered_json::array();
    for (const auto& p : params.planted)
        planted.push_back({{"term", p.term}, {"p_female", p.p_female}, {"p_male", p.p_male}});

    nlohmann::ordered_json config;
    config["articles"] = "articles.jsonl";
    config["registry"] = "registry.json";
    config["scheme"] = "unigram";
    config["window"] = "article";
    config["representation"] = "boolean";
    config["classifier"] = "svm";
    config["k"] = 10;
    config["seed"] = params.seed;
    config["min_df"] = 3;
    config["undersample"] = false;
    config["sweep"] = {{"schemes", {"unigram", "nameform", "section"}},
                       {"windows", {"article"}},
                       {"representations", {"boolean", "count", "tfidf"}},
                       {"classifiers", {"svm", "nb", "tree"}}};
    config["rank"] = {{"k", 10}};
    config["kwic"] = {{"window", 8}, {"mode", "raw"}};
    config["stats"] = {{"terms", {"husband", "wife"}}, {"groups", {"female", "male"}}};
    config["synthetic"] = {{"n_articles", params.n_articles},
                           {"female_share", params.female_share},
                           {"planted", planted}};
    std::ofstream out(dir / "config.json", std::ios::binary);
    if (!out) throw DataError("cannot write " + (dir / "config.json").string());
    out << config.dump(2) << '\n';
}

} // namespace newsbias
