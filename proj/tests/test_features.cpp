#include "newsbias/error.hpp"
#include "newsbias/features.hpp"
#include "newsbias/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace newsbias;

namespace {

LabeledInstance instance(std::vector<Token> tokens, std::vector<Span> sentences, std::string section = {}) {
    LabeledInstance i;
    i.article_id = "x";
    i.politician_ids = {"p"};
    i.masked_tokens = std::move(tokens);
    i.masked_sentences = std::move(sentences);
    i.section = std::move(section);
    return i;
}

Token w(const char* s) { return {s, TokenKind::word}; }
Token marker(NameForm f = NameForm::full) { return {std::string(marker_for(f)), TokenKind::marker}; }

TermBag bag(std::initializer_list<std::pair<const char*, int>> entries, FeatureKind kind = FeatureKind::unigram) {
    TermBag b;
    for (const auto& [s, n] : entries) b[{s, kind}] = n;
    return b;
}

} // namespace

TEST_SUITE("lexicons") {
    TEST_CASE("two categories, duplicates collapsed, shared words in both") {
        const auto lex = parse_lexicon("# GI sample\nchief\tPOWER\njail\tpower\nEmbrace\tACTIVE\nchief\tPOWER\n"
                                       "command\tPOWER,ACTIVE\n");
        CHECK(lex.categories().size() == 2);
        CHECK(lex.categories().at("POWER") == std::set<std::string>{"chief", "command", "jail"});
        CHECK(lex.categories().at("ACTIVE") == std::set<std::string>{"command", "embrace"});
        CHECK(lex.categories_of("command") == std::vector<std::string>{"ACTIVE", "POWER"});
    }

    TEST_CASE("empty category is an error") {
        CHECK_THROWS_AS(parse_lexicon("chief\t\n"), DataError);
        CHECK_THROWS_AS(parse_lexicon("chief\tPOWER,,\n"), DataError);
    }

    TEST_CASE("POS lexicon with alternatives") {
        const auto pos = parse_pos_lexicon("formidable\tADJ\nleader\tNOUN\nback\tVERB\tADJ,NOUN\n");
        REQUIRE(pos.find("back") != nullptr);
        CHECK(pos.find("back")->primary == PosTag::verb);
        CHECK(pos.find("back")->allowed.size() == 3);
        CHECK_THROWS_AS(parse_pos_lexicon("word\tADVERB\n"), DataError);
    }
}

TEST_SUITE("extraction") {
    TEST_CASE("lexicon categories count hits") {
        const LexiconSet lex = parse_lexicon("embrace\tACTIVE\n");
        ExtractOptions o;
        o.lexicons = std::span(&lex, 1);
        const auto i = instance({marker(), w("embrace"), w("policy")}, {{0, 3}});
        CHECK(extract_terms(i, Scheme::lexicon_category, o) == bag({{"ACTIVE", 1}}, FeatureKind::lexicon_category));
    }

    TEST_CASE("sentence window keeps named sentences only") {
        const auto i = instance({marker(), w("spoke"), Token{".", TokenKind::punct}, w("costs"), w("rose")}, {{0, 3}, {3, 5}});
        ExtractOptions o;
        o.window = Window::sentence;
        CHECK(extract_terms(i, Scheme::unigram, o) == bag({{"NAMEFORM_FULL", 1}, {"spoke", 1}}));
        o.window = Window::article;
        CHECK(extract_terms(i, Scheme::unigram, o).size() == 4);
    }

    TEST_CASE("adjectives through the lexicon tagger") {
        PosLexicon pos = parse_pos_lexicon("formidable\tADJ\nleader\tNOUN\n");
        const LexiconTagger tagger(pos);
        ExtractOptions o;
        o.tagger = &tagger;
        const auto i = instance({w("formidable"), w("leader")}, {{0, 2}});
        CHECK(extract_terms(i, Scheme::adjective, o) == bag({{"formidable", 1}}, FeatureKind::adjective));
        CHECK(extract_terms(i, Scheme::verb, o).empty());
    }

    TEST_CASE("missing resources are config errors") {
        const auto i = instance({w("a")}, {{0, 1}});
        CHECK_THROWS_AS(extract_terms(i, Scheme::adjective, {}), ConfigError);
        CHECK_THROWS_AS(extract_terms(i, Scheme::lexicon_category, {}), ConfigError);
    }

    TEST_CASE("section and name-form schemes") {
        const auto i = instance({marker(NameForm::surname), w("said"), marker(NameForm::given)}, {{0, 3}}, " News ");
        CHECK(extract_terms(i, Scheme::section, {}) == bag({{"news", 1}}, FeatureKind::section));
        CHECK(extract_terms(i, Scheme::nameform, {}) ==
              bag({{"NAMEFORM_GIVEN", 1}, {"NAMEFORM_SURNAME", 1}}, FeatureKind::nameform));
        CHECK(extract_terms(instance({w("a")}, {{0, 1}}, ""), Scheme::section, {}).empty());
    }

    TEST_CASE("property: sentence-window terms are a sub-multiset of article-window terms") {
        Rng rng(2);
        const std::vector<const char*> vocab = {"a", "b", "c", ".", "d"};
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<Token> toks;
            std::vector<Span> sents;
            std::size_t start = 0;
            const auto n = 1 + rng.uniform_below(20);
            for (std::uint64_t t = 0; t < n; ++t) {
                toks.push_back(rng.bernoulli(0.15) ? marker() : w(vocab[rng.uniform_below(vocab.size())]));
                if (rng.bernoulli(0.3) || t + 1 == n) {
                    sents.push_back({start, toks.size()});
                    start = toks.size();
                }
            }
            const auto i = instance(toks, sents);
            ExtractOptions sentence;
            sentence.window = Window::sentence;
            for (const auto scheme : {Scheme::unigram, Scheme::nameform}) {
                const auto inner = extract_terms(i, scheme, sentence);
                const auto outer = extract_terms(i, scheme, {});
                for (const auto& [term, count] : inner) {
                    REQUIRE(outer.contains(term));
                    CHECK(count <= outer.at(term));
                }
            }
        }
    }
}

TEST_SUITE("feature space") {
    TEST_CASE("min_df cut") {
        const std::vector<TermBag> docs = {bag({{"rare", 1}, {"x", 1}}), bag({{"x", 2}}), bag({{"x", 1}})};
        const auto s2 = build_space(docs, 2);
        CHECK(s2.size() == 1);
        CHECK_FALSE(s2.find({"rare", FeatureKind::unigram}).has_value());
        CHECK(build_space(docs, 1).size() == 2);
        CHECK_THROWS_WITH_AS(build_space(docs, 4), doctest::Contains("no features survive min_df"), DataError);
    }

    TEST_CASE("ordered by kind then surface") {
        TermBag a = bag({{"zeta", 1}, {"alpha", 1}});
        a[{"NAMEFORM_FULL", FeatureKind::nameform}] = 1;
        a[{"ACTIVE", FeatureKind::lexicon_category}] = 1;
        const auto s = build_space(std::vector<TermBag>{a}, 1);
        REQUIRE(s.size() == 4);
        CHECK(s.entry(0).surface == "alpha");
        CHECK(s.entry(1).surface == "zeta");
        CHECK(s.entry(2).kind == FeatureKind::lexicon_category);
        CHECK(s.entry(3).kind == FeatureKind::nameform);
    }

    TEST_CASE("property: shuffled documents give the same space") {
        Rng rng(6);
        const std::vector<const char*> vocab = {"a", "b", "c", "d", "e", "f"};
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<TermBag> docs(1 + rng.uniform_below(8));
            for (auto& d : docs)
                for (int k = 0; k < 4; ++k)
                    ++d[{vocab[rng.uniform_below(vocab.size())], FeatureKind::unigram}];
            auto shuffled = docs;
            rng.shuffle(std::span<TermBag>(shuffled));
            CHECK(build_space(docs, 1) == build_space(shuffled, 1));
            const auto s = build_space(docs, 1);
            for (std::uint32_t id = 0; id < s.size(); ++id) {
                CHECK(s.find(s.entry(id)) == id);
                CHECK(s.doc_freq(id) >= 1);
                CHECK(static_cast<std::size_t>(s.doc_freq(id)) <= s.n_docs());
            }
        }
    }
}

TEST_SUITE("vectorize") {
    TEST_CASE("hand-computed three-document tf-idf") {
        // d0 = {x:2, y:1}, d1 = {y:1}, d2 = {y:3, z:1}
        // df: x=1, y=3, z=1; n=3
        const std::vector<TermBag> docs = {bag({{"x", 2}, {"y", 1}}), bag({{"y", 1}}), bag({{"y", 3}, {"z", 1}})};
        const auto space = build_space(docs, 1);
        const auto v0 = vectorize(docs[0], space, Representation::tfidf);
        REQUIRE(v0.entries.size() == 1);  // y is in every document: idf 0, dropped
        CHECK(space.entry(v0.entries[0].id).surface == "x");
        CHECK(std::abs(v0.entries[0].value - 2.0 * std::log(3.0)) <= 1e-9);
        CHECK(std::abs(v0.entries[0].value - 2.1972245773362196) <= 1e-9);
        CHECK(vectorize(docs[1], space, Representation::tfidf).entries.empty());
        const auto v2 = vectorize(docs[2], space, Representation::tfidf);
        REQUIRE(v2.entries.size() == 1);
        CHECK(std::abs(v2.entries[0].value - std::log(3.0)) <= 1e-9);
    }

    TEST_CASE("count keeps raw counts") {
        const std::vector<TermBag> docs = {bag({{"embrace", 3}})};
        const auto space = build_space(docs, 1);
        const auto v = vectorize(docs[0], space, Representation::count);
        REQUIRE(v.entries.size() == 1);
        CHECK(v.entries[0].value == 3.0);
    }

    TEST_CASE("property: representation laws") {
        Rng rng(13);
        const std::vector<const char*> vocab = {"a", "b", "c", "d", "e", "f", "g"};
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<TermBag> docs(1 + rng.uniform_below(6));
            for (auto& d : docs) {
                const auto n = rng.uniform_below(10);
                for (std::uint64_t k = 0; k < n; ++k) ++d[{vocab[rng.uniform_below(vocab.size())], FeatureKind::unigram}];
            }
            docs.front()[{"a", FeatureKind::unigram}] += 1;
            const auto space = build_space(docs, 1);
            for (const auto& d : docs) {
                const auto b = vectorize(d, space, Representation::boolean);
                const auto c = vectorize(d, space, Representation::count);
                const auto t = vectorize(d, space, Representation::tfidf);
                REQUIRE(b.entries.size() == c.entries.size());
                for (std::size_t i = 0; i < b.entries.size(); ++i) {
                    CHECK(b.entries[i].id == c.entries[i].id);
                    CHECK(b.entries[i].value == 1.0);
                }
                std::size_t j = 0;
                for (const auto& e : t.entries) {
                    while (j < c.entries.size() && c.entries[j].id < e.id) ++j;
                    REQUIRE(j < c.entries.size());
                    CHECK(c.entries[j].id == e.id);
                    CHECK(e.value > 0.0);
                }
                for (std::size_t i = 1; i < c.entries.size(); ++i) CHECK(c.entries[i - 1].id < c.entries[i].id);
            }
            for (const auto rep : {Representation::boolean, Representation::count, Representation::tfidf})
                CHECK(vectorize(TermBag{}, space, rep).entries.empty());
        }
    }
}
