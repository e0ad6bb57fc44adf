#include "newsbias/error.hpp"
#include "newsbias/pipeline.hpp"
#include "newsbias/synth.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace newsbias;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::path(NEWSBIAS_SCRATCH) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const fs::path kSpouse = fs::path(NEWSBIAS_FIXTURES) / "spouse";

fs::path small_synth(const std::string& name, std::vector<PlantedTerm> planted = {}) {
    const auto dir = scratch(name);
    SynthParams p;
    p.n_articles = 200;
    p.planted = std::move(planted);
    p.seed = 3;
    write_synthetic(generate_synthetic(p), p, dir);
    return dir;
}

} // namespace

TEST_SUITE("config") {
    TEST_CASE("paths resolve against the config directory") {
        const auto c = load_config(kSpouse / "config.json");
        CHECK(c.articles == fs::absolute(kSpouse / "articles.jsonl").lexically_normal());
        CHECK(c.output_dir == fs::absolute(kSpouse) / "out");
        CHECK(c.seed == 42);
        CHECK(c.k == 10);
        CHECK(c.stats_terms == std::vector<std::string>{"husband", "wife"});
        CHECK_FALSE(c.document.contains("output_dir"));
    }

    TEST_CASE("overrides edit the document") {
        const std::vector<Override> o = {{"/seed", 7u}, {"/svm/lambda", 0.5}, {"/sweep/classifiers", {"nb", "tree"}}};
        const auto c = load_config(kSpouse / "config.json", o);
        CHECK(c.seed == 7);
        CHECK(c.classifier.svm.lambda == 0.5);
        CHECK(c.sweep.classifiers == std::vector<ClassifierKind>{ClassifierKind::naive_bayes, ClassifierKind::tree});
        CHECK(c.document["seed"] == 7);
        CHECK(config_hash(c.document) != config_hash(load_config(kSpouse / "config.json").document));
    }

    TEST_CASE("bad values are config errors") {
        const auto base = nlohmann::json::parse(slurp(kSpouse / "config.json"));
        const auto bad = [&](const char* ptr, nlohmann::json v) {
            auto doc = base;
            doc[nlohmann::json::json_pointer(ptr)] = std::move(v);
            CHECK_THROWS_AS(parse_config(doc, kSpouse), ConfigError);
        };
        bad("/articles", "missing.jsonl");
        bad("/seed", -1);
        bad("/k", 1);
        bad("/scheme", "trigram");
        bad("/classifier", "knn");
        bad("/svm/lambda", 0);
        bad("/typo_key", 1);
        bad("/date_from", "2005-13-01");
        bad("/kwic/group", "other");
    }

    TEST_CASE("a manifest reloads as its config") {
        const auto out = scratch("manifest");
        auto c = load_config(kSpouse / "config.json", std::vector<Override>{{"/output_dir", out.string()}});
        write_manifest(c, "stats");
        const auto again = load_config(out / "manifest.json");
        CHECK(again.document == c.document);
        CHECK(again.output_dir == out);
        REQUIRE(again.manifest_command.has_value());
        CHECK(*again.manifest_command == "stats");
        const auto m = nlohmann::json::parse(slurp(out / "manifest.json"));
        CHECK(m["version"] == kVersion);
        CHECK(m["seed"] == 42);
        CHECK(m["config_hash"].get<std::string>().size() == 16);
    }
}

TEST_SUITE("commands") {
    TEST_CASE("stats on the spouse fixture") {
        const auto out = scratch("stats");
        const auto c = load_config(kSpouse / "config.json", std::vector<Override>{{"/output_dir", out.string()}});
        const auto stats = term_stats(c, load_corpus(c));
        REQUIRE(stats.size() == 4);
        CHECK(stats[0].term == "husband");
        CHECK(stats[0].group == Gender::female);
        CHECK(stats[0].count == 48);
        CHECK(std::abs(stats[0].rate - 1.244) <= 0.01);
        CHECK(stats[3].term == "wife");
        CHECK(stats[3].count == 27);
        CHECK(std::abs(stats[3].rate - 0.321) <= 0.01);
        run_stats(c);
        CHECK(slurp(out / "stats.csv").rfind("term,group,count,years,rate\n", 0) == 0);
        CHECK(fs::exists(out / "manifest.json"));
    }

    TEST_CASE("kwic for an absent term writes only the header") {
        const auto out = scratch("kwic");
        const auto c = load_config(kSpouse / "config.json", std::vector<Override>{{"/output_dir", out.string()},
                                                                                 {"/kwic/term", "absent"}});
        run_kwic(c);
        CHECK(slurp(out / "kwic.csv") == "article_id,position,left,keyword,right,tag\n");
    }

    TEST_CASE("ingest and label") {
        const auto out = scratch("label");
        const auto c = load_config(kSpouse / "config.json", std::vector<Override>{{"/output_dir", out.string()}});
        run_ingest(c);
        run_label(c);
        CHECK(fs::exists(out / "articles.jsonl"));
        const auto volume = slurp(out / "volume.csv");
        CHECK(volume.rfind("group,instances,headline_mentions,years,instances_per_year\n", 0) == 0);
        CHECK(volume.find("female,19,0,38.600958,") != std::string::npos);
        std::istringstream lines(slurp(out / "instances.jsonl"));
        std::string line;
        std::size_t n = 0;
        while (std::getline(lines, line)) {
            const auto j = nlohmann::json::parse(line);
            CHECK(j["text"].get<std::string>().find("harney") == std::string::npos);
            ++n;
        }
        CHECK(n == 32);
    }

    TEST_CASE("sweep grid size and row order") {
        const auto dir = small_synth("sweep", {{"husband", 0.1, 0.01}});
        const std::vector<Override> o = {{"/sweep/schemes", {"unigram", "nameform"}},
                                         {"/sweep/representations", {"boolean", "tfidf"}},
                                         {"/sweep/classifiers", {"svm", "nb", "tree"}},
                                         {"/k", 5u}};
        const auto c = load_config(dir / "config.json", o);
        const auto corpus = load_corpus(c);
        const auto instances = prepare_instances(c, corpus);
        const auto rows = sweep(c, instances, load_resources(c));
        REQUIRE(rows.size() == 12);
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].descriptor < rows[i].descriptor);
        const auto svm = std::find_if(rows.begin(), rows.end(),
                                      [](const SweepRow& r) { return r.descriptor == "unigram/article/boolean/svm"; });
        REQUIRE(svm != rows.end());
        CHECK(svm->report.mean_accuracy > svm->report.majority_baseline);
    }

    TEST_CASE("a failing combination is named") {
        const auto dir = small_synth("sweep-fail");
        const std::vector<Override> o = {{"/sweep/schemes", {"unigram", "adjective"}}};
        const auto c = load_config(dir / "config.json", o);
        const auto corpus = load_corpus(c);
        try {
            sweep(c, prepare_instances(c, corpus), load_resources(c));
            FAIL("expected an error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("adjective/article/boolean") != std::string::npos);
        }
    }

    TEST_CASE("rank gives two lists of at most k") {
        const auto dir = small_synth("rank", {{"husband", 0.1, 0.01}});
        const auto c = load_config(dir / "config.json");
        const auto corpus = load_corpus(c);
        const auto r = rank(c, prepare_instances(c, corpus), load_resources(c));
        CHECK(r.female.size() <= 10);
        CHECK(r.male.size() <= 10);
        REQUIRE_FALSE(r.female.empty());
        CHECK(r.female[0].surface == "husband");
    }

    TEST_CASE("stoplist and stemming apply to instances") {
        const auto dir = small_synth("stem");
        {
            std::ofstream(dir / "stop.txt") << "# stoplist\nthe\nof\n";
        }
        const std::vector<Override> o = {{"/stoplist", "stop.txt"}, {"/stem", true}};
        const auto c = load_config(dir / "config.json", o);
        const auto instances = prepare_instances(c, load_corpus(c));
        REQUIRE_FALSE(instances.empty());
        for (const auto& inst : instances)
            for (const auto& t : inst.masked_tokens) {
                CHECK(t.surface != "the");
                CHECK(t.surface != "government");  // stems to "govern"
            }
    }

    TEST_CASE("date filter keeps the half-open window") {
        const std::vector<Override> o = {{"/date_from", "2005-03-03"}, {"/date_to", "2005-03-05"}};
        const auto c = load_config(kSpouse / "config.json", o);
        for (const auto& a : load_corpus(c).articles) {
            CHECK(format_date(a.date) >= "2005-03-03");
            CHECK(format_date(a.date) < "2005-03-05");
        }
    }
}

TEST_SUITE("synthetic corpus") {
    TEST_CASE("exact label balance and one politician per article") {
        SynthParams p;
        p.n_articles = 300;
        p.female_share = 0.3;
        const auto s = generate_synthetic(p);
        CHECK(std::count(s.labels.begin(), s.labels.end(), Gender::female) == 90);
        const auto inst = label_instances(s.articles, s.registry);
        REQUIRE(inst.size() == 300);
        for (std::size_t i = 0; i < inst.size(); ++i) CHECK(inst[i].label == s.labels[i]);
    }

    TEST_CASE("same seed, same corpus") {
        SynthParams p;
        p.n_articles = 50;
        p.planted = {{"husband", 0.1, 0.01}};
        CHECK(generate_synthetic(p).articles == generate_synthetic(p).articles);
    }

    TEST_CASE("planted term specs") {
        const auto t = parse_planted_term("husband:0.10:0.01");
        CHECK(t.term == "husband");
        CHECK(t.p_female == 0.10);
        CHECK(t.p_male == 0.01);
        CHECK_THROWS_AS(parse_planted_term("husband:0.1"), ConfigError);
        CHECK_THROWS_AS(parse_planted_term("husband:x:0.1"), ConfigError);
        CHECK_THROWS_AS(parse_planted_term("husband:1.5:0.1"), ConfigError);
    }
}
