#include "newsbias/pipeline.hpp"

#include "newsbias/error.hpp"
#include "newsbias/rng.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace newsbias {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::set<std::string> kTopLevelKeys = {
    "articles", "registry",  "stoplist",   "gendered_signals", "abbreviations", "lexicons", "pos_lexicon",
    "scheme",   "window",    "representation", "classifier",   "svm",           "nb",       "tree",
    "k",        "seed",      "min_df",     "undersample",      "stem",          "date_from", "date_to",
    "output_dir", "sweep",   "rank",       "kwic",             "stats",         "synthetic",
};

std::string fixed6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string hex64(std::uint64_t x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
    return buf;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& expected) {
    throw ConfigError("config key '" + key + "' must be " + expected);
}

const json* member(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() || it->is_null() ? nullptr : &*it;
}

std::string as_string(const json& v, const std::string& key) {
    if (!v.is_string()) bad_value(key, "a string");
    return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& key) {
    if (!v.is_boolean()) bad_value(key, "true or false");
    return v.get<bool>();
}

double as_double(const json& v, const std::string& key) {
    if (!v.is_number()) bad_value(key, "a number");
    return v.get<double>();
}

std::uint64_t as_count(const json& v, const std::string& key) {
    if (!v.is_number_unsigned()) bad_value(key, "a non-negative integer");
    return v.get<std::uint64_t>();
}

std::vector<std::string> as_strings(const json& v, const std::string& key) {
    if (v.is_string()) return {v.get<std::string>()};
    if (!v.is_array()) bad_value(key, "a string or a list of strings");
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(as_string(e, key));
    return out;
}

Date as_date(const json& v, const std::string& key) {
    try {
        return parse_date(as_string(v, key));
    } catch (const DataError& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

template <class Parse>
auto parse_with(const json& v, const std::string& key, Parse parse) {
    return parse(as_string(v, key));
}

// Resolves a path key in place and checks that the file exists.
fs::path resolve_input(json& doc, const char* key, const fs::path& base_dir) {
    json& v = doc[key];
    fs::path p = as_string(v, key);
    if (p.is_relative()) p = base_dir / p;
    p = fs::absolute(p).lexically_normal();
    if (!fs::exists(p)) throw ConfigError(std::string(key) + " file not found: " + p.string());
    v = p.string();
    return p;
}

std::optional<fs::path> resolve_optional(json& doc, const char* key, const fs::path& base_dir) {
    if (!member(doc, key)) return std::nullopt;
    return resolve_input(doc, key, base_dir);
}

std::optional<Gender> parse_group(const std::string& text) {
    if (text == "all") return std::nullopt;
    try {
        return parse_gender(text);
    } catch (const DataError&) {
        throw ConfigError("unknown group '" + text + "', expected female, male or all");
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
    if (!out) throw DataError("failed writing " + path.string());
}

std::string descriptor_of(Scheme s, Window w, Representation r, ClassifierKind c) {
    std::string d;
    d.append(to_string(s)).append("/").append(to_string(w)).append("/").append(to_string(r)).append("/");
    d.append(to_string(c));
    return d;
}

template <class F>
auto with_context(const std::string& context, F&& f) {
    try {
        return f();
    } catch (const ConfigError& e) {
        throw ConfigError(context + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError(context + ": " + e.what());
    } catch (const InvariantError& e) {
        throw InvariantError(context + ": " + e.what());
    }
}

// Calendar span covered by any term in the registry.
DateRange registry_span(const Registry& registry) {
    std::optional<Date> lo;
    std::optional<Date> hi;
    for (const auto& r : registry.records())
        for (const auto& t : r.terms) {
            if (!lo || t.start < *lo) lo = t.start;
            if (!hi || t.end > *hi) hi = t.end;
        }
    if (!lo) throw DataError("the registry has no office terms");
    return {*lo, *hi};
}

std::string join_tokens(std::span<const Token> tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t.surface;
    }
    return out;
}

} // namespace

std::uint64_t config_hash(const json& document) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : document.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

PipelineConfig load_config(const fs::path& file, std::span<const Override> overrides) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot open config " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("malformed config " + file.string() + ": " + e.what());
    }
    return parse_config(std::move(doc), fs::absolute(file).parent_path(), overrides);
}

PipelineConfig parse_config(json doc, const fs::path& base_dir, std::span<const Override> overrides) {
    PipelineConfig c;
    fs::path default_out = base_dir / "out";
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    if (doc.contains("manifest_version")) {
        if (!doc.contains("config") || !doc["config"].is_object()) throw ConfigError("manifest has no config object");
        if (const auto* cmd = member(doc, "command")) c.manifest_command = as_string(*cmd, "command");
        json inner = std::move(doc["config"]);
        doc = std::move(inner);
        default_out = base_dir;
    }

    for (const auto& o : overrides) {
        try {
            doc[json::json_pointer(o.pointer)] = o.value;
        } catch (const json::exception& e) {
            throw ConfigError("cannot apply override " + o.pointer + ": " + e.what());
        }
    }

    for (const auto& [key, _] : doc.items())
        if (!kTopLevelKeys.contains(key)) throw ConfigError("unknown config key '" + key + "'");

    if (const auto* out = member(doc, "output_dir")) {
        fs::path p = as_string(*out, "output_dir");
        c.output_dir = p.is_relative() ? base_dir / p : p;
        doc.erase("output_dir");
    } else {
        c.output_dir = default_out;
    }

    if (!member(doc, "articles")) throw ConfigError("config key 'articles' is required");
    if (!member(doc, "registry")) throw ConfigError("config key 'registry' is required");
    c.articles = resolve_input(doc, "articles", base_dir);
    c.registry = resolve_input(doc, "registry", base_dir);
    c.stoplist = resolve_optional(doc, "stoplist", base_dir);
    c.gendered_signals = resolve_optional(doc, "gendered_signals", base_dir);
    c.abbreviations = resolve_optional(doc, "abbreviations", base_dir);
    c.pos_lexicon = resolve_optional(doc, "pos_lexicon", base_dir);
    if (auto* lex = member(doc, "lexicons")) {
        if (!lex->is_array()) bad_value("lexicons", "a list of paths");
        json& arr = doc["lexicons"];
        for (auto& e : arr) {
            fs::path p = as_string(e, "lexicons");
            if (p.is_relative()) p = base_dir / p;
            p = fs::absolute(p).lexically_normal();
            if (!fs::exists(p)) throw ConfigError("lexicon file not found: " + p.string());
            e = p.string();
            c.lexicons.push_back(p);
        }
    }

    if (const auto* v = member(doc, "scheme")) c.scheme = parse_with(*v, "scheme", parse_scheme);
    if (const auto* v = member(doc, "window")) c.window = parse_with(*v, "window", parse_window);
    if (const auto* v = member(doc, "representation"))
        c.representation = parse_with(*v, "representation", parse_representation);
    if (const auto* v = member(doc, "classifier")) c.classifier.kind = parse_with(*v, "classifier", parse_classifier);

    if (const auto* svm = member(doc, "svm")) {
        if (const auto* v = member(*svm, "lambda")) c.classifier.svm.lambda = as_double(*v, "svm.lambda");
        if (const auto* v = member(*svm, "epochs")) c.classifier.svm.epochs = static_cast<int>(as_count(*v, "svm.epochs"));
        if (!(c.classifier.svm.lambda > 0.0)) bad_value("svm.lambda", "positive");
        if (c.classifier.svm.epochs < 1) bad_value("svm.epochs", "at least 1");
    }
    if (const auto* nb = member(doc, "nb")) {
        if (const auto* v = member(*nb, "alpha")) c.classifier.nb.alpha = as_double(*v, "nb.alpha");
        if (const auto* v = member(*nb, "variant")) {
            const auto s = as_string(*v, "nb.variant");
            if (s == "bernoulli") c.classifier.nb.variant = BayesVariant::bernoulli;
            else if (s == "multinomial") c.classifier.nb.variant = BayesVariant::multinomial;
            else bad_value("nb.variant", "bernoulli or multinomial");
        }
        if (!(c.classifier.nb.alpha > 0.0)) bad_value("nb.alpha", "positive");
    }
    if (const auto* tree = member(doc, "tree")) {
        if (const auto* v = member(*tree, "max_depth"))
            c.classifier.tree.max_depth = static_cast<int>(as_count(*v, "tree.max_depth"));
        if (const auto* v = member(*tree, "min_leaf"))
            c.classifier.tree.min_leaf = static_cast<int>(as_count(*v, "tree.min_leaf"));
        if (c.classifier.tree.max_depth < 1) bad_value("tree.max_depth", "at least 1");
        if (c.classifier.tree.min_leaf < 1) bad_value("tree.min_leaf", "at least 1");
    }

    if (const auto* v = member(doc, "k")) c.k = as_count(*v, "k");
    if (c.k < 2) bad_value("k", "at least 2");
    if (const auto* v = member(doc, "seed")) c.seed = as_count(*v, "seed");
    doc["seed"] = c.seed;
    if (const auto* v = member(doc, "min_df")) c.min_df = static_cast<int>(as_count(*v, "min_df"));
    if (c.min_df < 1) bad_value("min_df", "at least 1");
    if (const auto* v = member(doc, "undersample")) c.undersample = as_bool(*v, "undersample");
    if (const auto* v = member(doc, "stem")) c.stem = as_bool(*v, "stem");
    if (const auto* v = member(doc, "date_from")) c.date_from = as_date(*v, "date_from");
    if (const auto* v = member(doc, "date_to")) c.date_to = as_date(*v, "date_to");

    c.sweep = {{c.scheme}, {c.window}, {c.representation}, {c.classifier.kind}};
    if (const auto* sw = member(doc, "sweep")) {
        if (const auto* v = member(*sw, "schemes")) {
            c.sweep.schemes.clear();
            for (const auto& s : as_strings(*v, "sweep.schemes")) c.sweep.schemes.push_back(parse_scheme(s));
        }
        if (const auto* v = member(*sw, "windows")) {
            c.sweep.windows.clear();
            for (const auto& s : as_strings(*v, "sweep.windows")) c.sweep.windows.push_back(parse_window(s));
        }
        if (const auto* v = member(*sw, "representations")) {
            c.sweep.representations.clear();
            for (const auto& s : as_strings(*v, "sweep.representations"))
                c.sweep.representations.push_back(parse_representation(s));
        }
        if (const auto* v = member(*sw, "classifiers")) {
            c.sweep.classifiers.clear();
            for (const auto& s : as_strings(*v, "sweep.classifiers")) c.sweep.classifiers.push_back(parse_classifier(s));
        }
        if (c.sweep.schemes.empty() || c.sweep.windows.empty() || c.sweep.representations.empty() ||
            c.sweep.classifiers.empty())
            throw ConfigError("every sweep list needs at least one entry");
    }

    if (const auto* rk = member(doc, "rank"))
        if (const auto* v = member(*rk, "k")) c.rank_k = as_count(*v, "rank.k");

    if (const auto* kw = member(doc, "kwic")) {
        if (const auto* v = member(*kw, "term")) c.kwic.term = as_string(*v, "kwic.term");
        if (const auto* v = member(*kw, "window")) c.kwic.window = as_count(*v, "kwic.window");
        if (const auto* v = member(*kw, "group")) c.kwic.group = parse_group(as_string(*v, "kwic.group"));
        if (const auto* v = member(*kw, "cooccur")) c.kwic.require_cooccurrence = as_bool(*v, "kwic.cooccur");
        if (const auto* v = member(*kw, "mode")) c.kwic_mode = parse_with(*v, "kwic.mode", parse_text_mode);
        if (const auto* v = member(*kw, "tag")) c.kwic_tag = as_string(*v, "kwic.tag");
    }

    if (const auto* st = member(doc, "stats")) {
        if (const auto* v = member(*st, "terms")) c.stats_terms = as_strings(*v, "stats.terms");
        if (const auto* v = member(*st, "groups")) {
            c.stats_groups.clear();
            for (const auto& g : as_strings(*v, "stats.groups")) {
                const auto group = parse_group(g);
                if (!group) {
                    c.stats_groups = {Gender::female, Gender::male};
                    break;
                }
                c.stats_groups.push_back(*group);
            }
        }
        if (const auto* v = member(*st, "from")) c.stats_from = as_date(*v, "stats.from");
        if (const auto* v = member(*st, "to")) c.stats_to = as_date(*v, "stats.to");
        if (const auto* v = member(*st, "portfolio")) c.stats_portfolio = as_string(*v, "stats.portfolio");
    }

    c.document = std::move(doc);
    return c;
}

LoadedCorpus load_corpus(const PipelineConfig& config) {
    LoadedCorpus corpus;
    corpus.registry = load_registry(config.registry);
    auto articles = load_articles(config.articles);
    for (auto& a : articles) {
        if (config.date_from && a.date < *config.date_from) continue;
        if (config.date_to && !(a.date < *config.date_to)) continue;
        corpus.articles.push_back(std::move(a));
    }
    if (config.gendered_signals) corpus.options.gendered = load_word_list(*config.gendered_signals);
    if (config.abbreviations) corpus.options.abbreviations = load_word_list(*config.abbreviations);
    return corpus;
}

std::vector<LabeledInstance> prepare_instances(const PipelineConfig& config, const LoadedCorpus& corpus) {
    auto instances = label_instances(corpus.articles, corpus.registry, corpus.options);
    if (!config.stoplist && !config.stem) return instances;
    const WordSet stoplist = config.stoplist ? load_word_list(*config.stoplist) : WordSet{};
    for (auto& inst : instances) {
        TokenStream s{std::move(inst.masked_tokens), std::move(inst.masked_sentences)};
        if (config.stoplist) s = remove_stopwords(s, stoplist);
        if (config.stem) s = stem(s);
        inst.masked_tokens = std::move(s.tokens);
        inst.masked_sentences = std::move(s.sentences);
    }
    return instances;
}

ExtractOptions FeatureResources::options(Window window) const {
    ExtractOptions o;
    o.window = window;
    o.tagger = tagger ? &*tagger : nullptr;
    o.lexicons = lexicons;
    return o;
}

FeatureResources load_resources(const PipelineConfig& config) {
    FeatureResources r;
    for (const auto& p : config.lexicons) r.lexicons.push_back(load_lexicon(p));
    if (config.pos_lexicon) r.tagger.emplace(load_pos_lexicon(*config.pos_lexicon));
    return r;
}

FeaturizedData featurize(std::span<const LabeledInstance> instances, Scheme scheme, Window window,
                         Representation representation, const FeatureResources& resources, int min_df) {
    const auto options = resources.options(window);
    std::vector<TermBag> bags;
    bags.reserve(instances.size());
    for (const auto& inst : instances) bags.push_back(extract_terms(inst, scheme, options));

    FeaturizedData out;
    out.space = build_space(bags, min_df);
    out.data.dimension = out.space.size();
    out.data.representation = representation;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        out.data.vectors.push_back(vectorize(bags[i], out.space, representation));
        out.data.labels.push_back(instances[i].label);
    }
    out.data.validate();
    return out;
}

std::vector<SweepRow> sweep(const PipelineConfig& config, std::span<const LabeledInstance> instances,
                            const FeatureResources& resources) {
    std::vector<SweepRow> rows;
    for (const auto scheme : config.sweep.schemes)
        for (const auto window : config.sweep.windows)
            for (const auto representation : config.sweep.representations) {
                std::string features_context;
                features_context.append(to_string(scheme)).append("/").append(to_string(window)).append("/");
                features_context.append(to_string(representation));
                const auto featurized = with_context("combination " + features_context, [&] {
                    return featurize(instances, scheme, window, representation, resources, config.min_df);
                });
                std::optional<Dataset> binary;
                for (const auto kind : config.sweep.classifiers) {
                    SweepRow row;
                    row.descriptor = descriptor_of(scheme, window, representation, kind);
                    row.scheme = scheme;
                    row.window = window;
                    row.representation = representation;
                    row.classifier = kind;
                    row.n_features = featurized.space.size();
                    ClassifierSpec spec = config.classifier;
                    spec.kind = kind;
                    const Dataset* data = &featurized.data;
                    if (kind == ClassifierKind::tree && representation != Representation::boolean) {
                        if (!binary) binary = binarize(featurized.data);
                        data = &*binary;
                    }
                    row.report = with_context("combination " + row.descriptor, [&] {
                        return cross_validate(*data, spec, config.k, config.seed, config.undersample);
                    });
                    row.report.descriptor = row.descriptor;
                    rows.push_back(std::move(row));
                }
            }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.descriptor < b.descriptor; });
    return rows;
}

RankedFeatures rank(const PipelineConfig& config, std::span<const LabeledInstance> instances,
                    const FeatureResources& resources) {
    auto featurized =
        featurize(instances, config.scheme, config.window, config.representation, resources, config.min_df);
    if (config.undersample) featurized.data = undersample(featurized.data, derive_seed(config.seed, 1));
    SvmParams params = config.classifier.svm;
    params.seed = derive_seed(config.seed, 2);
    const auto model = train_svm(featurized.data, params);
    return rank_features(model, featurized.space, config.rank_k);
}

std::vector<RateStat> term_stats(const PipelineConfig& config, const LoadedCorpus& corpus) {
    if (config.stats_terms.empty()) throw ConfigError("stats needs at least one term");
    DateRange window = registry_span(corpus.registry);
    if (config.stats_from) window.start = *config.stats_from;
    if (config.stats_to) window.end = *config.stats_to;
    if (!(window.start < window.end)) throw ConfigError("stats window is empty");

    const auto docs = build_concordance_docs(corpus.articles, corpus.registry, TextMode::raw, corpus.options);
    std::vector<RateStat> out;
    for (const auto& term : config.stats_terms)
        for (const auto g : config.stats_groups) {
            const double years = group_years(corpus.registry, g, window,
                                             config.stats_portfolio ? std::optional<std::string_view>(*config.stats_portfolio)
                                                                    : std::nullopt);
            const auto count = term_count(docs, term, g);
            out.push_back(with_context("term '" + term + "', group " + std::string(to_string(g)),
                                       [&] { return make_rate_stat(term, g, count, years); }));
        }
    return out;
}

void write_manifest(const PipelineConfig& config, std::string_view command) {
    nlohmann::ordered_json m;
    m["manifest_version"] = 1;
    m["version"] = kVersion;
    m["command"] = std::string(command);
    m["seed"] = config.seed;
    m["config_hash"] = hex64(config_hash(config.document));
    m["config"] = config.document;
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "manifest.json", m.dump(2) + "\n");
}

std::string run_ingest(const PipelineConfig& config) {
    const auto corpus = load_corpus(config);
    fs::create_directories(config.output_dir);
    {
        std::ostringstream out;
        write_articles(out, corpus.articles);
        write_file(config.output_dir / "articles.jsonl", out.str());
    }
    std::map<std::string, std::size_t> by_source;
    std::map<std::string, std::size_t> by_section;
    for (const auto& a : corpus.articles) {
        ++by_source[a.source];
        ++by_section[a.section];
    }
    nlohmann::ordered_json summary;
    summary["n_articles"] = corpus.articles.size();
    summary["n_politicians"] = corpus.registry.records().size();
    if (!corpus.articles.empty()) {
        const auto [lo, hi] = std::minmax_element(corpus.articles.begin(), corpus.articles.end(),
                                                  [](const Article& a, const Article& b) { return a.date < b.date; });
        summary["first_date"] = format_date(lo->date);
        summary["last_date"] = format_date(hi->date);
    }
    summary["by_source"] = by_source;
    summary["by_section"] = by_section;
    write_file(config.output_dir / "ingest.json", summary.dump(2) + "\n");
    write_manifest(config, "ingest");
    return std::to_string(corpus.articles.size()) + " articles, " +
           std::to_string(corpus.registry.records().size()) + " politicians";
}

std::string run_label(const PipelineConfig& config) {
    const auto corpus = load_corpus(config);
    const auto instances = prepare_instances(config, corpus);
    fs::create_directories(config.output_dir);

    std::string lines;
    std::array<std::size_t, 2> n{};
    std::array<std::size_t, 2> headline{};
    for (const auto& inst : instances) {
        nlohmann::ordered_json j;
        j["article_id"] = inst.article_id;
        j["label"] = std::string(to_string(inst.label));
        j["politician_ids"] = inst.politician_ids;
        j["headline_mention"] = inst.headline_mention;
        j["section"] = inst.section;
        j["text"] = join_tokens(inst.masked_tokens);
        lines += j.dump(-1, ' ', false, json::error_handler_t::replace) + "\n";
        ++n[static_cast<int>(inst.label)];
        if (inst.headline_mention) ++headline[static_cast<int>(inst.label)];
    }
    write_file(config.output_dir / "instances.jsonl", lines);

    std::string csv = "group,instances,headline_mentions,years,instances_per_year\n";
    std::optional<DateRange> span;
    try {
        span = registry_span(corpus.registry);
    } catch (const DataError&) {
    }
    for (const auto g : kGenders) {
        const auto i = static_cast<int>(g);
        csv.append(to_string(g)).append(",").append(std::to_string(n[i])).append(",");
        csv.append(std::to_string(headline[i])).append(",");
        const double years = span ? group_years(corpus.registry, g, *span) : 0.0;
        csv.append(fixed6(years)).append(",");
        if (years > 0.0) csv.append(fixed6(rate(n[i], years)));
        csv.append("\n");
    }
    write_file(config.output_dir / "volume.csv", csv);
    write_manifest(config, "label");
    return std::to_string(instances.size()) + " instances (" + std::to_string(n[0]) + " female, " +
           std::to_string(n[1]) + " male)";
}

std::string run_sweep(const PipelineConfig& config) {
    const auto corpus = load_corpus(config);
    const auto instances = prepare_instances(config, corpus);
    const auto resources = load_resources(config);
    const auto rows = sweep(config, instances, resources);

    std::string csv = "descriptor,scheme,window,representation,classifier,n_instances,n_features,k,undersampled,"
                      "mean_accuracy,majority_baseline\n";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        csv.append(r.descriptor).append(",");
        csv.append(to_string(r.scheme)).append(",").append(to_string(r.window)).append(",");
        csv.append(to_string(r.representation)).append(",").append(to_string(r.classifier)).append(",");
        csv.append(std::to_string(r.report.n_instances)).append(",").append(std::to_string(r.n_features)).append(",");
        csv.append(std::to_string(r.report.k)).append(",").append(r.report.undersampled ? "true" : "false");
        csv.append(",").append(fixed6(r.report.mean_accuracy)).append(",");
        csv.append(fixed6(r.report.majority_baseline)).append("\n");

        nlohmann::ordered_json j;
        j["descriptor"] = r.descriptor;
        j["scheme"] = std::string(to_string(r.scheme));
        j["window"] = std::string(to_string(r.window));
        j["representation"] = std::string(to_string(r.representation));
        j["classifier"] = std::string(to_string(r.classifier));
        j["n_features"] = r.n_features;
        j["report"] = nlohmann::ordered_json::parse(to_json(r.report, -1));
        arr.push_back(std::move(j));
    }
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "sweep.csv", csv);
    write_file(config.output_dir / "sweep.json", arr.dump(2) + "\n");
    write_manifest(config, "sweep");
    return std::to_string(rows.size()) + " combinations";
}

std::string run_rank(const PipelineConfig& config) {
    const auto corpus = load_corpus(config);
    const auto instances = prepare_instances(config, corpus);
    const auto ranked = rank(config, instances, load_resources(config));

    std::string csv = "group,rank,kind,term,weight\n";
    const auto emit = [&](std::string_view group, const std::vector<RankedFeature>& list) {
        for (std::size_t i = 0; i < list.size(); ++i) {
            char w[64];
            std::snprintf(w, sizeof w, "%.9g", list[i].weight);
            csv.append(group).append(",").append(std::to_string(i + 1)).append(",");
            csv.append(to_string(list[i].kind)).append(",").append(list[i].surface).append(",").append(w);
            csv.append("\n");
        }
    };
    emit("female", ranked.female);
    emit("male", ranked.male);
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "rank.csv", csv);
    write_manifest(config, "rank");
    return std::to_string(ranked.female.size()) + " female and " + std::to_string(ranked.male.size()) +
           " male features";
}

std::string run_kwic(const PipelineConfig& config) {
    if (config.kwic.term.empty()) throw ConfigError("kwic needs a term");
    const auto corpus = load_corpus(config);
    const auto docs = build_concordance_docs(corpus.articles, corpus.registry, config.kwic_mode, corpus.options);
    const auto lines = kwic(docs, config.kwic);
    std::ostringstream out;
    write_kwic_csv(out, lines, config.kwic_tag);
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "kwic.csv", out.str());
    write_manifest(config, "kwic");
    return std::to_string(lines.size()) + " lines";
}

std::string run_stats(const PipelineConfig& config) {
    const auto corpus = load_corpus(config);
    const auto stats = term_stats(config, corpus);
    std::ostringstream out;
    write_stats_csv(out, stats);
    fs::create_directories(config.output_dir);
    write_file(config.output_dir / "stats.csv", out.str());
    write_manifest(config, "stats");

    std::string summary;
    for (const auto& s : stats) {
        if (!summary.empty()) summary += "; ";
        summary += s.term + " " + std::string(to_string(s.group)) + " " + fixed6(s.rate) + "/yr";
    }
    return summary;
}

} // namespace newsbias
