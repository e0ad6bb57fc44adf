// Command-line front-end. Every flag except --config is an override of a
// config key, so a run is fully described by the resolved config that the
// manifest records.

#include "newsbias/error.hpp"
#include "newsbias/pipeline.hpp"
#include "newsbias/synth.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace newsbias;

namespace {

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool needs_config) {
    auto* opt = cmd->add_option("--config", flags.config, "config JSON or a run manifest");
    if (needs_config) opt->required();
    cmd->add_option("--seed", flags.seed, "random seed (unsigned 64-bit)");
    cmd->add_option("--out", flags.out, "output directory");
    cmd->add_option("--set", flags.sets, "override POINTER=JSON, e.g. /svm/lambda=0.001")->take_all();
}

std::vector<Override> common_overrides(const CommonFlags& flags) {
    std::vector<Override> out;
    if (flags.seed) out.push_back({"/seed", *flags.seed});
    if (flags.out) out.push_back({"/output_dir", fs::absolute(*flags.out).lexically_normal().string()});
    for (const auto& s : flags.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects POINTER=JSON, got '" + s + "'");
        nlohmann::json value;
        try {
            value = nlohmann::json::parse(s.substr(eq + 1));
        } catch (const nlohmann::json::exception&) {
            value = s.substr(eq + 1);  // bare words are taken as strings
        }
        out.push_back({s.substr(0, eq), std::move(value)});
    }
    return out;
}

PipelineConfig resolve(const CommonFlags& flags, std::vector<Override> overrides, std::string_view command) {
    auto all = common_overrides(flags);
    all.insert(all.end(), overrides.begin(), overrides.end());
    auto config = load_config(flags.config, all);
    if (config.manifest_command && *config.manifest_command != command)
        throw ConfigError("manifest records command '" + *config.manifest_command + "', not '" +
                          std::string(command) + "'");
    return config;
}

int fail(int code, const char* kind, const std::exception& e) {
    std::fprintf(stderr, "newsbias: %s: %s\n", kind, e.what());
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gender-bias analysis of political news coverage"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::function<std::string()> action;

    CommonFlags ingest_flags;
    auto* ingest = app.add_subcommand("ingest", "validate and normalize the article corpus and registry");
    add_common(ingest, ingest_flags, true);
    ingest->callback([&] { action = [&] { return run_ingest(resolve(ingest_flags, {}, "ingest")); }; });

    CommonFlags label_flags;
    auto* label = app.add_subcommand("label", "match politicians, label and mask articles");
    add_common(label, label_flags, true);
    label->callback([&] { action = [&] { return run_label(resolve(label_flags, {}, "label")); }; });

    CommonFlags sweep_flags;
    std::optional<std::uint64_t> sweep_k;
    std::optional<bool> sweep_undersample;
    auto* sweep_cmd = app.add_subcommand("sweep", "cross-validate every scheme x representation x classifier");
    add_common(sweep_cmd, sweep_flags, true);
    sweep_cmd->add_option("--folds", sweep_k, "number of folds");
    sweep_cmd->add_flag("--undersample,!--no-undersample", sweep_undersample, "balance training folds");
    sweep_cmd->callback([&] {
        action = [&] {
            std::vector<Override> o;
            if (sweep_k) o.push_back({"/k", *sweep_k});
            if (sweep_undersample) o.push_back({"/undersample", *sweep_undersample});
            return run_sweep(resolve(sweep_flags, std::move(o), "sweep"));
        };
    });

    CommonFlags rank_flags;
    std::optional<std::uint64_t> rank_top;
    auto* rank_cmd = app.add_subcommand("rank", "list the most discriminative features per gender");
    add_common(rank_cmd, rank_flags, true);
    rank_cmd->add_option("--top", rank_top, "features per list");
    rank_cmd->callback([&] {
        action = [&] {
            std::vector<Override> o;
            if (rank_top) o.push_back({"/rank/k", *rank_top});
            return run_rank(resolve(rank_flags, std::move(o), "rank"));
        };
    });

    CommonFlags kwic_flags;
    std::optional<std::string> kwic_term, kwic_group, kwic_mode, kwic_tag;
    std::optional<std::uint64_t> kwic_window;
    bool kwic_cooccur = false;
    auto* kwic_cmd = app.add_subcommand("kwic", "concordance lines for a word");
    add_common(kwic_cmd, kwic_flags, true);
    kwic_cmd->add_option("--term", kwic_term, "word to look up");
    kwic_cmd->add_option("--window", kwic_window, "tokens of context per side");
    kwic_cmd->add_option("--group", kwic_group, "female, male or all");
    kwic_cmd->add_option("--mode", kwic_mode, "raw or masked");
    kwic_cmd->add_option("--tag", kwic_tag, "value for the tag column");
    kwic_cmd->add_flag("--cooccur", kwic_cooccur, "only sentences that name a politician");
    kwic_cmd->callback([&] {
        action = [&] {
            std::vector<Override> o;
            if (kwic_term) o.push_back({"/kwic/term", *kwic_term});
            if (kwic_window) o.push_back({"/kwic/window", *kwic_window});
            if (kwic_group) o.push_back({"/kwic/group", *kwic_group});
            if (kwic_mode) o.push_back({"/kwic/mode", *kwic_mode});
            if (kwic_tag) o.push_back({"/kwic/tag", *kwic_tag});
            if (kwic_cooccur) o.push_back({"/kwic/cooccur", true});
            return run_kwic(resolve(kwic_flags, std::move(o), "kwic"));
        };
    });

    CommonFlags stats_flags;
    std::vector<std::string> stats_terms, stats_groups;
    std::optional<std::string> stats_from, stats_to, stats_portfolio;
    auto* stats_cmd = app.add_subcommand("stats", "term counts per year in office");
    add_common(stats_cmd, stats_flags, true);
    stats_cmd->add_option("--term", stats_terms, "word to count (repeatable)");
    stats_cmd->add_option("--group", stats_groups, "female, male or all (repeatable)");
    stats_cmd->add_option("--from", stats_from, "start of the office window, YYYY-MM-DD");
    stats_cmd->add_option("--to", stats_to, "end of the office window (exclusive)");
    stats_cmd->add_option("--portfolio", stats_portfolio, "count only terms in this portfolio");
    stats_cmd->callback([&] {
        action = [&] {
            std::vector<Override> o;
            if (!stats_terms.empty()) o.push_back({"/stats/terms", stats_terms});
            if (!stats_groups.empty()) o.push_back({"/stats/groups", stats_groups});
            if (stats_from) o.push_back({"/stats/from", *stats_from});
            if (stats_to) o.push_back({"/stats/to", *stats_to});
            if (stats_portfolio) o.push_back({"/stats/portfolio", *stats_portfolio});
            return run_stats(resolve(stats_flags, std::move(o), "stats"));
        };
    });

    std::uint64_t synth_seed = 1;
    std::string synth_out;
    std::size_t synth_n = 2000;
    double synth_share = 0.5;
    std::vector<std::string> synth_plant;
    auto* synth = app.add_subcommand("gen-synth", "write a synthetic corpus with planted terms");
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->add_option("--seed", synth_seed, "random seed");
    synth->add_option("--n", synth_n, "number of articles");
    synth->add_option("--female-share", synth_share, "share of female-labeled articles");
    synth->add_option("--plant", synth_plant, "TERM:P_FEMALE:P_MALE, per filler word (repeatable)");
    synth->callback([&] {
        action = [&] {
            SynthParams params;
            params.n_articles = synth_n;
            params.female_share = synth_share;
            params.seed = synth_seed;
            for (const auto& p : synth_plant) params.planted.push_back(parse_planted_term(p));
            const auto corpus = generate_synthetic(params);
            write_synthetic(corpus, params, synth_out);
            return std::to_string(corpus.articles.size()) + " articles written to " + synth_out;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        std::cout << action() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        return fail(1, "config error", e);
    } catch (const DataError& e) {
        return fail(2, "data error", e);
    } catch (const InvariantError& e) {
        return fail(3, "internal error", e);
    } catch (const std::exception& e) {
        return fail(3, "internal error", e);
    }
}
