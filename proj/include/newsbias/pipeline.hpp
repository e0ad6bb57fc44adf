#pragma once

#include "newsbias/corpus.hpp"
#include "newsbias/features.hpp"
#include "newsbias/interpret.hpp"
#include "newsbias/learn.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace newsbias {

inline constexpr const char* kVersion = "0.1.0";

/// A CLI flag rewritten as a config edit: `value` is stored at the JSON
/// pointer, creating intermediate objects as needed.
struct Override {
    std::string pointer;
    nlohmann::json value;
};

struct SweepGrid {
    std::vector<Scheme> schemes;
    std::vector<Window> windows;
    std::vector<Representation> representations;
    std::vector<ClassifierKind> classifiers;
};

/// Everything a run needs. Relative paths in the config file are resolved
/// against the file's directory; `document` keeps the resolved config
/// (absolute paths, no output directory) and is what the manifest stores
/// and hashes.
struct PipelineConfig {
    nlohmann::json document;
    std::filesystem::path output_dir;
    // Set when the config came from a manifest: the command it recorded.
    std::optional<std::string> manifest_command;

    std::filesystem::path articles;
    std::filesystem::path registry;
    std::optional<std::filesystem::path> stoplist;
    std::optional<std::filesystem::path> gendered_signals;
    std::optional<std::filesystem::path> abbreviations;
    std::vector<std::filesystem::path> lexicons;
    std::optional<std::filesystem::path> pos_lexicon;

    Scheme scheme = Scheme::unigram;
    Window window = Window::article;
    Representation representation = Representation::boolean;
    ClassifierSpec classifier;
    std::size_t k = 10;
    std::uint64_t seed = 42;
    int min_df = kDefaultMinDf;
    bool undersample = false;
    bool stem = false;
    std::optional<Date> date_from;  // articles dated in [date_from, date_to)
    std::optional<Date> date_to;

    SweepGrid sweep;

    std::size_t rank_k = 10;

    KwicQuery kwic;
    TextMode kwic_mode = TextMode::raw;
    std::string kwic_tag;

    std::vector<std::string> stats_terms;
    std::vector<Gender> stats_groups{Gender::female, Gender::male};
    std::optional<Date> stats_from;
    std::optional<Date> stats_to;
    std::optional<std::string> stats_portfolio;
};

/// Reads a config file, or the config stored in a run manifest. Missing
/// input files and malformed values are ConfigErrors. Without an
/// `output_dir` the output goes to `out/` next to a config file, or to the
/// manifest's own directory.
PipelineConfig load_config(const std::filesystem::path& file, std::span<const Override> overrides = {});
PipelineConfig parse_config(nlohmann::json document, const std::filesystem::path& base_dir,
                            std::span<const Override> overrides = {});

/// FNV-1a 64 over the compact, key-sorted serialization.
std::uint64_t config_hash(const nlohmann::json& document);

struct LoadedCorpus {
    std::vector<Article> articles;  // after the date filter
    Registry registry;
    LabelOptions options;
};

LoadedCorpus load_corpus(const PipelineConfig& config);

/// Labeled instances with the stoplist and stemming applied to the masked
/// tokens.
std::vector<LabeledInstance> prepare_instances(const PipelineConfig& config, const LoadedCorpus& corpus);

/// Lexicons and the POS tagger named by the config.
struct FeatureResources {
    std::vector<LexiconSet> lexicons;
    std::optional<LexiconTagger> tagger;

    ExtractOptions options(Window window) const;
};

FeatureResources load_resources(const PipelineConfig& config);

struct FeaturizedData {
    FeatureSpace space;
    Dataset data;
};

FeaturizedData featurize(std::span<const LabeledInstance> instances, Scheme scheme, Window window,
                         Representation representation, const FeatureResources& resources, int min_df);

struct SweepRow {
    std::string descriptor;  // scheme/window/representation/classifier
    Scheme scheme = Scheme::unigram;
    Window window = Window::article;
    Representation representation = Representation::boolean;
    ClassifierKind classifier = ClassifierKind::svm;
    std::size_t n_features = 0;
    CVReport report;
};

/// Cross-validates every grid combination, rows sorted by descriptor. An
/// error names the combination that failed.
std::vector<SweepRow> sweep(const PipelineConfig& config, std::span<const LabeledInstance> instances,
                            const FeatureResources& resources);

/// Trains the linear SVM on all instances of the configured scheme,
/// window and representation and ranks its weights.
RankedFeatures rank(const PipelineConfig& config, std::span<const LabeledInstance> instances,
                    const FeatureResources& resources);

std::vector<RateStat> term_stats(const PipelineConfig& config, const LoadedCorpus& corpus);

/// Subcommand drivers. Each writes its outputs plus manifest.json under
/// config.output_dir and returns a one-line summary.
std::string run_ingest(const PipelineConfig& config);
std::string run_label(const PipelineConfig& config);
std::string run_sweep(const PipelineConfig& config);
std::string run_rank(const PipelineConfig& config);
std::string run_kwic(const PipelineConfig& config);
std::string run_stats(const PipelineConfig& config);

/// manifest.json: version, command, seed, config hash and config.
void write_manifest(const PipelineConfig& config, std::string_view command);

} // namespace newsbias
