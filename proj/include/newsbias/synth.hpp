#pragma once

#include "newsbias/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace newsbias {

/// A word planted into articles at class-dependent rates. Each filler
/// word slot of an article is replaced by the term independently with
/// probability p_female or p_male, depending on the article's label.
struct PlantedTerm {
    std::string term;
    double p_female = 0.0;
    double p_male = 0.0;
};

/// Parses `term:p_female:p_male`.
PlantedTerm parse_planted_term(std::string_view spec);

struct SynthParams {
    std::size_t n_articles = 2000;
    double female_share = 0.5;
    std::vector<PlantedTerm> planted;
    std::uint64_t seed = 1;
};

/// Articles that each feature one minister from a fixed twelve-person
/// registry (six women, six men). Apart from planted terms, everything the
/// classifier can see after masking is drawn from the same distribution
/// for both genders: filler vocabulary, sections, sources, name forms and
/// the rate of pronouns and titles. Labels are exact: round(n * share)
/// female articles, the rest male, in shuffled order.
struct SynthCorpus {
    std::vector<Article> articles;
    Registry registry;
    std::vector<Gender> labels;  // the gender each article was written for
};

SynthCorpus generate_synthetic(const SynthParams& params);

/// Writes articles.jsonl, registry.json and a ready-to-run config.json.
void write_synthetic(const SynthCorpus& corpus, const SynthParams& params, const std::filesystem::path& dir);

} // namespace newsbias
