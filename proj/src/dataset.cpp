#include "newsbias/error.hpp"
#include "newsbias/learn.hpp"
#include "newsbias/rng.hpp"

#include <algorithm>
#include <array>

namespace newsbias {

std::size_t Dataset::count(Gender g) const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), g));
}

void Dataset::validate() const {
    if (vectors.size() != labels.size())
        throw DataError("dataset has " + std::to_string(vectors.size()) + " vectors but " +
                        std::to_string(labels.size()) + " labels");
    for (const auto& v : vectors) {
        std::int64_t prev = -1;
        for (const auto& e : v.entries) {
            if (e.id >= dimension) throw DataError("feature id " + std::to_string(e.id) + " outside dimension");
            if (static_cast<std::int64_t>(e.id) <= prev) throw InvariantError("feature ids not strictly increasing");
            if (!(e.value > 0.0)) throw InvariantError("non-positive feature value");
            prev = e.id;
        }
    }
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
    Dataset out;
    out.dimension = dimension;
    out.representation = representation;
    out.vectors.reserve(indices.size());
    out.labels.reserve(indices.size());
    for (const auto i : indices) {
        out.vectors.push_back(vectors.at(i));
        out.labels.push_back(labels.at(i));
    }
    return out;
}

Dataset binarize(const Dataset& dataset) {
    Dataset out = dataset;
    out.representation = Representation::boolean;
    for (auto& v : out.vectors) {
        v.representation = Representation::boolean;
        for (auto& e : v.entries) e.value = 1.0;
    }
    return out;
}

double majority_baseline(std::span<const Gender> labels) {
    if (labels.empty()) throw DataError("majority baseline of an empty dataset");
    const auto female = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), Gender::female));
    return static_cast<double>(std::max(female, labels.size() - female)) / static_cast<double>(labels.size());
}

std::vector<std::size_t> undersample_indices(std::span<const Gender> labels, std::uint64_t seed) {
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<int>(labels[i])].push_back(i);
    if (by_class[0].empty() || by_class[1].empty()) throw DataError("under-sampling needs both classes present");

    const int minority = by_class[0].size() <= by_class[1].size() ? 0 : 1;
    auto& majority = by_class[1 - minority];
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(majority));
    majority.resize(by_class[minority].size());

    std::vector<std::size_t> kept = by_class[minority];
    kept.insert(kept.end(), majority.begin(), majority.end());
    std::sort(kept.begin(), kept.end());
    return kept;
}

Dataset undersample(const Dataset& dataset, std::uint64_t seed) {
    const auto kept = undersample_indices(dataset.labels, seed);
    return dataset.subset(kept);
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const Gender> labels, std::size_t k,
                                                       std::uint64_t seed) {
    if (k < 2) throw ConfigError("k must be at least 2");
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[static_cast<int>(labels[i])].push_back(i);
    for (const Gender g : kGenders)
        if (by_class[static_cast<int>(g)].size() < k)
            throw DataError("class " + std::string(to_string(g)) + " has " +
                            std::to_string(by_class[static_cast<int>(g)].size()) + " instances, fewer than k=" +
                            std::to_string(k));

    Rng rng(seed);
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t next = 0;
    for (auto& members : by_class) {
        rng.shuffle(std::span<std::size_t>(members));
        for (const auto i : members) {
            folds[next].push_back(i);
            next = (next + 1) % k;
        }
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

} // namespace newsbias
