#pragma once

#include "newsbias/features.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace newsbias {

struct Dataset {
    std::vector<FeatureVector> vectors;
    std::vector<Gender> labels;
    std::size_t dimension = 0;
    Representation representation = Representation::boolean;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t count(Gender g) const noexcept;
    /// Throws DataError on length mismatch or ids outside the dimension.
    void validate() const;
    Dataset subset(std::span<const std::size_t> indices) const;
};

/// Same vectors with every present feature set to 1.
Dataset binarize(const Dataset& dataset);

/// Always predicting the most frequent class.
double majority_baseline(std::span<const Gender> labels);

/// Indices kept by under-sampling: the whole minority class plus an equal
/// number of majority instances drawn without replacement, in input order.
std::vector<std::size_t> undersample_indices(std::span<const Gender> labels, std::uint64_t seed);
Dataset undersample(const Dataset& dataset, std::uint64_t seed);

/// Stratified k-fold split. Each class is shuffled with the seeded
/// generator (female first, then male) and dealt round-robin over the
/// folds, the male deal continuing where the female one stopped. Every
/// fold is returned sorted.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const Gender> labels, std::size_t k,
                                                       std::uint64_t seed);

// ---------------------------------------------------------------------------
// Linear SVM

struct SvmParams {
    double lambda = 1e-4;
    int epochs = 20;
    std::uint64_t seed = 0;
};

/// score = w.x + b; score >= 0 predicts female.
struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    double lambda = 0.0;
    // Objective of the end-of-epoch iterate, and the running best that the
    // returned model corresponds to.
    std::vector<double> epoch_objective;
    std::vector<double> best_objective;

    double score(const FeatureVector& v) const;
};

/// lambda/2 * (|w|^2 + b^2) + mean hinge loss, with y = +1 for female.
double svm_objective(const Dataset& data, std::span<const double> weights, double bias, double lambda);

/// Pegasos: epoch-wise seeded shuffles, step 1/(lambda t), projection onto
/// the 1/sqrt(lambda) ball. The bias is an extra constant feature and is
/// regularized with the weights. The end-of-epoch iterate with the lowest
/// training objective is returned.
LinearModel train_svm(const Dataset& data, const SvmParams& params);

// ---------------------------------------------------------------------------
// Naive Bayes

enum class BayesVariant { bernoulli, multinomial };
std::string_view to_string(BayesVariant v) noexcept;

struct NbParams {
    double alpha = 1.0;
    // Defaults to bernoulli for boolean data and multinomial otherwise.
    std::optional<BayesVariant> variant;
};

struct BayesModel {
    BayesVariant variant = BayesVariant::bernoulli;
    double alpha = 1.0;
    std::array<double, 2> log_prior{};
    // [class][feature]
    std::array<std::vector<double>, 2> log_theta;
    std::array<std::vector<double>, 2> log_one_minus_theta;  // bernoulli only
    std::array<double, 2> absent_base{};                      // sum of log(1 - theta), bernoulli only

    std::size_t dimension() const noexcept { return log_theta[0].size(); }
    /// log P(c) + log P(x | c) for each class.
    std::array<double, 2> log_joint(const FeatureVector& v) const;
    std::array<double, 2> log_posterior(const FeatureVector& v) const;
};

/// Maximum likelihood with additive smoothing alpha. Bernoulli needs a
/// boolean dataset (ConfigError otherwise).
BayesModel train_nb(const Dataset& data, BayesVariant variant, double alpha);

// ---------------------------------------------------------------------------
// Decision tree

struct TreeParams {
    int max_depth = 32;
    int min_leaf = 2;
};

struct TreeModel {
    struct Node {
        std::int64_t feature = -1;  // -1 for leaves
        std::uint32_t absent = 0;   // child indices, internal nodes only
        std::uint32_t present = 0;
        Gender label = Gender::female;
        std::array<std::size_t, 2> counts{};
        int depth = 0;
    };

    std::vector<Node> nodes;  // nodes[0] is the root
    std::size_t dimension = 0;
    int max_depth = 0;
    int min_leaf = 0;

    int depth() const;
    std::size_t leaves() const;
};

/// C4.5-style induction over presence/absence splits: among splits whose
/// children both hold min_leaf instances and whose information gain is
/// positive and at least the average positive gain, the best gain ratio
/// wins (lowest feature id on ties). Growth stops at pure nodes, at
/// max_depth, or below 2 * min_leaf instances. Needs boolean data.
TreeModel train_tree(const Dataset& data, const TreeParams& params);

// ---------------------------------------------------------------------------
// Shared interface

enum class ClassifierKind { svm, naive_bayes, tree };
std::string_view to_string(ClassifierKind k) noexcept;
ClassifierKind parse_classifier(std::string_view text);

struct ClassifierSpec {
    ClassifierKind kind = ClassifierKind::svm;
    SvmParams svm;
    NbParams nb;
    TreeParams tree;
};

using Model = std::variant<LinearModel, BayesModel, TreeModel>;

/// Trains the requested classifier; `seed` overrides svm.seed.
Model train(const Dataset& data, const ClassifierSpec& spec, std::uint64_t seed);

/// Throws DataError when the vector has ids outside the model dimension.
Gender predict(const Model& model, const FeatureVector& v);
Gender predict(const LinearModel& model, const FeatureVector& v);
Gender predict(const BayesModel& model, const FeatureVector& v);
Gender predict(const TreeModel& model, const FeatureVector& v);

double accuracy(const Model& model, const Dataset& data);

struct CVReport {
    std::string descriptor;
    std::string classifier;
    std::string representation;
    std::size_t k = 0;
    std::uint64_t seed = 0;
    bool undersampled = false;
    std::size_t n_instances = 0;
    std::vector<double> per_fold_accuracy;
    double mean_accuracy = 0.0;
    // [actual][predicted], female = 0.
    std::array<std::array<std::size_t, 2>, 2> confusion{};
    double majority_baseline = 0.0;
};

/// Stratified k-fold evaluation. Under-sampling, when requested, applies
/// to each training portion only. Fold f under-samples with
/// derive_seed(seed, 2f + 1) and trains with derive_seed(seed, 2f + 2).
CVReport cross_validate(const Dataset& data, const ClassifierSpec& spec, std::size_t k, std::uint64_t seed,
                        bool undersample = false);

std::string to_json(const CVReport& report, int indent = 2);

} // namespace newsbias
