#include "newsbias/error.hpp"
#include "newsbias/learn.hpp"
#include "newsbias/rng.hpp"

#include <nlohmann/json.hpp>

#include <future>
#include <numeric>

namespace newsbias {

std::string_view to_string(ClassifierKind k) noexcept {
    switch (k) {
    case ClassifierKind::svm: return "svm";
    case ClassifierKind::naive_bayes: return "nb";
    case ClassifierKind::tree: return "tree";
    }
    return "svm";
}

ClassifierKind parse_classifier(std::string_view text) {
    if (text == "svm") return ClassifierKind::svm;
    if (text == "nb" || text == "naive_bayes") return ClassifierKind::naive_bayes;
    if (text == "tree" || text == "j48") return ClassifierKind::tree;
    throw ConfigError("unknown classifier '" + std::string(text) + "', expected svm, nb or tree");
}

Model train(const Dataset& data, const ClassifierSpec& spec, std::uint64_t seed) {
    switch (spec.kind) {
    case ClassifierKind::svm: {
        auto params = spec.svm;
        params.seed = seed;
        return train_svm(data, params);
    }
    case ClassifierKind::naive_bayes: {
        const auto variant = spec.nb.variant.value_or(data.representation == Representation::boolean
                                                          ? BayesVariant::bernoulli
                                                          : BayesVariant::multinomial);
        return train_nb(data, variant, spec.nb.alpha);
    }
    case ClassifierKind::tree:
        return train_tree(data, spec.tree);
    }
    throw InvariantError("unhandled classifier kind");
}

Gender predict(const LinearModel& model, const FeatureVector& v) {
    return model.score(v) >= 0.0 ? Gender::female : Gender::male;
}

Gender predict(const BayesModel& model, const FeatureVector& v) {
    const auto j = model.log_joint(v);
    return j[0] >= j[1] ? Gender::female : Gender::male;
}

Gender predict(const Model& model, const FeatureVector& v) {
    return std::visit([&](const auto& m) { return predict(m, v); }, model);
}

double accuracy(const Model& model, const Dataset& data) {
    if (data.size() == 0) throw DataError("accuracy of an empty dataset");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i)
        if (predict(model, data.vectors[i]) == data.labels[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

CVReport cross_validate(const Dataset& data, const ClassifierSpec& spec, std::size_t k, std::uint64_t seed,
                        bool undersample) {
    data.validate();
    const auto folds = stratified_folds(data.labels, k, seed);

    struct FoldResult {
        double accuracy = 0.0;
        std::array<std::array<std::size_t, 2>, 2> confusion{};
    };

    auto run_fold = [&](std::size_t f) {
        std::vector<std::size_t> train_idx;
        train_idx.reserve(data.size());
        for (std::size_t g = 0; g < k; ++g)
            if (g != f) train_idx.insert(train_idx.end(), folds[g].begin(), folds[g].end());
        std::sort(train_idx.begin(), train_idx.end());
        Dataset training = data.subset(train_idx);
        if (undersample) training = newsbias::undersample(training, derive_seed(seed, 2 * f + 1));
        const Model model = train(training, spec, derive_seed(seed, 2 * f + 2));

        FoldResult r;
        std::size_t correct = 0;
        for (const auto i : folds[f]) {
            const auto predicted = predict(model, data.vectors[i]);
            ++r.confusion[static_cast<int>(data.labels[i])][static_cast<int>(predicted)];
            if (predicted == data.labels[i]) ++correct;
        }
        r.accuracy = static_cast<double>(correct) / static_cast<double>(folds[f].size());
        return r;
    };

    std::vector<std::future<FoldResult>> pending;
    pending.reserve(k);
    for (std::size_t f = 0; f < k; ++f) pending.push_back(std::async(std::launch::async, run_fold, f));

    CVReport report;
    report.classifier = std::string(to_string(spec.kind));
    report.representation = std::string(to_string(data.representation));
    report.k = k;
    report.seed = seed;
    report.undersampled = undersample;
    report.n_instances = data.size();
    report.majority_baseline = majority_baseline(data.labels);
    for (auto& p : pending) {
        const auto r = p.get();
        report.per_fold_accuracy.push_back(r.accuracy);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) report.confusion[a][b] += r.confusion[a][b];
    }
    report.mean_accuracy = std::accumulate(report.per_fold_accuracy.begin(), report.per_fold_accuracy.end(), 0.0) /
                           static_cast<double>(k);
    return report;
}

std::string to_json(const CVReport& report, int indent) {
    nlohmann::ordered_json j;
    j["descriptor"] = report.descriptor;
    j["classifier"] = report.classifier;
    j["representation"] = report.representation;
    j["k"] = report.k;
    j["seed"] = report.seed;
    j["undersampled"] = report.undersampled;
    j["n_instances"] = report.n_instances;
    j["per_fold_accuracy"] = report.per_fold_accuracy;
    j["mean_accuracy"] = report.mean_accuracy;
    j["confusion"] = {{"female", {{"female", report.confusion[0][0]}, {"male", report.confusion[0][1]}}},
                      {"male", {{"female", report.confusion[1][0]}, {"male", report.confusion[1][1]}}}};
    j["majority_baseline"] = report.majority_baseline;
    return j.dump(indent);
}

} // namespace newsbias
