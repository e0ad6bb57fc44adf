#pragma once

// Fixtures, generators and brute-force oracles shared by the unit tests
// and the acceptance runner. The oracles deliberately avoid the library's
// own helpers so that agreement means something.

#include "newsbias/corpus.hpp"
#include "newsbias/learn.hpp"
#include "newsbias/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace testsupport {

using namespace newsbias;

inline Dataset dense_dataset(const std::vector<std::vector<double>>& rows, const std::vector<Gender>& labels,
                             Representation rep = Representation::boolean) {
    Dataset d;
    d.representation = rep;
    d.dimension = rows.empty() ? 0 : rows.front().size();
    d.labels = labels;
    for (const auto& row : rows) {
        FeatureVector v;
        v.representation = rep;
        for (std::uint32_t j = 0; j < row.size(); ++j)
            if (row[j] != 0.0) v.entries.push_back({j, row[j]});
        d.vectors.push_back(std::move(v));
    }
    return d;
}

inline std::vector<double> densify(const FeatureVector& v, std::size_t dim) {
    std::vector<double> x(dim, 0.0);
    for (const auto& e : v.entries) x[e.id] = e.value;
    return x;
}

inline std::vector<Gender> labels_of(std::size_t n_female, std::size_t n_male) {
    std::vector<Gender> out(n_female, Gender::female);
    out.insert(out.end(), n_male, Gender::male);
    return out;
}

inline Date ymd(int y, unsigned m, unsigned d) {
    return Date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
}

// ---------------------------------------------------------------------------
// Small fixtures.

struct DenseFixture {
    std::vector<std::vector<double>> rows;
    std::vector<Gender> labels;
};

// Six boolean instances over three features.
inline DenseFixture nb_toy() {
    return {{{1, 0, 1}, {1, 1, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 1, 0}},
            labels_of(3, 3)};
}

// Eight boolean instances over four features; the best depth-2 tree
// misclassifies one of them.
// Both depth-2 subtrees are needed; the best stump gets 5 of 8.
inline DenseFixture tree_fixture() {
    return {{{0, 1, 0, 1}, {0, 0, 1, 1}, {1, 1, 1, 0}, {1, 1, 0, 0}, {0, 1, 0, 0}, {1, 0, 1, 1}, {0, 0, 0, 0}, {0, 1, 1, 0}},
            labels_of(4, 4)};
}

// Greedy gain ratio picks feature 0 at the root and ends at 7 of 8; splitting on
// feature 1 first reaches 8 of 8.
inline DenseFixture greedy_miss_fixture() {
    using G = Gender;
    return {{{1, 0, 0, 1}, {1, 0, 1, 0}, {1, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 1, 0}, {0, 0, 1, 1}, {0, 1, 0, 0}, {0, 0, 0, 1}},
            {G::female, G::female, G::female, G::male, G::female, G::male, G::male, G::male}};
}

// Eight separable points in the positive quadrant, female where x0 > x1.
inline DenseFixture svm_fixture() {
    return {{{4, 1}, {5, 2}, {4, 3}, {5, 1}, {1, 4}, {2, 5}, {1, 3}, {2, 4}}, labels_of(4, 4)};
}

inline constexpr double kSvmFixtureLambda = 1.0;
inline constexpr int kSvmFixtureEpochs = 500;

// ---------------------------------------------------------------------------
// Naive Bayes, computed from raw counts for one query vector.

inline std::array<double, 2> nb_oracle_log_posterior(const std::vector<std::vector<double>>& rows,
                                                     const std::vector<Gender>& labels,
                                                     const std::vector<double>& x, bool bernoulli, double alpha) {
    const std::size_t d = x.size();
    std::array<double, 2> joint{};
    for (int c = 0; c < 2; ++c) {
        double n_c = 0.0;
        std::vector<double> per_feature(d, 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(labels[i]) != c) continue;
            n_c += 1.0;
            for (std::size_t j = 0; j < d; ++j) {
                per_feature[j] += bernoulli ? (rows[i][j] != 0.0 ? 1.0 : 0.0) : rows[i][j];
                total += rows[i][j];
            }
        }
        double lp = std::log(n_c / static_cast<double>(rows.size()));
        for (std::size_t j = 0; j < d; ++j) {
            if (bernoulli) {
                const double theta = (per_feature[j] + alpha) / (n_c + 2.0 * alpha);
                lp += x[j] != 0.0 ? std::log(theta) : std::log(1.0 - theta);
            } else {
                const double theta = (per_feature[j] + alpha) / (total + alpha * static_cast<double>(d));
                lp += x[j] * std::log(theta);
            }
        }
        joint[c] = lp;
    }
    const double m = std::max(joint[0], joint[1]);
    const double lse = m + std::log(std::exp(joint[0] - m) + std::exp(joint[1] - m));
    return {joint[0] - lse, joint[1] - lse};
}

// ---------------------------------------------------------------------------
// Best training accuracy over every presence-split tree of depth <= 2,
// leaves labeled by their majority.

inline std::size_t majority_correct(const std::vector<std::size_t>& idx, const std::vector<Gender>& labels) {
    std::size_t f = 0;
    for (const auto i : idx) f += labels[i] == Gender::female;
    return std::max(f, idx.size() - f);
}

inline std::size_t best_subtree_correct(const std::vector<std::vector<double>>& rows, const std::vector<Gender>& labels,
                                        const std::vector<std::size_t>& idx, int depth) {
    std::size_t best = majority_correct(idx, labels);
    if (depth == 0 || rows.empty()) return best;
    for (std::size_t f = 0; f < rows.front().size(); ++f) {
        std::vector<std::size_t> present;
        std::vector<std::size_t> absent;
        for (const auto i : idx) (rows[i][f] != 0.0 ? present : absent).push_back(i);
        best = std::max(best, best_subtree_correct(rows, labels, present, depth - 1) +
                                  best_subtree_correct(rows, labels, absent, depth - 1));
    }
    return best;
}

inline double exhaustive_tree_accuracy(const std::vector<std::vector<double>>& rows, const std::vector<Gender>& labels,
                                       int depth = 2) {
    std::vector<std::size_t> all(rows.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return static_cast<double>(best_subtree_correct(rows, labels, all, depth)) / static_cast<double>(rows.size());
}

// ---------------------------------------------------------------------------
// SVM objective and random search over (w, b).

inline double dense_objective(const std::vector<std::vector<double>>& rows, const std::vector<Gender>& labels,
                              const std::vector<double>& w, double b, double lambda) {
    double hinge = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double s = b;
        for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * rows[i][j];
        const double y = labels[i] == Gender::female ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - y * s);
    }
    double norm = b * b;
    for (const double v : w) norm += v * v;
    return 0.5 * lambda * norm + hinge / static_cast<double>(rows.size());
}

struct SearchResult {
    double objective = std::numeric_limits<double>::infinity();
    std::vector<double> w;
    double b = 0.0;
};

inline SearchResult random_search(const std::vector<std::vector<double>>& rows, const std::vector<Gender>& labels,
                                  double lambda, double box, std::size_t samples, std::uint64_t seed) {
    Rng rng(seed);
    SearchResult best;
    const std::size_t d = rows.front().size();
    std::vector<double> w(d);
    for (std::size_t s = 0; s < samples; ++s) {
        for (auto& v : w) v = (2.0 * rng.uniform01() - 1.0) * box;
        const double b = (2.0 * rng.uniform01() - 1.0) * box;
        const double obj = dense_objective(rows, labels, w, b, lambda);
        if (obj < best.objective) best = {obj, w, b};
    }
    return best;
}

// ---------------------------------------------------------------------------
// Random articles built from known token sequences, for concordance and
// masking checks. Every word is lowercase ASCII, so the expected token
// stream is the generated word list itself. Titles such as "mr" are left
// out because a period after them does not end a sentence.

struct GeneratedArticle {
    Article article;
    std::vector<std::string> tokens;      // headline tokens then body tokens
    std::vector<bool> named_sentence;     // per token
    std::array<bool, 2> groups{};
};

inline const std::vector<std::string>& small_vocabulary() {
    static const std::vector<std::string> v = {"husband", "wife",  "budget", "said",   "the",    "plan",
                                               "cuts",    "vote",  "party",  "health", "school", "talks",
                                               "she",     "he",    "her",    "his",    "herself", "chairman"};
    return v;
}

inline Registry small_registry() {
    std::vector<PoliticianRecord> r(3);
    r[0].id = "p1";
    r[0].gender = Gender::female;
    r[0].given_name = "Mary";
    r[0].surname = "Harney";
    r[0].terms.push_back({"Health", ymd(2004, 9, 29), ymd(2011, 1, 20)});
    r[1].id = "p2";
    r[1].gender = Gender::male;
    r[1].given_name = "Brian";
    r[1].surname = "Cowen";
    r[1].terms.push_back({"Finance", ymd(2004, 9, 29), ymd(2008, 5, 7)});
    r[2].id = "p3";
    r[2].gender = Gender::male;
    r[2].given_name = "Noel";
    r[2].surname = "Dempsey";
    r[2].terms.push_back({"Transport", ymd(2007, 6, 14), ymd(2010, 3, 23)});
    return Registry(std::move(r));
}

inline GeneratedArticle generate_article(Rng& rng, std::size_t index) {
    static const std::vector<std::vector<std::string>> names = {
        {"mary", "harney"}, {"harney"}, {"mary"}, {"brian", "cowen"}, {"cowen"}, {"noel", "dempsey"}, {"dempsey"}};
    static const std::array<Gender, 7> name_gender = {Gender::female, Gender::female, Gender::female, Gender::male,
                                                      Gender::male,   Gender::male,   Gender::male};
    const auto& vocab = small_vocabulary();

    GeneratedArticle g;
    char id[32];
    std::snprintf(id, sizeof id, "a%03zu", index);
    g.article.id = id;
    g.article.source = "Test";
    g.article.date = ymd(2006, 1, 1);

    std::string headline;
    std::string body;
    const auto emit_sentence = [&](std::string& text, std::size_t words, bool with_period) {
        std::vector<std::string> sentence;
        bool named = false;
        for (std::size_t w = 0; w < words; ++w) {
            if (rng.bernoulli(0.15)) {
                const auto n = rng.uniform_below(names.size());
                g.groups[static_cast<int>(name_gender[n])] = true;
                named = true;
                for (const auto& t : names[n]) sentence.push_back(t);
            } else {
                sentence.push_back(vocab[rng.uniform_below(vocab.size())]);
            }
        }
        if (with_period) sentence.push_back(".");
        for (const auto& t : sentence) {
            if (!text.empty()) text += ' ';
            text += t;
            g.tokens.push_back(t);
            g.named_sentence.push_back(named);
        }
    };
    emit_sentence(headline, 1 + rng.uniform_below(5), false);
    const auto n_sentences = 1 + rng.uniform_below(4);
    for (std::size_t s = 0; s < n_sentences; ++s) emit_sentence(body, 1 + rng.uniform_below(10), true);
    g.article.headline = headline;
    g.article.body = body;
    return g;
}

struct OracleLine {
    std::string article_id;
    std::size_t position;
    std::vector<std::string> left;
    std::string keyword;
    std::vector<std::string> right;
};

// Brute-force concordance over generated articles, ordered by (id, position).
inline std::vector<OracleLine> kwic_oracle(std::vector<GeneratedArticle> articles, const std::string& term,
                                           std::size_t window, std::optional<Gender> group, bool cooccur) {
    std::sort(articles.begin(), articles.end(),
              [](const GeneratedArticle& a, const GeneratedArticle& b) { return a.article.id < b.article.id; });
    std::vector<OracleLine> out;
    for (const auto& a : articles) {
        if (group && !a.groups[static_cast<int>(*group)]) continue;
        const auto n = static_cast<long>(a.tokens.size());
        for (long i = 0; i < n; ++i) {
            if (a.tokens[i] != term) continue;
            if (cooccur && !a.named_sentence[i]) continue;
            OracleLine l{a.article.id, static_cast<std::size_t>(i), {}, term, {}};
            for (long j = i - static_cast<long>(window); j < i; ++j)
                if (j >= 0) l.left.push_back(a.tokens[j]);
            for (long j = i + 1; j <= i + static_cast<long>(window); ++j)
                if (j < n) l.right.push_back(a.tokens[j]);
            out.push_back(std::move(l));
        }
    }
    return out;
}

} // namespace testsupport
