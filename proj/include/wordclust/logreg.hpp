#pragma once

#include "wordclust/features.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wordclust {

struct TrainConfig {
    double l2_strength = 1.0;
    int epochs = 50;
    double learning_rate = 0.1;
    double lr_decay = 0.01; // step t uses learning_rate / (1 + lr_decay * t)
    std::uint64_t seed = 0;
    bool shuffle = true;
};

using LabeledExample = std::pair<SparseFeatureVector, std::string>;

/// Multinomial logistic regression over sparse feature vectors. The feature
/// index is frozen at training time; unseen features are ignored at
/// prediction. Immutable after training; thread-safe for prediction.
class LinearModel {
public:
    LinearModel() = default;

    const std::vector<std::string>& classes() const { return classes_; }
    const std::map<std::string, std::size_t>& feature_index() const { return feature_index_; }
    std::size_t num_features() const { return feature_index_.size(); }

    /// Softmax class probabilities; always sums to 1 within 1e-9.
    std::vector<double> predict_proba(const SparseFeatureVector& vec) const;

    /// Argmax class; ties go to the earliest class in `classes()`.
    const std::string& predict(const SparseFeatureVector& vec) const;

    double weight(std::size_t class_id, const std::string& feature) const;
    double bias(std::size_t class_id) const { return bias_[class_id]; }

    /// Versioned TSV sections; load(save(m)) predicts bit-identically.
    void save(const std::filesystem::path& path) const;
    static LinearModel load(const std::filesystem::path& path);

private:
    std::vector<std::string> classes_;
    std::map<std::string, std::size_t> feature_index_;
    std::vector<double> weights_; // classes x features, row-major
    std::vector<double> bias_;    // per class

    std::vector<double> scores(const SparseFeatureVector& vec) const;

    friend LinearModel train(std::span<const LabeledExample>, const TrainConfig&,
                             std::vector<std::string>, double*);
    friend double objective(const LinearModel&, std::span<const LabeledExample>, double);
    friend double gradient_check(const LinearModel&, std::span<const LabeledExample>,
                                 double, double);
};

/// SGD on the L2-regularized multinomial cross-entropy
///   J(W, b) = mean_i -log p(y_i | x_i) + (l2/2) * ||W||^2   (bias unregularized).
/// Deterministic given the seed. `class_order`, when non-empty, fixes the
/// class list (it must cover every label in the data); otherwise classes are
/// the sorted distinct labels. Throws on an empty or single-class dataset.
LinearModel train(std::span<const LabeledExample> dataset, const TrainConfig& config,
                  std::vector<std::string> class_order = {},
                  double* final_objective = nullptr);

double objective(const LinearModel& model, std::span<const LabeledExample> dataset,
                 double l2_strength);

/// Max relative error between the analytic gradient of `objective` and
/// central finite differences, over every weight and bias coordinate.
double gradient_check(const LinearModel& model, std::span<const LabeledExample> dataset,
                      double l2_strength, double epsilon);

} // namespace wordclust
