#include "wordclust/quantify.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace wordclust {

PrevalenceVector::PrevalenceVector(OrdinalScale scale_in, std::vector<double> p_in)
    : scale(std::move(scale_in)), p(std::move(p_in)) {
    if (p.size() != scale.size()) {
        throw std::invalid_argument("prevalence vector: wrong number of classes");
    }
    double total = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw std::invalid_argument("prevalence vector: negative entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("prevalence vector: entries sum to " +
                                    std::to_string(total) + ", expected 1");
    }
}

PrevalenceVector prevalence_from_labels(std::span<const std::string> labels,
                                        const OrdinalScale& scale) {
    if (labels.empty()) throw std::invalid_argument("prevalence: empty label set");
    std::vector<double> counts(scale.size(), 0.0);
    for (const auto& label : labels) {
        const auto rank = scale.rank(label);
        if (!rank) throw std::invalid_argument("prevalence: label '" + label +
                                               "' not in scale");
        counts[*rank] += 1.0;
    }
    for (double& c : counts) c /= static_cast<double>(labels.size());
    return PrevalenceVector(scale, std::move(counts));
}

PrevalenceVector classify_and_count(const LinearModel& model,
                                    std::span<const SparseFeatureVector> items,
                                    const OrdinalScale& scale, bool probabilistic) {
    if (items.empty()) {
        throw std::invalid_argument("classify_and_count: prevalence undefined on empty set");
    }
    std::vector<double> counts(scale.size(), 0.0);
    for (const auto& item : items) {
        if (probabilistic) {
            const std::vector<double> probs = model.predict_proba(item);
            for (std::size_t c = 0; c < probs.size(); ++c) {
                const auto rank = scale.rank(model.classes()[c]);
                if (!rank) {
                    throw std::invalid_argument("classify_and_count: model class '" +
                                                model.classes()[c] + "' not in scale");
                }
                counts[*rank] += probs[c];
            }
        } else {
            const std::string& label = model.predict(item);
            const auto rank = scale.rank(label);
            if (!rank) {
                throw std::invalid_argument("classify_and_count: predicted class '" + label +
                                            "' not in scale");
            }
            counts[*rank] += 1.0;
        }
    }
    for (double& c : counts) c /= static_cast<double>(items.size());
    return PrevalenceVector(scale, std::move(counts));
}

double emd(const PrevalenceVector& p, const PrevalenceVector& q) {
    if (p.scale != q.scale) throw std::invalid_argument("emd: scale mismatch");
    double cost = 0.0;
    double prefix_p = 0.0;
    double prefix_q = 0.0;
    for (std::size_t j = 0; j + 1 < p.p.size(); ++j) {
        prefix_p += p.p[j];
        prefix_q += q.p[j];
        cost += std::abs(prefix_q - prefix_p);
    }
    return cost;
}

QuantifyResult quantify_by_subject(const LinearModel& model,
                                   std::span<const SparseFeatureVector> features,
                                   std::span<const std::string> gold_labels,
                                   std::span<const std::string> subjects,
                                   const OrdinalScale& scale, bool probabilistic) {
    if (features.size() != gold_labels.size() || features.size() != subjects.size()) {
        throw std::invalid_argument("quantify_by_subject: misaligned inputs");
    }
    if (features.empty()) throw std::invalid_argument("quantify_by_subject: empty input");

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < subjects.size(); ++i) {
        auto [it, inserted] = groups.try_emplace(subjects[i]);
        if (inserted) order.push_back(subjects[i]);
        it->second.push_back(i);
    }

    QuantifyResult result;
    for (const auto& subject : order) {
        const auto& indices = groups.at(subject);
        std::vector<SparseFeatureVector> item_features;
        std::vector<std::string> item_gold;
        item_features.reserve(indices.size());
        item_gold.reserve(indices.size());
        for (std::size_t i : indices) {
            item_features.push_back(features[i]);
            item_gold.push_back(gold_labels[i]);
        }
        PrevalenceVector predicted =
            classify_and_count(model, item_features, scale, probabilistic);
        PrevalenceVector gold = prevalence_from_labels(item_gold, scale);
        const double score = emd(gold, predicted);
        result.mean_emd += score;
        result.subjects.push_back(SubjectQuantification{subject, std::move(predicted),
                                                        std::move(gold), score,
                                                        indices.size()});
    }
    result.mean_emd /= static_cast<double>(result.subjects.size());
    return result;
}

} // namespace wordclust
