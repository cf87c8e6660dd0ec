#pragma once

#include "wordclust/features.hpp"
#include "wordclust/logreg.hpp"
#include "wordclust/ordinal.hpp"

#include <span>
#include <string>
#include <vector>

namespace wordclust {

/// Per-class relative frequencies on an ordinal scale: non-negative, summing
/// to 1 within 1e-9 (validated on construction).
struct PrevalenceVector {
    PrevalenceVector(OrdinalScale scale, std::vector<double> p);

    OrdinalScale scale;
    std::vector<double> p;
};

PrevalenceVector prevalence_from_labels(std::span<const std::string> labels,
                                        const OrdinalScale& scale);

/// Hard-classify every item and normalize the class counts. With
/// `probabilistic`, sums predicted probabilities instead (off by default).
/// Throws on an empty item set.
PrevalenceVector classify_and_count(const LinearModel& model,
                                    std::span<const SparseFeatureVector> items,
                                    const OrdinalScale& scale,
                                    bool probabilistic = false);

/// Earth Mover's Distance between prevalence vectors on the same scale with
/// unit distance between consecutive categories: the sum over the first
/// |C|-1 prefix positions of absolute cumulative differences.
double emd(const PrevalenceVector& p, const PrevalenceVector& q);

struct SubjectQuantification {
    std::string subject;
    PrevalenceVector predicted;
    PrevalenceVector gold;
    double emd_vs_gold = 0.0;
    std::size_t items = 0;
};

struct QuantifyResult {
    std::vector<SubjectQuantification> subjects; // ordered by first appearance
    double mean_emd = 0.0;
};

/// Groups aligned (features, gold label, subject) triples by subject, runs
/// classify-and-count per subject and scores each against the gold
/// prevalence; mean EMD over subjects is the corpus-level score.
QuantifyResult quantify_by_subject(const LinearModel& model,
                                   std::span<const SparseFeatureVector> features,
                                   std::span<const std::string> gold_labels,
                                   std::span<const std::string> subjects,
                                   const OrdinalScale& scale,
                                   bool probabilistic = false);

} // namespace wordclust
