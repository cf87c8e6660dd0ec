#pragma once

#include "wordclust/corpus.hpp"
#include "wordclust/features.hpp"
#include "wordclust/logreg.hpp"
#include "wordclust/ordinal.hpp"
#include "wordclust/textprep.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wordclust {

struct SentimentFeatureConfig {
    bool word_ngrams = true;
    NgramRange word_range{1, 3};
    bool char_ngrams = true;
    NgramRange char_range{3, 5};
    bool lexicons = true;
    bool clusters = true;
    PreprocessRules prep{.url_placeholder = "<url>", .pad_punctuation = true,
                         .lowercase = true};
};

/// Preprocess + featurize one document: word n-grams, character n-grams,
/// lexicon aggregates and the bag-of-clusters family. `clusters` may be null
/// (or the toggle off) for the no-clusters baseline.
SparseFeatureVector sentiment_features(const std::string& text,
                                       const SentimentFeatureConfig& config,
                                       std::span<const SentimentLexicon> lexicons,
                                       const ClusterModel* clusters);

struct SentimentRunResult {
    std::vector<std::string> predictions; // aligned with the test corpus
    MaeResult mae;
    LinearModel model;
    std::vector<std::pair<std::string, std::string>> report; // key=value pairs
};

/// Train-and-score pipeline: featurize both corpora, fit the classifier on
/// train, predict test, compute MAE^M, and assemble a run report with the
/// resolved configuration fingerprint.
SentimentRunResult run_sentiment_pipeline(std::span<const SentimentExample> train_corpus,
                                          std::span<const SentimentExample> test_corpus,
                                          const SentimentFeatureConfig& features,
                                          std::span<const SentimentLexicon> lexicons,
                                          const TrainConfig& train_config,
                                          const ClusterModel* clusters,
                                          const OrdinalScale& scale);

} // namespace wordclust
