#include "wordclust/sentiment.hpp"

#include "wordclust/hash.hpp"
#include "wordclust/numfmt.hpp"

#include <sstream>
#include <stdexcept>

namespace wordclust {

SparseFeatureVector sentiment_features(const std::string& text,
                                       const SentimentFeatureConfig& config,
                                       std::span<const SentimentLexicon> lexicons,
                                       const ClusterModel* clusters) {
    const std::string prepared = preprocess(text, config.prep);
    const std::vector<Token> tokens = tokenize(prepared);

    std::vector<SparseFeatureVector> parts;
    if (config.word_ngrams) parts.push_back(ngram_features(tokens, config.word_range));
    if (config.char_ngrams) parts.push_back(char_ngram_features(prepared, config.char_range));
    if (config.lexicons) {
        for (const auto& lexicon : lexicons) {
            parts.push_back(lexicon_features(tokens, lexicon));
        }
    }
    if (config.clusters && clusters != nullptr) {
        parts.push_back(cluster_bag_features(tokens, *clusters));
    }
    return combine(parts);
}

namespace {

std::string config_fingerprint(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ostringstream blob;
    for (const auto& [key, value] : kv) blob << key << '=' << value << '\n';
    return hex64(fnv1a64(blob.str()));
}

} // namespace

SentimentRunResult run_sentiment_pipeline(std::span<const SentimentExample> train_corpus,
                                          std::span<const SentimentExample> test_corpus,
                                          const SentimentFeatureConfig& features,
                                          std::span<const SentimentLexicon> lexicons,
                                          const TrainConfig& train_config,
                                          const ClusterModel* clusters,
                                          const OrdinalScale& scale) {
    if (train_corpus.empty() || test_corpus.empty()) {
        throw std::invalid_argument("sentiment pipeline: empty corpus");
    }

    std::vector<LabeledExample> train_set;
    train_set.reserve(train_corpus.size());
    for (const auto& ex : train_corpus) {
        if (!scale.rank(ex.label)) {
            throw std::invalid_argument("sentiment pipeline: label '" + ex.label +
                                        "' not in scale");
        }
        train_set.emplace_back(sentiment_features(ex.text, features, lexicons, clusters),
                               ex.label);
    }

    SentimentRunResult result;
    double final_objective = 0.0;
    result.model = train(train_set, train_config, scale.classes(), &final_objective);

    std::vector<std::string> gold;
    gold.reserve(test_corpus.size());
    result.predictions.reserve(test_corpus.size());
    for (const auto& ex : test_corpus) {
        gold.push_back(ex.label);
        result.predictions.push_back(result.model.predict(
            sentiment_features(ex.text, features, lexicons, clusters)));
    }
    result.mae = mae_macro(gold, result.predictions, scale);

    auto& report = result.report;
    report.emplace_back("task", "sent-class");
    report.emplace_back("train_size", std::to_string(train_corpus.size()));
    report.emplace_back("test_size", std::to_string(test_corpus.size()));
    report.emplace_back("word_ngrams", features.word_ngrams ? "1" : "0");
    report.emplace_back("word_ngram_range", std::to_string(features.word_range.lo) + "-" +
                                                std::to_string(features.word_range.hi));
    report.emplace_back("char_ngrams", features.char_ngrams ? "1" : "0");
    report.emplace_back("char_ngram_range", std::to_string(features.char_range.lo) + "-" +
                                                std::to_string(features.char_range.hi));
    report.emplace_back("lexicons", std::to_string(lexicons.size()));
    report.emplace_back("clusters",
                        features.clusters && clusters != nullptr
                            ? std::to_string(clusters->k())
                            : "none");
    report.emplace_back("l2_strength", format_double(train_config.l2_strength));
    report.emplace_back("epochs", std::to_string(train_config.epochs));
    report.emplace_back("learning_rate", format_double(train_config.learning_rate));
    report.emplace_back("lr_decay", format_double(train_config.lr_decay));
    report.emplace_back("train_seed", std::to_string(train_config.seed));
    report.emplace_back("final_objective", format_double(final_objective));
    report.emplace_back("mae_macro", format_double(result.mae.value));
    for (const auto& missing : result.mae.missing_classes) {
        report.emplace_back("skipped_gold_class", missing);
    }
    report.emplace_back("config_fingerprint", config_fingerprint(report));
    return result;
}

} // namespace wordclust
