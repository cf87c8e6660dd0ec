#pragma once

#include "wordclust/kmeans.hpp"
#include "wordclust/textprep.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wordclust {

/// Sparse feature-name -> value map. Zero-valued entries are never stored;
/// names are namespaced `family:detail` so families cannot collide.
class SparseFeatureVector {
public:
    using Entries = std::map<std::string, double>;

    void add(std::string name, double value);
    double get(const std::string& name) const;

    const Entries& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    friend bool operator==(const SparseFeatureVector&, const SparseFeatureVector&) = default;

private:
    Entries entries_;
};

SparseFeatureVector combine(std::span<const SparseFeatureVector> vectors);

struct SentimentLexicon {
    std::string name;
    std::unordered_map<std::string, double> polarity;
};

/// TSV `word<TAB>score`, one entry per line; `#` lines are comments.
SentimentLexicon load_lexicon(const std::filesystem::path& path, std::string name);

struct NgramRange {
    int lo = 1;
    int hi = 1;
};

/// Counts of contiguous token n-grams, named `ng{n}:{tok1_tok2_...}`.
SparseFeatureVector ngram_features(std::span<const Token> tokens, NgramRange range);

/// Counts of character n-grams of the text, named `cg{n}:{substring}`.
SparseFeatureVector char_ngram_features(std::string_view text, NgramRange range);

/// Per-lexicon aggregates over scored tokens: positive count, negative count,
/// score sum, max score, and the score of the last scored token.
SparseFeatureVector lexicon_features(std::span<const Token> tokens,
                                     const SentimentLexicon& lexicon);

/// Bag-of-clusters for sentence-level tasks: one `clus{k}:{id}` count per
/// in-vocabulary token, `clus{k}:oov` for the rest.
SparseFeatureVector cluster_bag_features(std::span<const Token> tokens,
                                         const ClusterModel& model);

/// Per-token cluster context for tagging: position i carries
/// `clus{k}[{o}]:{id-or-oov}` for each offset o in [-w, w] that stays in range.
std::vector<SparseFeatureVector> cluster_token_features(std::span<const Token> tokens,
                                                        const ClusterModel& model,
                                                        int context_window);

/// Per-token shape features: cap:initial, cap:all_caps, cap:digit, cap:punct.
std::vector<SparseFeatureVector> capitalization_features(std::span<const Token> tokens);

/// Windowed categorical features from an external annotation column
/// (part-of-speech tags, gazetteer flags): `family[o]:{value}`.
/// Empty values emit nothing.
std::vector<SparseFeatureVector> annotation_window_features(
    std::span<const std::string> values, std::string_view family, int window);

struct ParsedFeatureName {
    std::string family;
    int cluster_k = 0; // 0 when not a cluster feature
    std::string detail;
};

/// Splits `family:detail` back apart; cluster families also yield their k.
std::optional<ParsedFeatureName> parse_feature_name(std::string_view name);

} // namespace wordclust
