#pragma once

// Shared synthetic fixtures for the unit and acceptance suites.

#include "wordclust/corpus.hpp"
#include "wordclust/embedding.hpp"
#include "wordclust/kmeans.hpp"
#include "wordclust/rng.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fixtures {

inline wordclust::EmbeddingTable make_table(std::vector<std::string> vocab,
                                            std::vector<std::vector<double>> rows) {
    wordclust::Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = rows[r][c];
    }
    return wordclust::EmbeddingTable(std::move(vocab), std::move(m));
}

/// Vocabulary laid out as `blobs` well-separated 2-D blobs with
/// `words_per_blob` words each, named w<blob>_<i>. Blob b sits near
/// (10*b, 10*b) with small deterministic jitter.
struct BlobVocabulary {
    wordclust::EmbeddingTable table;
    std::vector<std::vector<std::string>> blob_words;
};

/// With `random_names`, words are random letter strings instead of the
/// wB_I pattern, so not even character n-grams reveal the blob.
inline BlobVocabulary make_blob_vocabulary(int blobs, int words_per_blob,
                                           std::uint64_t seed = 7,
                                           bool random_names = false) {
    wordclust::Rng rng(seed);
    std::vector<std::string> vocab;
    std::vector<std::vector<double>> rows;
    std::vector<std::vector<std::string>> blob_words(static_cast<std::size_t>(blobs));
    std::set<std::string> used;
    for (int b = 0; b < blobs; ++b) {
        for (int i = 0; i < words_per_blob; ++i) {
            std::string word;
            if (random_names) {
                do {
                    word.clear();
                    for (int c = 0; c < 7; ++c) {
                        word.push_back(static_cast<char>('a' + rng.uniform_index(26)));
                    }
                } while (!used.insert(word).second);
            } else {
                word = "w" + std::to_string(b) + "_" + std::to_string(i);
            }
            blob_words[static_cast<std::size_t>(b)].push_back(word);
            vocab.push_back(std::move(word));
            rows.push_back({10.0 * b + rng.uniform01(), 10.0 * b + rng.uniform01()});
        }
    }
    return BlobVocabulary{make_table(std::move(vocab), std::move(rows)),
                          std::move(blob_words)};
}

inline std::shared_ptr<const wordclust::ClusterModel> fit_blob_clusters(
    const BlobVocabulary& vocab, int k, std::uint64_t seed = 11) {
    wordclust::ClusterConfig config;
    config.k = k;
    config.seed = seed;
    config.restarts = 10;
    return std::make_shared<const wordclust::ClusterModel>(
        wordclust::fit_with_restarts(vocab.table, config));
}

/// Sentiment corpus whose label is a pure function of which blob the single
/// keyword of each document belongs to; keywords are split so train and test
/// never share a surface form, leaving cluster membership as the only signal
/// that generalizes.
struct ClusterSentimentFixture {
    std::vector<wordclust::SentimentExample> train;
    std::vector<wordclust::SentimentExample> test;
};

inline ClusterSentimentFixture make_cluster_sentiment_corpus(
    const BlobVocabulary& vocab, const std::vector<std::string>& labels_per_blob,
    int docs_per_blob_split = 8) {
    ClusterSentimentFixture fix;
    int id = 0;
    for (std::size_t b = 0; b < labels_per_blob.size(); ++b) {
        const auto& words = vocab.blob_words[b];
        for (int d = 0; d < 2 * docs_per_blob_split; ++d) {
            const bool is_train = d < docs_per_blob_split;
            // Train uses the first half of each blob's words, test the rest.
            const std::size_t word_idx =
                (is_train ? 0 : words.size() / 2) +
                static_cast<std::size_t>(d) % (words.size() / 2);
            wordclust::SentimentExample ex;
            ex.id = "d" + std::to_string(id++);
            ex.subject = "s" + std::to_string(b % 2);
            ex.label = labels_per_blob[b];
            ex.text = "the " + words[word_idx] + " today";
            (is_train ? fix.train : fix.test).push_back(std::move(ex));
        }
    }
    return fix;
}

/// NER corpus where entities are exactly the words of one embedding blob;
/// train and test entity surfaces are disjoint halves of that blob.
struct ClusterNerFixture {
    std::vector<wordclust::TaggedSequence> train;
    std::vector<wordclust::TaggedSequence> test;
};

inline wordclust::TaggedSequence make_sequence(const std::vector<std::string>& surfaces,
                                               const std::vector<std::string>& tags) {
    wordclust::TaggedSequence seq;
    seq.tokens = wordclust::to_tokens(surfaces);
    seq.tags = tags;
    return seq;
}

inline ClusterNerFixture make_cluster_ner_corpus(const BlobVocabulary& vocab,
                                                 std::size_t entity_blob,
                                                 std::size_t filler_blob,
                                                 int sequences_per_split = 12,
                                                 std::uint64_t seed = 19) {
    ClusterNerFixture fix;
    const auto& entities = vocab.blob_words[entity_blob];
    const auto& fillers = vocab.blob_words[filler_blob];
    const std::size_t half = entities.size() / 2;
    wordclust::Rng rng(seed);
    for (int split = 0; split < 2; ++split) {
        const std::size_t base = split == 0 ? 0 : half;
        auto& out = split == 0 ? fix.train : fix.test;
        std::size_t next_entity = 0;
        for (int s = 0; s < sequences_per_split; ++s) {
            // Random-length filler sequence with 1-2 entities at random
            // positions, so tag history alone cannot predict the labels.
            const std::size_t len = 4 + rng.uniform_index(4);
            std::vector<std::string> surfaces;
            std::vector<std::string> tags(len, "O");
            for (std::size_t i = 0; i < len; ++i) {
                surfaces.push_back(fillers[rng.uniform_index(fillers.size())]);
            }
            const int entity_count = 1 + (rng.uniform01() < 0.35 ? 1 : 0);
            for (int e = 0; e < entity_count; ++e) {
                const std::size_t entity_len = rng.uniform01() < 0.3 ? 2 : 1;
                for (int attempt = 0; attempt < 8; ++attempt) {
                    const std::size_t start = rng.uniform_index(len - entity_len + 1);
                    // Keep a one-token gap: adjacent entities would make B vs I
                    // ambiguous given only cluster membership and tag history.
                    bool free = start == 0 || tags[start - 1] == "O";
                    free = free && (start + entity_len == len || tags[start + entity_len] == "O");
                    for (std::size_t i = start; i < start + entity_len; ++i) {
                        free = free && tags[i] == "O";
                    }
                    if (!free) continue;
                    for (std::size_t i = start; i < start + entity_len; ++i) {
                        surfaces[i] = entities[base + next_entity % half];
                        ++next_entity;
                        tags[i] = i == start ? "B-ent" : "I-ent";
                    }
                    break;
                }
            }
            out.push_back(make_sequence(surfaces, tags));
        }
    }
    return fix;
}

/// Fresh empty directory under the build tree's working directory.
inline std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::path("test_tmp") / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace fixtures
