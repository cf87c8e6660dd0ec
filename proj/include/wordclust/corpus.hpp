#pragma once

#include "wordclust/bio.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace wordclust {

/// One labeled document of the sentiment/quantification TSV format
/// `id<TAB>subject<TAB>label<TAB>text`.
struct SentimentExample {
    std::string id;
    std::string subject;
    std::string label;
    std::string text;

    friend bool operator==(const SentimentExample&, const SentimentExample&) = default;
};

std::vector<SentimentExample> read_sentiment_tsv(const std::filesystem::path& path);
void write_sentiment_tsv(std::span<const SentimentExample> examples,
                         const std::filesystem::path& path);

/// CoNLL-style corpus: one token per line
/// `surface<TAB>tag[<TAB>pos][<TAB>gazetteer]`, blank line between sequences.
std::vector<TaggedSequence> read_conll(const std::filesystem::path& path);
void write_conll(std::span<const TaggedSequence> sequences,
                 const std::filesystem::path& path);

} // namespace wordclust
