#pragma once

#include "wordclust/matrix.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace wordclust {

/// Immutable word -> D-dimensional vector table. Safe to share across threads
/// once constructed.
class EmbeddingTable {
public:
    EmbeddingTable(std::vector<std::string> vocab, Matrix vectors);

    std::size_t dim() const { return vectors_.cols(); }
    std::size_t size() const { return vocab_.size(); }

    const std::vector<std::string>& vocab() const { return vocab_; }
    const Matrix& vectors() const { return vectors_; }

    std::optional<std::size_t> row_of(const std::string& word) const;
    std::optional<std::span<const double>> lookup(const std::string& word) const;

private:
    std::vector<std::string> vocab_;
    Matrix vectors_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct LoadStats {
    std::size_t duplicates_skipped = 0;
    bool had_header = false;
};

/// Parses a text vector file (`word v1 ... vD`, single-space separated).
/// An optional first line `N D` (two integers) is skipped. Duplicate words
/// keep the first occurrence. Throws std::runtime_error naming the offending
/// line on dimension mismatches, non-numeric components, NaN/Inf values or an
/// empty file.
EmbeddingTable load_vectors(const std::filesystem::path& path,
                            std::optional<std::size_t> expected_dim = std::nullopt,
                            LoadStats* stats = nullptr);

/// Writes the table in the same text format; load(save(t)) is identical to t.
void save_vectors(const EmbeddingTable& table, const std::filesystem::path& path);

/// Copy with every row scaled to unit L2 norm (zero rows left unchanged).
EmbeddingTable l2_normalized(const EmbeddingTable& table);

} // namespace wordclust
