#pragma once

#include "wordclust/textprep.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordclust {

inline constexpr std::string_view kOutsideTag = "O";

/// Label inventory for BIO tagging: O plus B-t/I-t per entity type.
class TagScheme {
public:
    explicit TagScheme(std::vector<std::string> entity_types);

    const std::vector<std::string>& types() const { return types_; }
    const std::vector<std::string>& labels() const { return labels_; }
    bool contains(const std::string& label) const;

private:
    std::vector<std::string> types_;
    std::vector<std::string> labels_;
};

/// BIO-labeled token sequence. `pos` and `gaz` are optional pre-annotation
/// columns (either empty or token-aligned).
struct TaggedSequence {
    std::vector<Token> tokens;
    std::vector<std::string> tags;
    std::vector<std::string> pos;
    std::vector<std::string> gaz;

    friend bool operator==(const TaggedSequence&, const TaggedSequence&) = default;
};

struct EntitySpan {
    std::size_t start = 0; // inclusive
    std::size_t end = 0;   // exclusive
    std::string entity_type;

    friend bool operator==(const EntitySpan&, const EntitySpan&) = default;
    friend auto operator<=>(const EntitySpan&, const EntitySpan&) = default;
};

/// Maximal B-t (I-t)* runs become spans; an I-t without a same-type B-t/I-t
/// predecessor starts a new span; O breaks spans. Throws on a tag outside the
/// O/B-t/I-t shape.
std::vector<EntitySpan> decode_bio(std::span<const std::string> tags);
std::vector<EntitySpan> decode_bio(const TaggedSequence& tagged);

/// Inverse of decode for well-formed input. Spans must be sorted and
/// non-overlapping; adjacent same-type spans stay separate (B-t, B-t).
std::vector<std::string> encode_bio(std::span<const EntitySpan> spans, std::size_t length);

struct F1Result {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t true_positives = 0;
    std::size_t predicted_spans = 0;
    std::size_t gold_spans = 0;
};

/// Exact-match span F1 over aligned corpora: a predicted span scores iff
/// (start, end, type) all match a gold span. Empty denominators give 0.
F1Result entity_f1(std::span<const TaggedSequence> gold,
                   std::span<const TaggedSequence> pred);

/// Segmentation view: every entity type collapsed to one generic type.
TaggedSequence collapse_types(const TaggedSequence& seq, const std::string& generic = "ENT");

/// Entity types observed in the corpus tags, sorted.
std::vector<std::string> entity_types_in(std::span<const TaggedSequence> corpus);

} // namespace wordclust
