#include "wordclust/bio.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace wordclust {

namespace {

struct ParsedTag {
    char marker = 'O'; // 'O', 'B' or 'I'
    std::string_view type;
};

ParsedTag parse_tag(const std::string& tag) {
    if (tag == kOutsideTag) return {};
    if (tag.size() >= 3 && (tag[0] == 'B' || tag[0] == 'I') && tag[1] == '-') {
        return {tag[0], std::string_view(tag).substr(2)};
    }
    throw std::invalid_argument("malformed BIO tag '" + tag + "'");
}

} // namespace

TagScheme::TagScheme(std::vector<std::string> entity_types) : types_(std::move(entity_types)) {
    std::set<std::string> seen;
    labels_.emplace_back(kOutsideTag);
    for (const auto& type : types_) {
        if (type.empty()) throw std::invalid_argument("tag scheme: empty entity type");
        if (!seen.insert(type).second) {
            throw std::invalid_argument("tag scheme: duplicate entity type '" + type + "'");
        }
        labels_.push_back("B-" + type);
        labels_.push_back("I-" + type);
    }
}

bool TagScheme::contains(const std::string& label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::vector<EntitySpan> decode_bio(std::span<const std::string> tags) {
    std::vector<EntitySpan> spans;
    bool open = false;
    std::size_t start = 0;
    std::string type;

    auto close = [&](std::size_t end) {
        if (open) spans.push_back(EntitySpan{start, end, type});
        open = false;
    };

    for (std::size_t i = 0; i < tags.size(); ++i) {
        const ParsedTag tag = parse_tag(tags[i]);
        if (tag.marker == 'O') {
            close(i);
        } else if (tag.marker == 'B') {
            close(i);
            open = true;
            start = i;
            type = std::string(tag.type);
        } else { // 'I': continues a same-type span, otherwise starts one
            if (!open || type != tag.type) {
                close(i);
                open = true;
                start = i;
                type = std::string(tag.type);
            }
        }
    }
    close(tags.size());
    return spans;
}

std::vector<EntitySpan> decode_bio(const TaggedSequence& tagged) {
    if (tagged.tags.size() != tagged.tokens.size()) {
        throw std::invalid_argument("tagged sequence: token/tag length mismatch");
    }
    return decode_bio(std::span<const std::string>(tagged.tags));
}

std::vector<std::string> encode_bio(std::span<const EntitySpan> spans, std::size_t length) {
    std::vector<std::string> tags(length, std::string(kOutsideTag));
    std::size_t last_end = 0;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        const EntitySpan& span = spans[i];
        if (span.start >= span.end || span.end > length) {
            throw std::invalid_argument("encode_bio: span out of range");
        }
        if (i > 0 && span.start < last_end) {
            throw std::invalid_argument("encode_bio: spans overlap or are unsorted");
        }
        last_end = span.end;
        tags[span.start] = "B-" + span.entity_type;
        for (std::size_t t = span.start + 1; t < span.end; ++t) {
            tags[t] = "I-" + span.entity_type;
        }
    }
    return tags;
}

F1Result entity_f1(std::span<const TaggedSequence> gold,
                   std::span<const TaggedSequence> pred) {
    if (gold.size() != pred.size()) {
        throw std::invalid_argument("entity_f1: corpora have different sequence counts");
    }
    F1Result result;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (gold[i].tokens.size() != pred[i].tokens.size()) {
            throw std::invalid_argument("entity_f1: sequence " + std::to_string(i) +
                                        " has mismatched lengths");
        }
        std::vector<EntitySpan> g = decode_bio(gold[i]);
        std::vector<EntitySpan> p = decode_bio(pred[i]);
        result.gold_spans += g.size();
        result.predicted_spans += p.size();
        std::sort(g.begin(), g.end());
        for (const auto& span : p) {
            if (std::binary_search(g.begin(), g.end(), span)) ++result.true_positives;
        }
    }
    const auto tp = static_cast<double>(result.true_positives);
    result.precision = result.predicted_spans == 0
                           ? 0.0
                           : tp / static_cast<double>(result.predicted_spans);
    result.recall = result.gold_spans == 0 ? 0.0 : tp / static_cast<double>(result.gold_spans);
    result.f1 = (result.precision + result.recall) == 0.0
                    ? 0.0
                    : 2.0 * result.precision * result.recall /
                          (result.precision + result.recall);
    return result;
}

TaggedSequence collapse_types(const TaggedSequence& seq, const std::string& generic) {
    TaggedSequence out = seq;
    for (auto& tag : out.tags) {
        const ParsedTag parsed = parse_tag(tag);
        if (parsed.marker != 'O') tag = std::string(1, parsed.marker) + "-" + generic;
    }
    return out;
}

std::vector<std::string> entity_types_in(std::span<const TaggedSequence> corpus) {
    std::set<std::string> types;
    for (const auto& seq : corpus) {
        for (const auto& tag : seq.tags) {
            const ParsedTag parsed = parse_tag(tag);
            if (parsed.marker != 'O') types.emplace(parsed.type);
        }
    }
    return {types.begin(), types.end()};
}

} // namespace wordclust
