#include "wordclust/bio.hpp"

#include "fixtures.hpp"
#include "wordclust/rng.hpp"

#include <doctest.h>

using namespace wordclust;

namespace {

/// Random well-formed, sorted, non-overlapping span set over `length` tokens.
std::vector<EntitySpan> random_spans(Rng& rng, std::size_t length,
                                     const std::vector<std::string>& types) {
    std::vector<EntitySpan> spans;
    std::size_t cursor = 0;
    while (cursor < length) {
        if (rng.uniform01() < 0.4) {
            const std::size_t max_len = std::min<std::size_t>(3, length - cursor);
            const std::size_t span_len = 1 + rng.uniform_index(max_len);
            spans.push_back(EntitySpan{cursor, cursor + span_len,
                                       types[rng.uniform_index(types.size())]});
            cursor += span_len;
        }
        ++cursor;
    }
    return spans;
}

} // namespace

TEST_CASE("tag scheme derives labels from types") {
    const TagScheme scheme({"person", "facility"});
    CHECK(scheme.labels() ==
          std::vector<std::string>{"O", "B-person", "I-person", "B-facility", "I-facility"});
    CHECK(scheme.contains("O"));
    CHECK(scheme.contains("I-facility"));
    CHECK(!scheme.contains("B-movie"));
    CHECK_THROWS_AS(TagScheme({"a", "a"}), std::invalid_argument);
}

TEST_CASE("decode_bio finds the tweet's entity spans") {
    const std::vector<std::string> tags = {"B-facility", "I-facility", "O"};
    const auto spans = decode_bio(tags);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0] == EntitySpan{0, 2, "facility"});
}

TEST_CASE("decode_bio on all-O and orphan-I sequences") {
    CHECK(decode_bio(std::vector<std::string>{"O", "O", "O"}).empty());

    const std::vector<std::string> orphan = {"O", "I-person", "I-person"};
    const auto spans = decode_bio(orphan);
    REQUIRE(spans.size() == 1);
    CHECK(spans[0] == EntitySpan{1, 3, "person"});

    // Type switch inside an I-run starts a fresh span.
    const std::vector<std::string> switched = {"B-person", "I-movie"};
    const auto two = decode_bio(switched);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == EntitySpan{0, 1, "person"});
    CHECK(two[1] == EntitySpan{1, 2, "movie"});

    CHECK_THROWS_AS(decode_bio(std::vector<std::string>{"Z-bad"}), std::invalid_argument);
}

TEST_CASE("encode_bio basics") {
    CHECK(encode_bio({}, 3) == std::vector<std::string>{"O", "O", "O"});

    const std::vector<EntitySpan> adjacent = {{0, 1, "t"}, {1, 2, "t"}};
    const auto tags = encode_bio(adjacent, 2);
    CHECK(tags == std::vector<std::string>{"B-t", "B-t"});
    const auto decoded = decode_bio(tags);
    REQUIRE(decoded.size() == 2); // adjacency survives the round trip

    const std::vector<EntitySpan> overlapping = {{0, 2, "t"}, {1, 3, "t"}};
    CHECK_THROWS_AS(encode_bio(overlapping, 3), std::invalid_argument);
    const std::vector<EntitySpan> out_of_range = {{0, 4, "t"}};
    CHECK_THROWS_AS(encode_bio(out_of_range, 3), std::invalid_argument);
}

TEST_CASE("encode/decode round-trip on random span sets") {
    Rng rng(17);
    const std::vector<std::string> types = {"person", "movie", "product"};
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t length = 1 + rng.uniform_index(12);
        const auto spans = random_spans(rng, length, types);
        const auto tags = encode_bio(spans, length);
        CHECK(decode_bio(tags) == spans);
    }
}

TEST_CASE("entity_f1 hand cases") {
    const auto gold = fixtures::make_sequence({"CLUB", "BLU", "tonite", "dj", "finese"},
                                              {"B-fac", "I-fac", "O", "B-mus", "I-mus"});

    SUBCASE("perfect prediction") {
        const std::vector<TaggedSequence> g = {gold};
        const auto result = entity_f1(g, g);
        CHECK(result.precision == 1.0);
        CHECK(result.recall == 1.0);
        CHECK(result.f1 == 1.0);
    }

    SUBCASE("one of two spans matches") {
        auto pred = gold;
        pred.tags = {"B-fac", "I-fac", "O", "O", "B-mus"}; // wrong second span
        const std::vector<TaggedSequence> g = {gold}, p = {pred};
        const auto result = entity_f1(g, p);
        CHECK(result.true_positives == 1);
        CHECK(result.precision == 0.5);
        CHECK(result.recall == 0.5);
        CHECK(result.f1 == 0.5);
    }

    SUBCASE("all-O prediction scores zero by convention") {
        auto pred = gold;
        pred.tags = {"O", "O", "O", "O", "O"};
        const std::vector<TaggedSequence> g = {gold}, p = {pred};
        const auto result = entity_f1(g, p);
        CHECK(result.precision == 0.0);
        CHECK(result.recall == 0.0);
        CHECK(result.f1 == 0.0);
    }

    SUBCASE("type must match exactly") {
        auto pred = gold;
        pred.tags = {"B-mus", "I-mus", "O", "B-mus", "I-mus"};
        const std::vector<TaggedSequence> g = {gold}, p = {pred};
        CHECK(entity_f1(g, p).true_positives == 1);
    }
}

TEST_CASE("entity_f1 rejects misaligned corpora") {
    const auto a = fixtures::make_sequence({"x"}, {"O"});
    const auto b = fixtures::make_sequence({"x", "y"}, {"O", "O"});
    const std::vector<TaggedSequence> one = {a};
    const std::vector<TaggedSequence> two = {a, a};
    const std::vector<TaggedSequence> longer = {b};
    CHECK_THROWS_AS(entity_f1(one, two), std::invalid_argument);
    CHECK_THROWS_AS(entity_f1(one, longer), std::invalid_argument);
}

TEST_CASE("precision and recall swap with gold and pred") {
    Rng rng(23);
    const std::vector<std::string> types = {"a", "b"};
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t length = 1 + rng.uniform_index(10);
        std::vector<std::string> surfaces(length, "tok");
        TaggedSequence g;
        g.tokens = to_tokens(surfaces);
        g.tags = encode_bio(random_spans(rng, length, types), length);
        TaggedSequence p = g;
        p.tags = encode_bio(random_spans(rng, length, types), length);

        const std::vector<TaggedSequence> gs = {g}, ps = {p};
        const auto forward = entity_f1(gs, ps);
        const auto swapped = entity_f1(ps, gs);
        CHECK(forward.precision == swapped.recall);
        CHECK(forward.recall == swapped.precision);
        CHECK(forward.f1 == doctest::Approx(swapped.f1));
    }
}

TEST_CASE("segmentation F1 dominates classification F1 on the same tags") {
    Rng rng(29);
    const std::vector<std::string> types = {"a", "b", "c"};
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t length = 2 + rng.uniform_index(9);
        std::vector<std::string> surfaces(length, "tok");
        TaggedSequence g;
        g.tokens = to_tokens(surfaces);
        g.tags = encode_bio(random_spans(rng, length, types), length);
        TaggedSequence p = g;
        p.tags = encode_bio(random_spans(rng, length, types), length);

        const std::vector<TaggedSequence> gs = {g}, ps = {p};
        const std::vector<TaggedSequence> gs_seg = {collapse_types(g)};
        const std::vector<TaggedSequence> ps_seg = {collapse_types(p)};
        CHECK(entity_f1(gs_seg, ps_seg).f1 >= entity_f1(gs, ps).f1);
    }
}

TEST_CASE("collapse_types keeps boundaries and erases types") {
    const auto seq = fixtures::make_sequence({"a", "b", "c"}, {"B-x", "I-x", "B-y"});
    const auto collapsed = collapse_types(seq);
    CHECK(collapsed.tags == std::vector<std::string>{"B-ENT", "I-ENT", "B-ENT"});

    const std::vector<TaggedSequence> corpus = {seq};
    CHECK(entity_types_in(corpus) == std::vector<std::string>{"x", "y"});
}
