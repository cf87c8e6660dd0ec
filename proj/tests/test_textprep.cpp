#include "wordclust/textprep.hpp"

#include "wordclust/rng.hpp"

#include <doctest.h>

using namespace wordclust;

TEST_CASE("preprocess replaces urls and pads punctuation") {
    CHECK(preprocess("see http://t.co/xyz now!") == "see <url> now !");
    CHECK(preprocess("") == "");
    CHECK(preprocess("a,b") == "a , b");
}

TEST_CASE("preprocess url variants") {
    CHECK(preprocess("go to https://example.com/a?b=1 ok") == "go to <url> ok");
    CHECK(preprocess("www.example.com rocks") == "<url> rocks");
    CHECK(preprocess("http://only") == "<url>");
    // Two urls, the second at end of string.
    CHECK(preprocess("x http://a http://b") == "x <url> <url>");
}

TEST_CASE("preprocess rule toggles") {
    PreprocessRules rules;
    rules.pad_punctuation = false;
    CHECK(preprocess("a,b http://x", rules) == "a,b <url>");

    rules.pad_punctuation = true;
    rules.lowercase = true;
    CHECK(preprocess("Hello WORLD!", rules) == "hello world !");

    rules.url_placeholder = "URL";
    CHECK(preprocess("see www.x.y", rules) == "see URL");

    // Lowercasing happens first, so an uppercase scheme still matches.
    PreprocessRules lower;
    lower.lowercase = true;
    CHECK(preprocess("WWW.EXAMPLE.COM here", lower) == "<url> here");
}

TEST_CASE("preprocess collapses whitespace and trims") {
    CHECK(preprocess("  a \t b\n c  ") == "a b c");
    CHECK(preprocess(" . ") == ".");
}

TEST_CASE("preprocess is idempotent on random strings") {
    Rng rng(42);
    const std::string alphabet = "ab .,!?();w/:h#@tpsx\t\"'[]";
    for (int trial = 0; trial < 200; ++trial) {
        std::string s;
        const std::size_t len = rng.uniform_index(40);
        for (std::size_t i = 0; i < len; ++i) {
            s.push_back(alphabet[rng.uniform_index(alphabet.size())]);
        }
        const std::string once = preprocess(s);
        CHECK(preprocess(once) == once);
    }
}

TEST_CASE("tokenize splits on whitespace with consecutive positions") {
    const auto tokens = tokenize("a , b");
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == Token{"a", 0});
    CHECK(tokens[1] == Token{",", 1});
    CHECK(tokens[2] == Token{"b", 2});

    CHECK(tokenize("").empty());

    const auto tweet = tokenize("CLUB BLU tonite");
    REQUIRE(tweet.size() == 3);
    CHECK(tweet[0].surface == "CLUB");
    CHECK(tweet[1].surface == "BLU");
    CHECK(tweet[2].surface == "tonite");
}

TEST_CASE("token invariants on random preprocessed text") {
    Rng rng(7);
    const std::string alphabet = "abc d.e,f!";
    for (int trial = 0; trial < 100; ++trial) {
        std::string s;
        const std::size_t len = rng.uniform_index(30);
        for (std::size_t i = 0; i < len; ++i) {
            s.push_back(alphabet[rng.uniform_index(alphabet.size())]);
        }
        const auto tokens = tokenize(preprocess(s));
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            CHECK(tokens[i].position == i);
            CHECK(!tokens[i].surface.empty());
            CHECK(tokens[i].surface.find(' ') == std::string::npos);
            CHECK(tokens[i].surface.find('\t') == std::string::npos);
        }
    }
}
