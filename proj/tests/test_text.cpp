#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "text.hpp"

using namespace revrank;

TEST_CASE("clean_text strips urls") {
    CHECK(clean_text("bad battery http://t.cn/xyz") == "bad battery");
    CHECK(clean_text("see www.example.com for more") == "see for more");
    CHECK(clean_text("HTTPS://EXAMPLE.COM broken") == "broken");
    CHECK(clean_text("ftp://host/file gone") == "gone");
}

TEST_CASE("clean_text strips emoji and control characters") {
    CHECK(clean_text("screen \xF0\x9F\x98\xA1 cracked") == "screen cracked");  // U+1F621
    CHECK(clean_text("fine \xE2\x98\xB9 product") == "fine product");          // U+2639
    CHECK(clean_text("a\x01" "b\x02") == "a b");
    CHECK(clean_text("tab\tand\nnewline kept as separators") ==
          "tab and newline kept as separators");
}

TEST_CASE("clean_text strips html entities") {
    CHECK(clean_text("salt &amp; pepper") == "salt pepper");
    CHECK(clean_text("x &#38; y") == "x y");
    CHECK(clean_text("x &#x26; y") == "x y");
    CHECK(clean_text("not&an entity") == "not&an entity");
}

TEST_CASE("clean_text trims and collapses whitespace") {
    CHECK(clean_text("  wide   gaps  ") == "wide gaps");
    CHECK(clean_text("") == "");
    CHECK(clean_text("   ") == "");
}

TEST_CASE("clean_text is idempotent on randomized junk") {
    std::mt19937_64 rng(2024);
    const std::string pieces[] = {"word",  "http://x.yz", "&amp;", "\xF0\x9F\x98\xA1",
                                  "  ",    "&#x1F;",      "www.a", "ok",
                                  "\x7F",  "b&d",         "\t",    "einen"};
    for (int trial = 0; trial < 2000; ++trial) {
        std::string raw;
        size_t n = rng() % 8;
        for (size_t i = 0; i < n; ++i) {
            raw += pieces[rng() % (sizeof(pieces) / sizeof(pieces[0]))];
            raw += ' ';
        }
        std::string once = clean_text(raw);
        CHECK(clean_text(once) == once);
    }
}

TEST_CASE("whitespace tokenizer lowercases and splits on punctuation") {
    CHECK(whitespace_tokenize("The battery DIED fast.") ==
          std::vector<std::string>{"the", "battery", "died", "fast"});
    CHECK(whitespace_tokenize("") == std::vector<std::string>{});
    CHECK(whitespace_tokenize("battery battery") ==
          std::vector<std::string>{"battery", "battery"});
    CHECK(whitespace_tokenize("don't overheat!") ==
          std::vector<std::string>{"don", "t", "overheat"});
    CHECK(whitespace_tokenize("ab12 34") == std::vector<std::string>{"ab12", "34"});
}

TEST_CASE("tokenizer keeps multibyte sequences together") {
    // UTF-8 bytes >= 0x80 are treated as word characters.
    std::string two_cjk = "\xE5\xB1\x8F\xE5\xB9\x95";
    CHECK(whitespace_tokenize(two_cjk + " ok") == std::vector<std::string>{two_cjk, "ok"});
}

TEST_CASE("tokenizer registry resolves known names and rejects unknown") {
    TokenizerFn fn = TokenizerRegistry::instance().get("whitespace");
    CHECK(fn("a b") == std::vector<std::string>{"a", "b"});
    CHECK_THROWS_AS((void)TokenizerRegistry::instance().get("nope"), Error);
    try {
        (void)TokenizerRegistry::instance().get("nope");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
    }
}

TEST_CASE("stopword removal preserves order and duplicates") {
    std::unordered_set<std::string> stop = {"the"};
    CHECK(remove_stopwords({"the", "battery", "died", "fast"}, stop) ==
          std::vector<std::string>{"battery", "died", "fast"});
    CHECK(remove_stopwords({"a", "a", "b"}, {"b"}) == std::vector<std::string>{"a", "a"});
}

TEST_CASE("default stopwords keep negations") {
    const auto& stop = default_stopwords();
    CHECK(stop.count("the") == 1);
    CHECK(stop.count("not") == 0);
    CHECK(stop.count("no") == 0);
    CHECK(stop.count("never") == 0);
}
