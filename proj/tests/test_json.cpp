#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "jxes/json_emit.hpp"
#include "jxes/json_tokens.hpp"
#include "jxes/json_tree.hpp"
#include "support/random_log.hpp"

using namespace jxes;
using json::TokenKind;

namespace {

std::vector<TokenKind> token_kinds(std::string_view text) {
    io::MemorySource src(text);
    json::Tokenizer tok(src);
    std::vector<TokenKind> out;
    while (tok.next() != TokenKind::End) out.push_back(tok.kind());
    return out;
}

std::string single_string(std::string_view doc) {
    io::MemorySource src(doc);
    json::Tokenizer tok(src);
    REQUIRE(tok.next() == TokenKind::String);
    std::string v = tok.text();
    REQUIRE(tok.next() == TokenKind::End);
    return v;
}

Errc tokenize_error(std::string_view text) {
    io::MemorySource src(text);
    json::Tokenizer tok(src);
    try {
        while (tok.next() != TokenKind::End) {
        }
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected a tokenizer error for: " << text);
    return Errc::MalformedJson;
}

}  // namespace

TEST_CASE("tokenizer walks a document in order") {
    auto kinds = token_kinds(R"({"a": [1, true, null], "b": "x"})");
    std::vector<TokenKind> expected{
        TokenKind::ObjectBegin, TokenKind::Key,    TokenKind::ArrayBegin,
        TokenKind::Number,      TokenKind::True,   TokenKind::Null,
        TokenKind::ArrayEnd,    TokenKind::Key,    TokenKind::String,
        TokenKind::ObjectEnd};
    CHECK(kinds == expected);
}

TEST_CASE("tokenizer reports byte offsets") {
    std::string doc = R"({"key": 42})";
    io::MemorySource src(doc);
    json::Tokenizer tok(src);
    REQUIRE(tok.next() == TokenKind::ObjectBegin);
    CHECK(tok.offset() == 0);
    REQUIRE(tok.next() == TokenKind::Key);
    CHECK(tok.offset() == 1);
    CHECK(tok.text() == "key");
    REQUIRE(tok.next() == TokenKind::Number);
    CHECK(tok.offset() == 8);
    CHECK(tok.text() == "42");
}

TEST_CASE("tokenizer skips a UTF-8 BOM") {
    auto kinds = token_kinds("\xEF\xBB\xBF{\"a\":1}");
    CHECK(kinds.size() == 4);
}

TEST_CASE("string escapes decode") {
    CHECK(single_string(R"("a\"b")") == "a\"b");
    CHECK(single_string(R"("\\\/\b\f\n\r\t")") == "\\/\b\f\n\r\t");
    CHECK(single_string(R"("Aé")") == "Aé");
    CHECK(single_string(R"("中")") == "中");
    // Surrogate pair: U+1F600.
    CHECK(single_string(R"("😀")") == "\U0001F600");
}

TEST_CASE("malformed input is rejected with MalformedJson") {
    const char* bad[] = {
        "",
        "{",
        "[1,",
        "{\"a\" 1}",
        "{\"a\":}",
        "{,}",
        "[1,]",
        "tru",
        "nul",
        "\"unterminated",
        R"("bad \q escape")",
        R"("\ud83d")",           // lone high surrogate
        R"("\ude00")",           // lone low surrogate
        R"("\ud83dA")",     // high surrogate not followed by low
        "01",
        "1.",
        ".5",
        "+1",
        "-",
        "1e",
        "1e+",
        "{\"a\":1} extra",
        "[] []",
        "\"ctrl \x01\"",
    };
    for (const char* doc : bad) {
        CAPTURE(doc);
        CHECK(tokenize_error(doc) == Errc::MalformedJson);
    }
}

TEST_CASE("nesting depth is capped") {
    std::string deep(600, '[');
    CHECK(tokenize_error(deep) == Errc::MalformedJson);

    io::MemorySource src(std::string_view("[[[[1]]]]"));
    json::Tokenizer tok(src, 3);
    try {
        while (tok.next() != TokenKind::End) {
        }
        FAIL("expected depth error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MalformedJson);
    }
}

TEST_CASE("tree parse preserves duplicates and lexemes") {
    auto root = json::parse_tree(R"({"k": 1.50, "k": "second", "n": -0.0e2})");
    REQUIRE(root.is_object());
    REQUIRE(root.as_object().size() == 3);
    CHECK(root.as_object()[0].key == "k");
    CHECK(root.as_object()[0].value.as_number().lexeme == "1.50");
    CHECK(root.as_object()[1].key == "k");
    CHECK(root.as_object()[1].value.is_string());
    CHECK(root.as_object()[2].value.as_number().lexeme == "-0.0e2");

    // find returns the first occurrence
    CHECK(root.find("k")->is_number());
    CHECK(root.find("missing") == nullptr);

    // dump reproduces the untouched lexemes
    CHECK(json::dump_string(root) == R"({"k":1.50,"k":"second","n":-0.0e2})");
}

TEST_CASE("tree parse rejects trailing data") {
    CHECK_THROWS_AS(json::parse_tree(std::string_view("{} {}")), Error);
    CHECK_THROWS_AS(json::parse_tree(std::string_view("1 2")), Error);
}

TEST_CASE("emitter minified output") {
    std::string out;
    io::StringSink sink(out);
    json::JsonEmitter em(sink);
    em.begin_object();
    em.key("a");
    em.int64(1);
    em.key("b");
    em.begin_array();
    em.string("x");
    em.boolean(false);
    em.null();
    em.float64(2.5);
    em.end_array();
    em.key("c");
    em.begin_object();
    em.end_object();
    em.end_object();
    CHECK(out == R"({"a":1,"b":["x",false,null,2.5],"c":{}})");
}

TEST_CASE("emitter pretty output") {
    std::string out;
    io::StringSink sink(out);
    json::JsonEmitter em(sink, true);
    em.begin_object();
    em.key("a");
    em.int64(1);
    em.key("b");
    em.begin_array();
    em.int64(1);
    em.int64(2);
    em.end_array();
    em.end_object();
    CHECK(out == "{\n  \"a\": 1,\n  \"b\": [\n    1,\n    2\n  ]\n}");
}

TEST_CASE("emitted strings re-read unchanged") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 500; ++i) {
        std::string s = randomlog::random_string(rng);
        std::string doc;
        io::StringSink sink(doc);
        json::JsonEmitter em(sink);
        em.string(s);
        CHECK(single_string(doc) == s);
    }
    // Control characters take the \u form and survive.
    std::string ctl("\x01\x02\x1f", 3);
    std::string doc;
    io::StringSink sink(doc);
    json::JsonEmitter em(sink);
    em.string(ctl);
    CHECK(doc.find("\\u") != std::string::npos);
    CHECK(single_string(doc) == ctl);
}
