#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jxes/error.hpp"
#include "jxes/io.hpp"

namespace jxes::json {

enum class TokenKind {
    ObjectBegin,
    ObjectEnd,
    ArrayBegin,
    ArrayEnd,
    Key,
    String,
    Number,
    True,
    False,
    Null,
    End
};

// Grammar-enforcing pull tokenizer. Consumers see a valid token sequence or a
// MalformedJson error carrying the byte offset of the offending character.
// Number lexemes are preserved verbatim so the caller decides int vs float.
class Tokenizer {
public:
    explicit Tokenizer(io::ByteSource& src, std::size_t max_depth = 512)
        : src_(src), max_depth_(max_depth) {
        // A leading UTF-8 byte order mark is tolerated and skipped.
        if (peek() == 0xEF) {
            get();
            if (get() != 0xBB || get() != 0xBF)
                fail("invalid byte order mark", 0);
        }
    }

    Tokenizer(const Tokenizer&) = delete;
    Tokenizer& operator=(const Tokenizer&) = delete;

    TokenKind next() {
        if (kind_ == TokenKind::End) return kind_;
        for (;;) {
            skip_ws();
            int c = peek();
            token_off_ = pos_offset();
            if (c < 0) {
                if (phase_ == Phase::Done) {
                    kind_ = TokenKind::End;
                    return kind_;
                }
                fail("unexpected end of input", token_off_);
            }
            switch (phase_) {
                case Phase::Done:
                    fail("trailing data after top-level value", token_off_);
                case Phase::Colon:
                    if (c != ':') fail("expected ':'", token_off_);
                    get();
                    phase_ = Phase::Value;
                    continue;
                case Phase::CommaOrClose:
                    if (c == ',') {
                        get();
                        phase_ = stack_.back() ? Phase::Key : Phase::Value;
                        continue;
                    }
                    if (c == '}' && stack_.back()) return close_object();
                    if (c == ']' && !stack_.back()) return close_array();
                    fail(stack_.back() ? "expected ',' or '}'"
                                       : "expected ',' or ']'",
                         token_off_);
                case Phase::KeyOrClose:
                    if (c == '}') return close_object();
                    [[fallthrough]];
                case Phase::Key:
                    if (c != '"') fail("expected object key", token_off_);
                    read_string();
                    phase_ = Phase::Colon;
                    kind_ = TokenKind::Key;
                    return kind_;
                case Phase::ValueOrClose:
                    if (c == ']') return close_array();
                    [[fallthrough]];
                case Phase::Value:
                    return read_value(c);
            }
        }
    }

    TokenKind kind() const noexcept { return kind_; }
    // Decoded text for Key/String, raw lexeme for Number.
    const std::string& text() const noexcept { return text_; }
    // Byte offset of the first character of the last token.
    std::uint64_t offset() const noexcept { return token_off_; }
    std::size_t depth() const noexcept { return stack_.size(); }

private:
    enum class Phase { Value, ValueOrClose, KeyOrClose, Key, Colon, CommaOrClose, Done };

    [[noreturn]] void fail(const std::string& msg, std::uint64_t off) {
        throw Error(Errc::MalformedJson, msg, {}, off);
    }

    bool refill() {
        base_off_ += len_;
        len_ = src_.read(buf_, sizeof buf_);
        pos_ = 0;
        return len_ > 0;
    }

    int peek() {
        if (pos_ == len_ && !refill()) return -1;
        return static_cast<unsigned char>(buf_[pos_]);
    }

    int get() {
        int c = peek();
        if (c >= 0) ++pos_;
        return c;
    }

    std::uint64_t pos_offset() const noexcept { return base_off_ + pos_; }

    void skip_ws() {
        for (;;) {
            int c = peek();
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
                get();
            else
                return;
        }
    }

    Phase after_value() const noexcept {
        return stack_.empty() ? Phase::Done : Phase::CommaOrClose;
    }

    TokenKind close_object() {
        get();
        stack_.pop_back();
        phase_ = after_value();
        kind_ = TokenKind::ObjectEnd;
        return kind_;
    }

    TokenKind close_array() {
        get();
        stack_.pop_back();
        phase_ = after_value();
        kind_ = TokenKind::ArrayEnd;
        return kind_;
    }

    TokenKind read_value(int c) {
        switch (c) {
            case '{':
                get();
                push(true);
                phase_ = Phase::KeyOrClose;
                kind_ = TokenKind::ObjectBegin;
                return kind_;
            case '[':
                get();
                push(false);
                phase_ = Phase::ValueOrClose;
                kind_ = TokenKind::ArrayBegin;
                return kind_;
            case '"':
                read_string();
                phase_ = after_value();
                kind_ = TokenKind::String;
                return kind_;
            case 't':
                read_keyword("true");
                kind_ = TokenKind::True;
                return kind_;
            case 'f':
                read_keyword("false");
                kind_ = TokenKind::False;
                return kind_;
            case 'n':
                read_keyword("null");
                kind_ = TokenKind::Null;
                return kind_;
            default:
                if (c == '-' || (c >= '0' && c <= '9')) {
                    read_number();
                    phase_ = after_value();
                    kind_ = TokenKind::Number;
                    return kind_;
                }
                fail("unexpected character", token_off_);
        }
    }

    void push(bool is_object) {
        if (stack_.size() >= max_depth_)
            fail("nesting depth limit exceeded", token_off_);
        stack_.push_back(is_object);
    }

    void read_keyword(const char* word) {
        for (const char* p = word; *p; ++p) {
            if (get() != *p) fail("invalid literal", token_off_);
        }
        phase_ = after_value();
    }

    void read_number() {
        text_.clear();
        auto take = [&] { text_.push_back(static_cast<char>(get())); };
        auto digits = [&](const char* what) {
            int c = peek();
            if (c < '0' || c > '9') fail(what, pos_offset());
            while (c >= '0' && c <= '9') {
                take();
                c = peek();
            }
        };
        if (peek() == '-') take();
        int c = peek();
        if (c == '0') {
            take();
        } else if (c >= '1' && c <= '9') {
            digits("expected digit");
        } else {
            fail("expected digit", pos_offset());
        }
        if (peek() == '.') {
            take();
            digits("expected digit after '.'");
        }
        c = peek();
        if (c == 'e' || c == 'E') {
            take();
            c = peek();
            if (c == '+' || c == '-') take();
            digits("expected digit in exponent");
        }
    }

    void read_string() {
        get();  // opening quote
        text_.clear();
        for (;;) {
            int c = get();
            if (c < 0) fail("unterminated string", pos_offset());
            if (c == '"') return;
            if (c == '\\') {
                read_escape();
                continue;
            }
            if (c < 0x20)
                fail("raw control character in string", pos_offset() - 1);
            text_.push_back(static_cast<char>(c));
        }
    }

    void read_escape() {
        int c = get();
        switch (c) {
            case '"': text_.push_back('"'); return;
            case '\\': text_.push_back('\\'); return;
            case '/': text_.push_back('/'); return;
            case 'b': text_.push_back('\b'); return;
            case 'f': text_.push_back('\f'); return;
            case 'n': text_.push_back('\n'); return;
            case 'r': text_.push_back('\r'); return;
            case 't': text_.push_back('\t'); return;
            case 'u': {
                std::uint32_t cp = read_hex4();
                if (cp >= 0xD800 && cp <= 0xDBFF) {
                    if (get() != '\\' || get() != 'u')
                        fail("unpaired surrogate escape", pos_offset());
                    std::uint32_t lo = read_hex4();
                    if (lo < 0xDC00 || lo > 0xDFFF)
                        fail("invalid low surrogate", pos_offset());
                    cp = 0x10000 + ((cp - 0xD800) << 10) + (lo - 0xDC00);
                } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
                    fail("unpaired surrogate escape", pos_offset());
                }
                append_utf8(cp);
                return;
            }
            default:
                fail("invalid escape sequence", pos_offset());
        }
    }

    std::uint32_t read_hex4() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            int c = get();
            v <<= 4;
            if (c >= '0' && c <= '9')
                v |= static_cast<std::uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f')
                v |= static_cast<std::uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                v |= static_cast<std::uint32_t>(c - 'A' + 10);
            else
                fail("invalid unicode escape", pos_offset());
        }
        return v;
    }

    void append_utf8(std::uint32_t cp) {
        if (cp < 0x80) {
            text_.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            text_.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            text_.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            text_.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            text_.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            text_.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            text_.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            text_.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            text_.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            text_.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }

    io::ByteSource& src_;
    std::size_t max_depth_;
    char buf_[1 << 14] = {};
    std::size_t pos_ = 0;
    std::size_t len_ = 0;
    std::uint64_t base_off_ = 0;
    std::uint64_t token_off_ = 0;
    std::vector<bool> stack_;  // true = object frame
    Phase phase_ = Phase::Value;
    TokenKind kind_ = TokenKind::Null;
    std::string text_;
};

}  // namespace jxes::json
