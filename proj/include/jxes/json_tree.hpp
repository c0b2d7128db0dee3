#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jxes/error.hpp"
#include "jxes/json_emit.hpp"
#include "jxes/json_tokens.hpp"

namespace jxes::json {

// Number lexeme kept verbatim; int/float interpretation happens later.
struct NumberLex {
    std::string lexeme;
};

// Document tree for the materializing strategy. Object members keep source
// order, and duplicate keys survive so higher layers can apply their own
// policy.
class JsonValue {
public:
    using Array = std::vector<JsonValue>;
    struct Member;
    using Object = std::vector<Member>;
    using Storage =
        std::variant<std::monostate, bool, std::string, NumberLex, Array, Object>;

    JsonValue() = default;
    explicit JsonValue(Storage s) : v(std::move(s)) {}

    bool is_null() const noexcept { return std::holds_alternative<std::monostate>(v); }
    bool is_bool() const noexcept { return std::holds_alternative<bool>(v); }
    bool is_string() const noexcept { return std::holds_alternative<std::string>(v); }
    bool is_number() const noexcept { return std::holds_alternative<NumberLex>(v); }
    bool is_array() const noexcept { return std::holds_alternative<Array>(v); }
    bool is_object() const noexcept { return std::holds_alternative<Object>(v); }

    bool as_bool() const { return std::get<bool>(v); }
    const std::string& as_string() const { return std::get<std::string>(v); }
    const NumberLex& as_number() const { return std::get<NumberLex>(v); }
    const Array& as_array() const { return std::get<Array>(v); }
    const Object& as_object() const { return std::get<Object>(v); }
    Array& as_array() { return std::get<Array>(v); }
    Object& as_object() { return std::get<Object>(v); }

    // First member with the given key, or nullptr.
    const JsonValue* find(std::string_view key) const;

    const char* type_name() const noexcept {
        switch (v.index()) {
            case 0: return "null";
            case 1: return "boolean";
            case 2: return "string";
            case 3: return "number";
            case 4: return "array";
            default: return "object";
        }
    }

    Storage v;
};

struct JsonValue::Member {
    std::string key;
    JsonValue value;
    std::uint64_t offset = 0;
};

inline const JsonValue* JsonValue::find(std::string_view key) const {
    if (!is_object()) return nullptr;
    for (const Member& m : as_object())
        if (m.key == key) return &m.value;
    return nullptr;
}

namespace detail {

inline JsonValue parse_value(Tokenizer& tok) {
    switch (tok.kind()) {
        case TokenKind::ObjectBegin: {
            JsonValue v{JsonValue::Object{}};
            auto& obj = v.as_object();
            while (tok.next() != TokenKind::ObjectEnd) {
                JsonValue::Member m;
                m.key = tok.text();
                m.offset = tok.offset();
                tok.next();
                m.value = parse_value(tok);
                obj.push_back(std::move(m));
            }
            return v;
        }
        case TokenKind::ArrayBegin: {
            JsonValue v{JsonValue::Array{}};
            auto& arr = v.as_array();
            while (tok.next() != TokenKind::ArrayEnd)
                arr.push_back(parse_value(tok));
            return v;
        }
        case TokenKind::String:
            return JsonValue{std::string(tok.text())};
        case TokenKind::Number:
            return JsonValue{NumberLex{tok.text()}};
        case TokenKind::True:
            return JsonValue{true};
        case TokenKind::False:
            return JsonValue{false};
        case TokenKind::Null:
            return JsonValue{};
        default:
            throw Error(Errc::MalformedJson, "unexpected token", {}, tok.offset());
    }
}

}  // namespace detail

inline JsonValue parse_tree(io::ByteSource& src, std::size_t max_depth = 512) {
    Tokenizer tok(src, max_depth);
    tok.next();
    JsonValue v = detail::parse_value(tok);
    tok.next();  // enforces absence of trailing data
    return v;
}

inline JsonValue parse_tree(std::string_view text, std::size_t max_depth = 512) {
    io::MemorySource src(text);
    return parse_tree(src, max_depth);
}

inline void dump(const JsonValue& v, JsonEmitter& out) {
    switch (v.v.index()) {
        case 0: out.null(); break;
        case 1: out.boolean(v.as_bool()); break;
        case 2: out.string(v.as_string()); break;
        case 3: out.raw_number(v.as_number().lexeme); break;
        case 4:
            out.begin_array();
            for (const JsonValue& e : v.as_array()) dump(e, out);
            out.end_array();
            break;
        default:
            out.begin_object();
            for (const JsonValue::Member& m : v.as_object()) {
                out.key(m.key);
                dump(m.value, out);
            }
            out.end_object();
            break;
    }
}

inline std::string dump_string(const JsonValue& v, bool pretty = false) {
    std::string out;
    io::StringSink sink(out);
    JsonEmitter em(sink, pretty);
    dump(v, em);
    return out;
}

}  // namespace jxes::json
