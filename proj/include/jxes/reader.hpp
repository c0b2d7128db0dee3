#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jxes/diagnostics.hpp"
#include "jxes/error.hpp"
#include "jxes/io.hpp"
#include "jxes/json_tokens.hpp"
#include "jxes/json_tree.hpp"
#include "jxes/lexical.hpp"
#include "jxes/model.hpp"

namespace jxes {

enum class Backend { Tree, Streaming };

inline std::string_view backend_name(Backend b) {
    return b == Backend::Tree ? "tree" : "streaming";
}

inline std::optional<Backend> backend_from_name(std::string_view s) {
    if (s == "tree") return Backend::Tree;
    if (s == "streaming") return Backend::Streaming;
    return std::nullopt;
}

struct ParseOptions {
    Backend backend = Backend::Tree;
    // Strict mode turns unknown-key and duplicate-key warnings into errors.
    bool strict = false;
    std::size_t max_depth = 512;
};

inline constexpr std::string_view kValueKey = "value";
inline constexpr std::string_view kNestedAttrsKey = "nested-attrs";

inline bool is_reserved_key(std::string_view k) {
    return k == kValueKey || k == kNestedAttrsKey;
}

namespace detail {

// Document location tracked as reusable segments; the string form is only
// rendered when a diagnostic fires.
class PathStack {
public:
    void push_key(std::string_view k) {
        if (depth_ == segs_.size()) segs_.emplace_back();
        Seg& s = segs_[depth_++];
        s.key.assign(k);
        s.is_index = false;
    }

    void push_index(std::size_t i) {
        if (depth_ == segs_.size()) segs_.emplace_back();
        Seg& s = segs_[depth_++];
        s.index = i;
        s.is_index = true;
    }

    void pop() noexcept { --depth_; }

    std::string render() const {
        std::string out = jsonpath::root();
        for (std::size_t i = 0; i < depth_; ++i) {
            const Seg& s = segs_[i];
            out = s.is_index ? jsonpath::index(out, s.index)
                             : jsonpath::member(out, s.key);
        }
        return out;
    }

private:
    struct Seg {
        std::string key;
        std::size_t index = 0;
        bool is_index = false;
    };
    std::vector<Seg> segs_;
    std::size_t depth_ = 0;
};

struct PathGuard {
    PathGuard(PathStack& p, std::string_view key) : p_(p) { p_.push_key(key); }
    PathGuard(PathStack& p, std::size_t index) : p_(p) { p_.push_index(index); }
    ~PathGuard() { p_.pop(); }
    PathGuard(const PathGuard&) = delete;
    PathGuard& operator=(const PathGuard&) = delete;

private:
    PathStack& p_;
};

inline AttributeValue scalar_from_string(const std::string& s) {
    if (auto d = lexical::parse_date(s)) return *d;
    return s;
}

class ReaderCommon {
protected:
    ReaderCommon(const ParseOptions& opts, std::vector<Diagnostic>* warnings)
        : opts_(opts), warnings_(warnings) {}

    [[noreturn]] void fail(Errc c, std::string msg,
                           std::uint64_t off = Error::kNoOffset) const {
        throw Error(c, std::move(msg), path_.render(), off);
    }

    void warn(std::string code, std::string msg) const {
        if (warnings_)
            warnings_->push_back({Severity::Warning, std::move(code),
                                  path_.render(), std::move(msg)});
    }

    // Path must already address the duplicated member.
    void on_duplicate(std::string_view key) const {
        if (opts_.strict)
            fail(Errc::SchemaViolation,
                 "duplicate key '" + std::string(key) + "'");
        warn("DuplicateKey",
             "duplicate key '" + std::string(key) + "'; last occurrence wins");
    }

    void on_unknown(std::string_view key) const {
        if (opts_.strict)
            fail(Errc::SchemaViolation, "unknown key '" + std::string(key) + "'");
        warn("UnknownKey", "ignoring unknown key '" + std::string(key) + "'");
    }

    AttributeValue number_value(std::string_view lexeme) const {
        try {
            lexical::ParsedNumber pn = lexical::parse_json_number(lexeme);
            if (pn.is_int) return pn.i;
            return pn.d;
        } catch (const Error& e) {
            throw Error(e.code(), e.message(), path_.render(), e.offset());
        }
    }

    // Path must already address the member being inserted.
    void insert_checked(AttributeSet& out, Attribute a) const {
        if (out.contains(a.key)) {
            on_duplicate(a.key);
            out.upsert(std::move(a));
        } else {
            out.insert(std::move(a));
        }
    }

    const ParseOptions& opts_;
    std::vector<Diagnostic>* warnings_;
    mutable PathStack path_;
};

// Materializing strategy: the whole document tree is built first, then
// interpreted.
class TreeReader : ReaderCommon {
public:
    TreeReader(const ParseOptions& opts, std::vector<Diagnostic>* warnings)
        : ReaderCommon(opts, warnings) {}

    EventLog read(const json::JsonValue& root) {
        if (!root.is_object())
            fail(Errc::SchemaViolation,
                 std::string("top-level value must be an object, got ") +
                     root.type_name());
        EventLog log;
        bool seen[5] = {};
        for (const auto& m : root.as_object()) {
            PathGuard g(path_, m.key);
            if (m.key == "attrs") {
                if (seen[0]) on_duplicate(m.key);
                seen[0] = true;
                log.attributes.clear();
                read_attr_map(require_object(m.value, "'attrs'"), log.attributes);
            } else if (m.key == "global-attrs") {
                if (seen[1]) on_duplicate(m.key);
                seen[1] = true;
                log.globals = {};
                read_globals(require_object(m.value, "'global-attrs'"), log.globals);
            } else if (m.key == "classifiers") {
                if (seen[2]) on_duplicate(m.key);
                seen[2] = true;
                log.classifiers.clear();
                read_classifiers(require_object(m.value, "'classifiers'"),
                                 log.classifiers);
            } else if (m.key == "extensions") {
                if (seen[3]) on_duplicate(m.key);
                seen[3] = true;
                log.extensions.clear();
                read_extensions(m.value, log.extensions);
            } else if (m.key == "traces") {
                if (seen[4]) on_duplicate(m.key);
                seen[4] = true;
                log.traces.clear();
                read_traces(m.value, log.traces);
            } else {
                on_unknown(m.key);
            }
        }
        return log;
    }

    // Object in attribute position: plain container or nested attribute.
    void read_attr_object(const json::JsonValue::Object& obj, Attribute& out) {
        bool reserved = false;
        for (const auto& m : obj)
            if (is_reserved_key(m.key)) reserved = true;
        if (!reserved) {
            out.value = ContainerValue{};
            auto& entries = std::get<ContainerValue>(out.value).entries;
            for (const auto& m : obj) {
                PathGuard g(path_, m.key);
                insert_checked(entries, read_attr(m.key, m.value));
            }
            return;
        }
        bool have_value = false, have_nested = false;
        for (const auto& m : obj) {
            PathGuard g(path_, m.key);
            if (m.key == kValueKey) {
                if (have_value) on_duplicate(m.key);
                have_value = true;
                out.value = value_of(m.value);
            } else if (m.key == kNestedAttrsKey) {
                if (have_nested) on_duplicate(m.key);
                have_nested = true;
                if (!m.value.is_object())
                    fail(Errc::ReservedKeyMisuse,
                         std::string("'nested-attrs' must be an object, got ") +
                             m.value.type_name());
                out.children.clear();
                read_attr_map(m.value.as_object(), out.children);
            } else {
                fail(Errc::ReservedKeyMisuse,
                     "key '" + m.key +
                         "' is not permitted alongside 'value'/'nested-attrs'");
            }
        }
        if (!have_value) {
            out.value = std::string{};
            warn("NestedAttrNoValue",
                 "nested attribute has no 'value'; empty string assumed");
        }
    }

    // Pure value position: a reserved-form object has no representation here.
    AttributeValue value_of(const json::JsonValue& v) {
        switch (v.v.index()) {
            case 1: return v.as_bool();
            case 2: return scalar_from_string(v.as_string());
            case 3: return number_value(v.as_number().lexeme);
            case 4: {
                ListValue lv;
                read_list(v.as_array(), lv);
                return lv;
            }
            case 5: {
                const auto& obj = v.as_object();
                for (const auto& m : obj)
                    if (is_reserved_key(m.key))
                        fail(Errc::ReservedKeyMisuse,
                             "nested attribute is not permitted in value position");
                ContainerValue cv;
                for (const auto& m : obj) {
                    PathGuard g(path_, m.key);
                    insert_checked(cv.entries, read_attr(m.key, m.value));
                }
                return cv;
            }
            default:
                fail(Errc::SchemaViolation, "null is not a valid attribute value");
        }
    }

    void read_list(const json::JsonValue::Array& arr, ListValue& out) {
        for (std::size_t i = 0; i < arr.size(); ++i) {
            PathGuard gi(path_, i);
            const json::JsonValue& elem = arr[i];
            if (!elem.is_object())
                fail(Errc::SchemaViolation,
                     std::string("list element must be a JSON object, got ") +
                         elem.type_name());
            std::size_t start = out.items.size();
            for (const auto& m : elem.as_object()) {
                PathGuard gk(path_, m.key);
                Attribute item = read_attr(m.key, m.value);
                bool dup = false;
                for (std::size_t j = start; j < out.items.size(); ++j) {
                    if (out.items[j].key == m.key) {
                        on_duplicate(m.key);
                        out.items[j] = std::move(item);
                        dup = true;
                        break;
                    }
                }
                if (!dup) out.items.push_back(std::move(item));
            }
        }
    }

    Attribute read_attr(std::string_view key, const json::JsonValue& v) {
        Attribute a;
        a.key.assign(key);
        if (v.is_object())
            read_attr_object(v.as_object(), a);
        else
            a.value = value_of(v);
        return a;
    }

private:
    const json::JsonValue::Object& require_object(const json::JsonValue& v,
                                                  std::string_view what) {
        if (!v.is_object())
            fail(Errc::SchemaViolation, std::string(what) +
                                            " must be an object, got " +
                                            v.type_name());
        return v.as_object();
    }

    void read_attr_map(const json::JsonValue::Object& obj, AttributeSet& out) {
        for (const auto& m : obj) {
            PathGuard g(path_, m.key);
            insert_checked(out, read_attr(m.key, m.value));
        }
    }

    void read_globals(const json::JsonValue::Object& obj, GlobalAttributes& out) {
        bool seen_trace = false, seen_event = false;
        for (const auto& m : obj) {
            PathGuard g(path_, m.key);
            if (m.key == "trace") {
                if (seen_trace) on_duplicate(m.key);
                seen_trace = true;
                out.trace_level.clear();
                read_attr_map(require_object(m.value, "'trace'"), out.trace_level);
            } else if (m.key == "event") {
                if (seen_event) on_duplicate(m.key);
                seen_event = true;
                out.event_level.clear();
                read_attr_map(require_object(m.value, "'event'"), out.event_level);
            } else {
                fail(Errc::SchemaViolation,
                     "'global-attrs' keys must be 'trace' or 'event', got '" +
                         m.key + "'");
            }
        }
    }

    void read_classifiers(const json::JsonValue::Object& obj,
                          std::vector<Classifier>& out) {
        for (const auto& m : obj) {
            PathGuard g(path_, m.key);
            if (m.key.empty())
                fail(Errc::SchemaViolation, "classifier name must be non-empty");
            if (!m.value.is_array())
                fail(Errc::SchemaViolation,
                     std::string(
                         "classifier value must be an array of strings, got ") +
                         m.value.type_name());
            const auto& arr = m.value.as_array();
            if (arr.empty())
                fail(Errc::SchemaViolation,
                     "classifier must list at least one key");
            Classifier c;
            c.name = m.key;
            for (std::size_t i = 0; i < arr.size(); ++i) {
                PathGuard gi(path_, i);
                if (!arr[i].is_string())
                    fail(Errc::SchemaViolation,
                         std::string("classifier key must be a string, got ") +
                             arr[i].type_name());
                if (arr[i].as_string().empty())
                    fail(Errc::SchemaViolation,
                         "classifier key must be a non-empty string");
                c.keys.push_back(arr[i].as_string());
            }
            bool replaced = false;
            for (Classifier& prev : out) {
                if (prev.name == c.name) {
                    on_duplicate(m.key);
                    prev = std::move(c);
                    replaced = true;
                    break;
                }
            }
            if (!replaced) out.push_back(std::move(c));
        }
    }

    void read_extensions(const json::JsonValue& v, std::vector<Extension>& out) {
        if (!v.is_array())
            fail(Errc::SchemaViolation,
                 std::string("'extensions' must be an array, got ") +
                     v.type_name());
        const auto& arr = v.as_array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            PathGuard gi(path_, i);
            if (!arr[i].is_object())
                fail(Errc::SchemaViolation,
                     std::string("extension entry must be an object, got ") +
                         arr[i].type_name());
            std::optional<std::string> name, prefix, uri;
            for (const auto& m : arr[i].as_object()) {
                PathGuard gk(path_, m.key);
                std::optional<std::string>* slot = nullptr;
                if (m.key == "name")
                    slot = &name;
                else if (m.key == "prefix")
                    slot = &prefix;
                else if (m.key == "uri")
                    slot = &uri;
                if (!slot) {
                    on_unknown(m.key);
                    continue;
                }
                if (*slot) on_duplicate(m.key);
                if (!m.value.is_string())
                    fail(Errc::SchemaViolation,
                         "extension '" + m.key + "' must be a string, got " +
                             m.value.type_name());
                if (m.value.as_string().empty())
                    fail(Errc::SchemaViolation,
                         "extension '" + m.key + "' must be non-empty");
                if (m.key == "uri" && !lexical::has_uri_scheme(m.value.as_string()))
                    fail(Errc::SchemaViolation,
                         "extension uri must carry a URI scheme");
                *slot = m.value.as_string();
            }
            for (const char* k : {"name", "prefix", "uri"}) {
                bool present = (k == std::string_view("name"))     ? name.has_value()
                               : (k == std::string_view("prefix")) ? prefix.has_value()
                                                                   : uri.has_value();
                if (!present)
                    fail(Errc::SchemaViolation,
                         std::string("extension entry missing '") + k + "'");
            }
            out.push_back({std::move(*name), std::move(*prefix), std::move(*uri)});
        }
    }

    void read_traces(const json::JsonValue& v, std::vector<Trace>& out) {
        if (!v.is_array())
            fail(Errc::SchemaViolation,
                 std::string("'traces' must be an array, got ") + v.type_name());
        const auto& arr = v.as_array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            PathGuard gi(path_, i);
            if (!arr[i].is_object())
                fail(Errc::SchemaViolation,
                     std::string("trace entry must be an object, got ") +
                         arr[i].type_name());
            Trace t;
            bool seen_attrs = false, seen_events = false;
            for (const auto& m : arr[i].as_object()) {
                PathGuard gk(path_, m.key);
                if (m.key == "attrs") {
                    if (seen_attrs) on_duplicate(m.key);
                    seen_attrs = true;
                    t.attributes.clear();
                    read_attr_map(require_object(m.value, "'attrs'"),
                                  t.attributes);
                } else if (m.key == "events") {
                    if (seen_events) on_duplicate(m.key);
                    seen_events = true;
                    t.events.clear();
                    read_events(m.value, t.events);
                } else {
                    on_unknown(m.key);
                }
            }
            out.push_back(std::move(t));
        }
    }

    void read_events(const json::JsonValue& v, std::vector<Event>& out) {
        if (!v.is_array())
            fail(Errc::SchemaViolation,
                 std::string("'events' must be an array, got ") + v.type_name());
        const auto& arr = v.as_array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            PathGuard gi(path_, i);
            if (!arr[i].is_object())
                fail(Errc::SchemaViolation,
                     std::string("event must be a JSON object, got ") +
                         arr[i].type_name());
            Event ev;
            read_attr_map(arr[i].as_object(), ev.attributes);
            out.push_back(std::move(ev));
        }
    }
};

// Incremental strategy: the model is built directly from the token stream,
// never materializing a document tree.
class StreamReader : ReaderCommon {
public:
    StreamReader(const ParseOptions& opts, std::vector<Diagnostic>* warnings)
        : ReaderCommon(opts, warnings) {}

    EventLog read(json::Tokenizer& tok) {
        tok_ = &tok;
        if (advance() != json::TokenKind::ObjectBegin)
            fail(Errc::SchemaViolation,
                 "top-level value must be an object, got " + token_type_name(),
                 tok.offset());
        EventLog log;
        bool seen[5] = {};
        while (advance() == json::TokenKind::Key) {
            std::string key = tok_->text();
            PathGuard g(path_, key);
            if (key == "attrs") {
                if (seen[0]) on_duplicate(key);
                seen[0] = true;
                log.attributes.clear();
                expect_object("'attrs'");
                read_attr_map_body(log.attributes);
            } else if (key == "global-attrs") {
                if (seen[1]) on_duplicate(key);
                seen[1] = true;
                log.globals = {};
                expect_object("'global-attrs'");
                read_globals_body(log.globals);
            } else if (key == "classifiers") {
                if (seen[2]) on_duplicate(key);
                seen[2] = true;
                log.classifiers.clear();
                expect_object("'classifiers'");
                read_classifiers_body(log.classifiers);
            } else if (key == "extensions") {
                if (seen[3]) on_duplicate(key);
                seen[3] = true;
                log.extensions.clear();
                advance();
                read_extensions(log.extensions);
            } else if (key == "traces") {
                if (seen[4]) on_duplicate(key);
                seen[4] = true;
                log.traces.clear();
                advance();
                read_traces(log.traces);
            } else {
                on_unknown(key);
                advance();
                skip_value();
            }
        }
        advance();  // consumes End, enforcing the no-trailing-data rule
        return log;
    }

private:
    json::TokenKind advance() { return cur_ = tok_->next(); }

    std::string token_type_name() const {
        switch (cur_) {
            case json::TokenKind::ObjectBegin: return "object";
            case json::TokenKind::ArrayBegin: return "array";
            case json::TokenKind::String: return "string";
            case json::TokenKind::Number: return "number";
            case json::TokenKind::True:
            case json::TokenKind::False: return "boolean";
            case json::TokenKind::Null: return "null";
            default: return "end of container";
        }
    }

    void expect_object(std::string_view what) {
        if (advance() != json::TokenKind::ObjectBegin)
            fail(Errc::SchemaViolation,
                 std::string(what) + " must be an object, got " +
                     token_type_name(),
                 tok_->offset());
    }

    // Consumes the value whose first token is current.
    void skip_value() {
        std::size_t depth = 0;
        do {
            switch (cur_) {
                case json::TokenKind::ObjectBegin:
                case json::TokenKind::ArrayBegin: ++depth; break;
                case json::TokenKind::ObjectEnd:
                case json::TokenKind::ArrayEnd: --depth; break;
                default: break;
            }
            if (depth == 0) return;
            advance();
        } while (true);
    }

    // Current token is ObjectBegin; consumes through the matching ObjectEnd.
    void read_attr_map_body(AttributeSet& out) {
        while (advance() == json::TokenKind::Key) {
            std::string key = tok_->text();
            PathGuard g(path_, key);
            Attribute a;
            a.key = key;
            advance();
            read_value_into(a);
            insert_checked(out, std::move(a));
        }
    }

    // Current token is the first token of the attribute's value.
    void read_value_into(Attribute& a) {
        switch (cur_) {
            case json::TokenKind::String:
                a.value = scalar_from_string(tok_->text());
                return;
            case json::TokenKind::Number:
                a.value = number_value(tok_->text());
                return;
            case json::TokenKind::True: a.value = true; return;
            case json::TokenKind::False: a.value = false; return;
            case json::TokenKind::Null:
                fail(Errc::SchemaViolation, "null is not a valid attribute value",
                     tok_->offset());
            case json::TokenKind::ArrayBegin: {
                ListValue lv;
                read_list_body(lv);
                a.value = std::move(lv);
                return;
            }
            case json::TokenKind::ObjectBegin:
                read_attr_object_body(a);
                return;
            default:
                fail(Errc::MalformedJson, "unexpected token", tok_->offset());
        }
    }

    // Current token is ObjectBegin of an object in attribute position.
    void read_attr_object_body(Attribute& a) {
        if (advance() == json::TokenKind::ObjectEnd) {
            a.value = ContainerValue{};
            return;
        }
        std::string first = tok_->text();
        if (is_reserved_key(first)) {
            read_reserved_members(a);
            return;
        }
        a.value = ContainerValue{};
        auto& entries = std::get<ContainerValue>(a.value).entries;
        for (;;) {
            std::string key = tok_->text();
            PathGuard g(path_, key);
            if (is_reserved_key(key))
                fail(Errc::ReservedKeyMisuse,
                     "key '" + key +
                         "' is not permitted alongside ordinary container keys",
                     tok_->offset());
            Attribute e;
            e.key = key;
            advance();
            read_value_into(e);
            insert_checked(entries, std::move(e));
            if (advance() != json::TokenKind::Key) return;
        }
    }

    // Current token is the first Key of a reserved-form object.
    void read_reserved_members(Attribute& a) {
        bool have_value = false, have_nested = false;
        for (;;) {
            std::string key = tok_->text();
            {
                PathGuard g(path_, key);
                if (key == kValueKey) {
                    if (have_value) on_duplicate(key);
                    have_value = true;
                    advance();
                    a.value = read_pure_value();
                } else if (key == kNestedAttrsKey) {
                    if (have_nested) on_duplicate(key);
                    have_nested = true;
                    if (advance() != json::TokenKind::ObjectBegin)
                        fail(Errc::ReservedKeyMisuse,
                             "'nested-attrs' must be an object, got " +
                                 token_type_name(),
                             tok_->offset());
                    a.children.clear();
                    read_attr_map_body(a.children);
                } else {
                    fail(Errc::ReservedKeyMisuse,
                         "key '" + key +
                             "' is not permitted alongside 'value'/'nested-attrs'",
                         tok_->offset());
                }
            }
            if (advance() != json::TokenKind::Key) break;
        }
        if (!have_value) {
            a.value = std::string{};
            warn("NestedAttrNoValue",
                 "nested attribute has no 'value'; empty string assumed");
        }
    }

    // Current token is the first token of a pure (non-attribute) value.
    AttributeValue read_pure_value() {
        switch (cur_) {
            case json::TokenKind::String: return scalar_from_string(tok_->text());
            case json::TokenKind::Number: return number_value(tok_->text());
            case json::TokenKind::True: return true;
            case json::TokenKind::False: return false;
            case json::TokenKind::Null:
                fail(Errc::SchemaViolation, "null is not a valid attribute value",
                     tok_->offset());
            case json::TokenKind::ArrayBegin: {
                ListValue lv;
                read_list_body(lv);
                return lv;
            }
            case json::TokenKind::ObjectBegin: {
                ContainerValue cv;
                while (advance() == json::TokenKind::Key) {
                    std::string key = tok_->text();
                    PathGuard g(path_, key);
                    if (is_reserved_key(key))
                        fail(Errc::ReservedKeyMisuse,
                             "nested attribute is not permitted in value position",
                             tok_->offset());
                    Attribute e;
                    e.key = key;
                    advance();
                    read_value_into(e);
                    insert_checked(cv.entries, std::move(e));
                }
                return cv;
            }
            default:
                fail(Errc::MalformedJson, "unexpected token", tok_->offset());
        }
    }

    // Current token is ArrayBegin; consumes through the matching ArrayEnd.
    void read_list_body(ListValue& out) {
        std::size_t index = 0;
        for (;;) {
            json::TokenKind t = advance();
            if (t == json::TokenKind::ArrayEnd) return;
            PathGuard gi(path_, index++);
            if (t != json::TokenKind::ObjectBegin)
                fail(Errc::SchemaViolation,
                     "list element must be a JSON object, got " +
                         token_type_name(),
                     tok_->offset());
            std::size_t start = out.items.size();
            while (advance() == json::TokenKind::Key) {
                std::string key = tok_->text();
                PathGuard gk(path_, key);
                Attribute item;
                item.key = key;
                advance();
                read_value_into(item);
                bool dup = false;
                for (std::size_t j = start; j < out.items.size(); ++j) {
                    if (out.items[j].key == key) {
                        on_duplicate(key);
                        out.items[j] = std::move(item);
                        dup = true;
                        break;
                    }
                }
                if (!dup) out.items.push_back(std::move(item));
            }
        }
    }

    // Current token is ObjectBegin of the global-attrs object.
    void read_globals_body(GlobalAttributes& out) {
        bool seen_trace = false, seen_event = false;
        while (advance() == json::TokenKind::Key) {
            std::string key = tok_->text();
            PathGuard g(path_, key);
            if (key == "trace") {
                if (seen_trace) on_duplicate(key);
                seen_trace = true;
                out.trace_level.clear();
                expect_object("'trace'");
                read_attr_map_body(out.trace_level);
            } else if (key == "event") {
                if (seen_event) on_duplicate(key);
                seen_event = true;
                out.event_level.clear();
                expect_object("'event'");
                read_attr_map_body(out.event_level);
            } else {
                fail(Errc::SchemaViolation,
                     "'global-attrs' keys must be 'trace' or 'event', got '" +
                         key + "'",
                     tok_->offset());
            }
        }
    }

    // Current token is ObjectBegin of the classifiers object.
    void read_classifiers_body(std::vector<Classifier>& out) {
        while (advance() == json::TokenKind::Key) {
            std::string name = tok_->text();
            PathGuard g(path_, name);
            if (name.empty())
                fail(Errc::SchemaViolation, "classifier name must be non-empty",
                     tok_->offset());
            if (advance() != json::TokenKind::ArrayBegin)
                fail(Errc::SchemaViolation,
                     "classifier value must be an array of strings, got " +
                         token_type_name(),
                     tok_->offset());
            Classifier c;
            c.name = name;
            std::size_t index = 0;
            for (;;) {
                json::TokenKind t = advance();
                if (t == json::TokenKind::ArrayEnd) break;
                PathGuard gi(path_, index++);
                if (t != json::TokenKind::String)
                    fail(Errc::SchemaViolation,
                         "classifier key must be a string, got " +
                             token_type_name(),
                         tok_->offset());
                if (tok_->text().empty())
                    fail(Errc::SchemaViolation,
                         "classifier key must be a non-empty string",
                         tok_->offset());
                c.keys.push_back(tok_->text());
            }
            if (c.keys.empty())
                fail(Errc::SchemaViolation,
                     "classifier must list at least one key", tok_->offset());
            bool replaced = false;
            for (Classifier& prev : out) {
                if (prev.name == c.name) {
                    on_duplicate(name);
                    prev = std::move(c);
                    replaced = true;
                    break;
                }
            }
            if (!replaced) out.push_back(std::move(c));
        }
    }

    // Current token is the extensions value's first token.
    void read_extensions(std::vector<Extension>& out) {
        if (cur_ != json::TokenKind::ArrayBegin)
            fail(Errc::SchemaViolation,
                 "'extensions' must be an array, got " + token_type_name(),
                 tok_->offset());
        std::size_t index = 0;
        for (;;) {
            json::TokenKind t = advance();
            if (t == json::TokenKind::ArrayEnd) return;
            PathGuard gi(path_, index++);
            if (t != json::TokenKind::ObjectBegin)
                fail(Errc::SchemaViolation,
                     "extension entry must be an object, got " +
                         token_type_name(),
                     tok_->offset());
            std::optional<std::string> name, prefix, uri;
            while (advance() == json::TokenKind::Key) {
                std::string key = tok_->text();
                PathGuard gk(path_, key);
                std::optional<std::string>* slot = nullptr;
                if (key == "name")
                    slot = &name;
                else if (key == "prefix")
                    slot = &prefix;
                else if (key == "uri")
                    slot = &uri;
                if (!slot) {
                    on_unknown(key);
                    advance();
                    skip_value();
                    continue;
                }
                if (*slot) on_duplicate(key);
                if (advance() != json::TokenKind::String)
                    fail(Errc::SchemaViolation,
                         "extension '" + key + "' must be a string, got " +
                             token_type_name(),
                         tok_->offset());
                if (tok_->text().empty())
                    fail(Errc::SchemaViolation,
                         "extension '" + key + "' must be non-empty",
                         tok_->offset());
                if (key == "uri" && !lexical::has_uri_scheme(tok_->text()))
                    fail(Errc::SchemaViolation,
                         "extension uri must carry a URI scheme", tok_->offset());
                *slot = tok_->text();
            }
            for (const char* k : {"name", "prefix", "uri"}) {
                bool present = (k == std::string_view("name"))     ? name.has_value()
                               : (k == std::string_view("prefix")) ? prefix.has_value()
                                                                   : uri.has_value();
                if (!present)
                    fail(Errc::SchemaViolation,
                         std::string("extension entry missing '") + k + "'");
            }
            out.push_back({std::move(*name), std::move(*prefix), std::move(*uri)});
        }
    }

    // Current token is the traces value's first token.
    void read_traces(std::vector<Trace>& out) {
        if (cur_ != json::TokenKind::ArrayBegin)
            fail(Errc::SchemaViolation,
                 "'traces' must be an array, got " + token_type_name(),
                 tok_->offset());
        std::size_t index = 0;
        for (;;) {
            json::TokenKind t = advance();
            if (t == json::TokenKind::ArrayEnd) return;
            PathGuard gi(path_, index++);
            if (t != json::TokenKind::ObjectBegin)
                fail(Errc::SchemaViolation,
                     "trace entry must be an object, got " + token_type_name(),
                     tok_->offset());
            Trace tr;
            bool seen_attrs = false, seen_events = false;
            while (advance() == json::TokenKind::Key) {
                std::string key = tok_->text();
                PathGuard gk(path_, key);
                if (key == "attrs") {
                    if (seen_attrs) on_duplicate(key);
                    seen_attrs = true;
                    tr.attributes.clear();
                    expect_object("'attrs'");
                    read_attr_map_body(tr.attributes);
                } else if (key == "events") {
                    if (seen_events) on_duplicate(key);
                    seen_events = true;
                    tr.events.clear();
                    advance();
                    read_events(tr.events);
                } else {
                    on_unknown(key);
                    advance();
                    skip_value();
                }
            }
            out.push_back(std::move(tr));
        }
    }

    // Current token is the events value's first token.
    void read_events(std::vector<Event>& out) {
        if (cur_ != json::TokenKind::ArrayBegin)
            fail(Errc::SchemaViolation,
                 "'events' must be an array, got " + token_type_name(),
                 tok_->offset());
        std::size_t index = 0;
        for (;;) {
            json::TokenKind t = advance();
            if (t == json::TokenKind::ArrayEnd) return;
            PathGuard gi(path_, index++);
            if (t != json::TokenKind::ObjectBegin)
                fail(Errc::SchemaViolation,
                     "event must be a JSON object, got " + token_type_name(),
                     tok_->offset());
            Event ev;
            read_attr_map_body(ev.attributes);
            out.push_back(std::move(ev));
        }
    }

    json::Tokenizer* tok_ = nullptr;
    json::TokenKind cur_ = json::TokenKind::Null;
};

}  // namespace detail

inline EventLog parse_jxes(io::ByteSource& in, const ParseOptions& opts = {},
                           std::vector<Diagnostic>* warnings = nullptr) {
    io::AutoInflateSource src(in);
    if (opts.backend == Backend::Tree) {
        json::JsonValue root = json::parse_tree(src, opts.max_depth);
        detail::TreeReader reader(opts, warnings);
        return reader.read(root);
    }
    json::Tokenizer tok(src, opts.max_depth);
    detail::StreamReader reader(opts, warnings);
    return reader.read(tok);
}

inline EventLog parse_jxes(std::string_view text, const ParseOptions& opts = {},
                           std::vector<Diagnostic>* warnings = nullptr) {
    io::MemorySource src(text);
    return parse_jxes(src, opts, warnings);
}

inline EventLog parse_jxes_file(const std::filesystem::path& path,
                                const ParseOptions& opts = {},
                                std::vector<Diagnostic>* warnings = nullptr) {
    io::FileSource src(path);
    return parse_jxes(src, opts, warnings);
}

// Value inference for a JSON value in pure value position. A reserved-form
// object cannot be expressed as a bare value and is rejected.
inline AttributeValue infer_value(const json::JsonValue& v) {
    ParseOptions opts;
    detail::TreeReader reader(opts, nullptr);
    return reader.value_of(v);
}

// Object in attribute position: nested attribute (reserved form) or plain
// container. The attribute key is the caller's to fill in.
inline Attribute interpret_container(const json::JsonValue& v) {
    if (!v.is_object())
        throw Error(Errc::SchemaViolation, "expected a JSON object");
    ParseOptions opts;
    detail::TreeReader reader(opts, nullptr);
    Attribute a;
    reader.read_attr_object(v.as_object(), a);
    return a;
}

inline ListValue interpret_list(const json::JsonValue& v) {
    if (!v.is_array())
        throw Error(Errc::SchemaViolation, "expected a JSON array");
    ParseOptions opts;
    detail::TreeReader reader(opts, nullptr);
    ListValue lv;
    reader.read_list(v.as_array(), lv);
    return lv;
}

}  // namespace jxes
