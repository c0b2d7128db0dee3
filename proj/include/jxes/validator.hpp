#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "jxes/diagnostics.hpp"
#include "jxes/error.hpp"
#include "jxes/io.hpp"
#include "jxes/json_emit.hpp"
#include "jxes/json_tree.hpp"
#include "jxes/lexical.hpp"

namespace jxes {

namespace validator_detail {

// Structural validation walks the document tree on its own, so validator
// findings can be checked against reader behavior instead of being defined
// by it. Every reader error condition has a mirror here; warnings are a
// superset of the reader's.
class Validator {
public:
    std::vector<Diagnostic> run(const json::JsonValue& root) {
        out_.clear();
        if (!root.is_object()) {
            error("SchemaViolation", "$",
                  std::string("top-level value must be an object, got ") +
                      root.type_name());
            return std::move(out_);
        }
        bool seen[5] = {};
        for (const auto& m : root.as_object()) {
            std::string p = jsonpath::member("$", m.key);
            if (m.key == "attrs") {
                note_dup(seen[0], p, m.key);
                if (expect_object(p, m.value, "'attrs'"))
                    check_attr_map(p, m.value.as_object());
            } else if (m.key == "global-attrs") {
                note_dup(seen[1], p, m.key);
                if (expect_object(p, m.value, "'global-attrs'"))
                    check_globals(p, m.value.as_object());
            } else if (m.key == "classifiers") {
                note_dup(seen[2], p, m.key);
                if (expect_object(p, m.value, "'classifiers'"))
                    check_classifiers(p, m.value.as_object());
            } else if (m.key == "extensions") {
                note_dup(seen[3], p, m.key);
                check_extensions(p, m.value);
            } else if (m.key == "traces") {
                note_dup(seen[4], p, m.key);
                check_traces(p, m.value);
            } else {
                warning("UnknownKey", p,
                        "ignoring unknown key '" + m.key + "'");
            }
        }
        check_global_satisfaction(root);
        check_classifier_keys(root);
        return std::move(out_);
    }

private:
    void error(std::string code, std::string path, std::string msg) {
        out_.push_back(
            {Severity::Error, std::move(code), std::move(path), std::move(msg)});
    }

    void warning(std::string code, std::string path, std::string msg) {
        out_.push_back({Severity::Warning, std::move(code), std::move(path),
                        std::move(msg)});
    }

    void note_dup(bool& seen, const std::string& path, const std::string& key) {
        if (seen)
            warning("DuplicateKey", path,
                    "duplicate key '" + key + "'; last occurrence wins");
        seen = true;
    }

    bool expect_object(const std::string& path, const json::JsonValue& v,
                       std::string_view what) {
        if (v.is_object()) return true;
        error("SchemaViolation", path,
              std::string(what) + " must be an object, got " + v.type_name());
        return false;
    }

    void check_attr_map(const std::string& path,
                        const json::JsonValue::Object& obj) {
        std::vector<std::string_view> seen;
        for (const auto& m : obj) {
            std::string p = jsonpath::member(path, m.key);
            if (std::find(seen.begin(), seen.end(), m.key) != seen.end())
                warning("DuplicateKey", p,
                        "duplicate key '" + m.key + "'; last occurrence wins");
            else
                seen.push_back(m.key);
            check_attr(p, m.value);
        }
    }

    // Attribute position: scalars, lists, containers and nested attributes.
    void check_attr(const std::string& path, const json::JsonValue& v) {
        if (!v.is_object()) {
            check_value(path, v);
            return;
        }
        const auto& obj = v.as_object();
        bool reserved = false;
        for (const auto& m : obj)
            if (m.key == "value" || m.key == "nested-attrs") reserved = true;
        if (!reserved) {
            check_attr_map(path, obj);
            return;
        }
        bool have_value = false, have_nested = false;
        for (const auto& m : obj) {
            std::string p = jsonpath::member(path, m.key);
            if (m.key == "value") {
                if (have_value)
                    warning("DuplicateKey", p,
                            "duplicate key 'value'; last occurrence wins");
                have_value = true;
                check_value(p, m.value);
            } else if (m.key == "nested-attrs") {
                if (have_nested)
                    warning("DuplicateKey", p,
                            "duplicate key 'nested-attrs'; last occurrence wins");
                have_nested = true;
                if (!m.value.is_object())
                    error("ReservedKeyMisuse", p,
                          std::string("'nested-attrs' must be an object, got ") +
                              m.value.type_name());
                else
                    check_attr_map(p, m.value.as_object());
            } else {
                error("ReservedKeyMisuse", p,
                      "key '" + m.key +
                          "' is not permitted alongside 'value'/'nested-attrs'");
            }
        }
        if (!have_value)
            warning("NestedAttrNoValue", path,
                    "nested attribute has no 'value'; empty string assumed");
    }

    // Pure value position: reserved-form objects have no representation.
    void check_value(const std::string& path, const json::JsonValue& v) {
        switch (v.v.index()) {
            case 0:
                error("SchemaViolation", path,
                      "null is not a valid attribute value");
                return;
            case 1:
            case 2:
                return;
            case 3:
                try {
                    lexical::parse_json_number(v.as_number().lexeme);
                } catch (const Error& e) {
                    error(std::string(errc_name(e.code())), path, e.message());
                }
                return;
            case 4: {
                const auto& arr = v.as_array();
                for (std::size_t i = 0; i < arr.size(); ++i) {
                    std::string p = jsonpath::index(path, i);
                    if (!arr[i].is_object()) {
                        error("SchemaViolation", p,
                              std::string(
                                  "list element must be a JSON object, got ") +
                                  arr[i].type_name());
                        continue;
                    }
                    std::vector<std::string_view> seen;
                    for (const auto& m : arr[i].as_object()) {
                        std::string pk = jsonpath::member(p, m.key);
                        if (std::find(seen.begin(), seen.end(), m.key) !=
                            seen.end())
                            warning("DuplicateKey", pk,
                                    "duplicate key '" + m.key +
                                        "'; last occurrence wins");
                        else
                            seen.push_back(m.key);
                        check_attr(pk, m.value);
                    }
                }
                return;
            }
            default: {
                const auto& obj = v.as_object();
                bool reserved = false;
                for (const auto& m : obj)
                    if (m.key == "value" || m.key == "nested-attrs")
                        reserved = true;
                if (reserved) {
                    error("ReservedKeyMisuse", path,
                          "nested attribute is not permitted in value position");
                    return;
                }
                check_attr_map(path, obj);
                return;
            }
        }
    }

    void check_globals(const std::string& path,
                       const json::JsonValue::Object& obj) {
        bool seen_trace = false, seen_event = false;
        for (const auto& m : obj) {
            std::string p = jsonpath::member(path, m.key);
            if (m.key == "trace") {
                note_dup(seen_trace, p, m.key);
                if (expect_object(p, m.value, "'trace'"))
                    check_attr_map(p, m.value.as_object());
            } else if (m.key == "event") {
                note_dup(seen_event, p, m.key);
                if (expect_object(p, m.value, "'event'"))
                    check_attr_map(p, m.value.as_object());
            } else {
                error("SchemaViolation", p,
                      "'global-attrs' keys must be 'trace' or 'event', got '" +
                          m.key + "'");
            }
        }
    }

    void check_classifiers(const std::string& path,
                           const json::JsonValue::Object& obj) {
        std::vector<std::string_view> seen;
        for (const auto& m : obj) {
            std::string p = jsonpath::member(path, m.key);
            if (std::find(seen.begin(), seen.end(), m.key) != seen.end())
                warning("DuplicateKey", p,
                        "duplicate key '" + m.key + "'; last occurrence wins");
            else
                seen.push_back(m.key);
            if (m.key.empty()) {
                error("SchemaViolation", p, "classifier name must be non-empty");
                continue;
            }
            if (!m.value.is_array()) {
                error("SchemaViolation", p,
                      std::string(
                          "classifier value must be an array of strings, got ") +
                          m.value.type_name());
                continue;
            }
            const auto& arr = m.value.as_array();
            if (arr.empty()) {
                error("SchemaViolation", p,
                      "classifier must list at least one key");
                continue;
            }
            for (std::size_t i = 0; i < arr.size(); ++i) {
                std::string pe = jsonpath::index(p, i);
                if (!arr[i].is_string())
                    error("SchemaViolation", pe,
                          std::string("classifier key must be a string, got ") +
                              arr[i].type_name());
                else if (arr[i].as_string().empty())
                    error("SchemaViolation", pe,
                          "classifier key must be a non-empty string");
            }
        }
    }

    void check_extensions(const std::string& path, const json::JsonValue& v) {
        if (!v.is_array()) {
            error("SchemaViolation", path,
                  std::string("'extensions' must be an array, got ") +
                      v.type_name());
            return;
        }
        const auto& arr = v.as_array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string p = jsonpath::index(path, i);
            if (!arr[i].is_object()) {
                error("SchemaViolation", p,
                      std::string("extension entry must be an object, got ") +
                          arr[i].type_name());
                continue;
            }
            bool seen[3] = {};
            for (const auto& m : arr[i].as_object()) {
                std::string pk = jsonpath::member(p, m.key);
                int slot = m.key == "name"     ? 0
                           : m.key == "prefix" ? 1
                           : m.key == "uri"    ? 2
                                               : -1;
                if (slot < 0) {
                    warning("UnknownKey", pk,
                            "ignoring unknown key '" + m.key + "'");
                    continue;
                }
                if (seen[slot])
                    warning("DuplicateKey", pk,
                            "duplicate key '" + m.key +
                                "'; last occurrence wins");
                seen[slot] = true;
                if (!m.value.is_string()) {
                    error("SchemaViolation", pk,
                          "extension '" + m.key + "' must be a string, got " +
                              m.value.type_name());
                    continue;
                }
                if (m.value.as_string().empty()) {
                    error("SchemaViolation", pk,
                          "extension '" + m.key + "' must be non-empty");
                    continue;
                }
                if (slot == 2 && !lexical::has_uri_scheme(m.value.as_string()))
                    error("SchemaViolation", pk,
                          "extension uri must carry a URI scheme");
            }
            const char* names[3] = {"name", "prefix", "uri"};
            for (int s = 0; s < 3; ++s)
                if (!seen[s])
                    error("SchemaViolation", p,
                          std::string("extension entry missing '") + names[s] +
                              "'");
        }
    }

    void check_traces(const std::string& path, const json::JsonValue& v) {
        if (!v.is_array()) {
            error("SchemaViolation", path,
                  std::string("'traces' must be an array, got ") + v.type_name());
            return;
        }
        const auto& arr = v.as_array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string p = jsonpath::index(path, i);
            if (!arr[i].is_object()) {
                error("SchemaViolation", p,
                      std::string("trace entry must be an object, got ") +
                          arr[i].type_name());
                continue;
            }
            bool seen_attrs = false, seen_events = false;
            for (const auto& m : arr[i].as_object()) {
                std::string pk = jsonpath::member(p, m.key);
                if (m.key == "attrs") {
                    note_dup(seen_attrs, pk, m.key);
                    if (expect_object(pk, m.value, "'attrs'"))
                        check_attr_map(pk, m.value.as_object());
                } else if (m.key == "events") {
                    note_dup(seen_events, pk, m.key);
                    check_events(pk, m.value);
                } else {
                    warning("UnknownKey", pk,
                            "ignoring unknown key '" + m.key + "'");
                }
            }
        }
    }

    void check_events(const std::string& path, const json::JsonValue& v) {
        if (!v.is_array()) {
            error("SchemaViolation", path,
                  std::string("'events' must be an array, got ") + v.type_name());
            return;
        }
        const auto& arr = v.as_array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            std::string p = jsonpath::index(path, i);
            if (!arr[i].is_object()) {
                error("SchemaViolation", p,
                      std::string("event must be a JSON object, got ") +
                          arr[i].type_name());
                continue;
            }
            check_attr_map(p, arr[i].as_object());
        }
    }

    // Last member with the given key, honoring the last-wins duplicate rule.
    static const json::JsonValue* find_last(const json::JsonValue& v,
                                            std::string_view key) {
        if (!v.is_object()) return nullptr;
        const json::JsonValue* found = nullptr;
        for (const auto& m : v.as_object())
            if (m.key == key) found = &m.value;
        return found;
    }

    static std::vector<std::string> global_keys(const json::JsonValue& root,
                                                std::string_view level) {
        std::vector<std::string> keys;
        const json::JsonValue* globals = find_last(root, "global-attrs");
        if (!globals) return keys;
        const json::JsonValue* sub = find_last(*globals, level);
        if (!sub || !sub->is_object()) return keys;
        for (const auto& m : sub->as_object())
            if (std::find(keys.begin(), keys.end(), m.key) == keys.end())
                keys.push_back(m.key);
        return keys;
    }

    static bool object_has_key(const json::JsonValue& obj, std::string_view key) {
        if (!obj.is_object()) return false;
        for (const auto& m : obj.as_object())
            if (m.key == key) return true;
        return false;
    }

    // Globals are promised for every element of their level; absences are
    // reported per element.
    void check_global_satisfaction(const json::JsonValue& root) {
        std::vector<std::string> trace_keys = global_keys(root, "trace");
        std::vector<std::string> event_keys = global_keys(root, "event");
        if (trace_keys.empty() && event_keys.empty()) return;
        const json::JsonValue* traces = find_last(root, "traces");
        if (!traces || !traces->is_array()) return;
        const auto& arr = traces->as_array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (!arr[i].is_object()) continue;
            std::string tp = jsonpath::index("$.traces", i);
            const json::JsonValue* tattrs = find_last(arr[i], "attrs");
            for (const std::string& k : trace_keys) {
                if (!tattrs || !object_has_key(*tattrs, k))
                    warning("GlobalNotSatisfied", tp,
                            "trace is missing global attribute '" + k + "'");
            }
            if (event_keys.empty()) continue;
            const json::JsonValue* events = find_last(arr[i], "events");
            if (!events || !events->is_array()) continue;
            const auto& evs = events->as_array();
            for (std::size_t j = 0; j < evs.size(); ++j) {
                if (!evs[j].is_object()) continue;
                std::string ep = jsonpath::index(tp + ".events", j);
                for (const std::string& k : event_keys)
                    if (!object_has_key(evs[j], k))
                        warning("GlobalNotSatisfied", ep,
                                "event is missing global attribute '" + k + "'");
            }
        }
    }

    void check_classifier_keys(const json::JsonValue& root) {
        const json::JsonValue* classifiers = find_last(root, "classifiers");
        if (!classifiers || !classifiers->is_object()) return;
        std::vector<std::string> event_keys = global_keys(root, "event");
        std::vector<std::string_view> done;
        for (const auto& m : classifiers->as_object()) {
            // Last-wins: skip names revisited later in the object.
            if (find_last(*classifiers, m.key) != &m.value) continue;
            if (std::find(done.begin(), done.end(), m.key) != done.end())
                continue;
            done.push_back(m.key);
            if (!m.value.is_array()) continue;
            const auto& arr = m.value.as_array();
            std::string p = jsonpath::member("$.classifiers", m.key);
            for (std::size_t i = 0; i < arr.size(); ++i) {
                if (!arr[i].is_string()) continue;
                const std::string& k = arr[i].as_string();
                if (k.empty()) continue;
                if (std::find(event_keys.begin(), event_keys.end(), k) ==
                    event_keys.end())
                    warning("ClassifierKeyNotGlobal", jsonpath::index(p, i),
                            "classifier key '" + k +
                                "' is not a declared event-level global");
            }
        }
    }

    std::vector<Diagnostic> out_;
};

}  // namespace validator_detail

inline std::vector<Diagnostic> validate_document(io::ByteSource& in) {
    json::JsonValue root;
    try {
        io::AutoInflateSource src(in);
        root = json::parse_tree(src);
    } catch (const Error& e) {
        std::string msg{e.message()};
        if (e.has_offset())
            msg += " (byte " + std::to_string(e.offset()) + ")";
        return {{Severity::Error, std::string(errc_name(e.code())), "$",
                 std::move(msg)}};
    }
    validator_detail::Validator v;
    return v.run(root);
}

inline std::vector<Diagnostic> validate_document(std::string_view text) {
    io::MemorySource src(text);
    return validate_document(src);
}

inline std::vector<Diagnostic> validate_file(const std::filesystem::path& path) {
    io::FileSource src(path);
    return validate_document(src);
}

// JSON report: an array of {severity, code, path, message} objects.
inline std::string diagnostics_to_json(const std::vector<Diagnostic>& ds,
                                       bool pretty = true) {
    std::string out;
    io::StringSink sink(out);
    json::JsonEmitter em(sink, pretty);
    em.begin_array();
    for (const Diagnostic& d : ds) {
        em.begin_object();
        em.key("severity");
        em.string(severity_name(d.severity));
        em.key("code");
        em.string(d.code);
        em.key("path");
        em.string(d.path);
        em.key("message");
        em.string(d.message);
        em.end_object();
    }
    em.end_array();
    return out;
}

}  // namespace jxes
