#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "jxes/io.hpp"
#include "jxes/json_emit.hpp"
#include "jxes/json_tree.hpp"
#include "jxes/model.hpp"
#include "jxes/reader.hpp"

namespace jxes {

struct WriteOptions {
    Backend backend = Backend::Streaming;
    bool pretty = false;
};

namespace detail {

// Incremental strategy: model walked once, tokens emitted on the fly.
class StreamWriter {
public:
    explicit StreamWriter(json::JsonEmitter& out) : out_(out) {}

    void write(const EventLog& log) {
        out_.begin_object();
        if (!log.attributes.empty()) {
            out_.key("attrs");
            attr_map(log.attributes);
        }
        bool globals = !log.globals.trace_level.empty() ||
                       !log.globals.event_level.empty();
        if (globals) {
            out_.key("global-attrs");
            out_.begin_object();
            if (!log.globals.trace_level.empty()) {
                out_.key("trace");
                attr_map(log.globals.trace_level);
            }
            if (!log.globals.event_level.empty()) {
                out_.key("event");
                attr_map(log.globals.event_level);
            }
            out_.end_object();
        }
        if (!log.classifiers.empty()) {
            out_.key("classifiers");
            out_.begin_object();
            for (const Classifier& c : log.classifiers) {
                out_.key(c.name);
                out_.begin_array();
                for (const std::string& k : c.keys) out_.string(k);
                out_.end_array();
            }
            out_.end_object();
        }
        if (!log.extensions.empty()) {
            out_.key("extensions");
            out_.begin_array();
            for (const Extension& e : log.extensions) {
                out_.begin_object();
                out_.key("name");
                out_.string(e.name);
                out_.key("prefix");
                out_.string(e.prefix);
                out_.key("uri");
                out_.string(e.uri);
                out_.end_object();
            }
            out_.end_array();
        }
        if (!log.traces.empty()) {
            out_.key("traces");
            out_.begin_array();
            for (const Trace& t : log.traces) {
                out_.begin_object();
                if (!t.attributes.empty()) {
                    out_.key("attrs");
                    attr_map(t.attributes);
                }
                if (!t.events.empty()) {
                    out_.key("events");
                    out_.begin_array();
                    for (const Event& ev : t.events) attr_map(ev.attributes);
                    out_.end_array();
                }
                out_.end_object();
            }
            out_.end_array();
        }
        out_.end_object();
    }

private:
    void attr_map(const AttributeSet& set) {
        out_.begin_object();
        for (const Attribute& a : set) {
            out_.key(a.key);
            attribute(a);
        }
        out_.end_object();
    }

    void attribute(const Attribute& a) {
        if (a.nested()) {
            out_.begin_object();
            out_.key("value");
            value(a.value);
            out_.key("nested-attrs");
            attr_map(a.children);
            out_.end_object();
        } else {
            value(a.value);
        }
    }

    void value(const AttributeValue& v) {
        switch (static_cast<ValueKind>(v.index())) {
            case ValueKind::Str:
                out_.string(std::get<std::string>(v));
                break;
            case ValueKind::Date:
                out_.string(lexical::format_date(std::get<DateValue>(v)));
                break;
            case ValueKind::Int:
                out_.int64(std::get<std::int64_t>(v));
                break;
            case ValueKind::Float:
                out_.float64(std::get<double>(v));
                break;
            case ValueKind::Bool:
                out_.boolean(std::get<bool>(v));
                break;
            case ValueKind::List:
                out_.begin_array();
                for (const Attribute& item : std::get<ListValue>(v).items) {
                    out_.begin_object();
                    out_.key(item.key);
                    attribute(item);
                    out_.end_object();
                }
                out_.end_array();
                break;
            case ValueKind::Container:
                attr_map(std::get<ContainerValue>(v).entries);
                break;
        }
    }

    json::JsonEmitter& out_;
};

// Materializing strategy: the document tree is built first, then dumped.
class TreeWriter {
public:
    json::JsonValue build(const EventLog& log) {
        json::JsonValue root{json::JsonValue::Object{}};
        auto& obj = root.as_object();
        if (!log.attributes.empty())
            member(obj, "attrs", attr_map(log.attributes));
        if (!log.globals.trace_level.empty() || !log.globals.event_level.empty()) {
            json::JsonValue g{json::JsonValue::Object{}};
            auto& go = g.as_object();
            if (!log.globals.trace_level.empty())
                member(go, "trace", attr_map(log.globals.trace_level));
            if (!log.globals.event_level.empty())
                member(go, "event", attr_map(log.globals.event_level));
            member(obj, "global-attrs", std::move(g));
        }
        if (!log.classifiers.empty()) {
            json::JsonValue c{json::JsonValue::Object{}};
            auto& co = c.as_object();
            for (const Classifier& cl : log.classifiers) {
                json::JsonValue keys{json::JsonValue::Array{}};
                for (const std::string& k : cl.keys)
                    keys.as_array().push_back(json::JsonValue{k});
                member(co, cl.name, std::move(keys));
            }
            member(obj, "classifiers", std::move(c));
        }
        if (!log.extensions.empty()) {
            json::JsonValue exts{json::JsonValue::Array{}};
            for (const Extension& e : log.extensions) {
                json::JsonValue ext{json::JsonValue::Object{}};
                auto& eo = ext.as_object();
                member(eo, "name", json::JsonValue{e.name});
                member(eo, "prefix", json::JsonValue{e.prefix});
                member(eo, "uri", json::JsonValue{e.uri});
                exts.as_array().push_back(std::move(ext));
            }
            member(obj, "extensions", std::move(exts));
        }
        if (!log.traces.empty()) {
            json::JsonValue traces{json::JsonValue::Array{}};
            for (const Trace& t : log.traces) {
                json::JsonValue tr{json::JsonValue::Object{}};
                auto& to = tr.as_object();
                if (!t.attributes.empty())
                    member(to, "attrs", attr_map(t.attributes));
                if (!t.events.empty()) {
                    json::JsonValue evs{json::JsonValue::Array{}};
                    for (const Event& ev : t.events)
                        evs.as_array().push_back(attr_map(ev.attributes));
                    member(to, "events", std::move(evs));
                }
                traces.as_array().push_back(std::move(tr));
            }
            member(obj, "traces", std::move(traces));
        }
        return root;
    }

private:
    static void member(json::JsonValue::Object& obj, std::string key,
                       json::JsonValue v) {
        obj.push_back({std::move(key), std::move(v), 0});
    }

    json::JsonValue attr_map(const AttributeSet& set) {
        json::JsonValue v{json::JsonValue::Object{}};
        auto& obj = v.as_object();
        for (const Attribute& a : set) member(obj, a.key, attribute(a));
        return v;
    }

    json::JsonValue attribute(const Attribute& a) {
        if (!a.nested()) return value(a.value);
        json::JsonValue v{json::JsonValue::Object{}};
        auto& obj = v.as_object();
        member(obj, "value", value(a.value));
        member(obj, "nested-attrs", attr_map(a.children));
        return v;
    }

    json::JsonValue value(const AttributeValue& val) {
        switch (static_cast<ValueKind>(val.index())) {
            case ValueKind::Str:
                return json::JsonValue{std::get<std::string>(val)};
            case ValueKind::Date:
                return json::JsonValue{
                    lexical::format_date(std::get<DateValue>(val))};
            case ValueKind::Int:
                return json::JsonValue{json::NumberLex{
                    lexical::format_int(std::get<std::int64_t>(val))}};
            case ValueKind::Float:
                return json::JsonValue{
                    json::NumberLex{lexical::format_float(std::get<double>(val))}};
            case ValueKind::Bool:
                return json::JsonValue{std::get<bool>(val)};
            case ValueKind::List: {
                json::JsonValue arr{json::JsonValue::Array{}};
                for (const Attribute& item : std::get<ListValue>(val).items) {
                    json::JsonValue elem{json::JsonValue::Object{}};
                    member(elem.as_object(), item.key, attribute(item));
                    arr.as_array().push_back(std::move(elem));
                }
                return arr;
            }
            default:
                return attr_map(std::get<ContainerValue>(val).entries);
        }
    }
};

}  // namespace detail

inline void write_jxes(const EventLog& log, io::ByteSink& sink,
                       const WriteOptions& opts = {}) {
    json::JsonEmitter em(sink, opts.pretty);
    if (opts.backend == Backend::Tree) {
        detail::TreeWriter w;
        json::JsonValue doc = w.build(log);
        json::dump(doc, em);
    } else {
        detail::StreamWriter w(em);
        w.write(log);
    }
}

inline std::string write_jxes(const EventLog& log, const WriteOptions& opts = {}) {
    std::string out;
    io::StringSink sink(out);
    write_jxes(log, sink, opts);
    return out;
}

// Deterministic minimal-whitespace rendering with fixed key order; equal logs
// yield equal bytes.
inline std::string canonicalize(const EventLog& log) {
    return write_jxes(log, WriteOptions{Backend::Streaming, false});
}

inline void write_jxes_file(const std::filesystem::path& path,
                            const EventLog& log, const WriteOptions& opts = {}) {
    io::atomic_write_file(
        path, [&](io::ByteSink& sink) { write_jxes(log, sink, opts); },
        io::path_ends_with_gz(path));
}

}  // namespace jxes
