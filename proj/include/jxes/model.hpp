#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jxes/lexical.hpp"

namespace jxes {

struct Attribute;

// Insertion-ordered collection of attributes with unique keys. Lookup is a
// linear scan; attribute maps in event logs stay small.
class AttributeSet {
public:
    bool insert(Attribute attr);             // false and drops on duplicate key
    Attribute& upsert(Attribute attr);       // replaces an existing key in place
    const Attribute* find(std::string_view key) const;
    bool contains(std::string_view key) const { return find(key) != nullptr; }

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const Attribute& operator[](std::size_t i) const { return items_[i]; }
    Attribute& operator[](std::size_t i) { return items_[i]; }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }
    void clear() noexcept { items_.clear(); }

private:
    std::vector<Attribute> items_;
};

// Ordered key/value items; duplicate keys are meaningful and preserved.
struct ListValue {
    std::vector<Attribute> items;
};

// Ordered entries with unique keys.
struct ContainerValue {
    AttributeSet entries;
};

enum class ValueKind { Str, Date, Int, Float, Bool, List, Container };

using AttributeValue = std::variant<std::string, DateValue, std::int64_t,
                                    double, bool, ListValue, ContainerValue>;

inline ValueKind kind_of(const AttributeValue& v) {
    return static_cast<ValueKind>(v.index());
}

inline std::string_view kind_name(ValueKind k) {
    switch (k) {
    case ValueKind::Str: return "string";
    case ValueKind::Date: return "date";
    case ValueKind::Int: return "int";
    case ValueKind::Float: return "float";
    case ValueKind::Bool: return "boolean";
    case ValueKind::List: return "list";
    case ValueKind::Container: return "container";
    }
    return "?";
}

// A keyed value. Non-empty `children` makes this a nested attribute.
struct Attribute {
    std::string key;
    AttributeValue value = std::string{};
    AttributeSet children;

    bool nested() const noexcept { return !children.empty(); }
};

inline bool AttributeSet::insert(Attribute attr) {
    if (find(attr.key)) return false;
    items_.push_back(std::move(attr));
    return true;
}

inline Attribute& AttributeSet::upsert(Attribute attr) {
    for (auto& item : items_) {
        if (item.key == attr.key) {
            item = std::move(attr);
            return item;
        }
    }
    items_.push_back(std::move(attr));
    return items_.back();
}

inline const Attribute* AttributeSet::find(std::string_view key) const {
    for (const auto& item : items_)
        if (item.key == key) return &item;
    return nullptr;
}

struct Event {
    AttributeSet attributes;
};

struct Trace {
    AttributeSet attributes;
    std::vector<Event> events;
};

struct Classifier {
    std::string name;
    std::vector<std::string> keys;
};

struct Extension {
    std::string name;
    std::string prefix;
    std::string uri;
};

struct GlobalAttributes {
    AttributeSet trace_level;
    AttributeSet event_level;
};

struct EventLog {
    AttributeSet attributes;
    GlobalAttributes globals;
    std::vector<Classifier> classifiers;
    std::vector<Extension> extensions;
    std::vector<Trace> traces;

    const Classifier* find_classifier(std::string_view name) const {
        for (const auto& c : classifiers)
            if (c.name == name) return &c;
        return nullptr;
    }
};

// --- structural equality -------------------------------------------------
// Floats compare bit-exactly; dates compare on instant and offset. Order is
// significant everywhere, including attribute insertion order.

bool attribute_equal(const Attribute& a, const Attribute& b);

inline bool value_equal(const AttributeValue& a, const AttributeValue& b) {
    if (a.index() != b.index()) return false;
    switch (kind_of(a)) {
    case ValueKind::Str:
        return std::get<std::string>(a) == std::get<std::string>(b);
    case ValueKind::Date:
        return std::get<DateValue>(a) == std::get<DateValue>(b);
    case ValueKind::Int:
        return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
    case ValueKind::Float:
        return std::bit_cast<std::uint64_t>(std::get<double>(a)) ==
               std::bit_cast<std::uint64_t>(std::get<double>(b));
    case ValueKind::Bool:
        return std::get<bool>(a) == std::get<bool>(b);
    case ValueKind::List: {
        const auto& la = std::get<ListValue>(a).items;
        const auto& lb = std::get<ListValue>(b).items;
        if (la.size() != lb.size()) return false;
        for (std::size_t i = 0; i < la.size(); ++i)
            if (!attribute_equal(la[i], lb[i])) return false;
        return true;
    }
    case ValueKind::Container: {
        const auto& ca = std::get<ContainerValue>(a).entries;
        const auto& cb = std::get<ContainerValue>(b).entries;
        if (ca.size() != cb.size()) return false;
        for (std::size_t i = 0; i < ca.size(); ++i)
            if (!attribute_equal(ca[i], cb[i])) return false;
        return true;
    }
    }
    return false;
}

inline bool attribute_set_equal(const AttributeSet& a, const AttributeSet& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!attribute_equal(a[i], b[i])) return false;
    return true;
}

inline bool attribute_equal(const Attribute& a, const Attribute& b) {
    return a.key == b.key && value_equal(a.value, b.value) &&
           attribute_set_equal(a.children, b.children);
}

inline bool logs_equivalent(const EventLog& a, const EventLog& b) {
    if (!attribute_set_equal(a.attributes, b.attributes)) return false;
    if (!attribute_set_equal(a.globals.trace_level, b.globals.trace_level))
        return false;
    if (!attribute_set_equal(a.globals.event_level, b.globals.event_level))
        return false;
    if (a.classifiers.size() != b.classifiers.size()) return false;
    for (std::size_t i = 0; i < a.classifiers.size(); ++i) {
        if (a.classifiers[i].name != b.classifiers[i].name) return false;
        if (a.classifiers[i].keys != b.classifiers[i].keys) return false;
    }
    if (a.extensions.size() != b.extensions.size()) return false;
    for (std::size_t i = 0; i < a.extensions.size(); ++i) {
        const auto& xa = a.extensions[i];
        const auto& xb = b.extensions[i];
        if (xa.name != xb.name || xa.prefix != xb.prefix || xa.uri != xb.uri)
            return false;
    }
    if (a.traces.size() != b.traces.size()) return false;
    for (std::size_t i = 0; i < a.traces.size(); ++i) {
        const auto& ta = a.traces[i];
        const auto& tb = b.traces[i];
        if (!attribute_set_equal(ta.attributes, tb.attributes)) return false;
        if (ta.events.size() != tb.events.size()) return false;
        for (std::size_t j = 0; j < ta.events.size(); ++j)
            if (!attribute_set_equal(ta.events[j].attributes,
                                     tb.events[j].attributes))
                return false;
    }
    return true;
}

// --- statistics ------------------------------------------------------------

// Events without a concept:name contribute this token to variants and to the
// distinct-activity count.
inline constexpr std::string_view kMissingActivity = "<unknown>";

// Textual identity of an event for variant/activity counting: the
// concept:name value in its canonical scalar spelling.
inline std::string activity_token(const Event& e) {
    const Attribute* a = e.attributes.find("concept:name");
    if (!a) return std::string(kMissingActivity);
    switch (kind_of(a->value)) {
    case ValueKind::Str: return std::get<std::string>(a->value);
    case ValueKind::Date: return lexical::format_date(std::get<DateValue>(a->value));
    case ValueKind::Int: return lexical::format_int(std::get<std::int64_t>(a->value));
    case ValueKind::Float: return lexical::format_float(std::get<double>(a->value));
    case ValueKind::Bool: return std::get<bool>(a->value) ? "true" : "false";
    case ValueKind::List:
    case ValueKind::Container: return "<composite>";
    }
    return std::string(kMissingActivity);
}

struct LogStats {
    std::uint64_t trace_count = 0;
    std::uint64_t event_count = 0;
    std::uint64_t variant_count = 0;
    std::uint64_t distinct_activities = 0;
    std::uint64_t max_trace_length = 0;

    friend bool operator==(const LogStats&, const LogStats&) = default;
};

inline LogStats log_statistics(const EventLog& log) {
    LogStats s;
    s.trace_count = log.traces.size();
    std::set<std::string> variants;
    std::set<std::string> activities;
    for (const auto& trace : log.traces) {
        s.event_count += trace.events.size();
        s.max_trace_length =
            std::max<std::uint64_t>(s.max_trace_length, trace.events.size());
        std::string variant;
        for (const auto& event : trace.events) {
            std::string token = activity_token(event);
            // Length-prefix so activity names containing separators cannot
            // alias distinct sequences.
            variant += std::to_string(token.size());
            variant += ':';
            variant += token;
            activities.insert(std::move(token));
        }
        variants.insert(std::move(variant));
    }
    s.variant_count = log.traces.empty() ? 0 : variants.size();
    s.distinct_activities = activities.size();
    return s;
}

}  // namespace jxes
