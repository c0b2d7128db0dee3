#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "jxes/error.hpp"
#include "jxes/io.hpp"
#include "jxes/json_emit.hpp"
#include "jxes/json_tree.hpp"
#include "jxes/lexical.hpp"
#include "jxes/model.hpp"

namespace jxes {

// Synthetic log shape. attr_mix proportions are indexed by value kind in the
// order string, date, int, float, boolean, list, container.
struct GenProfile {
    std::uint64_t seed = 1;
    std::uint64_t traces = 0;
    double mean_events_per_trace = 1.0;
    std::uint64_t max_events_per_trace = 1;
    std::uint64_t distinct_activities = 1;
    std::array<double, 7> attr_mix = {1.0, 0, 0, 0, 0, 0, 0};
    double nesting_prob = 0.0;
    std::uint64_t trace_globals = 0;
    std::uint64_t event_globals = 0;
};

inline constexpr std::array<std::string_view, 7> kAttrMixKinds = {
    "string", "date", "int", "float", "boolean", "list", "container"};

inline void validate_profile(const GenProfile& p) {
    auto bad = [](std::string msg) {
        throw Error(Errc::InvalidProfile, std::move(msg));
    };
    double sum = 0.0;
    for (double w : p.attr_mix) {
        if (!(w >= 0.0)) bad("attr_mix proportions must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        bad("attr_mix proportions must sum to 1");
    if (!(p.nesting_prob >= 0.0 && p.nesting_prob <= 1.0))
        bad("nesting_prob must lie in [0,1]");
    if (p.traces == 0) return;
    if (p.max_events_per_trace < 1)
        bad("max_events_per_trace must be at least 1");
    if (!(p.mean_events_per_trace >= 1.0))
        bad("mean_events_per_trace must be at least 1");
    double ceiling = (static_cast<double>(p.max_events_per_trace) + 1.0) / 2.0;
    if (p.mean_events_per_trace > ceiling)
        bad("mean_events_per_trace exceeds the truncated-geometric ceiling "
            "(max+1)/2");
    if (p.distinct_activities == 0)
        bad("distinct_activities must be at least 1");
}

namespace gen_detail {

// splitmix64: fixed, portable, documented. Golden logs depend on this exact
// sequence, so the algorithm must never change.
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Modulo draw; the bias is immaterial for shaping synthetic data.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    // [0,1) with 53 random bits.
    double unit() {
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }
};

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    SplitMix64 r{a ^ (b * 0xA0761D6478BD642Full)};
    return r.next();
}

// Mean of the geometric distribution on {1..max} with success probability p.
inline double trunc_geom_mean(double p, std::uint64_t max) {
    double q = 1.0 - p;
    double term = 1.0;  // (1-p)^(k-1)
    double num = 0.0, den = 0.0;
    for (std::uint64_t k = 1; k <= max; ++k) {
        num += static_cast<double>(k) * term;
        den += term;
        term *= q;
    }
    return num / den;
}

// Solves for p so the truncated geometric hits the requested mean. Monotone
// decreasing in p, so plain bisection converges.
inline double solve_geom_p(double mean, std::uint64_t max) {
    if (max == 1) return 1.0;
    double lo = 1e-12, hi = 1.0 - 1e-12;
    if (mean <= 1.0) return hi;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (trunc_geom_mean(mid, max) > mean)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline std::uint64_t sample_trunc_geom(SplitMix64& r, double p,
                                       std::uint64_t max) {
    if (max == 1) return 1;
    double q = 1.0 - p;
    // q^max by plain multiplication: bit-stable, unlike libm pow.
    double qmax = 1.0;
    for (std::uint64_t k = 0; k < max; ++k) qmax *= q;
    double total = 1.0 - qmax;
    double u = r.unit() * total;
    double acc = 0.0;
    double term = p;  // P(k) = p (1-p)^(k-1)
    for (std::uint64_t k = 1; k < max; ++k) {
        acc += term;
        if (u < acc) return k;
        term *= q;
    }
    return max;
}

inline std::size_t pick_kind(SplitMix64& r, const std::array<double, 7>& mix) {
    double u = r.unit();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < mix.size(); ++i) {
        acc += mix[i];
        if (u < acc) return i;
    }
    return mix.size() - 1;
}

// XML-representable stress material: markup metacharacters, quotes, tabs,
// line breaks and multi-byte UTF-8, but nothing date-shaped and no control
// bytes outside tab/LF/CR.
inline constexpr std::array<std::string_view, 8> kStringPool = {
    "review request",
    "a&b <tags> \"quoted\"",
    "tab\there",
    "line\nbreak",
    "na\xC3\xAFve caf\xC3\xA9",
    "trailing space ",
    "'single' & >angle<",
    "\xE6\xB4\xBB\xE5\x8B\x95",
};

inline constexpr std::int16_t kOffsets[4] = {0, 60, -330, 120};

// 2020-01-01T00:00:00Z
inline constexpr std::int64_t kEpochBase = 1577836800000;

inline std::string pool_string(SplitMix64& r) {
    std::string s{kStringPool[r.below(kStringPool.size())]};
    if (r.below(2) == 0) {
        s += " #";
        s += std::to_string(r.below(1000));
    }
    return s;
}

inline DateValue random_date(SplitMix64& r) {
    // Ten-year window keeps values inside the strict calendar range.
    std::int64_t ms = kEpochBase + static_cast<std::int64_t>(
                                       r.below(315360000000ull));
    return DateValue{ms, kOffsets[r.below(4)]};
}

inline std::int64_t random_int(SplitMix64& r) {
    switch (r.below(4)) {
        case 0: return static_cast<std::int64_t>(r.below(100));
        case 1: return -static_cast<std::int64_t>(r.below(100000));
        case 2: return static_cast<std::int64_t>(r.below(1000000000ull));
        default: return static_cast<std::int64_t>(r.next() >> 1);
    }
}

inline double random_float(SplitMix64& r) {
    double m = static_cast<double>(static_cast<std::int64_t>(r.below(2000001)) -
                                   1000000);
    switch (r.below(3)) {
        case 0: return m / 100.0;
        case 1: return m / 1000.0;
        default: return m * 1048576.0;
    }
}

class Generator {
public:
    explicit Generator(const GenProfile& p) : p_(p) {}

    EventLog run() {
        EventLog log;
        log.attributes.insert({"concept:name", std::string("synthetic log"), {}});
        log.extensions.push_back(
            {"Concept", "concept", "http://www.xes-standard.org/concept.xesext"});
        log.extensions.push_back(
            {"Time", "time", "http://www.xes-standard.org/time.xesext"});
        log.classifiers.push_back({"Activity classifier", {"concept:name"}});

        log.globals.trace_level.insert(
            {"concept:name", std::string("__INVALID__"), {}});
        for (std::uint64_t i = 0; i < p_.trace_globals; ++i)
            log.globals.trace_level.insert(default_global("tg", i));
        log.globals.event_level.insert(
            {"concept:name", std::string("__INVALID__"), {}});
        log.globals.event_level.insert(
            {"time:timestamp", DateValue{kEpochBase, 0}, {}});
        for (std::uint64_t i = 0; i < p_.event_globals; ++i)
            log.globals.event_level.insert(default_global("eg", i));

        double geom_p =
            solve_geom_p(p_.mean_events_per_trace, p_.max_events_per_trace);
        log.traces.reserve(p_.traces);
        for (std::uint64_t i = 0; i < p_.traces; ++i)
            log.traces.push_back(make_trace(i, geom_p));
        return log;
    }

private:
    // Global declarations carry a fixed per-index kind so every trace/event
    // can satisfy them with a value of the same kind.
    std::size_t global_kind(std::string_view tag, std::uint64_t i) const {
        SplitMix64 r{mix64(p_.seed, mix64(tag == "tg" ? 11 : 13, i))};
        return pick_kind(r, p_.attr_mix);
    }

    Attribute default_global(std::string_view tag, std::uint64_t i) {
        Attribute a;
        a.key = std::string(tag) + "_" + std::to_string(i);
        switch (global_kind(tag, i)) {
            case 0: a.value = std::string("__INVALID__"); break;
            case 1: a.value = DateValue{kEpochBase, 0}; break;
            case 2: a.value = std::int64_t{0}; break;
            case 3: a.value = 0.0; break;
            case 4: a.value = false; break;
            case 5: a.value = ListValue{}; break;
            default: a.value = ContainerValue{}; break;
        }
        return a;
    }

    Attribute global_instance(std::string_view tag, std::uint64_t i,
                              SplitMix64& r) {
        Attribute a;
        a.key = std::string(tag) + "_" + std::to_string(i);
        a.value = value_of_kind(global_kind(tag, i), r);
        if (r.unit() < p_.nesting_prob) add_children(a, r);
        return a;
    }

    AttributeValue value_of_kind(std::size_t kind, SplitMix64& r) {
        switch (kind) {
            case 0: return pool_string(r);
            case 1: return random_date(r);
            case 2: return random_int(r);
            case 3: return random_float(r);
            case 4: return r.below(2) == 1;
            case 5: {
                ListValue lv;
                std::uint64_t n = r.below(4);
                for (std::uint64_t k = 0; k < n; ++k) {
                    Attribute item;
                    item.key = "item_" + std::to_string(k);
                    item.value = value_of_kind(r.below(5), r);
                    lv.items.push_back(std::move(item));
                }
                return lv;
            }
            default: {
                ContainerValue cv;
                std::uint64_t n = r.below(4);
                for (std::uint64_t k = 0; k < n; ++k) {
                    Attribute entry;
                    entry.key = "f_" + std::to_string(k);
                    entry.value = value_of_kind(r.below(5), r);
                    cv.entries.insert(std::move(entry));
                }
                return cv;
            }
        }
    }

    void add_children(Attribute& a, SplitMix64& r) {
        std::uint64_t n = 1 + r.below(2);
        for (std::uint64_t k = 0; k < n; ++k) {
            Attribute child;
            child.key = "n_" + std::to_string(k);
            child.value = value_of_kind(r.below(5), r);
            a.children.insert(std::move(child));
        }
    }

    Trace make_trace(std::uint64_t index, double geom_p) {
        SplitMix64 r{mix64(p_.seed, index)};
        Trace t;
        t.attributes.insert(
            {"concept:name", "case_" + std::to_string(index), {}});
        for (std::uint64_t i = 0; i < p_.trace_globals; ++i)
            t.attributes.insert(global_instance("tg", i, r));

        std::uint64_t events =
            sample_trunc_geom(r, geom_p, p_.max_events_per_trace);
        std::int64_t ts = kEpochBase +
                          static_cast<std::int64_t>(index) * 3600000 +
                          static_cast<std::int64_t>(r.below(60000));
        std::int16_t offset = kOffsets[r.below(4)];
        t.events.reserve(events);
        for (std::uint64_t j = 0; j < events; ++j) {
            Event ev;
            ev.attributes.insert(
                {"concept:name",
                 "act_" + std::to_string(r.below(p_.distinct_activities)), {}});
            ts += static_cast<std::int64_t>(r.below(90000));
            ev.attributes.insert({"time:timestamp", DateValue{ts, offset}, {}});
            for (std::uint64_t i = 0; i < p_.event_globals; ++i)
                ev.attributes.insert(global_instance("eg", i, r));
            t.events.push_back(std::move(ev));
        }
        return t;
    }

    const GenProfile& p_;
};

}  // namespace gen_detail

inline EventLog generate(const GenProfile& profile) {
    validate_profile(profile);
    gen_detail::Generator g(profile);
    return g.run();
}

inline std::string profile_to_json(const GenProfile& p) {
    std::string out;
    io::StringSink sink(out);
    json::JsonEmitter em(sink, true);
    em.begin_object();
    em.key("seed");
    em.raw_number(std::to_string(p.seed));
    em.key("traces");
    em.raw_number(std::to_string(p.traces));
    em.key("mean_events_per_trace");
    em.raw_number(lexical::format_float(p.mean_events_per_trace));
    em.key("max_events_per_trace");
    em.raw_number(std::to_string(p.max_events_per_trace));
    em.key("distinct_activities");
    em.raw_number(std::to_string(p.distinct_activities));
    em.key("attr_mix");
    em.begin_object();
    for (std::size_t i = 0; i < kAttrMixKinds.size(); ++i) {
        em.key(std::string(kAttrMixKinds[i]));
        em.raw_number(lexical::format_float(p.attr_mix[i]));
    }
    em.end_object();
    em.key("nesting_prob");
    em.raw_number(lexical::format_float(p.nesting_prob));
    em.key("global_spec");
    em.begin_object();
    em.key("trace");
    em.raw_number(std::to_string(p.trace_globals));
    em.key("event");
    em.raw_number(std::to_string(p.event_globals));
    em.end_object();
    em.end_object();
    return out;
}

namespace gen_detail {

inline double number_field(const json::JsonValue& v, std::string_view name) {
    if (!v.is_number())
        throw Error(Errc::InvalidProfile,
                    "profile field '" + std::string(name) + "' must be a number");
    lexical::ParsedNumber pn = lexical::parse_json_number(v.as_number().lexeme);
    return pn.is_int ? static_cast<double>(pn.i) : pn.d;
}

inline std::uint64_t count_field(const json::JsonValue& v,
                                 std::string_view name) {
    if (!v.is_number())
        throw Error(Errc::InvalidProfile,
                    "profile field '" + std::string(name) + "' must be a number");
    lexical::ParsedNumber pn = lexical::parse_json_number(v.as_number().lexeme);
    if (!pn.is_int || pn.i < 0)
        throw Error(Errc::InvalidProfile, "profile field '" + std::string(name) +
                                              "' must be a non-negative integer");
    return static_cast<std::uint64_t>(pn.i);
}

}  // namespace gen_detail

inline GenProfile profile_from_json(std::string_view text) {
    json::JsonValue root;
    try {
        root = json::parse_tree(text);
    } catch (const Error& e) {
        throw Error(Errc::InvalidProfile,
                    "profile is not valid JSON: " + e.message());
    }
    if (!root.is_object())
        throw Error(Errc::InvalidProfile, "profile must be a JSON object");
    GenProfile p;
    for (const auto& m : root.as_object()) {
        if (m.key == "seed") {
            if (!m.value.is_number())
                throw Error(Errc::InvalidProfile, "'seed' must be an integer");
            lexical::ParsedNumber pn =
                lexical::parse_json_number(m.value.as_number().lexeme);
            if (!pn.is_int)
                throw Error(Errc::InvalidProfile, "'seed' must be an integer");
            p.seed = static_cast<std::uint64_t>(pn.i);
        } else if (m.key == "traces") {
            p.traces = gen_detail::count_field(m.value, m.key);
        } else if (m.key == "mean_events_per_trace") {
            p.mean_events_per_trace = gen_detail::number_field(m.value, m.key);
        } else if (m.key == "max_events_per_trace") {
            p.max_events_per_trace = gen_detail::count_field(m.value, m.key);
        } else if (m.key == "distinct_activities") {
            p.distinct_activities = gen_detail::count_field(m.value, m.key);
        } else if (m.key == "attr_mix") {
            if (!m.value.is_object())
                throw Error(Errc::InvalidProfile, "'attr_mix' must be an object");
            p.attr_mix = {0, 0, 0, 0, 0, 0, 0};
            for (const auto& mm : m.value.as_object()) {
                bool known = false;
                for (std::size_t i = 0; i < kAttrMixKinds.size(); ++i) {
                    if (mm.key == kAttrMixKinds[i]) {
                        p.attr_mix[i] = gen_detail::number_field(mm.value, mm.key);
                        known = true;
                        break;
                    }
                }
                if (!known)
                    throw Error(Errc::InvalidProfile,
                                "unknown attr_mix kind '" + mm.key + "'");
            }
        } else if (m.key == "nesting_prob") {
            p.nesting_prob = gen_detail::number_field(m.value, m.key);
        } else if (m.key == "global_spec") {
            if (!m.value.is_object())
                throw Error(Errc::InvalidProfile,
                            "'global_spec' must be an object");
            for (const auto& mm : m.value.as_object()) {
                if (mm.key == "trace")
                    p.trace_globals = gen_detail::count_field(mm.value, mm.key);
                else if (mm.key == "event")
                    p.event_globals = gen_detail::count_field(mm.value, mm.key);
                else
                    throw Error(Errc::InvalidProfile,
                                "unknown global_spec key '" + mm.key + "'");
            }
        } else {
            throw Error(Errc::InvalidProfile,
                        "unknown profile key '" + m.key + "'");
        }
    }
    validate_profile(p);
    return p;
}

}  // namespace jxes
