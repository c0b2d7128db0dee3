#pragma once

// Brute-force reference computations, deliberately written from scratch so
// they share no code path with the library results they check.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "jxes/model.hpp"

namespace oracles {

// Statistics by naive grouping of activity-name sequences. Only valid for
// logs whose concept:name attributes are plain strings (or absent); the
// callers below guarantee that.
inline jxes::LogStats stats_oracle(const jxes::EventLog& log) {
    jxes::LogStats s;
    std::set<std::vector<std::string>> variants;
    std::set<std::string> activities;
    for (const jxes::Trace& t : log.traces) {
        std::vector<std::string> seq;
        for (const jxes::Event& e : t.events) {
            std::string name = "<unknown>";
            for (std::size_t i = 0; i < e.attributes.size(); ++i) {
                const jxes::Attribute& a = e.attributes[i];
                if (a.key == "concept:name") {
                    name = std::get<std::string>(a.value);
                    break;
                }
            }
            activities.insert(name);
            seq.push_back(std::move(name));
        }
        if (seq.size() > s.max_trace_length) s.max_trace_length = seq.size();
        s.event_count += seq.size();
        variants.insert(std::move(seq));
        s.trace_count += 1;
    }
    s.variant_count = log.traces.empty() ? 0 : variants.size();
    s.distinct_activities = activities.size();
    return s;
}

// Days since 1970-01-01 for a proleptic Gregorian date, computed with the
// classic era decomposition rather than std::chrono.
inline std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline std::int64_t epoch_ms(int y, unsigned mo, unsigned d, int h, int mi,
                             int s, int ms, int offset_min) {
    std::int64_t local =
        ((days_from_civil(y, mo, d) * 24 + h) * 60 + mi) * 60000LL +
        s * 1000LL + ms;
    return local - std::int64_t{offset_min} * 60000;
}

}  // namespace oracles
