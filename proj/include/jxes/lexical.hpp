#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "jxes/error.hpp"

namespace jxes {

// An instant with millisecond precision plus the UTC offset it was written
// with. Offset spelling is part of the value: the same instant written as
// "...Z" and "...+02:00" compares unequal.
struct DateValue {
    std::int64_t epoch_ms = 0;       // milliseconds since 1970-01-01T00:00:00Z
    std::int16_t offset_min = 0;     // minutes east of UTC, [-840, +840]

    friend bool operator==(const DateValue&, const DateValue&) = default;
};

namespace lexical {

namespace detail {

inline bool two_digits(std::string_view s, std::size_t pos, int& out) {
    char a = s[pos], b = s[pos + 1];
    if (a < '0' || a > '9' || b < '0' || b > '9') return false;
    out = (a - '0') * 10 + (b - '0');
    return true;
}

inline bool four_digits(std::string_view s, std::size_t pos, int& out) {
    out = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        out = out * 10 + (c - '0');
    }
    return true;
}

}  // namespace detail

// Accepts exactly YYYY-MM-DDThh:mm:ss(.fff)?(Z|±hh:mm) with a valid
// calendar date and clock time. Anything else yields nullopt so callers can
// fall back to a plain string.
inline std::optional<DateValue> parse_date(std::string_view s) {
    using namespace std::chrono;
    // Lengths: 20 (Z), 24 (.fffZ), 25 (±hh:mm), 29 (.fff±hh:mm).
    std::size_t n = s.size();
    if (n != 20 && n != 24 && n != 25 && n != 29) return std::nullopt;

    int y, mo, d, h, mi, se, ms = 0;
    if (!detail::four_digits(s, 0, y)) return std::nullopt;
    if (s[4] != '-' || !detail::two_digits(s, 5, mo)) return std::nullopt;
    if (s[7] != '-' || !detail::two_digits(s, 8, d)) return std::nullopt;
    if (s[10] != 'T' || !detail::two_digits(s, 11, h)) return std::nullopt;
    if (s[13] != ':' || !detail::two_digits(s, 14, mi)) return std::nullopt;
    if (s[16] != ':' || !detail::two_digits(s, 17, se)) return std::nullopt;

    std::size_t pos = 19;
    if (n == 24 || n == 29) {
        if (s[pos] != '.') return std::nullopt;
        ms = 0;
        for (std::size_t i = 1; i <= 3; ++i) {
            char c = s[pos + i];
            if (c < '0' || c > '9') return std::nullopt;
            ms = ms * 10 + (c - '0');
        }
        pos += 4;
    }

    int offset = 0;
    if (s[pos] == 'Z') {
        if (pos + 1 != n) return std::nullopt;
    } else if (s[pos] == '+' || s[pos] == '-') {
        if (pos + 6 != n) return std::nullopt;
        int oh, om;
        if (!detail::two_digits(s, pos + 1, oh)) return std::nullopt;
        if (s[pos + 3] != ':' || !detail::two_digits(s, pos + 4, om)) return std::nullopt;
        if (oh > 14 || om > 59) return std::nullopt;
        offset = oh * 60 + om;
        if (offset > 840) return std::nullopt;
        if (s[pos] == '-') offset = -offset;
    } else {
        return std::nullopt;
    }

    year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                       day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    if (h > 23 || mi > 59 || se > 59) return std::nullopt;

    std::int64_t days = sys_days{ymd}.time_since_epoch().count();
    std::int64_t local_ms =
        ((days * 24 + h) * 60 + mi) * 60000 + se * 1000 + ms;
    return DateValue{local_ms - static_cast<std::int64_t>(offset) * 60000,
                     static_cast<std::int16_t>(offset)};
}

// Always emits three fractional digits; offset zero is spelled "Z".
inline std::string format_date(const DateValue& v) {
    using namespace std::chrono;
    std::int64_t local_ms = v.epoch_ms + std::int64_t{v.offset_min} * 60000;
    std::int64_t day_ms = 24LL * 60 * 60 * 1000;
    std::int64_t days = local_ms >= 0 ? local_ms / day_ms
                                      : (local_ms - (day_ms - 1)) / day_ms;
    std::int64_t rem = local_ms - days * day_ms;

    year_month_day ymd{sys_days{std::chrono::days{days}}};
    int ms = static_cast<int>(rem % 1000);
    rem /= 1000;
    int se = static_cast<int>(rem % 60);
    rem /= 60;
    int mi = static_cast<int>(rem % 60);
    int h = static_cast<int>(rem / 60);

    char buf[40];
    auto pad = [&](char* p, int value, int width) {
        for (int i = width - 1; i >= 0; --i) {
            p[i] = static_cast<char>('0' + value % 10);
            value /= 10;
        }
    };
    int y = static_cast<int>(ymd.year());
    unsigned mo = static_cast<unsigned>(ymd.month());
    unsigned d = static_cast<unsigned>(ymd.day());
    pad(buf, y, 4);
    buf[4] = '-';
    pad(buf + 5, static_cast<int>(mo), 2);
    buf[7] = '-';
    pad(buf + 8, static_cast<int>(d), 2);
    buf[10] = 'T';
    pad(buf + 11, h, 2);
    buf[13] = ':';
    pad(buf + 14, mi, 2);
    buf[16] = ':';
    pad(buf + 17, se, 2);
    buf[19] = '.';
    pad(buf + 20, ms, 3);
    std::size_t len = 23;
    if (v.offset_min == 0) {
        buf[len++] = 'Z';
    } else {
        int off = v.offset_min;
        buf[len++] = off < 0 ? '-' : '+';
        if (off < 0) off = -off;
        pad(buf + len, off / 60, 2);
        len += 2;
        buf[len++] = ':';
        pad(buf + len, off % 60, 2);
        len += 2;
    }
    return std::string(buf, len);
}

struct ParsedNumber {
    bool is_int = false;
    std::int64_t i = 0;
    double d = 0.0;
};

// `lexeme` must already satisfy the JSON number grammar. Integer literals
// (no '.', 'e', 'E') that do not fit int64 are accepted as Float only when
// the double holds the literal exactly.
inline ParsedNumber parse_json_number(std::string_view lexeme,
                                      std::string_view where = {}) {
    bool integral = lexeme.find_first_of(".eE") == std::string_view::npos;
    ParsedNumber out;
    if (integral) {
        auto [p, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), out.i);
        if (ec == std::errc{} && p == lexeme.data() + lexeme.size()) {
            out.is_int = true;
            return out;
        }
        // Out of int64 range: re-read as double, demand losslessness.
        double d = 0.0;
        auto [pd, ecd] =
            std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), d);
        if (ecd != std::errc{} || pd != lexeme.data() + lexeme.size() ||
            !std::isfinite(d))
            throw Error(Errc::IntOutOfRange,
                        "integer literal '" + std::string(lexeme) +
                            "' exceeds 64-bit signed range",
                        std::string(where));
        char buf[512];
        auto [pe, ece] =
            std::to_chars(buf, buf + sizeof buf, d, std::chars_format::fixed, 0);
        if (ece != std::errc{} || std::string_view(buf, pe - buf) != lexeme)
            throw Error(Errc::IntOutOfRange,
                        "integer literal '" + std::string(lexeme) +
                            "' exceeds 64-bit signed range and is not exactly "
                            "representable as a double",
                        std::string(where));
        out.d = d;
        return out;
    }
    auto [p, ec] = std::from_chars(lexeme.data(), lexeme.data() + lexeme.size(), out.d);
    if (ec != std::errc{} || p != lexeme.data() + lexeme.size() ||
        !std::isfinite(out.d))
        throw Error(Errc::SchemaViolation,
                    "float literal '" + std::string(lexeme) +
                        "' is outside the double range",
                    std::string(where));
    return out;
}

inline std::string format_int(std::int64_t v) {
    char buf[24];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p - buf);
}

// Shortest round-trip form, forced to contain '.' or an exponent so the
// value re-reads as Float.
inline std::string format_float(double v) {
    if (!std::isfinite(v))
        throw Error(Errc::UnsupportedConstruct,
                    "non-finite float values have no serialized form");
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    std::string out(buf, p - buf);
    if (out.find_first_of(".eE") == std::string::npos) out += ".0";
    return out;
}

inline void append_json_quoted(std::string& out, std::string_view s) {
    static constexpr char hex[] = "0123456789abcdef";
    out += '"';
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (u < 0x20) {
                out += "\\u00";
                out += hex[u >> 4];
                out += hex[u & 0xf];
            } else {
                out += c;
            }
        }
    }
    out += '"';
}

// True when s starts with an RFC 3986 scheme followed by ':'.
inline bool has_uri_scheme(std::string_view s) {
    if (s.empty()) return false;
    char c0 = s[0];
    if (!((c0 >= 'A' && c0 <= 'Z') || (c0 >= 'a' && c0 <= 'z'))) return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        char c = s[i];
        if (c == ':') return true;
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                  (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.';
        if (!ok) return false;
    }
    return false;
}

// XML 1.0 cannot carry control characters other than tab/LF/CR, even as
// character references. Those are escaped numerically so attribute-value
// whitespace normalization cannot alter them.
inline void append_xml_escaped(std::string& out, std::string_view s) {
    for (char c : s) {
        auto u = static_cast<unsigned char>(c);
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\t': out += "&#x9;"; break;
        case '\n': out += "&#xA;"; break;
        case '\r': out += "&#xD;"; break;
        default:
            if (u < 0x20)
                throw Error(Errc::UnsupportedConstruct,
                            "control character 0x" +
                                std::to_string(static_cast<int>(u)) +
                                " cannot be represented in XML 1.0");
            out += c;
        }
    }
}

}  // namespace lexical
}  // namespace jxes
