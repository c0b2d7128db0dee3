#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace jxes {

enum class Severity { Warning, Error };

inline std::string_view severity_name(Severity s) {
    return s == Severity::Error ? "error" : "warning";
}

// One validation or parse finding. `path` is a JSONPath-style location
// ($.traces[0].attrs.p) or an XML element path for XES inputs.
struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string code;
    std::string path;
    std::string message;
};

inline std::string to_text(const Diagnostic& d) {
    std::string out{severity_name(d.severity)};
    out += " ";
    out += d.code;
    if (!d.path.empty()) {
        out += " at ";
        out += d.path;
    }
    out += ": ";
    out += d.message;
    return out;
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
    for (const auto& d : ds)
        if (d.severity == Severity::Error) return true;
    return false;
}

inline std::size_t count_errors(const std::vector<Diagnostic>& ds) {
    std::size_t n = 0;
    for (const auto& d : ds) n += d.severity == Severity::Error;
    return n;
}

inline std::size_t count_warnings(const std::vector<Diagnostic>& ds) {
    std::size_t n = 0;
    for (const auto& d : ds) n += d.severity == Severity::Warning;
    return n;
}

namespace jsonpath {

inline bool plain_key(std::string_view key) {
    if (key.empty()) return false;
    auto head = static_cast<unsigned char>(key[0]);
    if (!(std::isalpha(head) || key[0] == '_')) return false;
    for (char c : key) {
        auto u = static_cast<unsigned char>(c);
        if (!(std::isalnum(u) || c == '_' || c == '-')) return false;
    }
    return true;
}

inline std::string root() { return "$"; }

inline std::string member(std::string_view base, std::string_view key) {
    std::string out{base};
    if (plain_key(key)) {
        out += '.';
        out += key;
        return out;
    }
    out += "[\"";
    for (char c : key) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += "\"]";
    return out;
}

inline std::string index(std::string_view base, std::size_t i) {
    std::string out{base};
    out += '[';
    out += std::to_string(i);
    out += ']';
    return out;
}

}  // namespace jsonpath
}  // namespace jxes
