#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jxes {

enum class Errc {
    MalformedJson,
    SchemaViolation,
    ReservedKeyMisuse,
    IntOutOfRange,
    MalformedXml,
    UnsupportedConstruct,
    IoFailure,
    InvalidProfile,
    InvalidArgument,
};

inline std::string_view errc_name(Errc c) {
    switch (c) {
    case Errc::MalformedJson: return "MalformedJson";
    case Errc::SchemaViolation: return "SchemaViolation";
    case Errc::ReservedKeyMisuse: return "ReservedKeyMisuse";
    case Errc::IntOutOfRange: return "IntOutOfRange";
    case Errc::MalformedXml: return "MalformedXml";
    case Errc::UnsupportedConstruct: return "UnsupportedConstruct";
    case Errc::IoFailure: return "IoFailure";
    case Errc::InvalidProfile: return "InvalidProfile";
    case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

// All failures in the library surface as this exception. `where` holds a
// JSON path or XML element path when one is known, `offset` a byte offset
// into the input (kNoOffset otherwise).
class Error : public std::runtime_error {
public:
    static constexpr std::uint64_t kNoOffset = ~std::uint64_t{0};

    Error(Errc code, std::string message, std::string where = {},
          std::uint64_t offset = kNoOffset)
        : std::runtime_error(compose(code, message, where, offset)),
          code_(code),
          message_(std::move(message)),
          where_(std::move(where)),
          offset_(offset) {}

    Errc code() const noexcept { return code_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& where() const noexcept { return where_; }
    std::uint64_t offset() const noexcept { return offset_; }
    bool has_offset() const noexcept { return offset_ != kNoOffset; }

private:
    static std::string compose(Errc code, const std::string& message,
                               const std::string& where, std::uint64_t offset) {
        std::string out{errc_name(code)};
        out += ": ";
        out += message;
        if (!where.empty()) {
            out += " (at ";
            out += where;
            out += ")";
        }
        if (offset != kNoOffset) {
            out += " [byte ";
            out += std::to_string(offset);
            out += "]";
        }
        return out;
    }

    Errc code_;
    std::string message_;
    std::string where_;
    std::uint64_t offset_;
};

}  // namespace jxes
