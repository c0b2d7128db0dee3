#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jxes/io.hpp"
#include "jxes/lexical.hpp"

namespace jxes::json {

// Token-level JSON writer. Both serialization strategies funnel through this
// class, so equal token sequences produce byte-identical output.
class JsonEmitter {
public:
    explicit JsonEmitter(io::ByteSink& sink, bool pretty = false)
        : sink_(sink), pretty_(pretty) {}

    void begin_object() {
        before_value();
        put('{');
        stack_.push_back({true, 0});
    }

    void end_object() {
        close('}');
    }

    void begin_array() {
        before_value();
        put('[');
        stack_.push_back({false, 0});
    }

    void end_array() {
        close(']');
    }

    void key(std::string_view k) {
        Frame& f = stack_.back();
        if (f.count > 0) put(',');
        ++f.count;
        if (pretty_) newline_indent(stack_.size());
        buf_.clear();
        lexical::append_json_quoted(buf_, k);
        buf_.push_back(':');
        if (pretty_) buf_.push_back(' ');
        sink_.write(buf_);
        after_key_ = true;
    }

    void string(std::string_view s) {
        before_value();
        buf_.clear();
        lexical::append_json_quoted(buf_, s);
        sink_.write(buf_);
    }

    void raw_number(std::string_view lexeme) {
        before_value();
        sink_.write(lexeme);
    }

    void int64(std::int64_t v) { raw_number(lexical::format_int(v)); }
    void float64(double v) { raw_number(lexical::format_float(v)); }

    void boolean(bool v) {
        before_value();
        sink_.write(v ? std::string_view("true") : std::string_view("false"));
    }

    void null() {
        before_value();
        sink_.write(std::string_view("null"));
    }

    std::size_t depth() const noexcept { return stack_.size(); }

private:
    struct Frame {
        bool is_object;
        std::size_t count;
    };

    void put(char c) { sink_.write(&c, 1); }

    void newline_indent(std::size_t depth) {
        buf_.assign(1, '\n');
        buf_.append(depth * 2, ' ');
        sink_.write(buf_);
    }

    void before_value() {
        if (after_key_) {
            after_key_ = false;
            return;
        }
        if (stack_.empty()) return;
        Frame& f = stack_.back();
        if (f.count > 0) put(',');
        ++f.count;
        if (pretty_ && !f.is_object) newline_indent(stack_.size());
    }

    void close(char c) {
        Frame f = stack_.back();
        stack_.pop_back();
        if (pretty_ && f.count > 0) newline_indent(stack_.size());
        put(c);
    }

    io::ByteSink& sink_;
    bool pretty_;
    bool after_key_ = false;
    std::vector<Frame> stack_;
    std::string buf_;
};

}  // namespace jxes::json
