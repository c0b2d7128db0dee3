#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jxes/diagnostics.hpp"
#include "jxes/error.hpp"
#include "jxes/io.hpp"
#include "jxes/lexical.hpp"
#include "jxes/model.hpp"

namespace jxes {

// Header fields carried through conversions untouched; the header is the one
// part of an XES file allowed to differ after a full round trip.
struct XesDocumentMeta {
    std::optional<std::string> version;
    std::optional<std::string> features;
};

struct XesReadResult {
    EventLog log;
    XesDocumentMeta meta;
};

namespace xes_detail {

struct XmlAttr {
    std::string name;
    std::string value;
};

struct StartTag {
    std::string name;
    std::vector<XmlAttr> attrs;
    bool self_closing = false;

    const std::string* find(std::string_view name_) const {
        for (const XmlAttr& a : attrs)
            if (a.name == name_) return &a.value;
        return nullptr;
    }
};

// Minimal XML reader covering the element/attribute subset XES needs: no
// DTDs, no CDATA, no namespace prefixes on element names, no text content.
class XmlCursor {
public:
    explicit XmlCursor(std::string text) : text_(std::move(text)) {}

    enum class Item { Start, End, Eof };

    // Advances past whitespace, comments and processing instructions to the
    // next structural item.
    Item next() {
        for (;;) {
            std::size_t text_start = pos_;
            while (pos_ < text_.size() && text_[pos_] != '<') ++pos_;
            for (std::size_t i = text_start; i < pos_; ++i) {
                char c = text_[i];
                if (c != ' ' && c != '\t' && c != '\n' && c != '\r')
                    throw Error(Errc::UnsupportedConstruct,
                                "text content is not part of the XES subset", {},
                                i);
            }
            if (pos_ >= text_.size()) return Item::Eof;
            if (starts_with("<!--")) {
                skip_until("-->");
                continue;
            }
            if (starts_with("<?")) {
                skip_until("?>");
                continue;
            }
            if (starts_with("<!"))
                throw Error(Errc::UnsupportedConstruct,
                            "DTD sections are not supported", {}, pos_);
            if (starts_with("</")) {
                read_end_tag();
                return Item::End;
            }
            read_start_tag();
            return Item::Start;
        }
    }

    const StartTag& start() const noexcept { return start_; }
    const std::string& end_name() const noexcept { return end_name_; }
    std::uint64_t offset() const noexcept { return item_off_; }

private:
    bool starts_with(std::string_view s) const {
        return text_.compare(pos_, s.size(), s) == 0;
    }

    void skip_until(std::string_view terminator) {
        std::size_t at = text_.find(terminator, pos_);
        if (at == std::string::npos)
            throw Error(Errc::MalformedXml, "unterminated markup", {}, pos_);
        pos_ = at + terminator.size();
    }

    [[noreturn]] void malformed(const std::string& msg) const {
        throw Error(Errc::MalformedXml, msg, {}, pos_);
    }

    int peek() const { return pos_ < text_.size() ? static_cast<unsigned char>(text_[pos_]) : -1; }

    void skip_ws() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
                ++pos_;
            else
                return;
        }
    }

    static bool name_start(int c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
    }

    static bool name_char(int c) {
        return name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
               c == ':';
    }

    std::string read_name() {
        if (!name_start(peek())) malformed("expected a name");
        std::size_t from = pos_;
        while (name_char(peek())) ++pos_;
        return text_.substr(from, pos_ - from);
    }

    void read_start_tag() {
        item_off_ = pos_;
        ++pos_;  // '<'
        start_.name = read_name();
        if (start_.name.find(':') != std::string::npos)
            throw Error(Errc::UnsupportedConstruct,
                        "namespaced element names are not supported", {},
                        item_off_);
        start_.attrs.clear();
        start_.self_closing = false;
        for (;;) {
            skip_ws();
            int c = peek();
            if (c == '>') {
                ++pos_;
                return;
            }
            if (c == '/') {
                ++pos_;
                if (peek() != '>') malformed("expected '>' after '/'");
                ++pos_;
                start_.self_closing = true;
                return;
            }
            if (c < 0) malformed("unterminated start tag");
            XmlAttr attr;
            attr.name = read_name();
            skip_ws();
            if (peek() != '=') malformed("expected '=' in attribute");
            ++pos_;
            skip_ws();
            int q = peek();
            if (q != '"' && q != '\'') malformed("expected quoted attribute value");
            ++pos_;
            attr.value = read_attr_value(static_cast<char>(q));
            start_.attrs.push_back(std::move(attr));
        }
    }

    std::string read_attr_value(char quote) {
        std::string out;
        for (;;) {
            if (pos_ >= text_.size()) malformed("unterminated attribute value");
            char c = text_[pos_];
            if (c == quote) {
                ++pos_;
                return out;
            }
            if (c == '<') malformed("'<' in attribute value");
            if (c == '&') {
                decode_entity(out);
                continue;
            }
            out.push_back(c);
            ++pos_;
        }
    }

    void decode_entity(std::string& out) {
        std::size_t end = text_.find(';', pos_);
        if (end == std::string::npos || end - pos_ > 12)
            malformed("unterminated entity reference");
        std::string_view ent(text_.data() + pos_ + 1, end - pos_ - 1);
        pos_ = end + 1;
        if (ent == "amp") out.push_back('&');
        else if (ent == "lt") out.push_back('<');
        else if (ent == "gt") out.push_back('>');
        else if (ent == "quot") out.push_back('"');
        else if (ent == "apos") out.push_back('\'');
        else if (!ent.empty() && ent[0] == '#') {
            std::uint32_t cp = 0;
            bool ok;
            if (ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X')) {
                auto [p, ec] = std::from_chars(ent.data() + 2,
                                               ent.data() + ent.size(), cp, 16);
                ok = ec == std::errc{} && p == ent.data() + ent.size();
            } else {
                auto [p, ec] = std::from_chars(ent.data() + 1,
                                               ent.data() + ent.size(), cp, 10);
                ok = ec == std::errc{} && p == ent.data() + ent.size();
            }
            if (!ok || cp == 0 || cp > 0x10FFFF)
                malformed("invalid character reference");
            append_utf8(out, cp);
        } else {
            malformed("unknown entity reference");
        }
    }

    static void append_utf8(std::string& out, std::uint32_t cp) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }

    void read_end_tag() {
        item_off_ = pos_;
        pos_ += 2;  // '</'
        end_name_ = read_name();
        skip_ws();
        if (peek() != '>') malformed("expected '>' in end tag");
        ++pos_;
    }

    std::string text_;
    std::size_t pos_ = 0;
    std::uint64_t item_off_ = 0;
    StartTag start_;
    std::string end_name_;
};

inline bool attribute_tag(std::string_view tag) {
    return tag == "string" || tag == "date" || tag == "int" || tag == "float" ||
           tag == "boolean" || tag == "id" || tag == "list" || tag == "container";
}

class XesParser {
public:
    explicit XesParser(std::string text, std::vector<Diagnostic>* warnings)
        : cur_(std::move(text)), warnings_(warnings) {}

    XesReadResult run() {
        XesReadResult out;
        if (cur_.next() != XmlCursor::Item::Start)
            throw Error(Errc::MalformedXml, "document has no root element");
        if (cur_.start().name != "log")
            unsupported("root element must be <log>, got <" + cur_.start().name +
                        ">");
        push("log");
        if (const std::string* v = cur_.start().find("xes.version"))
            out.meta.version = *v;
        if (const std::string* v = cur_.start().find("xes.features"))
            out.meta.features = *v;
        // Remaining <log> attributes (xmlns, tool versions, ...) are header
        // metadata and intentionally dropped.
        if (!cur_.start().self_closing) read_log_children(out.log);
        pop();
        if (cur_.next() != XmlCursor::Item::Eof)
            throw Error(Errc::MalformedXml, "content after closing </log>", {},
                        cur_.offset());
        return out;
    }

private:
    struct TagCounts {
        std::vector<std::pair<std::string, int>> counts;
        int next(const std::string& tag) {
            for (auto& [t, c] : counts)
                if (t == tag) return ++c;
            counts.emplace_back(tag, 0);
            return 0;
        }
    };

    void push(const std::string& tag) { segs_.push_back(tag); }
    void pop() { segs_.pop_back(); }

    std::string path() const {
        std::string out;
        for (const std::string& s : segs_) {
            out += '/';
            out += s;
        }
        return out;
    }

    [[noreturn]] void unsupported(std::string msg) {
        throw Error(Errc::UnsupportedConstruct, std::move(msg), path(),
                    cur_.offset());
    }

    void warn(std::string code, std::string msg) {
        if (warnings_)
            warnings_->push_back(
                {Severity::Warning, std::move(code), path(), std::move(msg)});
    }

    void expect_end(const std::string& tag) {
        if (cur_.end_name() != tag)
            throw Error(Errc::MalformedXml,
                        "mismatched end tag </" + cur_.end_name() +
                            ">, expected </" + tag + ">",
                        path(), cur_.offset());
    }

    const std::string& required_attr(const StartTag& t, std::string_view name) {
        const std::string* v = t.find(name);
        if (!v)
            unsupported("<" + t.name + "> is missing the '" + std::string(name) +
                        "' attribute");
        return *v;
    }

    void forbid_extra_attrs(const StartTag& t,
                            std::initializer_list<std::string_view> allowed) {
        for (const XmlAttr& a : t.attrs) {
            bool ok = false;
            for (std::string_view al : allowed)
                if (a.name == al) ok = true;
            if (!ok)
                unsupported("attribute '" + a.name + "' on <" + t.name +
                            "> is not part of the XES subset");
        }
    }

    void read_log_children(EventLog& log) {
        TagCounts counts;
        for (;;) {
            XmlCursor::Item item = cur_.next();
            if (item == XmlCursor::Item::Eof)
                throw Error(Errc::MalformedXml, "unexpected end of document",
                            path());
            if (item == XmlCursor::Item::End) {
                expect_end("log");
                return;
            }
            StartTag tag = cur_.start();
            push(tag.name + "[" + std::to_string(counts.next(tag.name)) + "]");
            if (tag.name == "extension") {
                forbid_extra_attrs(tag, {"name", "prefix", "uri"});
                Extension e{required_attr(tag, "name"),
                            required_attr(tag, "prefix"),
                            required_attr(tag, "uri")};
                if (e.name.empty() || e.prefix.empty() || e.uri.empty())
                    unsupported("extension fields must be non-empty");
                log.extensions.push_back(std::move(e));
                require_empty_element(tag);
            } else if (tag.name == "global") {
                forbid_extra_attrs(tag, {"scope"});
                const std::string& scope = required_attr(tag, "scope");
                AttributeSet* target = nullptr;
                if (scope == "trace") target = &log.globals.trace_level;
                else if (scope == "event") target = &log.globals.event_level;
                else unsupported("global scope must be 'trace' or 'event'");
                if (!tag.self_closing) read_attr_children(tag.name, *target);
            } else if (tag.name == "classifier") {
                forbid_extra_attrs(tag, {"name", "keys"});
                read_classifier(tag, log.classifiers);
                require_empty_element(tag);
            } else if (tag.name == "trace") {
                forbid_extra_attrs(tag, {});
                Trace t;
                if (!tag.self_closing) read_trace_children(t);
                log.traces.push_back(std::move(t));
            } else if (attribute_tag(tag.name)) {
                insert_warned(log.attributes, read_attribute(tag));
            } else {
                unsupported("element <" + tag.name +
                            "> is not part of the XES subset");
            }
            pop();
        }
    }

    void require_empty_element(const StartTag& tag) {
        if (tag.self_closing) return;
        XmlCursor::Item item = cur_.next();
        if (item != XmlCursor::Item::End)
            unsupported("<" + tag.name + "> must be empty");
        expect_end(tag.name);
    }

    void read_classifier(const StartTag& tag, std::vector<Classifier>& out) {
        Classifier c;
        c.name = required_attr(tag, "name");
        if (c.name.empty()) unsupported("classifier name must be non-empty");
        const std::string& keys = required_attr(tag, "keys");
        if (keys.find('"') != std::string::npos ||
            keys.find('\'') != std::string::npos)
            unsupported("quoted classifier keys are not supported");
        std::size_t from = 0;
        while (from <= keys.size()) {
            std::size_t sp = keys.find(' ', from);
            std::string key = keys.substr(
                from, sp == std::string::npos ? std::string::npos : sp - from);
            if (key.empty())
                unsupported("classifier keys must be single-space separated and "
                            "non-empty");
            c.keys.push_back(std::move(key));
            if (sp == std::string::npos) break;
            from = sp + 1;
        }
        out.push_back(std::move(c));
    }

    void read_trace_children(Trace& t) {
        TagCounts counts;
        for (;;) {
            XmlCursor::Item item = cur_.next();
            if (item == XmlCursor::Item::Eof)
                throw Error(Errc::MalformedXml, "unexpected end of document",
                            path());
            if (item == XmlCursor::Item::End) {
                expect_end("trace");
                return;
            }
            StartTag tag = cur_.start();
            push(tag.name + "[" + std::to_string(counts.next(tag.name)) + "]");
            if (tag.name == "event") {
                forbid_extra_attrs(tag, {});
                Event ev;
                if (!tag.self_closing) read_attr_children("event", ev.attributes);
                t.events.push_back(std::move(ev));
            } else if (attribute_tag(tag.name)) {
                insert_warned(t.attributes, read_attribute(tag));
            } else {
                unsupported("element <" + tag.name +
                            "> is not part of the XES subset");
            }
            pop();
        }
    }

    // Children of <global>, <event>, or an attribute element: attribute
    // elements only. Consumes through the parent's end tag.
    void read_attr_children(const std::string& parent, AttributeSet& out) {
        TagCounts counts;
        for (;;) {
            XmlCursor::Item item = cur_.next();
            if (item == XmlCursor::Item::Eof)
                throw Error(Errc::MalformedXml, "unexpected end of document",
                            path());
            if (item == XmlCursor::Item::End) {
                expect_end(parent);
                return;
            }
            StartTag tag = cur_.start();
            push(tag.name + "[" + std::to_string(counts.next(tag.name)) + "]");
            if (!attribute_tag(tag.name))
                unsupported("element <" + tag.name +
                            "> is not part of the XES subset");
            insert_warned(out, read_attribute(tag));
            pop();
        }
    }

    void insert_warned(AttributeSet& out, Attribute a) {
        if (out.contains(a.key)) {
            warn("DuplicateKey",
                 "duplicate key '" + a.key + "'; last occurrence wins");
            out.upsert(std::move(a));
        } else {
            out.insert(std::move(a));
        }
    }

    // Current item is the start tag of an attribute element; consumes it
    // entirely.
    Attribute read_attribute(const StartTag& tag) {
        Attribute a;
        a.key = required_attr(tag, "key");
        bool is_list = tag.name == "list";
        bool is_container = tag.name == "container";
        if (is_list || is_container) {
            forbid_extra_attrs(tag, {"key"});
            if (is_list) a.value = ListValue{};
            else a.value = ContainerValue{};
            if (!tag.self_closing) read_composite_children(tag.name, a);
            return a;
        }
        forbid_extra_attrs(tag, {"key", "value"});
        const std::string& raw = required_attr(tag, "value");
        a.value = scalar_value(tag.name, raw);
        if (!tag.self_closing) read_attr_children(tag.name, a.children);
        return a;
    }

    AttributeValue scalar_value(const std::string& type, const std::string& raw) {
        if (type == "string") return raw;
        if (type == "id") {
            warn("IdTypeCoerced", "id attribute read as string; JXES has no id "
                                  "type");
            return raw;
        }
        if (type == "date") {
            if (auto d = lexical::parse_date(raw)) return *d;
            unsupported("date value '" + raw +
                        "' is outside the supported ISO-8601 subset");
        }
        if (type == "int") {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (ec != std::errc{} || p != raw.data() + raw.size())
                unsupported("int value '" + raw + "' is not a 64-bit integer");
            return v;
        }
        if (type == "float") {
            double v = 0.0;
            auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
            if (ec != std::errc{} || p != raw.data() + raw.size() ||
                !std::isfinite(v))
                unsupported("float value '" + raw +
                            "' is not a finite decimal number");
            return v;
        }
        // boolean
        if (raw == "true") return true;
        if (raw == "false") return false;
        unsupported("boolean value must be 'true' or 'false', got '" + raw + "'");
    }

    // Children of <list> or <container>: an optional <values> block plus
    // meta-attributes. List items always live inside <values>; container
    // entries live inside <values> only when meta-attributes are present.
    void read_composite_children(const std::string& parent, Attribute& a) {
        TagCounts counts;
        bool saw_values = false;
        for (;;) {
            XmlCursor::Item item = cur_.next();
            if (item == XmlCursor::Item::Eof)
                throw Error(Errc::MalformedXml, "unexpected end of document",
                            path());
            if (item == XmlCursor::Item::End) {
                expect_end(parent);
                break;
            }
            StartTag tag = cur_.start();
            push(tag.name + "[" + std::to_string(counts.next(tag.name)) + "]");
            if (tag.name == "values") {
                if (saw_values)
                    unsupported("multiple <values> blocks in one attribute");
                saw_values = true;
                forbid_extra_attrs(tag, {});
                if (!tag.self_closing) {
                    if (parent == "list")
                        read_list_items(std::get<ListValue>(a.value));
                    else
                        read_attr_children("values",
                                           std::get<ContainerValue>(a.value).entries);
                }
            } else if (attribute_tag(tag.name)) {
                insert_warned(a.children, read_attribute(tag));
            } else {
                unsupported("element <" + tag.name +
                            "> is not part of the XES subset");
            }
            pop();
        }
        // Without <values>, a container's direct children are its entries.
        if (parent == "container" && !saw_values && !a.children.empty()) {
            auto& entries = std::get<ContainerValue>(a.value).entries;
            for (std::size_t i = 0; i < a.children.size(); ++i)
                entries.insert(std::move(a.children[i]));
            a.children.clear();
        }
    }

    void read_list_items(ListValue& out) {
        TagCounts counts;
        for (;;) {
            XmlCursor::Item item = cur_.next();
            if (item == XmlCursor::Item::Eof)
                throw Error(Errc::MalformedXml, "unexpected end of document",
                            path());
            if (item == XmlCursor::Item::End) {
                expect_end("values");
                return;
            }
            StartTag tag = cur_.start();
            push(tag.name + "[" + std::to_string(counts.next(tag.name)) + "]");
            if (!attribute_tag(tag.name))
                unsupported("element <" + tag.name +
                            "> is not part of the XES subset");
            out.items.push_back(read_attribute(tag));
            pop();
        }
    }

    XmlCursor cur_;
    std::vector<Diagnostic>* warnings_;
    std::vector<std::string> segs_;
};

class XesWriter {
public:
    XesWriter(io::ByteSink& sink, const XesDocumentMeta& meta)
        : sink_(sink), meta_(meta) {}

    void write(const EventLog& log) {
        line(0, "<?xml version=\"1.0\" encoding=\"UTF-8\" ?>");
        std::string open = "<log xes.version=\"";
        append_escaped(open, meta_.version.value_or("1.0"));
        open += "\" xes.features=\"";
        append_escaped(open, meta_.features.value_or("nested-attributes"));
        open += "\" xmlns=\"http://www.xes-standard.org/\">";
        line(0, open);
        for (const Extension& e : log.extensions) {
            std::string s = "<extension name=\"";
            append_escaped(s, e.name);
            s += "\" prefix=\"";
            append_escaped(s, e.prefix);
            s += "\" uri=\"";
            append_escaped(s, e.uri);
            s += "\"/>";
            line(1, s);
        }
        write_global(1, "trace", log.globals.trace_level);
        write_global(1, "event", log.globals.event_level);
        for (const Classifier& c : log.classifiers) write_classifier(1, c);
        for (const Attribute& a : log.attributes) write_attribute(1, a);
        for (const Trace& t : log.traces) {
            if (t.attributes.empty() && t.events.empty()) {
                line(1, "<trace/>");
                continue;
            }
            line(1, "<trace>");
            for (const Attribute& a : t.attributes) write_attribute(2, a);
            for (const Event& ev : t.events) {
                if (ev.attributes.empty()) {
                    line(2, "<event/>");
                    continue;
                }
                line(2, "<event>");
                for (const Attribute& a : ev.attributes) write_attribute(3, a);
                line(2, "</event>");
            }
            line(1, "</trace>");
        }
        line(0, "</log>");
    }

private:
    void line(int indent, std::string_view text) {
        buf_.assign(static_cast<std::size_t>(indent), '\t');
        buf_ += text;
        buf_ += '\n';
        sink_.write(buf_);
    }

    static void append_escaped(std::string& out, std::string_view s) {
        lexical::append_xml_escaped(out, s);
    }

    void write_global(int indent, std::string_view scope,
                      const AttributeSet& set) {
        if (set.empty()) return;
        line(indent, std::string("<global scope=\"") + std::string(scope) + "\">");
        for (const Attribute& a : set) write_attribute(indent + 1, a);
        line(indent, "</global>");
    }

    void write_classifier(int indent, const Classifier& c) {
        std::string keys;
        for (std::size_t i = 0; i < c.keys.size(); ++i) {
            const std::string& k = c.keys[i];
            if (k.empty() || k.find(' ') != std::string::npos ||
                k.find('"') != std::string::npos ||
                k.find('\'') != std::string::npos)
                throw Error(Errc::UnsupportedConstruct,
                            "classifier key '" + k +
                                "' cannot be represented in the XES keys list",
                            "classifier '" + c.name + "'");
            if (i) keys += ' ';
            keys += k;
        }
        std::string s = "<classifier name=\"";
        append_escaped(s, c.name);
        s += "\" keys=\"";
        append_escaped(s, keys);
        s += "\"/>";
        line(indent, s);
    }

    static std::string_view tag_for(const AttributeValue& v) {
        switch (static_cast<ValueKind>(v.index())) {
            case ValueKind::Str: return "string";
            case ValueKind::Date: return "date";
            case ValueKind::Int: return "int";
            case ValueKind::Float: return "float";
            case ValueKind::Bool: return "boolean";
            case ValueKind::List: return "list";
            default: return "container";
        }
    }

    void write_attribute(int indent, const Attribute& a) {
        std::string_view tag = tag_for(a.value);
        std::string s = "<";
        s += tag;
        s += " key=\"";
        append_escaped(s, a.key);
        s += '"';
        if (ValueKind(a.value.index()) == ValueKind::List) {
            const auto& items = std::get<ListValue>(a.value).items;
            s += '>';
            line(indent, s);
            if (items.empty()) {
                line(indent + 1, "<values/>");
            } else {
                line(indent + 1, "<values>");
                for (const Attribute& item : items)
                    write_attribute(indent + 2, item);
                line(indent + 1, "</values>");
            }
            for (const Attribute& child : a.children)
                write_attribute(indent + 1, child);
            line(indent, "</list>");
            return;
        }
        if (ValueKind(a.value.index()) == ValueKind::Container) {
            const auto& entries = std::get<ContainerValue>(a.value).entries;
            if (entries.empty() && a.children.empty()) {
                s += "/>";
                line(indent, s);
                return;
            }
            s += '>';
            line(indent, s);
            if (a.children.empty()) {
                // No meta-attributes: entries are direct children, the plain
                // XES form.
                for (const Attribute& e : entries) write_attribute(indent + 1, e);
            } else {
                if (entries.empty()) {
                    line(indent + 1, "<values/>");
                } else {
                    line(indent + 1, "<values>");
                    for (const Attribute& e : entries)
                        write_attribute(indent + 2, e);
                    line(indent + 1, "</values>");
                }
                for (const Attribute& child : a.children)
                    write_attribute(indent + 1, child);
            }
            line(indent, "</container>");
            return;
        }
        s += " value=\"";
        append_escaped(s, scalar_text(a.value));
        s += '"';
        if (a.children.empty()) {
            s += "/>";
            line(indent, s);
            return;
        }
        s += '>';
        line(indent, s);
        for (const Attribute& child : a.children)
            write_attribute(indent + 1, child);
        std::string close = "</";
        close += tag;
        close += '>';
        line(indent, close);
    }

    static std::string scalar_text(const AttributeValue& v) {
        switch (static_cast<ValueKind>(v.index())) {
            case ValueKind::Str: return std::get<std::string>(v);
            case ValueKind::Date:
                return lexical::format_date(std::get<DateValue>(v));
            case ValueKind::Int:
                return lexical::format_int(std::get<std::int64_t>(v));
            case ValueKind::Float:
                return lexical::format_float(std::get<double>(v));
            default: return std::get<bool>(v) ? "true" : "false";
        }
    }

    io::ByteSink& sink_;
    const XesDocumentMeta& meta_;
    std::string buf_;
};

}  // namespace xes_detail

inline XesReadResult parse_xes(io::ByteSource& in,
                               std::vector<Diagnostic>* warnings = nullptr) {
    io::AutoInflateSource src(in);
    std::string text;
    char buf[1 << 15];
    for (;;) {
        std::size_t got = src.read(buf, sizeof buf);
        if (got == 0) break;
        text.append(buf, got);
    }
    xes_detail::XesParser parser(std::move(text), warnings);
    return parser.run();
}

inline XesReadResult parse_xes(std::string_view text,
                               std::vector<Diagnostic>* warnings = nullptr) {
    io::MemorySource src(text);
    return parse_xes(src, warnings);
}

inline XesReadResult parse_xes_file(const std::filesystem::path& path,
                                    std::vector<Diagnostic>* warnings = nullptr) {
    io::FileSource src(path);
    return parse_xes(src, warnings);
}

inline void write_xes(const EventLog& log, const XesDocumentMeta& meta,
                      io::ByteSink& sink) {
    xes_detail::XesWriter w(sink, meta);
    w.write(log);
}

inline std::string write_xes(const EventLog& log,
                             const XesDocumentMeta& meta = {}) {
    std::string out;
    io::StringSink sink(out);
    write_xes(log, meta, sink);
    return out;
}

inline void write_xes_file(const std::filesystem::path& path,
                           const EventLog& log,
                           const XesDocumentMeta& meta = {}) {
    io::atomic_write_file(
        path, [&](io::ByteSink& sink) { write_xes(log, meta, sink); },
        io::path_ends_with_gz(path));
}

}  // namespace jxes
