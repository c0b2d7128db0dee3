#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <sys/utsname.h>

#include "jxes/error.hpp"
#include "jxes/io.hpp"
#include "jxes/lexical.hpp"
#include "jxes/memtrace.hpp"
#include "jxes/model.hpp"
#include "jxes/reader.hpp"
#include "jxes/writer.hpp"
#include "jxes/xes.hpp"

namespace jxes {

enum class FileFormat { Jxes, JxesGz, Xes, XesGz };

inline std::string_view format_name(FileFormat f) {
    switch (f) {
        case FileFormat::Jxes: return "JXES";
        case FileFormat::JxesGz: return "JXES-gz";
        case FileFormat::Xes: return "XES";
        default: return "XES-gz";
    }
}

inline std::optional<FileFormat> format_from_name(std::string_view s) {
    if (s == "jxes" || s == "JXES" || s == "json") return FileFormat::Jxes;
    if (s == "jxes-gz" || s == "JXES-gz" || s == "json.gz")
        return FileFormat::JxesGz;
    if (s == "xes" || s == "XES") return FileFormat::Xes;
    if (s == "xes-gz" || s == "XES-gz" || s == "xes.gz") return FileFormat::XesGz;
    return std::nullopt;
}

inline bool format_is_xes(FileFormat f) {
    return f == FileFormat::Xes || f == FileFormat::XesGz;
}

inline bool format_is_gz(FileFormat f) {
    return f == FileFormat::JxesGz || f == FileFormat::XesGz;
}

inline std::string_view format_extension(FileFormat f) {
    switch (f) {
        case FileFormat::Jxes: return ".json";
        case FileFormat::JxesGz: return ".json.gz";
        case FileFormat::Xes: return ".xes";
        default: return ".xes.gz";
    }
}

// Format inference by file extension, for CLI defaults and export inputs.
inline std::optional<FileFormat> infer_format(const std::filesystem::path& p) {
    std::string name = p.filename().string();
    auto ends = [&](std::string_view suf) {
        return name.size() >= suf.size() &&
               name.compare(name.size() - suf.size(), suf.size(), suf) == 0;
    };
    if (ends(".json.gz") || ends(".jxes.gz")) return FileFormat::JxesGz;
    if (ends(".xes.gz")) return FileFormat::XesGz;
    if (ends(".json") || ends(".jxes")) return FileFormat::Jxes;
    if (ends(".xes")) return FileFormat::Xes;
    return std::nullopt;
}

enum class Direction { Import, Export };

inline std::string_view direction_name(Direction d) {
    return d == Direction::Import ? "Import" : "Export";
}

struct BenchCase {
    std::filesystem::path input_path;
    FileFormat format = FileFormat::Jxes;
    Direction direction = Direction::Import;
    std::optional<Backend> backend;  // meaningful for JXES cases only
    int runs = 3;
};

struct CaseResult {
    BenchCase def;
    bool ok = false;
    std::string error;  // failure text when !ok
    std::vector<double> run_ms;
    std::vector<std::uint64_t> run_peak_bytes;
    double mean_ms = 0.0;
    double mean_peak_bytes = 0.0;
    std::uint64_t output_bytes = 0;  // export cases only
};

struct BenchReport {
    std::string host;
    std::string timestamp;
    std::string notes;
    std::vector<CaseResult> cases;
};

namespace bench_detail {

inline EventLog parse_input(const std::filesystem::path& path, bool xes,
                            std::optional<Backend> backend) {
    if (xes) return parse_xes_file(path).log;
    ParseOptions opts;
    opts.backend = backend.value_or(Backend::Tree);
    return parse_jxes_file(path, opts);
}

inline void export_once(const EventLog& log, FileFormat fmt,
                        std::optional<Backend> backend,
                        const std::filesystem::path& out) {
    io::FileSink file(out);
    if (format_is_gz(fmt)) {
        io::DeflateSink gz(file);
        if (format_is_xes(fmt))
            write_xes(log, XesDocumentMeta{}, gz);
        else
            write_jxes(log, gz,
                       WriteOptions{backend.value_or(Backend::Streaming), false});
        gz.finish();
    } else {
        if (format_is_xes(fmt))
            write_xes(log, XesDocumentMeta{}, file);
        else
            write_jxes(log, file,
                       WriteOptions{backend.value_or(Backend::Streaming), false});
        file.finish();
    }
}

inline double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(
               clock::now().time_since_epoch())
        .count();
}

inline CaseResult run_case(const BenchCase& c,
                           const std::filesystem::path& scratch_dir) {
    CaseResult r;
    r.def = c;
    try {
        if (c.runs < 1)
            throw Error(Errc::InvalidArgument, "runs must be at least 1");
        if (format_is_xes(c.format) && c.backend)
            throw Error(Errc::InvalidArgument,
                        "backend selection applies to JXES cases only");
        bool xes = format_is_xes(c.format);
        if (c.direction == Direction::Import) {
            parse_input(c.input_path, xes, c.backend);  // warmup
            for (int i = 0; i < c.runs; ++i) {
                memtrace::PeakProbe probe;
                double t0 = now_ms();
                EventLog log = parse_input(c.input_path, xes, c.backend);
                double t1 = now_ms();
                r.run_peak_bytes.push_back(probe.peak_delta());
                r.run_ms.push_back(t1 - t0);
                (void)log;
            }
        } else {
            std::optional<FileFormat> in_fmt = infer_format(c.input_path);
            if (!in_fmt)
                throw Error(Errc::InvalidArgument,
                            "cannot infer input format of '" +
                                c.input_path.string() + "'");
            EventLog log =
                parse_input(c.input_path, format_is_xes(*in_fmt), std::nullopt);
            std::filesystem::path out =
                scratch_dir / ("bench-out" + std::string(format_extension(c.format)));
            export_once(log, c.format, c.backend, out);  // warmup
            for (int i = 0; i < c.runs; ++i) {
                memtrace::PeakProbe probe;
                double t0 = now_ms();
                export_once(log, c.format, c.backend, out);
                double t1 = now_ms();
                r.run_peak_bytes.push_back(probe.peak_delta());
                r.run_ms.push_back(t1 - t0);
            }
            r.output_bytes = std::filesystem::file_size(out);
            std::error_code ec;
            std::filesystem::remove(out, ec);
        }
        double tsum = 0.0, msum = 0.0;
        for (double t : r.run_ms) tsum += t;
        for (std::uint64_t m : r.run_peak_bytes)
            msum += static_cast<double>(m);
        r.mean_ms = tsum / static_cast<double>(r.run_ms.size());
        r.mean_peak_bytes = msum / static_cast<double>(r.run_peak_bytes.size());
        r.ok = true;
    } catch (const std::exception& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

}  // namespace bench_detail

// Runs all cases strictly sequentially; a failing case is recorded and the
// rest still run. One warmup execution per case precedes the timed runs.
inline BenchReport run_bench(const std::vector<BenchCase>& cases) {
    BenchReport report;
    utsname un{};
    if (uname(&un) == 0)
        report.host = std::string(un.sysname) + " " + un.release + " " +
                      un.machine;
    else
        report.host = "unknown host";
    auto now = std::chrono::system_clock::now();
    std::int64_t ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          now.time_since_epoch())
                          .count();
    report.timestamp = lexical::format_date(DateValue{ms, 0});
    report.notes =
        "one warmup execution per case, excluded from statistics; memory is "
        "the allocator high-water delta per run";
    std::filesystem::path scratch = std::filesystem::temp_directory_path();
    report.cases.reserve(cases.size());
    for (const BenchCase& c : cases)
        report.cases.push_back(bench_detail::run_case(c, scratch));
    return report;
}

enum class TableFormat { Markdown, Csv };

namespace bench_detail {

struct Column {
    FileFormat format;
    std::optional<Backend> backend;

    bool operator==(const Column& o) const {
        return format == o.format && backend == o.backend;
    }

    std::string label() const {
        std::string s{format_name(format)};
        if (backend) {
            s += " (";
            s += backend_name(*backend);
            s += ")";
        }
        return s;
    }
};

enum class Metric { Time, Memory, Size };

inline std::string metric_title(Metric m, Direction d) {
    std::string s{direction_name(d)};
    switch (m) {
        case Metric::Time: s += " time (ms)"; break;
        case Metric::Memory: s += " memory (bytes)"; break;
        case Metric::Size: s += " size (bytes)"; break;
    }
    return s;
}

inline std::optional<double> metric_value(const CaseResult& r, Metric m) {
    if (!r.ok) return std::nullopt;
    switch (m) {
        case Metric::Time: return r.mean_ms;
        case Metric::Memory: return r.mean_peak_bytes;
        case Metric::Size: return static_cast<double>(r.output_bytes);
    }
    return std::nullopt;
}

inline std::string format_cell(double v, Metric m) {
    char buf[64];
    if (m == Metric::Time)
        std::snprintf(buf, sizeof buf, "%.2f", v);
    else
        std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
}

inline void render_one_table(std::string& out, const BenchReport& report,
                             Direction dir, Metric metric, TableFormat fmt) {
    std::vector<std::string> rows;
    std::vector<Column> cols;
    bool any = false;
    for (const CaseResult& r : report.cases) {
        if (r.def.direction != dir) continue;
        any = true;
        std::string input = r.def.input_path.filename().string();
        bool have_row = false;
        for (const std::string& s : rows) have_row |= s == input;
        if (!have_row) rows.push_back(input);
        Column col{r.def.format, r.def.backend};
        bool have_col = false;
        for (const Column& c : cols) have_col |= c == col;
        if (!have_col) cols.push_back(col);
    }
    if (!any) return;

    std::string title = metric_title(metric, dir);
    if (fmt == TableFormat::Markdown) {
        out += "### " + title + "\n\n| Input |";
        for (const Column& c : cols) out += " " + c.label() + " |";
        out += "\n| --- |";
        for (std::size_t i = 0; i < cols.size(); ++i) out += " --- |";
        out += "\n";
    } else {
        out += "# " + title + "\ninput";
        for (const Column& c : cols) out += "," + c.label();
        out += "\n";
    }

    for (const std::string& input : rows) {
        // The cell for (row, col) comes from the first matching case.
        std::vector<const CaseResult*> cells(cols.size(), nullptr);
        for (const CaseResult& r : report.cases) {
            if (r.def.direction != dir) continue;
            if (r.def.input_path.filename().string() != input) continue;
            Column col{r.def.format, r.def.backend};
            for (std::size_t i = 0; i < cols.size(); ++i)
                if (cols[i] == col && !cells[i]) cells[i] = &r;
        }
        // Ties go to the earliest column: strict less-than keeps the first
        // minimum found scanning left to right.
        std::size_t best = cols.size();
        double best_v = 0.0;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (!cells[i]) continue;
            std::optional<double> v = metric_value(*cells[i], metric);
            if (!v) continue;
            if (best == cols.size() || *v < best_v) {
                best = i;
                best_v = *v;
            }
        }
        if (fmt == TableFormat::Markdown)
            out += "| " + input + " |";
        else
            out += input;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            std::string cell;
            if (!cells[i])
                cell = "";
            else if (std::optional<double> v = metric_value(*cells[i], metric))
                cell = format_cell(*v, metric);
            else
                cell = "ERROR";
            if (i == best)
                cell = fmt == TableFormat::Markdown ? "**" + cell + "**"
                                                    : cell + "*";
            if (fmt == TableFormat::Markdown)
                out += " " + cell + " |";
            else
                out += "," + cell;
        }
        out += "\n";
    }
    out += "\n";
}

}  // namespace bench_detail

// One table per (direction, metric); export additionally reports file size.
// Rows are input files, columns are (format, backend) pairs, and each row's
// best value is flagged (markdown bold, trailing '*' in CSV).
inline std::string render_tables(const BenchReport& report, TableFormat fmt) {
    if (report.cases.empty())
        throw Error(Errc::InvalidArgument, "bench report has no cases");
    std::string out;
    if (fmt == TableFormat::Markdown) {
        out += "# Benchmark report\n\n";
        out += "Host: " + report.host + "  \n";
        out += "Recorded: " + report.timestamp + "  \n";
        out += "Notes: " + report.notes + "\n\n";
    } else {
        out += "# host: " + report.host + "\n";
        out += "# recorded: " + report.timestamp + "\n";
        out += "# notes: " + report.notes + "\n";
    }
    using bench_detail::Metric;
    for (Direction d : {Direction::Import, Direction::Export}) {
        bench_detail::render_one_table(out, report, d, Metric::Time, fmt);
        bench_detail::render_one_table(out, report, d, Metric::Memory, fmt);
        if (d == Direction::Export)
            bench_detail::render_one_table(out, report, d, Metric::Size, fmt);
    }
    return out;
}

// Bench suite config: {"runs": 3, "cases": [{"input": ..., "format": ...,
// "direction": ..., "backend": ..., "runs": ...}]}. Paths resolve relative
// to base_dir.
inline std::vector<BenchCase> suite_from_json(
    std::string_view text, const std::filesystem::path& base_dir) {
    json::JsonValue root;
    try {
        root = json::parse_tree(text);
    } catch (const Error& e) {
        throw Error(Errc::InvalidArgument,
                    "bench suite is not valid JSON: " + e.message());
    }
    if (!root.is_object())
        throw Error(Errc::InvalidArgument, "bench suite must be a JSON object");
    int default_runs = 3;
    const json::JsonValue* cases_v = nullptr;
    for (const auto& m : root.as_object()) {
        if (m.key == "runs") {
            if (!m.value.is_number())
                throw Error(Errc::InvalidArgument, "'runs' must be an integer");
            lexical::ParsedNumber pn =
                lexical::parse_json_number(m.value.as_number().lexeme);
            if (!pn.is_int || pn.i < 1)
                throw Error(Errc::InvalidArgument,
                            "'runs' must be a positive integer");
            default_runs = static_cast<int>(pn.i);
        } else if (m.key == "cases") {
            cases_v = &m.value;
        } else {
            throw Error(Errc::InvalidArgument,
                        "unknown bench suite key '" + m.key + "'");
        }
    }
    if (!cases_v || !cases_v->is_array())
        throw Error(Errc::InvalidArgument,
                    "bench suite must carry a 'cases' array");
    std::vector<BenchCase> cases;
    for (const json::JsonValue& cv : cases_v->as_array()) {
        if (!cv.is_object())
            throw Error(Errc::InvalidArgument, "bench case must be an object");
        BenchCase c;
        c.runs = default_runs;
        bool have_input = false;
        for (const auto& m : cv.as_object()) {
            if (m.key == "input") {
                if (!m.value.is_string())
                    throw Error(Errc::InvalidArgument,
                                "case 'input' must be a string");
                std::filesystem::path p = m.value.as_string();
                c.input_path = p.is_absolute() ? p : base_dir / p;
                have_input = true;
            } else if (m.key == "format") {
                if (!m.value.is_string())
                    throw Error(Errc::InvalidArgument,
                                "case 'format' must be a string");
                std::optional<FileFormat> f = format_from_name(m.value.as_string());
                if (!f)
                    throw Error(Errc::InvalidArgument,
                                "unknown case format '" + m.value.as_string() +
                                    "'");
                c.format = *f;
            } else if (m.key == "direction") {
                if (!m.value.is_string())
                    throw Error(Errc::InvalidArgument,
                                "case 'direction' must be a string");
                const std::string& d = m.value.as_string();
                if (d == "import")
                    c.direction = Direction::Import;
                else if (d == "export")
                    c.direction = Direction::Export;
                else
                    throw Error(Errc::InvalidArgument,
                                "case 'direction' must be 'import' or 'export'");
            } else if (m.key == "backend") {
                if (!m.value.is_string())
                    throw Error(Errc::InvalidArgument,
                                "case 'backend' must be a string");
                std::optional<Backend> b = backend_from_name(m.value.as_string());
                if (!b)
                    throw Error(Errc::InvalidArgument,
                                "unknown backend '" + m.value.as_string() + "'");
                c.backend = b;
            } else if (m.key == "runs") {
                if (!m.value.is_number())
                    throw Error(Errc::InvalidArgument,
                                "case 'runs' must be an integer");
                lexical::ParsedNumber pn =
                    lexical::parse_json_number(m.value.as_number().lexeme);
                if (!pn.is_int || pn.i < 1)
                    throw Error(Errc::InvalidArgument,
                                "case 'runs' must be a positive integer");
                c.runs = static_cast<int>(pn.i);
            } else {
                throw Error(Errc::InvalidArgument,
                            "unknown bench case key '" + m.key + "'");
            }
        }
        if (!have_input)
            throw Error(Errc::InvalidArgument, "bench case missing 'input'");
        cases.push_back(std::move(c));
    }
    return cases;
}

}  // namespace jxes
