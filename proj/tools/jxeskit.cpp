// jxeskit: convert, validate, stats, generate and bench for JXES/XES logs.
//
// Exit codes: 0 success, 1 I/O failure, 2 parse/schema failure,
// 3 warnings under --strict (validate only).

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jxes/jxes.hpp"

JXES_MEMTRACE_IMPLEMENT

namespace {

enum class LogLevel { Quiet, Warn, Debug };

LogLevel log_level() {
    const char* env = std::getenv("JXESKIT_LOG");
    if (!env) return LogLevel::Warn;
    std::string_view v{env};
    if (v == "quiet" || v == "0" || v == "none") return LogLevel::Quiet;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
}

void debug(const std::string& msg) {
    if (log_level() == LogLevel::Debug)
        std::fprintf(stderr, "jxeskit: %s\n", msg.c_str());
}

void print_diagnostics(const std::vector<jxes::Diagnostic>& ds) {
    if (log_level() == LogLevel::Quiet) return;
    for (const auto& d : ds)
        std::fprintf(stderr, "%s\n", jxes::to_text(d).c_str());
}

int exit_for(const jxes::Error& e) {
    return e.code() == jxes::Errc::IoFailure ? 1 : 2;
}

jxes::FileFormat resolve_format(const std::filesystem::path& path,
                                const std::string& override_name,
                                const char* what) {
    if (!override_name.empty()) {
        if (auto f = jxes::format_from_name(override_name)) return *f;
        throw jxes::Error(jxes::Errc::InvalidArgument,
                          std::string("unknown ") + what + " format '" +
                              override_name + "'");
    }
    if (auto f = jxes::infer_format(path)) return *f;
    throw jxes::Error(jxes::Errc::InvalidArgument,
                      "cannot infer " + std::string(what) + " format of '" +
                          path.string() + "'; pass --" + what + "-format");
}

struct LoadedLog {
    jxes::EventLog log;
    jxes::XesDocumentMeta meta;
};

LoadedLog load_log(const std::filesystem::path& path, jxes::FileFormat fmt,
                   const jxes::ParseOptions& opts,
                   std::vector<jxes::Diagnostic>* warnings) {
    LoadedLog out;
    if (jxes::format_is_xes(fmt)) {
        jxes::XesReadResult r = jxes::parse_xes_file(path, warnings);
        out.log = std::move(r.log);
        out.meta = std::move(r.meta);
    } else {
        out.log = jxes::parse_jxes_file(path, opts, warnings);
    }
    return out;
}

void store_log(const std::filesystem::path& path, jxes::FileFormat fmt,
               const LoadedLog& l, const jxes::WriteOptions& opts) {
    if (jxes::format_is_xes(fmt))
        jxes::write_xes_file(path, l.log, l.meta);
    else
        jxes::write_jxes_file(path, l.log, opts);
}

int cmd_convert(const std::string& in, const std::string& out,
                const std::string& in_format, const std::string& out_format,
                const std::string& backend_name, bool strict, bool pretty) {
    jxes::FileFormat in_fmt = resolve_format(in, in_format, "in");
    jxes::FileFormat out_fmt = resolve_format(out, out_format, "out");
    jxes::ParseOptions popts;
    popts.strict = strict;
    jxes::WriteOptions wopts;
    wopts.pretty = pretty;
    if (!backend_name.empty()) {
        auto b = jxes::backend_from_name(backend_name);
        if (!b)
            throw jxes::Error(jxes::Errc::InvalidArgument,
                              "unknown backend '" + backend_name + "'");
        popts.backend = *b;
        wopts.backend = *b;
    }
    std::vector<jxes::Diagnostic> warnings;
    LoadedLog l = load_log(in, in_fmt, popts, &warnings);
    print_diagnostics(warnings);
    store_log(out, out_fmt, l, wopts);
    debug("wrote '" + out + "'");
    return 0;
}

int cmd_validate(const std::string& in, bool strict, bool json_report) {
    std::vector<jxes::Diagnostic> ds = jxes::validate_file(in);
    print_diagnostics(ds);
    if (json_report) {
        std::string report = jxes::diagnostics_to_json(ds);
        std::fwrite(report.data(), 1, report.size(), stdout);
        std::fputc('\n', stdout);
    }
    if (jxes::has_errors(ds)) return 2;
    if (strict && jxes::count_warnings(ds) > 0) return 3;
    return 0;
}

int cmd_stats(const std::string& in, const std::string& in_format,
              const std::string& backend_name) {
    jxes::FileFormat fmt = resolve_format(in, in_format, "in");
    jxes::ParseOptions opts;
    if (!backend_name.empty()) {
        auto b = jxes::backend_from_name(backend_name);
        if (!b)
            throw jxes::Error(jxes::Errc::InvalidArgument,
                              "unknown backend '" + backend_name + "'");
        opts.backend = *b;
    }
    std::vector<jxes::Diagnostic> warnings;
    LoadedLog l = load_log(in, fmt, opts, &warnings);
    print_diagnostics(warnings);
    jxes::LogStats s = jxes::log_statistics(l.log);
    std::printf("traces %llu, events %llu, variants %llu, activities %llu, "
                "max length %llu\n",
                static_cast<unsigned long long>(s.trace_count),
                static_cast<unsigned long long>(s.event_count),
                static_cast<unsigned long long>(s.variant_count),
                static_cast<unsigned long long>(s.distinct_activities),
                static_cast<unsigned long long>(s.max_trace_length));
    return 0;
}

int cmd_generate(const std::string& profile_path, const std::string& out,
                 const std::string& out_format) {
    jxes::GenProfile profile =
        jxes::profile_from_json(jxes::io::read_file(profile_path));
    jxes::EventLog log = jxes::generate(profile);
    jxes::FileFormat fmt = resolve_format(out, out_format, "out");
    LoadedLog l;
    l.log = std::move(log);
    store_log(out, fmt, l, jxes::WriteOptions{});
    debug("generated '" + out + "'");
    return 0;
}

int cmd_bench(const std::string& suite_path, const std::string& out_dir,
              const std::string& report_kind) {
    std::filesystem::path suite{suite_path};
    std::vector<jxes::BenchCase> cases = jxes::suite_from_json(
        jxes::io::read_file(suite), suite.parent_path());
    jxes::BenchReport report = jxes::run_bench(cases);
    std::filesystem::create_directories(out_dir);
    std::filesystem::path dir{out_dir};
    if (report_kind.empty() || report_kind == "md")
        jxes::io::atomic_write_file(dir / "report.md", [&](jxes::io::ByteSink& s) {
            s.write(jxes::render_tables(report, jxes::TableFormat::Markdown));
        });
    if (report_kind.empty() || report_kind == "csv")
        jxes::io::atomic_write_file(dir / "report.csv", [&](jxes::io::ByteSink& s) {
            s.write(jxes::render_tables(report, jxes::TableFormat::Csv));
        });
    if (log_level() != LogLevel::Quiet) {
        for (const jxes::CaseResult& r : report.cases) {
            std::string line = std::string(jxes::direction_name(r.def.direction)) +
                               " " + std::string(jxes::format_name(r.def.format));
            if (r.def.backend)
                line += std::string(" (") +
                        std::string(jxes::backend_name(*r.def.backend)) + ")";
            line += " " + r.def.input_path.filename().string();
            if (r.ok) {
                char buf[64];
                std::snprintf(buf, sizeof buf, ": %.2f ms", r.mean_ms);
                line += buf;
            } else {
                line += ": FAILED (" + r.error + ")";
            }
            std::fprintf(stderr, "%s\n", line.c_str());
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"JXES event-log toolkit"};
    app.require_subcommand(1);

    std::string in, out, in_format, out_format, backend, report_kind;
    bool strict = false, pretty = false, json_report = false;

    CLI::App* convert = app.add_subcommand("convert", "Convert between formats");
    convert->add_option("input", in, "Input file")->required();
    convert->add_option("output", out, "Output file")->required();
    convert->add_option("--backend", backend, "Parser/writer strategy")
        ->check(CLI::IsMember({"tree", "streaming"}));
    convert->add_option("--in-format", in_format, "Input format override");
    convert->add_option("--out-format", out_format, "Output format override");
    convert->add_flag("--strict", strict,
                      "Reject duplicate and unknown keys instead of warning");
    convert->add_flag("--pretty", pretty, "Indent JXES output");

    CLI::App* validate = app.add_subcommand("validate", "Structural validation");
    validate->add_option("input", in, "Input file")->required();
    validate->add_flag("--strict", strict, "Exit 3 when warnings are present");
    validate->add_flag("--json", json_report,
                       "Emit the diagnostics as JSON on stdout");

    CLI::App* stats = app.add_subcommand("stats", "Log shape statistics");
    stats->add_option("input", in, "Input file")->required();
    stats->add_option("--in-format", in_format, "Input format override");
    stats->add_option("--backend", backend, "Parser strategy")
        ->check(CLI::IsMember({"tree", "streaming"}));

    CLI::App* generate = app.add_subcommand("generate", "Synthesize a log");
    generate->add_option("profile", in, "Profile JSON file")->required();
    generate->add_option("output", out, "Output file")->required();
    generate->add_option("--out-format", out_format, "Output format override");

    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark suite");
    bench->add_option("suite", in, "Suite JSON file")->required();
    bench->add_option("outdir", out, "Report output directory")->required();
    bench->add_option("--report", report_kind, "Restrict report format")
        ->check(CLI::IsMember({"csv", "md"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Usage errors land on exit code 2 like any other invalid argument;
        // --help stays 0.
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (convert->parsed())
            return cmd_convert(in, out, in_format, out_format, backend, strict,
                               pretty);
        if (validate->parsed()) return cmd_validate(in, strict, json_report);
        if (stats->parsed()) return cmd_stats(in, in_format, backend);
        if (generate->parsed()) return cmd_generate(in, out, out_format);
        if (bench->parsed()) return cmd_bench(in, out, report_kind);
    } catch (const jxes::Error& e) {
        std::fprintf(stderr, "jxeskit: %s\n", e.what());
        return exit_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "jxeskit: %s\n", e.what());
        return 1;
    }
    return 0;
}
