// Release acceptance suite. Each criterion is a self-contained check that
// prints exactly one PASS/FAIL line; the binary exits nonzero if any
// selected criterion fails. Run with no arguments for all criteria, or pass
// criterion numbers (1..7) to run a subset.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "jxes/jxes.hpp"
#include "support/invalid_corpus.hpp"
#include "support/oracles.hpp"
#include "support/random_log.hpp"
#include "support/testenv.hpp"

JXES_MEMTRACE_IMPLEMENT

namespace {

using namespace jxes;

struct Check {
    bool ok = true;
    std::string detail;

    void fail(std::string why) {
        if (ok) {
            ok = false;
            detail = std::move(why);
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

Attribute attr(std::string key, AttributeValue v) {
    Attribute a;
    a.key = std::move(key);
    a.value = std::move(v);
    return a;
}

// Deterministic profile variety: sizes, value mixes, nesting and globals all
// cycle so the corpus covers every generator feature.
GenProfile varied_profile(int i) {
    static const std::array<std::array<double, 7>, 5> mixes = {{
        {1.0, 0, 0, 0, 0, 0, 0},
        {0.25, 0.25, 0.25, 0.25, 0, 0, 0},
        {0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.1},
        {0, 0, 0.5, 0.5, 0, 0, 0},
        {0.3, 0.1, 0.1, 0.1, 0.1, 0.15, 0.15},
    }};
    GenProfile p;
    p.seed = 1000 + static_cast<std::uint64_t>(i);
    p.traces = static_cast<std::uint64_t>(i % 7);
    p.max_events_per_trace = 1 + static_cast<std::uint64_t>(i % 6);
    p.mean_events_per_trace =
        1.0 + 0.4 * static_cast<double>(p.max_events_per_trace - 1);
    p.distinct_activities = 1 + static_cast<std::uint64_t>(i % 5);
    p.attr_mix = mixes[static_cast<std::size_t>(i % 5)];
    p.nesting_prob = static_cast<double>(i % 4) / 3.0;
    p.trace_globals = static_cast<std::uint64_t>(i % 3);
    p.event_globals = static_cast<std::uint64_t>((i / 3) % 3);
    return p;
}

std::string gzip(std::string_view text) {
    std::string out;
    io::StringSink sink(out);
    io::DeflateSink gz(sink);
    gz.write(text);
    gz.finish();
    return out;
}

// Criterion 1: synthetic logs cross the format boundary in both directions
// without loss.
Check criterion_1() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 200 && c.ok; ++i) {
        EventLog log = generate(varied_profile(i));
        std::string xes_doc = write_xes(log);
        std::string jxes_doc = canonicalize(log);

        XesReadResult from_xes = parse_xes(xes_doc);
        if (!logs_equivalent(log, from_xes.log)) {
            c.fail("log " + std::to_string(i) +
                   " changed across the XES round trip");
            break;
        }
        if (canonicalize(from_xes.log) != jxes_doc) {
            c.fail("log " + std::to_string(i) +
                   ": XES-derived JXES differs from direct JXES");
            break;
        }

        EventLog from_jxes = parse_jxes(jxes_doc);
        if (!logs_equivalent(log, from_jxes)) {
            c.fail("log " + std::to_string(i) +
                   " changed across the JXES round trip");
            break;
        }
        if (write_xes(from_jxes) != xes_doc) {
            c.fail("log " + std::to_string(i) +
                   ": JXES-derived XES differs from direct XES");
            break;
        }
    }
    double took = seconds_since(t0);
    if (c.ok && took >= 60.0)
        c.fail(fmt("round trips finished but took %.1fs (budget 60s)", took));
    if (c.ok)
        c.detail = fmt("200 logs converted XES->JXES->XES and "
                       "JXES->XES->JXES losslessly in %.1fs",
                       took);
    return c;
}

// Criterion 2: the two parser backends agree, model and bytes.
Check criterion_2() {
    Check c;
    for (int i = 0; i < 200 && c.ok; ++i) {
        EventLog log = generate(varied_profile(i));
        std::string doc = canonicalize(log);
        EventLog tree = parse_jxes(doc, ParseOptions{Backend::Tree, false, 512});
        EventLog stream =
            parse_jxes(doc, ParseOptions{Backend::Streaming, false, 512});
        if (!logs_equivalent(tree, stream)) {
            c.fail("document " + std::to_string(i) +
                   ": backends produced different models");
            break;
        }
        if (canonicalize(tree) != canonicalize(stream)) {
            c.fail("document " + std::to_string(i) +
                   ": canonical output differs by backend");
            break;
        }
        if (canonicalize(tree) != doc) {
            c.fail("document " + std::to_string(i) +
                   ": canonical form is not a fixed point");
            break;
        }
    }
    if (c.ok)
        c.detail = "200 documents: tree and streaming parses are equivalent "
                   "and serialize to identical bytes";
    return c;
}

// Criterion 3: JXES is materially smaller than XES on realistic log shapes,
// and compression shrinks both.
Check criterion_3() {
    Check c;
    struct Shape {
        const char* name;
        GenProfile profile;
    };
    GenProfile d2;
    d2.seed = 101;
    d2.traces = 1104;
    d2.mean_events_per_trace = 11855.0 / 1104.0;
    d2.max_events_per_trace = 24;
    d2.distinct_activities = 8;
    d2.attr_mix = {0.4, 0.2, 0.2, 0.1, 0.1, 0, 0};
    d2.trace_globals = 1;
    d2.event_globals = 2;
    GenProfile b5;
    b5.seed = 202;
    b5.traces = 1156;
    b5.mean_events_per_trace = 59083.0 / 1156.0;
    b5.max_events_per_trace = 154;
    b5.distinct_activities = 389;
    b5.attr_mix = {0.4, 0.2, 0.2, 0.1, 0.1, 0, 0};
    b5.trace_globals = 1;
    b5.event_globals = 2;
    const Shape shapes[] = {{"D2", d2}, {"BPIC15-scale", b5}};

    std::string ratios;
    for (const Shape& s : shapes) {
        EventLog log = generate(s.profile);
        std::string jxes_doc = canonicalize(log);
        std::string xes_doc = write_xes(log);
        double ratio = static_cast<double>(jxes_doc.size()) /
                       static_cast<double>(xes_doc.size());
        if (ratio > 0.8) {
            c.fail(std::string(s.name) +
                   fmt(": JXES is only %.1f%% smaller than XES (need >= 20%%)",
                       (1.0 - ratio) * 100.0));
            return c;
        }
        if (gzip(jxes_doc).size() >= jxes_doc.size()) {
            c.fail(std::string(s.name) + ": gzip did not shrink the JXES form");
            return c;
        }
        if (gzip(xes_doc).size() >= xes_doc.size()) {
            c.fail(std::string(s.name) + ": gzip did not shrink the XES form");
            return c;
        }
        if (!ratios.empty()) ratios += ", ";
        ratios += std::string(s.name) +
                  fmt(" %.1f%% smaller", (1.0 - ratio) * 100.0);
    }
    c.detail = "canonical JXES vs XES: " + ratios +
               "; gzip shrinks every form";
    return c;
}

EventLog expected_basic_structure() {
    EventLog log;
    Trace t;
    t.attributes.insert(attr("name", std::string("Mohamed")));
    t.attributes.insert(attr("age", std::string("19")));
    Event e1;
    e1.attributes.insert(attr("concept:name", std::string("Activity 1")));
    e1.attributes.insert(attr("date", DateValue{1382362086419, 0}));
    e1.attributes.insert(attr("org:resource", std::string("Bob")));
    Event e2;
    e2.attributes.insert(attr("concept:name", std::string("Activity 2")));
    e2.attributes.insert(attr("date", DateValue{1382362086419, 0}));
    e2.attributes.insert(attr("org:resource", std::string("Alice")));
    t.events.push_back(std::move(e1));
    t.events.push_back(std::move(e2));
    log.traces.push_back(std::move(t));
    return log;
}

Attribute expected_attribute_types() {
    ContainerValue cv;
    cv.entries.insert(attr("string", std::string("hi")));
    cv.entries.insert(attr("date", DateValue{1382362086419, 0}));
    cv.entries.insert(attr("int", std::int64_t{1}));
    cv.entries.insert(attr("float", 1.0));
    cv.entries.insert(attr("boolean", true));
    ListValue lv;
    lv.items.push_back(attr("key", std::int64_t{1}));
    lv.items.push_back(attr("key", std::int64_t{2}));
    lv.items.push_back(attr("new key", std::string("new value")));
    cv.entries.insert(attr("list", std::move(lv)));
    ContainerValue inner;
    inner.entries.insert(attr("key", std::int64_t{1}));
    inner.entries.insert(attr("key-2", std::string("value 2")));
    cv.entries.insert(attr("container", std::move(inner)));
    Attribute root;
    root.value = std::move(cv);
    return root;
}

Attribute expected_nested_attribute() {
    Attribute person;
    person.key = "Person";
    person.value = std::int64_t{1};
    person.children.insert(attr("name", std::string("Mohamed")));
    person.children.insert(attr("age", std::int64_t{19}));
    person.children.insert(attr("married", false));
    ContainerValue cv;
    cv.entries.insert(std::move(person));
    Attribute root;
    root.value = std::move(cv);
    return root;
}

// Criterion 4: the documented introductory listings parse to exactly the
// models they describe, and the writer reproduces their canonical forms.
Check criterion_4() {
    Check c;

    struct DocCase {
        const char* file;
        EventLog expected;
    };
    std::vector<DocCase> docs;
    docs.push_back({"basic_structure.json", expected_basic_structure()});
    {
        EventLog g;
        g.globals.trace_level.insert(attr("Key 1", std::int64_t{1}));
        g.globals.event_level.insert(attr("Key 2", std::int64_t{2}));
        docs.push_back({"global_attrs.json", std::move(g)});
    }
    {
        EventLog g;
        g.classifiers.push_back(
            {"Activity classifier", {"concept:name", "lifecycle:transition"}});
        docs.push_back({"classifiers.json", std::move(g)});
    }
    {
        EventLog g;
        g.extensions.push_back(
            {"Test", "concept", "http://www.test.org/test.xes"});
        docs.push_back({"extensions.json", std::move(g)});
    }

    for (const DocCase& d : docs) {
        for (Backend b : {Backend::Tree, Backend::Streaming}) {
            EventLog got = parse_jxes_file(testenv::file(d.file),
                                           ParseOptions{b, false, 512});
            if (!logs_equivalent(got, d.expected)) {
                c.fail(std::string(d.file) + ": parsed model is wrong");
                return c;
            }
            if (canonicalize(got) != canonicalize(d.expected)) {
                c.fail(std::string(d.file) + ": canonical rendering is wrong");
                return c;
            }
            EventLog again = parse_jxes(canonicalize(got),
                                        ParseOptions{b, false, 512});
            if (!logs_equivalent(again, d.expected)) {
                c.fail(std::string(d.file) +
                       ": canonical form does not reparse to the same model");
                return c;
            }
        }
    }

    struct AttrCase {
        const char* file;
        Attribute expected;
    };
    const AttrCase attr_cases[] = {
        {"attribute_types.json", expected_attribute_types()},
        {"nested_attribute.json", expected_nested_attribute()},
    };
    for (const AttrCase& a : attr_cases) {
        std::string text = testenv::slurp(testenv::file(a.file));
        Attribute got = interpret_container(json::parse_tree(text));
        if (!attribute_equal(got, a.expected)) {
            c.fail(std::string(a.file) + ": interpreted attributes are wrong");
            return c;
        }
    }

    c.detail = "all six introductory listings parse to their exact models "
               "and re-serialize canonically";
    return c;
}

// Criterion 5: the benchmark harness covers every format column, reports a
// failing case without dying, and the streaming backend stays well under the
// tree backend's parse memory.
Check criterion_5() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    testenv::TempDir tmp;

    GenProfile d2;
    d2.seed = 303;
    d2.traces = 1104;
    d2.mean_events_per_trace = 11855.0 / 1104.0;
    d2.max_events_per_trace = 24;
    d2.distinct_activities = 8;
    d2.attr_mix = {0.5, 0.2, 0.2, 0.1, 0, 0, 0};
    d2.event_globals = 1;
    EventLog log = generate(d2);
    auto json_path = tmp / "d2.json";
    auto xes_path = tmp / "d2.xes";
    auto xesgz_path = tmp / "d2.xes.gz";
    write_jxes_file(json_path, log);
    write_xes_file(xes_path, log);
    write_xes_file(xesgz_path, log);

    std::vector<BenchCase> cases;
    BenchCase base;
    base.runs = 2;
    base.input_path = json_path;
    base.format = FileFormat::Jxes;
    base.backend = Backend::Tree;
    cases.push_back(base);
    base.backend = Backend::Streaming;
    cases.push_back(base);
    base.backend.reset();
    base.input_path = xes_path;
    base.format = FileFormat::Xes;
    cases.push_back(base);
    base.input_path = xesgz_path;
    base.format = FileFormat::XesGz;
    cases.push_back(base);
    BenchCase exp;
    exp.runs = 1;
    exp.input_path = json_path;
    exp.format = FileFormat::Xes;
    exp.direction = Direction::Export;
    cases.push_back(exp);
    BenchCase missing;
    missing.input_path = tmp / "no-such-input.json";
    missing.runs = 1;
    cases.push_back(missing);

    BenchReport report = run_bench(cases);
    for (std::size_t i = 0; i + 1 < report.cases.size(); ++i)
        if (!report.cases[i].ok)
            c.fail("bench case " + std::to_string(i) +
                   " failed: " + report.cases[i].error);
    if (report.cases.back().ok)
        c.fail("the intentionally missing input was not recorded as a failure");
    if (!c.ok) return c;

    std::string md = render_tables(report, TableFormat::Markdown);
    std::string csv = render_tables(report, TableFormat::Csv);
    if (md.find("### Import time (ms)") == std::string::npos ||
        md.find("### Export size (bytes)") == std::string::npos)
        c.fail("markdown report is missing a table");
    if (md.find("**") == std::string::npos)
        c.fail("markdown report flags no best cell");
    if (md.find("ERROR") == std::string::npos)
        c.fail("markdown report hides the failing case");
    if (csv.find("# Import time (ms)") == std::string::npos ||
        csv.find("*") == std::string::npos ||
        csv.find("ERROR") == std::string::npos)
        c.fail("csv report is malformed");
    if (!c.ok) return c;

    // Peak parse memory, streaming vs tree, on a log an order of magnitude
    // larger than the bench input.
    GenProfile big = d2;
    big.seed = 404;
    big.traces = 8000;
    big.mean_events_per_trace = 12.5;
    EventLog big_log = generate(big);
    std::string big_doc = canonicalize(big_log);
    std::uint64_t events = log_statistics(big_log).event_count;
    big_log = EventLog{};

    std::size_t tree_peak = 0, stream_peak = 0;
    {
        memtrace::PeakProbe probe;
        EventLog parsed =
            parse_jxes(big_doc, ParseOptions{Backend::Tree, false, 512});
        tree_peak = probe.peak_delta();
        (void)parsed;
    }
    {
        memtrace::PeakProbe probe;
        EventLog parsed =
            parse_jxes(big_doc, ParseOptions{Backend::Streaming, false, 512});
        stream_peak = probe.peak_delta();
        (void)parsed;
    }
    if (tree_peak == 0) {
        c.fail("allocation tracking recorded no tree-parse peak");
        return c;
    }
    double rel = static_cast<double>(stream_peak) /
                 static_cast<double>(tree_peak);
    if (rel > 0.7) {
        c.fail(fmt("streaming parse peak is %.2fx the tree peak on a "
                   "%.0f-event log (need <= 0.7x)",
                   rel, static_cast<double>(events)));
        return c;
    }
    double took = seconds_since(t0);
    if (took >= 300.0) {
        c.fail(fmt("benchmark checks took %.1fs (budget 300s)", took));
        return c;
    }
    c.detail = fmt("all format columns benchmarked, failure recorded; "
                   "streaming parse peak is %.2fx tree's", rel) +
               fmt(" on a %.0f-event log, %.1fs total",
                   static_cast<double>(events), took);
    return c;
}

// Criterion 6: the validator and both parsers agree on acceptance for every
// document, curated or fuzzed.
Check criterion_6() {
    Check c;

    auto accepts = [](const std::string& doc, Backend b) {
        try {
            parse_jxes(doc, ParseOptions{b, false, 512});
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    int checked = 0;
    auto agree = [&](const std::string& doc, const char* label) {
        bool v = count_errors(validate_document(doc)) == 0;
        bool t = accepts(doc, Backend::Tree);
        bool s = accepts(doc, Backend::Streaming);
        ++checked;
        if (v != t || t != s)
            c.fail(std::string(label) +
                   ": validator/tree/streaming verdicts differ (" +
                   (v ? "clean" : "errors") + "/" + (t ? "ok" : "throw") + "/" +
                   (s ? "ok" : "throw") + ")");
        return v;
    };

    const char* valid_files[] = {
        "basic_structure.json", "global_attrs.json", "classifiers.json",
        "extensions.json",      "full.json",
    };
    for (const char* f : valid_files) {
        if (!c.ok) return c;
        if (!agree(testenv::slurp(testenv::file(f)), f))
            c.fail(std::string(f) + ": expected a clean verdict");
    }

    for (const auto& entry : invalid_corpus::kEntries) {
        if (!c.ok) return c;
        std::string doc =
            testenv::slurp(testenv::file(std::string("invalid/") + entry.file));
        if (agree(doc, entry.file)) {
            c.fail(std::string(entry.file) + ": expected rejection");
            return c;
        }
        auto ds = validate_document(doc);
        bool code_found = false;
        for (const auto& d : ds)
            if (d.severity == Severity::Error &&
                d.code == errc_name(entry.code))
                code_found = true;
        if (!code_found) {
            c.fail(std::string(entry.file) + ": validator lacks code " +
                   std::string(errc_name(entry.code)));
            return c;
        }
        for (Backend b : {Backend::Tree, Backend::Streaming}) {
            try {
                parse_jxes(doc, ParseOptions{b, false, 512});
            } catch (const Error& e) {
                if (e.code() != entry.code)
                    c.fail(std::string(entry.file) + ": parser threw " +
                           std::string(errc_name(e.code())) + ", validator " +
                           std::string(errc_name(entry.code)));
            }
        }
    }
    if (!c.ok) return c;

    std::mt19937_64 rng(20260818);
    for (int i = 0; i < 60 && c.ok; ++i) {
        std::string doc = canonicalize(randomlog::random_log(rng));
        if (!agree(doc, "random log")) {
            c.fail("random log " + std::to_string(i) +
                   ": expected a clean verdict");
            break;
        }
        std::vector<std::string> mutants;
        mutants.push_back(doc.substr(0, doc.size() / 2));
        mutants.push_back(doc + "trailing");
        mutants.push_back("[" + doc + "]");
        std::string broken_quote = doc;
        if (auto pos = broken_quote.find('"'); pos != std::string::npos)
            broken_quote[pos] = 'x';
        mutants.push_back(std::move(broken_quote));
        std::string extra_member = doc;
        if (auto pos = extra_member.find('{'); pos != std::string::npos)
            extra_member.insert(pos + 1, "\"__mut\":null,");
        mutants.push_back(std::move(extra_member));
        for (const std::string& m : mutants) {
            agree(m, "mutated document");
            if (!c.ok) break;
        }
    }
    if (c.ok)
        c.detail = fmt("%.0f documents (curated, generated and mutated): "
                       "validator and both parsers agree on every verdict",
                       static_cast<double>(checked));
    return c;
}

// Criterion 7: statistics match a brute-force reference on curated and
// random logs.
Check criterion_7() {
    Check c;
    EventLog basic = parse_jxes_file(testenv::file("basic_structure.json"));
    LogStats s = log_statistics(basic);
    if (s != LogStats{1, 2, 1, 2, 2}) {
        c.fail(fmt("introductory log stats are {%.0f traces, %.0f events, ...}",
                   static_cast<double>(s.trace_count),
                   static_cast<double>(s.event_count)));
        return c;
    }

    for (int i = 0; i < 50 && c.ok; ++i) {
        EventLog log = generate(varied_profile(700 + i));
        if (log_statistics(log) != oracles::stats_oracle(log))
            c.fail("generated log " + std::to_string(i) +
                   ": statistics disagree with the brute-force oracle");
    }
    std::mt19937_64 rng(99);
    for (int i = 0; i < 25 && c.ok; ++i) {
        EventLog log = randomlog::random_log(rng);
        if (log_statistics(log) != oracles::stats_oracle(log))
            c.fail("random log " + std::to_string(i) +
                   ": statistics disagree with the brute-force oracle");
    }
    if (c.ok)
        c.detail = "introductory log yields {1,2,1,2,2}; 75 generated and "
                   "random logs match the brute-force oracle";
    return c;
}

Check run_criterion(int n) {
    try {
        switch (n) {
            case 1: return criterion_1();
            case 2: return criterion_2();
            case 3: return criterion_3();
            case 4: return criterion_4();
            case 5: return criterion_5();
            case 6: return criterion_6();
            case 7: return criterion_7();
        }
    } catch (const std::exception& e) {
        Check c;
        c.fail(std::string("unexpected exception: ") + e.what());
        return c;
    }
    Check c;
    c.fail("no such criterion");
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        int n = std::atoi(argv[i]);
        if (n < 1 || n > 7) {
            std::fprintf(stderr, "usage: %s [criterion 1..7]...\n", argv[0]);
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7};

    bool all_ok = true;
    for (int n : selected) {
        Check c = run_criterion(n);
        std::printf("%s criterion %d: %s\n", c.ok ? "PASS" : "FAIL", n,
                    c.detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && c.ok;
    }
    return all_ok ? 0 : 1;
}
