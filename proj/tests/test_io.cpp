#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "jxes/io.hpp"
#include "support/testenv.hpp"

using namespace jxes;

namespace {

std::string drain(io::ByteSource& src) {
    std::string out;
    char buf[4096];
    while (std::size_t got = src.read(buf, sizeof buf)) out.append(buf, got);
    return out;
}

std::string gzip_bytes(std::string_view plain) {
    std::string out;
    io::StringSink sink(out);
    io::DeflateSink gz(sink);
    gz.write(plain.data(), plain.size());
    gz.finish();
    return out;
}

std::string noisy_payload(std::size_t n) {
    std::mt19937_64 rng(42);
    std::string s;
    s.reserve(n);
    while (s.size() < n) {
        s += "trace ";
        s += std::to_string(rng() % 100000);
        s += char('a' + rng() % 26);
    }
    s.resize(n);
    return s;
}

}  // namespace

TEST_CASE("memory source reads in chunks") {
    io::MemorySource src("hello world");
    char buf[4];
    CHECK(src.read(buf, 4) == 4);
    CHECK(std::string(buf, 4) == "hell");
    CHECK(drain(src) == "o world");
    CHECK(src.read(buf, 4) == 0);
}

TEST_CASE("file source fails loudly on a missing path") {
    try {
        io::FileSource src("/nonexistent/dir/nope.json");
        FAIL("expected IoFailure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::IoFailure);
    }
}

TEST_CASE("gzip round trip") {
    std::string plain = noisy_payload(5 << 20);
    std::string packed = gzip_bytes(plain);
    REQUIRE(packed.size() >= 2);
    CHECK(io::is_gzip_magic(static_cast<unsigned char>(packed[0]),
                            static_cast<unsigned char>(packed[1])));
    CHECK(packed.size() < plain.size());

    io::MemorySource src(packed);
    io::InflateSource unz(src);
    CHECK(drain(unz) == plain);
}

TEST_CASE("multi-member gzip streams concatenate") {
    std::string packed = gzip_bytes("first|") + gzip_bytes("second");
    io::MemorySource src(packed);
    io::InflateSource unz(src);
    CHECK(drain(unz) == "first|second");
}

TEST_CASE("truncated gzip input is an error") {
    std::string packed = gzip_bytes(noisy_payload(1 << 16));
    std::string cut = packed.substr(0, packed.size() / 2);
    io::MemorySource src(cut);
    io::InflateSource unz(src);
    try {
        drain(unz);
        FAIL("expected IoFailure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::IoFailure);
    }
}

TEST_CASE("auto-inflate sniffs the magic") {
    std::string plain = "{\"traces\": []}";

    io::MemorySource p(plain);
    io::AutoInflateSource ap(p);
    CHECK(drain(ap) == plain);

    std::string packed = gzip_bytes(plain);
    io::MemorySource g(packed);
    io::AutoInflateSource ag(g);
    CHECK(drain(ag) == plain);

    // Short and pathological inputs pass through untouched.
    std::string one(1, '\x1f');
    io::MemorySource s1(one);
    io::AutoInflateSource a1(s1);
    CHECK(drain(a1) == one);

    io::MemorySource s0(std::string_view{});
    io::AutoInflateSource a0(s0);
    CHECK(drain(a0).empty());
}

TEST_CASE("counting sink forwards and counts") {
    std::string out;
    io::StringSink inner(out);
    io::CountingSink counter(inner);
    counter.write("abcd");
    counter.write("ef");
    CHECK(out == "abcdef");
    CHECK(counter.count() == 6);
}

TEST_CASE("atomic file write") {
    testenv::TempDir dir;
    auto target = dir / "out.txt";

    io::atomic_write_file(target, [](io::ByteSink& s) { s.write("payload"); });
    CHECK(testenv::slurp(target) == "payload");

    SECTION("gzip flag compresses") {
        auto gz = dir / "out.gz";
        io::atomic_write_file(gz, [](io::ByteSink& s) { s.write("payload"); },
                              true);
        std::string raw = testenv::slurp(gz);
        REQUIRE(raw.size() >= 2);
        CHECK(io::is_gzip_magic(static_cast<unsigned char>(raw[0]),
                                static_cast<unsigned char>(raw[1])));
        io::FileSource src(gz);
        io::AutoInflateSource unz(src);
        CHECK(drain(unz) == "payload");
    }

    SECTION("failing producer leaves the old file intact") {
        try {
            io::atomic_write_file(target, [](io::ByteSink& s) {
                s.write("partial");
                throw Error(Errc::IoFailure, "simulated failure");
            });
            FAIL("expected the producer error to propagate");
        } catch (const Error&) {
        }
        CHECK(testenv::slurp(target) == "payload");
        // No temp leftovers.
        std::size_t entries = 0;
        for (auto& e : std::filesystem::directory_iterator(dir.path())) {
            (void)e;
            ++entries;
        }
        CHECK(entries == 1);
    }
}

TEST_CASE("read_file and gz suffix helper") {
    testenv::TempDir dir;
    auto p = dir / "x.bin";
    io::atomic_write_file(p, [](io::ByteSink& s) { s.write("12345"); });
    CHECK(io::read_file(p) == "12345");
    CHECK_THROWS_AS(io::read_file(dir / "missing"), Error);

    CHECK(io::path_ends_with_gz("a/b/c.json.gz"));
    CHECK_FALSE(io::path_ends_with_gz("a/b/c.json"));
    CHECK_FALSE(io::path_ends_with_gz(".gz"));
}
