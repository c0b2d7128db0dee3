#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <zlib.h>

#include "jxes/error.hpp"

namespace jxes::io {

class ByteSource {
public:
    virtual ~ByteSource() = default;
    // Returns bytes read; 0 means end of stream.
    virtual std::size_t read(char* buf, std::size_t n) = 0;
};

class MemorySource final : public ByteSource {
public:
    explicit MemorySource(std::string_view data) : data_(data) {}

    std::size_t read(char* buf, std::size_t n) override {
        std::size_t avail = data_.size() - pos_;
        std::size_t take = n < avail ? n : avail;
        std::memcpy(buf, data_.data() + pos_, take);
        pos_ += take;
        return take;
    }

private:
    std::string_view data_;
    std::size_t pos_ = 0;
};

class FileSource final : public ByteSource {
public:
    explicit FileSource(const std::filesystem::path& path)
        : file_(std::fopen(path.c_str(), "rb")), path_(path.string()) {
        if (!file_)
            throw Error(Errc::IoFailure, "cannot open '" + path_ + "' for reading");
    }
    ~FileSource() override {
        if (file_) std::fclose(file_);
    }
    FileSource(const FileSource&) = delete;
    FileSource& operator=(const FileSource&) = delete;

    std::size_t read(char* buf, std::size_t n) override {
        std::size_t got = std::fread(buf, 1, n, file_);
        if (got < n && std::ferror(file_))
            throw Error(Errc::IoFailure, "read error on '" + path_ + "'");
        return got;
    }

private:
    std::FILE* file_;
    std::string path_;
};

inline bool is_gzip_magic(unsigned char a, unsigned char b) {
    return a == 0x1f && b == 0x8b;
}

// Decompresses a gzip (or zlib) stream pulled from an inner source.
// Concatenated gzip members are handled like a single stream.
class InflateSource final : public ByteSource {
public:
    explicit InflateSource(ByteSource& inner) : inner_(inner) {
        std::memset(&strm_, 0, sizeof strm_);
        if (inflateInit2(&strm_, 15 + 32) != Z_OK)
            throw Error(Errc::IoFailure, "inflateInit failed");
    }
    ~InflateSource() override { inflateEnd(&strm_); }
    InflateSource(const InflateSource&) = delete;
    InflateSource& operator=(const InflateSource&) = delete;

    std::size_t read(char* buf, std::size_t n) override {
        if (n == 0 || done_) return 0;
        strm_.next_out = reinterpret_cast<Bytef*>(buf);
        strm_.avail_out = static_cast<uInt>(n);
        while (strm_.avail_out > 0) {
            if (strm_.avail_in == 0 && !inner_eof_) {
                std::size_t got = inner_.read(inbuf_, sizeof inbuf_);
                strm_.next_in = reinterpret_cast<Bytef*>(inbuf_);
                strm_.avail_in = static_cast<uInt>(got);
                if (got == 0) inner_eof_ = true;
            }
            // EOF on a member boundary is a clean end; EOF inside a member
            // surfaces as Z_BUF_ERROR below.
            if (at_boundary_ && strm_.avail_in == 0 && inner_eof_) {
                done_ = true;
                break;
            }
            if (strm_.avail_in > 0) at_boundary_ = false;
            int rc = inflate(&strm_, Z_NO_FLUSH);
            if (rc == Z_STREAM_END) {
                if (strm_.avail_in == 0 && inner_eof_) {
                    done_ = true;
                    break;
                }
                if (inflateReset(&strm_) != Z_OK)
                    throw Error(Errc::IoFailure, "gzip member reset failed");
                at_boundary_ = true;
                continue;
            }
            if (rc == Z_BUF_ERROR && inner_eof_)
                throw Error(Errc::IoFailure, "truncated gzip stream");
            if (rc != Z_OK)
                throw Error(Errc::IoFailure,
                            std::string("corrupt gzip stream: ") +
                                (strm_.msg ? strm_.msg : zError(rc)));
        }
        return n - strm_.avail_out;
    }

private:
    ByteSource& inner_;
    z_stream strm_{};
    char inbuf_[1 << 14] = {};
    bool inner_eof_ = false;
    bool done_ = false;
    bool at_boundary_ = true;
};

// Sniffs the first two bytes and transparently inflates gzip input.
class AutoInflateSource final : public ByteSource {
public:
    explicit AutoInflateSource(ByteSource& inner) : inner_(inner) {
        head_len_ = inner_.read(head_, 2);
        if (head_len_ == 2 &&
            is_gzip_magic(static_cast<unsigned char>(head_[0]),
                          static_cast<unsigned char>(head_[1]))) {
            chained_ = std::make_unique<Chain>(head_, head_len_, inner_);
            inflate_ = std::make_unique<InflateSource>(*chained_);
        }
    }

    bool compressed() const noexcept { return inflate_ != nullptr; }

    std::size_t read(char* buf, std::size_t n) override {
        if (inflate_) return inflate_->read(buf, n);
        std::size_t off = 0;
        while (head_pos_ < head_len_ && off < n) buf[off++] = head_[head_pos_++];
        if (off == n) return off;
        return off + inner_.read(buf + off, n - off);
    }

private:
    class Chain final : public ByteSource {
    public:
        Chain(const char* head, std::size_t len, ByteSource& rest)
            : rest_(rest), len_(len) {
            std::memcpy(head_, head, len);
        }
        std::size_t read(char* buf, std::size_t n) override {
            std::size_t off = 0;
            while (pos_ < len_ && off < n) buf[off++] = head_[pos_++];
            if (off == n) return off;
            return off + rest_.read(buf + off, n - off);
        }

    private:
        ByteSource& rest_;
        char head_[2] = {};
        std::size_t len_ = 0;
        std::size_t pos_ = 0;
    };

    ByteSource& inner_;
    char head_[2] = {};
    std::size_t head_len_ = 0;
    std::size_t head_pos_ = 0;
    std::unique_ptr<Chain> chained_;
    std::unique_ptr<InflateSource> inflate_;
};

class ByteSink {
public:
    virtual ~ByteSink() = default;
    virtual void write(const char* data, std::size_t n) = 0;
    void write(std::string_view s) { write(s.data(), s.size()); }
    // Flushes and finalizes the stream; must be called exactly once before
    // destruction for compressed sinks.
    virtual void finish() {}
};

class StringSink final : public ByteSink {
public:
    explicit StringSink(std::string& out) : out_(out) {}
    using ByteSink::write;
    void write(const char* data, std::size_t n) override { out_.append(data, n); }

private:
    std::string& out_;
};

class FileSink final : public ByteSink {
public:
    explicit FileSink(const std::filesystem::path& path)
        : file_(std::fopen(path.c_str(), "wb")), path_(path.string()) {
        if (!file_)
            throw Error(Errc::IoFailure, "cannot open '" + path_ + "' for writing");
    }
    ~FileSink() override {
        if (file_) std::fclose(file_);
    }
    FileSink(const FileSink&) = delete;
    FileSink& operator=(const FileSink&) = delete;

    using ByteSink::write;
    void write(const char* data, std::size_t n) override {
        if (std::fwrite(data, 1, n, file_) != n)
            throw Error(Errc::IoFailure, "write error on '" + path_ + "'");
    }

    void finish() override {
        if (std::fflush(file_) != 0)
            throw Error(Errc::IoFailure, "flush error on '" + path_ + "'");
    }

private:
    std::FILE* file_;
    std::string path_;
};

class CountingSink final : public ByteSink {
public:
    explicit CountingSink(ByteSink& inner) : inner_(inner) {}
    using ByteSink::write;
    void write(const char* data, std::size_t n) override {
        inner_.write(data, n);
        count_ += n;
    }
    void finish() override { inner_.finish(); }
    std::uint64_t count() const noexcept { return count_; }

private:
    ByteSink& inner_;
    std::uint64_t count_ = 0;
};

class DeflateSink final : public ByteSink {
public:
    explicit DeflateSink(ByteSink& inner) : inner_(inner) {
        std::memset(&strm_, 0, sizeof strm_);
        if (deflateInit2(&strm_, Z_DEFAULT_COMPRESSION, Z_DEFLATED, 15 + 16, 8,
                         Z_DEFAULT_STRATEGY) != Z_OK)
            throw Error(Errc::IoFailure, "deflateInit failed");
    }
    ~DeflateSink() override { deflateEnd(&strm_); }
    DeflateSink(const DeflateSink&) = delete;
    DeflateSink& operator=(const DeflateSink&) = delete;

    using ByteSink::write;
    void write(const char* data, std::size_t n) override {
        strm_.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data));
        strm_.avail_in = static_cast<uInt>(n);
        pump(Z_NO_FLUSH);
    }

    void finish() override {
        if (finished_) return;
        strm_.next_in = nullptr;
        strm_.avail_in = 0;
        pump(Z_FINISH);
        finished_ = true;
        inner_.finish();
    }

private:
    void pump(int flush) {
        for (;;) {
            strm_.next_out = reinterpret_cast<Bytef*>(outbuf_);
            strm_.avail_out = sizeof outbuf_;
            int rc = deflate(&strm_, flush);
            if (rc == Z_STREAM_ERROR)
                throw Error(Errc::IoFailure, "deflate stream error");
            std::size_t produced = sizeof outbuf_ - strm_.avail_out;
            if (produced) inner_.write(outbuf_, produced);
            if (flush == Z_FINISH) {
                if (rc == Z_STREAM_END) break;
            } else if (strm_.avail_in == 0) {
                break;
            }
        }
    }

    ByteSink& inner_;
    z_stream strm_{};
    char outbuf_[1 << 14] = {};
    bool finished_ = false;
};

inline std::string read_file(const std::filesystem::path& path) {
    FileSource src(path);
    std::string out;
    char buf[1 << 15];
    for (;;) {
        std::size_t got = src.read(buf, sizeof buf);
        if (got == 0) break;
        out.append(buf, got);
    }
    return out;
}

// Writes through a temp file in the target directory and renames on success,
// so a failed producer never leaves a partial file behind.
inline void atomic_write_file(const std::filesystem::path& path,
                              const std::function<void(ByteSink&)>& producer,
                              bool gzip = false) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (dir.empty()) dir = ".";
    std::random_device rd;
    fs::path tmp =
        dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
    try {
        {
            FileSink file(tmp);
            if (gzip) {
                DeflateSink gz(file);
                producer(gz);
                gz.finish();
            } else {
                producer(file);
                file.finish();
            }
        }
        fs::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

inline bool path_ends_with_gz(const std::filesystem::path& path) {
    std::string s = path.filename().string();
    return s.size() > 3 && s.compare(s.size() - 3, 3, ".gz") == 0;
}

}  // namespace jxes::io
