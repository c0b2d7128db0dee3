#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <new>

// Heap high-water tracking via global operator new/delete replacement.
// A binary opts in by expanding JXES_MEMTRACE_IMPLEMENT in exactly one
// translation unit; the counters here are no-ops otherwise.

namespace jxes::memtrace {

inline constinit std::atomic<std::size_t> g_current{0};
inline constinit std::atomic<std::size_t> g_peak{0};
inline constinit std::atomic<bool> g_installed{false};

inline bool instrumented() noexcept {
    return g_installed.load(std::memory_order_relaxed);
}

inline std::size_t current_bytes() noexcept {
    return g_current.load(std::memory_order_relaxed);
}

inline std::size_t peak_bytes() noexcept {
    return g_peak.load(std::memory_order_relaxed);
}

inline void note_alloc(std::size_t n) noexcept {
    std::size_t cur = g_current.fetch_add(n, std::memory_order_relaxed) + n;
    std::size_t peak = g_peak.load(std::memory_order_relaxed);
    while (cur > peak &&
           !g_peak.compare_exchange_weak(peak, cur, std::memory_order_relaxed)) {
    }
}

inline void note_free(std::size_t n) noexcept {
    g_current.fetch_sub(n, std::memory_order_relaxed);
}

namespace detail {

struct Header {
    std::size_t size;
    std::size_t pad;
};

inline void* alloc(std::size_t n, std::size_t align) noexcept {
    if (align < alignof(std::max_align_t)) align = alignof(std::max_align_t);
    std::size_t pad = (sizeof(Header) + align - 1) / align * align;
    void* raw = nullptr;
    if (align == alignof(std::max_align_t)) {
        raw = std::malloc(pad + n);
    } else if (posix_memalign(&raw, align, pad + n) != 0) {
        raw = nullptr;
    }
    if (!raw) return nullptr;
    char* p = static_cast<char*>(raw) + pad;
    Header* h = reinterpret_cast<Header*>(p) - 1;
    h->size = n;
    h->pad = pad;
    note_alloc(n);
    return p;
}

inline void free(void* p) noexcept {
    if (!p) return;
    Header* h = static_cast<Header*>(p) - 1;
    note_free(h->size);
    std::free(static_cast<char*>(p) - h->pad);
}

struct Installer {
    Installer() noexcept { g_installed.store(true, std::memory_order_relaxed); }
};

}  // namespace detail

// Resets the global peak to the current footprint and measures the growth
// until stop(). Probes must run sequentially; overlapping probes would
// clobber each other's baseline.
class PeakProbe {
public:
    PeakProbe() { reset(); }

    void reset() noexcept {
        base_ = g_current.load(std::memory_order_relaxed);
        g_peak.store(base_, std::memory_order_relaxed);
    }

    std::size_t peak_delta() const noexcept {
        std::size_t peak = g_peak.load(std::memory_order_relaxed);
        return peak > base_ ? peak - base_ : 0;
    }

private:
    std::size_t base_ = 0;
};

}  // namespace jxes::memtrace

#define JXES_MEMTRACE_IMPLEMENT                                                   \
    namespace jxes::memtrace::detail {                                            \
    static Installer g_memtrace_installer;                                        \
    }                                                                             \
    void* operator new(std::size_t n) {                                           \
        if (void* p = jxes::memtrace::detail::alloc(n, 0)) return p;              \
        throw std::bad_alloc();                                                   \
    }                                                                             \
    void* operator new[](std::size_t n) {                                         \
        if (void* p = jxes::memtrace::detail::alloc(n, 0)) return p;              \
        throw std::bad_alloc();                                                   \
    }                                                                             \
    void* operator new(std::size_t n, std::align_val_t a) {                       \
        if (void* p =                                                             \
                jxes::memtrace::detail::alloc(n, static_cast<std::size_t>(a)))    \
            return p;                                                             \
        throw std::bad_alloc();                                                   \
    }                                                                             \
    void* operator new[](std::size_t n, std::align_val_t a) {                     \
        if (void* p =                                                             \
                jxes::memtrace::detail::alloc(n, static_cast<std::size_t>(a)))    \
            return p;                                                             \
        throw std::bad_alloc();                                                   \
    }                                                                             \
    void* operator new(std::size_t n, const std::nothrow_t&) noexcept {           \
        return jxes::memtrace::detail::alloc(n, 0);                               \
    }                                                                             \
    void* operator new[](std::size_t n, const std::nothrow_t&) noexcept {         \
        return jxes::memtrace::detail::alloc(n, 0);                               \
    }                                                                             \
    void operator delete(void* p) noexcept { jxes::memtrace::detail::free(p); }   \
    void operator delete[](void* p) noexcept { jxes::memtrace::detail::free(p); } \
    void operator delete(void* p, std::size_t) noexcept {                         \
        jxes::memtrace::detail::free(p);                                          \
    }                                                                             \
    void operator delete[](void* p, std::size_t) noexcept {                       \
        jxes::memtrace::detail::free(p);                                          \
    }                                                                             \
    void operator delete(void* p, std::align_val_t) noexcept {                    \
        jxes::memtrace::detail::free(p);                                          \
    }                                                                             \
    void operator delete[](void* p, std::align_val_t) noexcept {                  \
        jxes::memtrace::detail::free(p);                                          \
    }                                                                             \
    void operator delete(void* p, std::size_t, std::align_val_t) noexcept {       \
        jxes::memtrace::detail::free(p);                                          \
    }                                                                             \
    void operator delete[](void* p, std::size_t, std::align_val_t) noexcept {     \
        jxes::memtrace::detail::free(p);                                          \
    }                                                                             \
    void operator delete(void* p, const std::nothrow_t&) noexcept {               \
        jxes::memtrace::detail::free(p);                                          \
    }                                                                             \
    void operator delete[](void* p, const std::nothrow_t&) noexcept {             \
        jxes::memtrace::detail::free(p);                                          \
    }
