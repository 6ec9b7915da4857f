#pragma once

// Shared basics: id types, error types, deterministic keyed hashing,
// exact rationals for skeleton radii, and a small parallel-for.

#include <atomic>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace skeledim {

using NodeId = uint32_t;
using EdgeId = uint32_t;
using Dist = uint64_t;

constexpr NodeId NO_NODE = UINT32_MAX;
constexpr EdgeId NO_EDGE = UINT32_MAX;
constexpr Dist INF_DIST = UINT64_MAX;

//--------------------------- errors --------------------------------

struct ParamError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    size_t line;
    ParseError(const std::string& msg, size_t line_no)
        : std::runtime_error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

//--------------------------- keyed PRF -----------------------------

// splitmix64 finalizer; bijective on 64-bit words
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// counter-based keyed function: same (seed, stream, counter) -> same word,
// usable from any thread with no generator state
inline uint64_t prf64(uint64_t seed, uint64_t stream, uint64_t counter) {
    return mix64(mix64(mix64(seed ^ 0x5851f42d4c957f2dULL) ^ stream) ^ counter);
}

// map to the open interval (0,1); never returns 0 or 1
inline double unit_open(uint64_t word) {
    return (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
}

// stream namespaces, xor-folded with the item id
constexpr uint64_t STREAM_EDGE_RHO = 0x65646765726f00ULL;
constexpr uint64_t STREAM_NODE_RHO = 0x6e6f6465726f00ULL;
constexpr uint64_t STREAM_SHUFFLE = 0x7368756666006cULL;
// fixed seed of the per-edge tiebreak keys; kept constant so shortest-path
// trees are canonical per graph, independent of any labeling seed
constexpr uint64_t TIEBREAK_SEED = 0x736b656c6564696ULL;

inline uint64_t edge_tiebreak_key(EdgeId e) {
    return prf64(TIEBREAK_SEED, 0x7469656272656bULL, e);
}

//--------------------------- rationals -----------------------------

// Exact small rational, denominator > 0. Skeleton radii have denominators
// dividing alpha_den + alpha_num, so int64 components are ample; products
// are taken in 128 bits.
struct Rat {
    int64_t num = 0;
    int64_t den = 1;

    Rat() = default;
    Rat(int64_t n) : num(n), den(1) {}
    Rat(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw ParamError("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    // floor(num/den) for non-negative values
    int64_t floor() const {
        assert(num >= 0);
        return num / den;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Rat operator*(const Rat& a, int64_t k) { return Rat(a.num * k, a.den); }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(a.num * b.num, a.den * b.den);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw ParamError("rational division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }
};

// parse "p/q" or "p"
inline Rat parse_rat(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::logic_error&) {
        throw ParamError("cannot parse rational: " + s);
    }
}

//--------------------------- hashing -------------------------------

inline uint64_t fnv1a64(const void* data, size_t len, uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < len; i++) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

//--------------------------- harmonic sums -------------------------

// sum of 1/d for d in (a, b]; exact loop for small ranges, asymptotic
// expansion of harmonic numbers for large ones (abs error < 1e-14)
inline double harmonic_range(uint64_t a, uint64_t b) {
    if (b <= a) return 0.0;
    if (b - a <= (1u << 16) && b <= (1u << 22)) {
        double s = 0.0;
        for (uint64_t d = b; d > a; d--) s += 1.0 / static_cast<double>(d);
        return s;
    }
    auto H = [](uint64_t n) {
        constexpr double gamma = 0.57721566490153286;
        double x = static_cast<double>(n);
        double ix2 = 1.0 / (x * x);
        return std::log(x) + gamma + 0.5 / x - ix2 / 12.0 + ix2 * ix2 / 120.0;
    };
    if (a == 0) return H(b);
    return H(b) - H(a);
}

//--------------------------- parallel-for --------------------------

// runs fn(i) for i in [0, n); work is claimed in chunks off an atomic
// counter, so results must be written to per-index slots by the caller
inline void parallel_for(size_t n, unsigned threads, const std::function<void(size_t)>& fn) {
    if (n == 0) return;
    if (threads == 0) threads = std::thread::hardware_concurrency();
    if (threads <= 1 || n == 1) {
        for (size_t i = 0; i < n; i++) fn(i);
        return;
    }
    threads = static_cast<unsigned>(std::min<size_t>(threads, n));
    std::atomic<size_t> next{0};
    size_t chunk = std::max<size_t>(1, n / (threads * 8));
    std::mutex error_mutex;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; t++) {
        pool.emplace_back([&] {
            for (;;) {
                size_t lo = next.fetch_add(chunk);
                if (lo >= n || failed.load()) break;
                size_t hi = std::min(n, lo + chunk);
                for (size_t i = lo; i < hi; i++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(error_mutex);
                        if (!failed.exchange(true)) error = std::current_exception();
                        return;
                    }
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace skeledim
