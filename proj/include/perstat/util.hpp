#pragma once

// Shared plumbing: deterministic RNG with explicit seed derivation, a
// chunked parallel-for, FNV-1a hashing and the error type used to tell
// malformed input apart from numeric/contract failures.

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace perstat {

// Malformed user input (files, CLI arguments). Everything else thrown by
// the library (std::domain_error, std::invalid_argument) is a contract or
// numeric failure.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stable stream splitting: the same (base, a, b) always yields the same
// child seed, independent of call order.
inline std::uint64_t child_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t s = base;
    std::uint64_t x = splitmix64(s);
    s ^= 0xd6e8feb86659fd93ULL * (a + 1);
    x ^= splitmix64(s);
    s ^= 0xa0761d6478bd642fULL * (b + 1);
    return x ^ splitmix64(s);
}

// mt19937_64 with our own uniform/normal mapping so streams depend only on
// the seed, not on standard-library distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // uniform on [0, 1)
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double mag = std::sqrt(-2.0 * std::log(u1));
        const double two_pi = 6.283185307179586476925286766559;
        spare_ = mag * std::sin(two_pi * u2);
        have_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection-free modulo bias is irrelevant here (n << 2^64), keep it simple
        return eng_() % n;
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline unsigned default_threads() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Chunked parallel map over [0, n). Each index is processed exactly once;
// callers write to disjoint slots, so results are thread-count independent.
template <class F>
void parallel_for(std::size_t n, F&& body, unsigned threads = 0) {
    if (threads == 0) threads = default_threads();
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::atomic<std::size_t> next{0};
    const std::size_t grain = std::max<std::size_t>(1, n / (8 * threads));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t begin = next.fetch_add(grain);
                if (begin >= n) return;
                const std::size_t end = std::min(begin + grain, n);
                for (std::size_t i = begin; i < end; ++i) body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

// FNV-1a, used for content hashes and the nu-grid checksum.
struct Fnv1a {
    std::uint64_t state = 0xcbf29ce484222325ULL;

    void bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            state ^= p[i];
            state *= 0x100000001b3ULL;
        }
    }
    void add(double v) {
        const auto u = std::bit_cast<std::uint64_t>(v);
        bytes(&u, sizeof u);
    }
    void add(std::uint64_t v) { bytes(&v, sizeof v); }
    void add(std::int64_t v) { bytes(&v, sizeof v); }
    void add(int v) { add(static_cast<std::int64_t>(v)); }
    void add(const std::string& s) { bytes(s.data(), s.size()); }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t v = state;
        for (int i = 15; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = digits[v & 0xF];
            v >>= 4;
        }
        return out;
    }
};

}  // namespace perstat
