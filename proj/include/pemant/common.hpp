#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pemant {

// Error taxonomy; the CLI maps each branch to a distinct exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class BackendError : public Error {
public:
    using Error::Error;
};

class ProtocolError : public Error {
public:
    using Error::Error;
};

// --- deterministic hashing / RNG -----------------------------------------
// splitmix64 keeps draws identical across platforms and standard libraries;
// std::uniform_int_distribution would not.

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = kFnvOffset) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

inline std::uint64_t fnv1a_u64(std::uint64_t v, std::uint64_t h = kFnvOffset) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffu;
        h *= kFnvPrime;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, n). n == 0 returns 0.
    std::uint64_t bounded(std::uint64_t n) {
        if (n == 0) return 0;
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % n;
    }

    long long range(long long lo, long long hi) {  // inclusive
        if (hi <= lo) return lo;
        return lo + static_cast<long long>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double real01() { return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0); }

    bool chance(double p) { return real01() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Seed derivation for per-call determinism: mixes a run seed with a list of
// scope components (ids, round numbers, attempt counters).
class SeedMixer {
public:
    explicit SeedMixer(std::uint64_t run_seed) : h_(fnv1a_u64(run_seed)) {}

    SeedMixer& mix(std::string_view s) {
        h_ = fnv1a(s, h_);
        h_ = fnv1a("\x1f", h_);  // separator so ("ab","c") != ("a","bc")
        return *this;
    }

    SeedMixer& mix(std::uint64_t v) {
        h_ = fnv1a_u64(v, h_);
        return *this;
    }

    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_;
};

// --- string helpers --------------------------------------------------------

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool starts_with_ci(std::string_view text, std::string_view prefix);

// Case-insensitive substring search; npos when absent.
std::size_t find_ci(std::string_view text, std::string_view needle, std::size_t from = 0);

// True when `token` occurs in `text` case-insensitively with non-alphanumeric
// (or string-edge) characters on both sides. "34" does not match "134".
bool contains_token(std::string_view text, std::string_view token);

std::vector<std::string> split(std::string_view s, char sep);

// Fixed numeric formatting: integers render without decimals, fractional
// values with exactly one decimal digit. No locale separators.
std::string format_number(double v);
std::string format_int(long long v);

// Round half away from zero to the nearest integer.
long long round_half_up(double v);

std::string read_file(const std::string& path);          // throws ConfigError
void write_file(const std::string& path, std::string_view content);

}  // namespace pemant
