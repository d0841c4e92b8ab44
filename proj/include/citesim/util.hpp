#ifndef CITESIM_UTIL_HPP
#define CITESIM_UTIL_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace citesim {

// Raised for problems with input data (unreadable files, malformed records,
// empty results after filtering). The CLI maps these to exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

using Rng = std::mt19937_64;

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Derives an independent generator from (seed, stream ids). Every generator in
// a sweep is keyed by indices, never by thread identity, so parallel and serial
// execution see identical streams.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream_a = 0, std::uint64_t stream_b = 0) {
    std::uint64_t s = seed;
    std::uint64_t mixed = detail::splitmix64(s);
    s ^= stream_a * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
    mixed ^= detail::splitmix64(s);
    s ^= stream_b * 0xda942042e4dd58b5ULL + 0x9e6c63d0876a9f77ULL;
    mixed ^= detail::splitmix64(s);
    return Rng(mixed);
}

// Uniform double in [0, 1) with 53 random bits; independent of the standard
// library's distribution implementations.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n). Lemire's multiply-with-rejection method.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below: empty range");
    std::uint64_t x = rng();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        std::uint64_t threshold = -n % n;
        while (low < threshold) {
            x = rng();
            m = static_cast<__uint128_t>(x) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

// FNV-1a 64-bit, used to fingerprint inputs and outputs in run manifests.
std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t state = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a_file(const std::string& path);
std::string hex64(std::uint64_t value);

// Splits a line on single tabs. Trailing '\r' (CRLF input) is stripped first.
std::vector<std::string> split_tsv(const std::string& line);

// Whole-string integer parse; returns false on any junk or overflow.
bool parse_int(const std::string& text, long long& out);

}  // namespace citesim

#endif
