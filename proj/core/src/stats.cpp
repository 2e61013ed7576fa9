#include "mlthresh/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mlthresh {
namespace {

struct Sums {
    std::uint64_t count = 0;
    std::uint64_t first = 0;   // sum of v * bins[v]
    std::uint64_t second = 0;  // sum of v^2 * bins[v]
};

Sums accumulate(const Histogram& hist, SubRange r) {
    Sums s;
    for (int v = r.lo(); v <= r.hi(); ++v) {
        const std::uint64_t c = hist[v];
        const auto uv = static_cast<std::uint64_t>(v);
        s.count += c;
        s.first += uv * c;
        s.second += uv * uv * c;
    }
    return s;
}

}  // namespace

SubRange::SubRange(int lo, int hi) : lo_(lo), hi_(hi) {
    if (lo < 0 || hi > kMaxIntensity || lo > hi) {
        throw std::invalid_argument("SubRange: invalid interval [" + std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
    }
}

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

RangeStats range_stats(const Histogram& hist, SubRange r) {
    const Sums s = accumulate(hist, r);
    RangeStats out;
    out.count = s.count;
    if (s.count == 0) return out;

    // N * S2 - S1^2 is the exact variance numerator scaled by N^2.
    __extension__ typedef unsigned __int128 u128;
    const u128 numerator =
        static_cast<u128>(s.count) * s.second - static_cast<u128>(s.first) * s.first;
    const long double n = static_cast<long double>(s.count);
    const long double variance = static_cast<long double>(numerator) / (n * n);
    out.moments = Moments{
        static_cast<double>(static_cast<long double>(s.first) / n),
        static_cast<double>(std::sqrt(variance)),
    };
    return out;
}

std::optional<Intensity> weighted_mean(const Histogram& hist, SubRange r) {
    const Sums s = accumulate(hist, r);
    if (s.count == 0) return std::nullopt;
    // round-half-up(S1 / N) == floor((2 * S1 + N) / (2 * N)), exact in integers.
    const std::uint64_t rounded = (2 * s.first + s.count) / (2 * s.count);
    return static_cast<Intensity>(rounded);
}

Intensity midpoint(SubRange r) noexcept { return static_cast<Intensity>((r.lo() + r.hi()) / 2); }

}  // namespace mlthresh
