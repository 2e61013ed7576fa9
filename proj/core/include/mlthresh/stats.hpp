#pragma once

#include <cstdint>
#include <optional>

#include "mlthresh/histogram.hpp"

namespace mlthresh {

/// Inclusive intensity interval [lo, hi].
class SubRange {
public:
    /// Throws std::invalid_argument unless 0 <= lo <= hi <= 255.
    SubRange(int lo, int hi);

    static SubRange full() { return SubRange(0, kMaxIntensity); }

    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return hi_; }
    int width() const noexcept { return hi_ - lo_ + 1; }
    bool contains(int v) const noexcept { return v >= lo_ && v <= hi_; }

    friend bool operator==(const SubRange&, const SubRange&) = default;

private:
    int lo_;
    int hi_;
};

struct Moments {
    double mean;
    double std;  // population standard deviation
};

/// Statistics of the pixels falling in a sub-range. An empty sub-range has no
/// moments; callers must check `moments` before using mean or std.
struct RangeStats {
    std::uint64_t count = 0;
    std::optional<Moments> moments;

    bool empty() const noexcept { return count == 0; }
};

/// floor(x + 0.5)
int round_half_up(double x);

/// Count, mean and population standard deviation over [r.lo, r.hi].
/// Accumulation is exact in integers; there is a single real division.
RangeStats range_stats(const Histogram& hist, SubRange r);

/// Count-weighted mean intensity over the sub-range, rounded half-up.
/// nullopt when the sub-range holds no pixels.
std::optional<Intensity> weighted_mean(const Histogram& hist, SubRange r);

/// floor((lo + hi) / 2)
Intensity midpoint(SubRange r) noexcept;

}  // namespace mlthresh
