#pragma once

#include <array>
#include <cstdint>

#include "mlthresh/image.hpp"

namespace mlthresh {

/// 256-bin intensity histogram. All downstream statistics are computed from
/// the bins; nothing rescans pixels once a histogram exists.
class Histogram {
public:
    using Bins = std::array<std::uint64_t, kLevels>;

    Histogram() noexcept : bins_{}, total_(0) {}
    explicit Histogram(const Bins& bins) noexcept;

    const Bins& bins() const noexcept { return bins_; }
    std::uint64_t operator[](int v) const noexcept { return bins_[static_cast<std::size_t>(v)]; }
    std::uint64_t total() const noexcept { return total_; }

    friend bool operator==(const Histogram&, const Histogram&) = default;

private:
    Bins bins_;
    std::uint64_t total_;
};

Histogram compute_histogram(const GrayImage& image) noexcept;

}  // namespace mlthresh
