#include "mlthresh/histogram.hpp"

#include <numeric>

namespace mlthresh {

Histogram::Histogram(const Bins& bins) noexcept
    : bins_(bins), total_(std::accumulate(bins.begin(), bins.end(), std::uint64_t{0})) {}

Histogram compute_histogram(const GrayImage& image) noexcept {
    Histogram::Bins bins{};
    for (Intensity v : image.pixels()) {
        ++bins[v];
    }
    return Histogram(bins);
}

}  // namespace mlthresh
