#include "mlthresh/metrics.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace mlthresh {

std::string Psnr::to_string() const {
    if (is_infinite()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", *db_);
    return buf;
}

double mse(const GrayImage& a, const GrayImage& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("mse: images differ in shape");
    }
    std::uint64_t sum = 0;
    const auto pa = a.pixels();
    const auto pb = b.pixels();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        const int d = int{pa[i]} - int{pb[i]};
        sum += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(sum) / static_cast<double>(pa.size());
}

Psnr psnr_from_mse(double mse_value) {
    if (mse_value == 0.0) return Psnr::infinite();
    return Psnr::decibels(10.0 * std::log10(255.0 * 255.0 / mse_value));
}

Psnr psnr(const GrayImage& a, const GrayImage& b) { return psnr_from_mse(mse(a, b)); }

}  // namespace mlthresh
