#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mlthresh {

/// 8-bit gray level; every value of the type is a valid intensity.
using Intensity = std::uint8_t;

inline constexpr int kLevels = 256;
inline constexpr int kMaxIntensity = 255;

/// Single-channel 8-bit raster stored row-major with a top-left origin.
class GrayImage {
public:
    /// Throws std::invalid_argument when a dimension is zero or the pixel
    /// count does not equal width * height.
    GrayImage(std::size_t width, std::size_t height, std::vector<Intensity> pixels);

    /// Image of the given size filled with `value`.
    static GrayImage filled(std::size_t width, std::size_t height, Intensity value);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    std::span<const Intensity> pixels() const noexcept { return pixels_; }

    Intensity at(std::size_t x, std::size_t y) const { return pixels_.at(y * width_ + x); }

    bool same_shape(const GrayImage& other) const noexcept {
        return width_ == other.width_ && height_ == other.height_;
    }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<Intensity> pixels_;
};

}  // namespace mlthresh
