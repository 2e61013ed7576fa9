#include "mlthresh/image.hpp"

#include <stdexcept>
#include <string>

namespace mlthresh {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<Intensity> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width_ == 0 || height_ == 0) {
        throw std::invalid_argument("GrayImage: width and height must be positive");
    }
    if (pixels_.size() / width_ != height_ || pixels_.size() % width_ != 0) {
        throw std::invalid_argument("GrayImage: expected " + std::to_string(width_) + "x" +
                                    std::to_string(height_) + " pixels, got " +
                                    std::to_string(pixels_.size()));
    }
}

GrayImage GrayImage::filled(std::size_t width, std::size_t height, Intensity value) {
    return GrayImage(width, height, std::vector<Intensity>(width * height, value));
}

}  // namespace mlthresh
