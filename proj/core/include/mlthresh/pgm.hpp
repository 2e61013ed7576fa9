#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlthresh/image.hpp"

namespace mlthresh {

class PgmError : public std::runtime_error {
public:
    enum class Kind {
        Format,            // bad magic, malformed header tokens, bad ASCII samples
        UnsupportedDepth,  // maxval other than 255
        Length,            // fewer samples than width * height
        Io,                // file could not be opened, read or written
    };

    PgmError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Parses a binary (P5) or ASCII (P2) graymap with maxval 255. Header tokens
/// may be separated by any whitespace and interleaved with `#` comments.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

/// Always emits P5: "P5\n<width> <height>\n255\n" followed by the raster.
std::vector<std::uint8_t> write_pgm(const GrayImage& image);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& image);

}  // namespace mlthresh
