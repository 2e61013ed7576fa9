#include "mlthresh/pgm.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <string_view>

namespace mlthresh {
namespace {

bool is_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class Cursor {
public:
    explicit Cursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Skips whitespace and comments, then returns the next token (possibly
    // empty at end of input).
    std::string_view next_token() {
        skip_separators();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') {
            ++pos_;
        }
        return {reinterpret_cast<const char*>(bytes_.data()) + start, pos_ - start};
    }

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return bytes_.size() - pos_; }
    bool at_end() const noexcept { return pos_ >= bytes_.size(); }
    std::uint8_t peek() const { return bytes_[pos_]; }
    void advance() { ++pos_; }

private:
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

std::optional<std::uint64_t> parse_unsigned(std::string_view token) {
    if (token.empty()) return std::nullopt;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) return std::nullopt;
    return value;
}

std::uint64_t header_field(Cursor& cursor, const char* name) {
    const auto token = cursor.next_token();
    const auto value = parse_unsigned(token);
    if (!value) {
        throw PgmError(PgmError::Kind::Format,
                       std::string("PGM: bad or missing ") + name + " in header");
    }
    return *value;
}

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
        throw PgmError(PgmError::Kind::Format, "PGM: expected magic P5 or P2");
    }
    const bool binary = bytes[1] == '5';

    Cursor cursor(bytes.subspan(2));
    if (!cursor.at_end() && !is_space(cursor.peek()) && cursor.peek() != '#') {
        throw PgmError(PgmError::Kind::Format, "PGM: magic must be followed by whitespace");
    }
    const std::uint64_t width = header_field(cursor, "width");
    const std::uint64_t height = header_field(cursor, "height");
    const std::uint64_t maxval = header_field(cursor, "maxval");
    if (width == 0 || height == 0) {
        throw PgmError(PgmError::Kind::Format, "PGM: width and height must be positive");
    }
    if (maxval != 255) {
        throw PgmError(PgmError::Kind::UnsupportedDepth,
                       "PGM: only maxval 255 is supported, got " + std::to_string(maxval));
    }
    if (width > (std::uint64_t{1} << 32) / height) {
        throw PgmError(PgmError::Kind::Format, "PGM: image dimensions too large");
    }
    const std::size_t count = static_cast<std::size_t>(width * height);

    std::vector<Intensity> pixels;
    if (binary) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (cursor.at_end() || !is_space(cursor.peek())) {
            throw PgmError(PgmError::Kind::Length, "PGM: missing raster data");
        }
        cursor.advance();
        if (cursor.remaining() < count) {
            throw PgmError(PgmError::Kind::Length,
                           "PGM: expected " + std::to_string(count) + " raster bytes, got " +
                               std::to_string(cursor.remaining()));
        }
        const auto raster = bytes.subspan(2 + cursor.position(), count);
        pixels.assign(raster.begin(), raster.end());
    } else {
        pixels.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const auto token = cursor.next_token();
            if (token.empty()) {
                throw PgmError(PgmError::Kind::Length,
                               "PGM: expected " + std::to_string(count) + " samples, got " +
                                   std::to_string(i));
            }
            const auto value = parse_unsigned(token);
            if (!value || *value > 255) {
                throw PgmError(PgmError::Kind::Format,
                               "PGM: invalid sample '" + std::string(token) + "'");
            }
            pixels.push_back(static_cast<Intensity>(*value));
        }
    }
    return GrayImage(static_cast<std::size_t>(width), static_cast<std::size_t>(height),
                     std::move(pixels));
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
    const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                               std::to_string(image.height()) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + image.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), image.pixels().begin(), image.pixels().end());
    return out;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw PgmError(PgmError::Kind::Io, "cannot open " + path.string());
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw PgmError(PgmError::Kind::Io, "read failed: " + path.string());
    }
    return read_pgm(bytes);
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& image) {
    const auto bytes = write_pgm(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw PgmError(PgmError::Kind::Io, "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw PgmError(PgmError::Kind::Io, "write failed: " + path.string());
    }
}

}  // namespace mlthresh
