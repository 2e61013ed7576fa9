#pragma once

#include <algorithm>
#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "mlthresh/image.hpp"

namespace mlthresh {

/// PSNR in dB against an 8-bit peak. Exact reconstruction (mse == 0) is an
/// explicit infinite state rather than a floating-point infinity.
class Psnr {
public:
    static Psnr infinite() noexcept { return Psnr(); }
    static Psnr decibels(double db) noexcept { return Psnr(db); }

    bool is_infinite() const noexcept { return !db_.has_value(); }

    /// Finite value in dB; precondition: !is_infinite().
    double db() const { return db_.value(); }

    /// "inf" or the value with two decimals.
    std::string to_string() const;

    friend bool operator==(const Psnr&, const Psnr&) = default;
    friend std::partial_ordering operator<=>(const Psnr& a, const Psnr& b) noexcept {
        if (a.is_infinite() || b.is_infinite()) {
            return a.is_infinite() == b.is_infinite()
                       ? std::partial_ordering::equivalent
                       : (a.is_infinite() ? std::partial_ordering::greater
                                          : std::partial_ordering::less);
        }
        return *a.db_ <=> *b.db_;
    }

private:
    Psnr() = default;
    explicit Psnr(double db) : db_(db) {}

    std::optional<double> db_;
};

/// Mean squared error; throws std::invalid_argument on a shape mismatch.
double mse(const GrayImage& a, const GrayImage& b);

/// 10 * log10(255^2 / mse), or Psnr::infinite() when the images are equal.
Psnr psnr(const GrayImage& a, const GrayImage& b);

Psnr psnr_from_mse(double mse_value);

template <typename T>
struct Timed {
    T value;
    double elapsed_ms;
};

/// Runs `op` once and measures it on the steady clock.
template <typename F>
auto timed(F&& op) -> Timed<std::invoke_result_t<F>> {
    const auto start = std::chrono::steady_clock::now();
    auto value = std::forward<F>(op)();
    const auto stop = std::chrono::steady_clock::now();
    return {std::move(value), std::chrono::duration<double, std::milli>(stop - start).count()};
}

/// Median wall time of `runs` sequential executions after `warmup` unmeasured
/// ones. The default protocol is 20 warm runs.
template <typename F>
double median_elapsed_ms(F&& op, int runs = 20, int warmup = 2) {
    for (int i = 0; i < warmup; ++i) {
        static_cast<void>(op());
    }
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(std::max(runs, 1)));
    for (int i = 0; i < std::max(runs, 1); ++i) {
        samples.push_back(timed([&] { return op(); }).elapsed_ms);
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t mid = samples.size() / 2;
    return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

}  // namespace mlthresh
