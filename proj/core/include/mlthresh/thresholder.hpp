#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mlthresh/histogram.hpp"
#include "mlthresh/image.hpp"
#include "mlthresh/metrics.hpp"
#include "mlthresh/stats.hpp"

namespace mlthresh {

/// Multipliers on sigma for the lower (mean - k*sigma) and upper
/// (mean + k*sigma) cut of one recursion step.
struct KappaPair {
    double lower = 1.0;
    double upper = 1.0;

    friend bool operator==(const KappaPair&, const KappaPair&) = default;
};

enum class Replacement {
    WeightedMean,  // class replaced by its count-weighted mean intensity
    Midpoint,      // class replaced by the middle of its interval
};

struct SegmentationParams {
    /// Requested number of thresholds; odd and >= 3.
    int levels = 3;
    /// One entry per recursion step; the last entry is reused when the
    /// schedule is shorter than the number of steps.
    std::vector<KappaPair> kappa_schedule{KappaPair{}};
    Replacement replacement = Replacement::WeightedMean;

    /// Throws std::invalid_argument on even/small levels, an empty schedule
    /// or a non-positive (or non-finite) kappa.
    void validate() const;

    KappaPair kappa_for_step(std::size_t step) const;

    friend bool operator==(const SegmentationParams&, const SegmentationParams&) = default;
};

struct ClassInterval {
    SubRange interval;
    Intensity value;

    friend bool operator==(const ClassInterval&, const ClassInterval&) = default;
};

struct SegmentationResult {
    /// Strictly increasing: lower cuts, then the middle split, then upper cuts.
    std::vector<Intensity> thresholds;
    /// Ordered classes tiling [0, 255].
    std::vector<ClassInterval> classes;
    std::array<Intensity, kLevels> lut{};
    /// Number of thresholds actually produced; below the requested count when
    /// the recursion hit a degenerate sub-range.
    int effective_n = 0;
    /// Histogram bins read while segmenting. Independent of the pixel count.
    std::uint64_t bin_visits = 0;

    /// (lower, upper) cut of every completed recursion step, outermost first.
    std::vector<std::pair<Intensity, Intensity>> outer_pairs() const;

    friend bool operator==(const SegmentationResult&, const SegmentationResult&) = default;
};

struct ThresholdPair {
    Intensity lower;
    Intensity upper;

    friend bool operator==(const ThresholdPair&, const ThresholdPair&) = default;
};

/// Cuts round_half_up(mean -/+ kappa * std) clamped into `r`. Returns nullopt
/// (degenerate) for an empty range, or when the cuts leave no intensity
/// strictly between them.
std::optional<ThresholdPair> step_thresholds(const RangeStats& stats, SubRange r, KappaPair kappa);

/// Recursive mean/standard-deviation multilevel thresholding of `hist`.
/// Throws std::invalid_argument for invalid params or an empty histogram.
SegmentationResult segment(const Histogram& hist, const SegmentationParams& params);

GrayImage apply_mapping(const GrayImage& image, const SegmentationResult& result);

struct SegmentedImage {
    SegmentationResult result;
    GrayImage image;
};

/// Histogram, segmentation and mapping in one pass: the unit that timings
/// report.
SegmentedImage segment_image(const GrayImage& image, const SegmentationParams& params);

struct SweepPoint {
    int levels;
    Psnr psnr;
};

struct AutoSelection {
    int chosen_levels;
    std::vector<SweepPoint> sweep;
};

/// Evaluates levels 3, 5, ..., max_levels and picks the smallest level whose
/// next step gains less than `epsilon_db`. An exact reconstruction counts as
/// saturated and ends the sweep. Falls back to max_levels.
AutoSelection auto_select_n(const GrayImage& image, const SegmentationParams& base,
                            double epsilon_db, int max_levels);

}  // namespace mlthresh
