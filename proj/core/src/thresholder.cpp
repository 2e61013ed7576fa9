#include "mlthresh/thresholder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlthresh {

void SegmentationParams::validate() const {
    if (levels < 3 || levels % 2 == 0) {
        throw std::invalid_argument("levels must be an odd integer >= 3, got " +
                                    std::to_string(levels));
    }
    if (kappa_schedule.empty()) {
        throw std::invalid_argument("kappa schedule must not be empty");
    }
    for (const auto& k : kappa_schedule) {
        if (!(std::isfinite(k.lower) && std::isfinite(k.upper) && k.lower > 0 && k.upper > 0)) {
            throw std::invalid_argument("kappa values must be finite and positive");
        }
    }
}

KappaPair SegmentationParams::kappa_for_step(std::size_t step) const {
    return kappa_schedule.at(std::min(step, kappa_schedule.size() - 1));
}

std::vector<std::pair<Intensity, Intensity>> SegmentationResult::outer_pairs() const {
    const std::size_t steps = thresholds.size() / 2;
    std::vector<std::pair<Intensity, Intensity>> pairs;
    pairs.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        pairs.emplace_back(thresholds[i], thresholds[thresholds.size() - 1 - i]);
    }
    return pairs;
}

std::optional<ThresholdPair> step_thresholds(const RangeStats& stats, SubRange r, KappaPair kappa) {
    if (!stats.moments) return std::nullopt;
    const auto [mean, std] = *stats.moments;
    const int lower = std::clamp(round_half_up(mean - kappa.lower * std), r.lo(), r.hi());
    const int upper = std::clamp(round_half_up(mean + kappa.upper * std), r.lo(), r.hi());
    if (upper - lower < 2) return std::nullopt;
    return ThresholdPair{static_cast<Intensity>(lower), static_cast<Intensity>(upper)};
}

SegmentationResult segment(const Histogram& hist, const SegmentationParams& params) {
    params.validate();
    if (hist.total() == 0) {
        throw std::invalid_argument("segment: histogram is empty");
    }

    SegmentationResult result;
    std::vector<SubRange> low_classes;
    std::vector<SubRange> high_classes;
    std::vector<Intensity> low_cuts;
    std::vector<Intensity> high_cuts;

    SubRange range = SubRange::full();
    RangeStats stats = range_stats(hist, range);
    result.bin_visits += static_cast<std::uint64_t>(range.width());

    const auto steps = static_cast<std::size_t>((params.levels - 1) / 2);
    for (std::size_t step = 0; step < steps; ++step) {
        const auto cut = step_thresholds(stats, range, params.kappa_for_step(step));
        if (!cut) break;
        low_classes.emplace_back(range.lo(), cut->lower);
        high_classes.emplace_back(cut->upper, range.hi());
        low_cuts.push_back(cut->lower);
        high_cuts.push_back(cut->upper);

        // upper - lower >= 2, so the residual holds at least one level.
        range = SubRange(cut->lower + 1, cut->upper - 1);
        stats = range_stats(hist, range);
        result.bin_visits += static_cast<std::uint64_t>(range.width());
    }

    // Final split of the residual at its rounded mean. An empty residual has
    // no mean and is split at its midpoint instead.
    const int split = stats.moments ? round_half_up(stats.moments->mean) : midpoint(range);
    low_classes.emplace_back(range.lo(), split);
    if (split < range.hi()) {
        high_classes.emplace_back(split + 1, range.hi());
    }

    result.thresholds = low_cuts;
    result.thresholds.push_back(static_cast<Intensity>(split));
    result.thresholds.insert(result.thresholds.end(), high_cuts.rbegin(), high_cuts.rend());
    result.effective_n = static_cast<int>(result.thresholds.size());

    std::vector<SubRange> intervals = std::move(low_classes);
    intervals.insert(intervals.end(), high_classes.rbegin(), high_classes.rend());

    result.classes.reserve(intervals.size());
    for (const SubRange& interval : intervals) {
        Intensity value = midpoint(interval);
        if (params.replacement == Replacement::WeightedMean) {
            // Empty classes keep their midpoint; no pixel maps through them.
            value = weighted_mean(hist, interval).value_or(value);
            result.bin_visits += static_cast<std::uint64_t>(interval.width());
        }
        result.classes.push_back({interval, value});
        for (int v = interval.lo(); v <= interval.hi(); ++v) {
            result.lut[static_cast<std::size_t>(v)] = value;
        }
    }
    return result;
}

GrayImage apply_mapping(const GrayImage& image, const SegmentationResult& result) {
    std::vector<Intensity> out(image.size());
    std::transform(image.pixels().begin(), image.pixels().end(), out.begin(),
                   [&](Intensity v) { return result.lut[v]; });
    return GrayImage(image.width(), image.height(), std::move(out));
}

SegmentedImage segment_image(const GrayImage& image, const SegmentationParams& params) {
    auto result = segment(compute_histogram(image), params);
    auto mapped = apply_mapping(image, result);
    return {std::move(result), std::move(mapped)};
}

AutoSelection auto_select_n(const GrayImage& image, const SegmentationParams& base,
                            double epsilon_db, int max_levels) {
    if (!(epsilon_db > 0) || !std::isfinite(epsilon_db)) {
        throw std::invalid_argument("epsilon must be a positive number of dB");
    }
    if (max_levels < 3 || max_levels % 2 == 0) {
        throw std::invalid_argument("max levels must be an odd integer >= 3");
    }
    const Histogram hist = compute_histogram(image);

    AutoSelection selection{max_levels, {}};
    for (int levels = 3; levels <= max_levels; levels += 2) {
        SegmentationParams params = base;
        params.levels = levels;
        const Psnr quality = psnr(image, apply_mapping(image, segment(hist, params)));
        selection.sweep.push_back({levels, quality});
        if (quality.is_infinite()) break;
    }

    for (std::size_t i = 0; i < selection.sweep.size(); ++i) {
        const Psnr& here = selection.sweep[i].psnr;
        if (here.is_infinite()) {
            selection.chosen_levels = selection.sweep[i].levels;
            break;
        }
        if (i + 1 < selection.sweep.size()) {
            const Psnr& next = selection.sweep[i + 1].psnr;
            if (!next.is_infinite() && next.db() - here.db() < epsilon_db) {
                selection.chosen_levels = selection.sweep[i].levels;
                break;
            }
        }
    }
    return selection;
}

}  // namespace mlthresh
