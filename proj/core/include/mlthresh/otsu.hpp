#pragma once

#include <span>
#include <vector>

#include "mlthresh/histogram.hpp"
#include "mlthresh/image.hpp"

namespace mlthresh {

struct OtsuResult {
    /// Strictly increasing, each in [0, 254]. A threshold t closes the class
    /// ending at t; the next class starts at t + 1.
    std::vector<Intensity> thresholds;
    /// Between-class variance achieved by `thresholds`.
    double criterion = 0.0;
};

/// Sum over classes of w_c * (mean_c - mean_total)^2, where w_c is the class
/// share of pixels. Empty classes contribute nothing. Throws
/// std::invalid_argument unless the thresholds are strictly increasing and
/// at most 254.
double between_class_variance(const Histogram& hist, std::span<const Intensity> thresholds);

/// Single threshold maximizing the between-class variance; the smallest
/// maximizer wins ties. Throws std::invalid_argument on an empty histogram.
OtsuResult otsu_bilevel(const Histogram& hist);

/// Exhaustive search over every ascending k-tuple, k in [1, 3], returning the
/// lexicographically smallest maximizer. O(C(255, k)).
OtsuResult otsu_multilevel_exhaustive(const Histogram& hist, int k);

}  // namespace mlthresh
