#pragma once

#include "mlthresh/metrics.hpp"
#include "mlthresh/thresholder.hpp"

namespace mlthresh {

struct QualityReport {
    double mse = 0.0;
    Psnr psnr = Psnr::infinite();
    double elapsed_ms = 0.0;
    SegmentationParams params;

    friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

}  // namespace mlthresh
