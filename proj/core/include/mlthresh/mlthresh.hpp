#pragma once

#include "mlthresh/histogram.hpp"
#include "mlthresh/image.hpp"
#include "mlthresh/metrics.hpp"
#include "mlthresh/otsu.hpp"
#include "mlthresh/pgm.hpp"
#include "mlthresh/quality.hpp"
#include "mlthresh/stats.hpp"
#include "mlthresh/thresholder.hpp"
