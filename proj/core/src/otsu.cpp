#include "mlthresh/otsu.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace mlthresh {
namespace {

constexpr int kMaxThreshold = kMaxIntensity - 1;

// Contribution of one class with `count` pixels summing to `sum`.
double class_term(std::uint64_t count, std::uint64_t sum, double total, double mean_total) {
    if (count == 0) return 0.0;
    const double weight = static_cast<double>(count) / total;
    const double diff = static_cast<double>(sum) / static_cast<double>(count) - mean_total;
    return weight * diff * diff;
}

// Cumulative counts and intensity sums; class [lo, hi] spans
// prefix[hi + 1] - prefix[lo].
struct Prefix {
    std::array<std::uint64_t, kLevels + 1> count{};
    std::array<std::uint64_t, kLevels + 1> sum{};
    double total = 0.0;
    double mean = 0.0;

    explicit Prefix(const Histogram& hist) {
        for (int v = 0; v < kLevels; ++v) {
            const auto i = static_cast<std::size_t>(v);
            count[i + 1] = count[i] + hist[v];
            sum[i + 1] = sum[i] + static_cast<std::uint64_t>(v) * hist[v];
        }
        total = static_cast<double>(count[kLevels]);
        mean = static_cast<double>(sum[kLevels]) / total;
    }

    double term(int lo, int hi) const {
        const auto a = static_cast<std::size_t>(lo);
        const auto b = static_cast<std::size_t>(hi) + 1;
        return class_term(count[b] - count[a], sum[b] - sum[a], total, mean);
    }
};

void require_nonempty(const Histogram& hist) {
    if (hist.total() == 0) {
        throw std::invalid_argument("otsu: histogram is empty");
    }
}

class ExhaustiveSearch {
public:
    ExhaustiveSearch(const Prefix& prefix, int k) : prefix_(prefix), k_(k), current_(static_cast<std::size_t>(k)), best_(static_cast<std::size_t>(k)) {}

    void run() { descend(0, 0, 0.0); }

    std::vector<Intensity> best() const { return {best_.begin(), best_.end()}; }

private:
    // Chooses thresholds[depth] from [start, 254 - (k - 1 - depth)]; the class
    // opened at `start` closes at the chosen threshold.
    void descend(int depth, int start, double partial) {
        const int last = kMaxThreshold - (k_ - 1 - depth);
        for (int t = start; t <= last; ++t) {
            current_[static_cast<std::size_t>(depth)] = static_cast<Intensity>(t);
            const double with_class = partial + prefix_.term(start, t);
            if (depth + 1 < k_) {
                descend(depth + 1, t + 1, with_class);
                continue;
            }
            const double value = with_class + prefix_.term(t + 1, kMaxIntensity);
            if (!found_ || value > best_value_) {
                found_ = true;
                best_value_ = value;
                best_ = current_;
            }
        }
    }

    const Prefix& prefix_;
    int k_;
    std::vector<Intensity> current_;
    std::vector<Intensity> best_;
    double best_value_ = 0.0;
    bool found_ = false;
};

}  // namespace

double between_class_variance(const Histogram& hist, std::span<const Intensity> thresholds) {
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (thresholds[i] > kMaxThreshold || (i > 0 && thresholds[i] <= thresholds[i - 1])) {
            throw std::invalid_argument(
                "between_class_variance: thresholds must be strictly increasing and <= 254");
        }
    }
    if (hist.total() == 0) return 0.0;
    const Prefix prefix(hist);
    double value = 0.0;
    int lo = 0;
    for (Intensity t : thresholds) {
        value += prefix.term(lo, t);
        lo = t + 1;
    }
    return value + prefix.term(lo, kMaxIntensity);
}

OtsuResult otsu_bilevel(const Histogram& hist) {
    require_nonempty(hist);
    const Prefix prefix(hist);
    int best_t = 0;
    double best_value = -1.0;
    for (int t = 0; t <= kMaxThreshold; ++t) {
        const double value = prefix.term(0, t) + prefix.term(t + 1, kMaxIntensity);
        if (value > best_value) {
            best_value = value;
            best_t = t;
        }
    }
    return {{static_cast<Intensity>(best_t)}, best_value};
}

OtsuResult otsu_multilevel_exhaustive(const Histogram& hist, int k) {
    if (k < 1 || k > 3) {
        throw std::invalid_argument("otsu_multilevel_exhaustive: k must be in [1, 3], got " +
                                    std::to_string(k));
    }
    require_nonempty(hist);
    const Prefix prefix(hist);
    ExhaustiveSearch search(prefix, k);
    search.run();
    OtsuResult result{search.best(), 0.0};
    result.criterion = between_class_variance(hist, result.thresholds);
    return result;
}

}  // namespace mlthresh
