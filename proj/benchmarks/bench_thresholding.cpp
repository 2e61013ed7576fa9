#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "mlthresh/histogram.hpp"
#include "mlthresh/otsu.hpp"
#include "mlthresh/thresholder.hpp"

namespace {

// Smooth-ish 8-bit test pattern: a Gaussian-like intensity distribution
// around mid-gray, matching the histogram shape the recursion targets.
mlthresh::GrayImage make_image(std::size_t side) {
    std::mt19937 rng(1234);
    std::normal_distribution<double> dist(124.0, 48.0);
    std::vector<mlthresh::Intensity> pixels(side * side);
    for (auto& p : pixels) {
        p = static_cast<mlthresh::Intensity>(std::clamp(dist(rng), 0.0, 255.0));
    }
    return mlthresh::GrayImage(side, side, std::move(pixels));
}

const mlthresh::GrayImage& image_512() {
    static const auto image = make_image(512);
    return image;
}

void BM_Histogram(benchmark::State& state) {
    const auto image = make_image(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mlthresh::compute_histogram(image));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(image.size()));
}
BENCHMARK(BM_Histogram)->Arg(256)->Arg(512);

void BM_SegmentHistogram(benchmark::State& state) {
    const auto hist = mlthresh::compute_histogram(image_512());
    mlthresh::SegmentationParams params;
    params.levels = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mlthresh::segment(hist, params));
    }
}
BENCHMARK(BM_SegmentHistogram)->DenseRange(3, 9, 2);

void BM_SegmentImage(benchmark::State& state) {
    const auto image = make_image(static_cast<std::size_t>(state.range(0)));
    mlthresh::SegmentationParams params;
    params.levels = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mlthresh::segment_image(image, params));
    }
}
BENCHMARK(BM_SegmentImage)
    ->ArgsProduct({{256, 512}, {3, 5, 7, 9}})
    ->Unit(benchmark::kMicrosecond);

void BM_OtsuExhaustive(benchmark::State& state) {
    const auto hist = mlthresh::compute_histogram(image_512());
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(mlthresh::otsu_multilevel_exhaustive(hist, k));
    }
}
BENCHMARK(BM_OtsuExhaustive)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
