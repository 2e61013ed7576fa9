#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mlthresh/histogram.hpp"
#include "mlthresh/metrics.hpp"
#include "mlthresh/otsu.hpp"
#include "mlthresh/pgm.hpp"
#include "report.hpp"

namespace mlthresh::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct KappaOptions {
    std::optional<double> kappa;
    std::string schedule;
    std::string replacement = "weighted-mean";

    void attach(CLI::App& app) {
        auto* k = app.add_option("--kappa", kappa, "Symmetric kappa for every step (default 1.0)");
        auto* s = app.add_option("--kappa-schedule", schedule,
                                 "Per-step kappas as k1:k2,k1:k2,... (last entry repeats)");
        k->excludes(s);
        app.add_option("--replacement", replacement, "Class replacement value")
            ->check(CLI::IsMember({"weighted-mean", "midpoint"}));
    }

    SegmentationParams params(int levels) const {
        SegmentationParams p;
        p.levels = levels;
        if (kappa) {
            p.kappa_schedule = {KappaPair{*kappa, *kappa}};
        } else if (!schedule.empty()) {
            p.kappa_schedule = parse_kappa_schedule(schedule);
        }
        p.replacement = replacement_from_string(replacement);
        return p;
    }
};

void require_odd_levels(int levels, const char* flag) {
    if (levels < 3 || levels % 2 == 0) {
        throw UsageError(std::string(flag) + " must be an odd integer >= 3 (got " +
                         std::to_string(levels) +
                         "): each recursion step adds a lower and an upper threshold, "
                         "and the final split adds one more");
    }
}

std::string format_ms(double ms) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", ms);
    return buf;
}

std::ofstream open_for_write(const fs::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + path.string() + " for writing");
    return file;
}

void finish_write(std::ofstream& file, const fs::path& path) {
    file.flush();
    if (!file) throw IoError("write failed: " + path.string());
}

void write_json(const fs::path& path, const nlohmann::json& j) {
    auto file = open_for_write(path);
    file << j.dump(2) << '\n';
    finish_write(file, path);
}

double measure(const GrayImage& image, const SegmentationParams& params, int runs) {
    return median_elapsed_ms([&] { return segment_image(image, params); }, runs, runs > 1 ? 2 : 0);
}

// --- segment ---------------------------------------------------------------

struct SegmentOptions {
    std::string input;
    std::string output;
    std::string report;
    int levels = 3;
    int runs = 1;
    KappaOptions kappa;
};

int cmd_segment(const SegmentOptions& o, std::ostream& out) {
    require_odd_levels(o.levels, "--levels");
    const SegmentationParams params = o.kappa.params(o.levels);
    params.validate();

    const GrayImage image = read_pgm_file(o.input);
    auto run = timed([&] { return segment_image(image, params); });
    if (o.runs > 1) run.elapsed_ms = measure(image, params, o.runs);
    const SegmentedImage& seg = run.value;

    RunReport report;
    report.input_path = o.input;
    report.thresholds = seg.result.thresholds;
    report.classes = seg.result.classes;
    report.effective_n = seg.result.effective_n;
    report.quality.mse = mse(image, seg.image);
    report.quality.psnr = psnr_from_mse(report.quality.mse);
    report.quality.elapsed_ms = run.elapsed_ms;
    report.quality.params = params;

    write_pgm_file(o.output, seg.image);
    if (!o.report.empty()) write_json(o.report, to_json(report));

    out << "thresholds: " << join_thresholds(report.thresholds) << '\n'
        << "effective_n: " << report.effective_n << '\n'
        << "psnr_db: " << report.quality.psnr.to_string() << '\n'
        << "elapsed_ms: " << format_ms(report.quality.elapsed_ms) << '\n';
    return kSuccess;
}

// --- sweep -----------------------------------------------------------------

struct SweepOptions {
    std::string input;
    std::string csv;
    int max_levels = 9;
    double epsilon = 0.3;
    int runs = 20;
    KappaOptions kappa;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
    require_odd_levels(o.max_levels, "--max-levels");
    if (!(o.epsilon > 0)) throw UsageError("--epsilon must be positive");
    const SegmentationParams base = o.kappa.params(3);
    base.validate();

    const GrayImage image = read_pgm_file(o.input);
    const AutoSelection selection = auto_select_n(image, base, o.epsilon, o.max_levels);

    auto file = open_for_write(o.csv);
    file << "n,psnr_db,elapsed_ms\n";
    out << "n\tpsnr_db\telapsed_ms\n";
    for (const SweepPoint& point : selection.sweep) {
        SegmentationParams params = base;
        params.levels = point.levels;
        const std::string elapsed = format_ms(measure(image, params, o.runs));
        file << point.levels << ',' << point.psnr.to_string() << ',' << elapsed << '\n';
        out << point.levels << '\t' << point.psnr.to_string() << '\t' << elapsed << '\n';
    }
    finish_write(file, o.csv);
    out << "chosen_n: " << selection.chosen_levels << '\n';
    return kSuccess;
}

// --- otsu ------------------------------------------------------------------

struct OtsuOptions {
    std::string input;
    std::string report;
    int classes = 2;
    int runs = 1;
};

// Each Otsu class replaced by its weighted mean, for a PSNR comparable with
// `segment`.
GrayImage quantize(const GrayImage& image, const Histogram& hist,
                   std::span<const Intensity> thresholds) {
    std::array<Intensity, kLevels> lut{};
    int lo = 0;
    for (std::size_t i = 0; i <= thresholds.size(); ++i) {
        const int hi = i < thresholds.size() ? thresholds[i] : kMaxIntensity;
        const SubRange interval(lo, hi);
        const Intensity value = weighted_mean(hist, interval).value_or(midpoint(interval));
        std::fill(lut.begin() + lo, lut.begin() + hi + 1, value);
        lo = hi + 1;
    }
    std::vector<Intensity> pixels(image.size());
    std::transform(image.pixels().begin(), image.pixels().end(), pixels.begin(),
                   [&](Intensity v) { return lut[v]; });
    return GrayImage(image.width(), image.height(), std::move(pixels));
}

int cmd_otsu(const OtsuOptions& o, std::ostream& out) {
    if (o.classes < 2 || o.classes > 4) {
        throw UsageError("--classes must be in [2, 4] (exhaustive search over up to 3 thresholds)");
    }
    const GrayImage image = read_pgm_file(o.input);
    const int k = o.classes - 1;
    const auto search = [&] { return otsu_multilevel_exhaustive(compute_histogram(image), k); };
    auto run = timed(search);
    if (o.runs > 1) run.elapsed_ms = median_elapsed_ms(search, o.runs, 1);

    OtsuReport report;
    report.input_path = o.input;
    report.classes = o.classes;
    report.result = run.value;
    report.psnr = psnr(image, quantize(image, compute_histogram(image), report.result.thresholds));
    report.elapsed_ms = run.elapsed_ms;

    if (!o.report.empty()) write_json(o.report, to_json(report));

    char criterion[64];
    std::snprintf(criterion, sizeof criterion, "%.6f", report.result.criterion);
    out << "thresholds: " << join_thresholds(report.result.thresholds) << '\n'
        << "criterion: " << criterion << '\n'
        << "psnr_db: " << report.psnr.to_string() << '\n'
        << "elapsed_ms: " << format_ms(report.elapsed_ms) << '\n';
    return kSuccess;
}

// --- bench -----------------------------------------------------------------

struct BenchOptions {
    std::vector<std::string> inputs;
    std::vector<int> levels{3, 5, 7, 9};
    std::string csv;
    int runs = 20;
    KappaOptions kappa;
};

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<fs::path> files;
    for (const auto& input : inputs) {
        const fs::path path(input);
        if (fs::is_directory(path)) {
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
                    files.push_back(entry.path());
                }
            }
        } else {
            files.push_back(path);
        }
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

int cmd_bench(const BenchOptions& o, std::ostream& out) {
    if (o.levels.empty()) throw UsageError("--levels must list at least one value");
    for (int levels : o.levels) require_odd_levels(levels, "--levels");
    if (o.runs < 1) throw UsageError("--runs must be positive");
    o.kappa.params(3).validate();

    const auto files = expand_inputs(o.inputs);
    if (files.empty()) throw UsageError("no input images found");

    std::vector<int> levels = o.levels;
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    auto file = open_for_write(o.csv);
    file << "image,width,height,n,effective_n,thresholds,psnr_db,elapsed_ms\n";
    for (const fs::path& path : files) {
        const GrayImage image = read_pgm_file(path);
        for (int n : levels) {
            const SegmentationParams params = o.kappa.params(n);
            const SegmentedImage seg = segment_image(image, params);
            const Psnr quality = psnr(image, seg.image);
            const std::string elapsed = format_ms(measure(image, params, o.runs));
            file << path.string() << ',' << image.width() << ',' << image.height() << ',' << n << ','
                 << seg.result.effective_n << ',' << join_thresholds(seg.result.thresholds, " ")
                 << ',' << quality.to_string() << ',' << elapsed << '\n';
            out << path.filename().string() << "\tn=" << n << "\t"
                << join_thresholds(seg.result.thresholds) << "\t" << quality.to_string()
                << " dB\t" << elapsed << " ms\n";
        }
    }
    finish_write(file, o.csv);
    return kSuccess;
}

}  // namespace

std::vector<KappaPair> parse_kappa_schedule(const std::string& text) {
    const auto parse_positive = [&](const std::string& token) {
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != token.size() || !(value > 0)) {
            throw std::invalid_argument("invalid kappa '" + token + "' in schedule '" + text + "'");
        }
        return value;
    };

    std::vector<KappaPair> schedule;
    std::stringstream entries(text);
    std::string entry;
    while (std::getline(entries, entry, ',')) {
        const auto colon = entry.find(':');
        if (colon == std::string::npos) {
            const double k = parse_positive(entry);
            schedule.push_back({k, k});
        } else {
            schedule.push_back(
                {parse_positive(entry.substr(0, colon)), parse_positive(entry.substr(colon + 1))});
        }
    }
    if (schedule.empty() || text.empty() || text.back() == ',') {
        throw std::invalid_argument("empty kappa schedule entry in '" + text + "'");
    }
    return schedule;
}

std::string join_thresholds(std::span<const Intensity> thresholds, const char* separator) {
    std::string joined;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (i > 0) joined += separator;
        joined += std::to_string(thresholds[i]);
    }
    return joined;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Recursive mean/variance multilevel thresholding for 8-bit PGM images",
                 "mlthresh"};
    app.require_subcommand(1);

    SegmentOptions seg;
    auto* segment = app.add_subcommand("segment", "Segment one image into levels + 1 classes");
    segment->add_option("--input", seg.input, "Input PGM")->required();
    segment->add_option("--levels", seg.levels, "Number of thresholds (odd, >= 3)")->required();
    segment->add_option("--output", seg.output, "Output PGM")->required();
    segment->add_option("--report", seg.report, "JSON run report");
    segment->add_option("--runs", seg.runs, "Timed runs; the median is reported")
        ->check(CLI::PositiveNumber);
    seg.kappa.attach(*segment);

    SweepOptions sw;
    auto* sweep = app.add_subcommand("sweep", "PSNR against number of thresholds");
    sweep->add_option("--input", sw.input, "Input PGM")->required();
    sweep->add_option("--max-levels", sw.max_levels, "Largest odd threshold count")->required();
    sweep->add_option("--epsilon", sw.epsilon, "Saturation gain in dB (default 0.3)");
    sweep->add_option("--csv", sw.csv, "CSV output (n,psnr_db,elapsed_ms)")->required();
    sweep->add_option("--runs", sw.runs, "Timed runs per n (default 20)")
        ->check(CLI::PositiveNumber);
    sw.kappa.attach(*sweep);

    OtsuOptions ot;
    auto* otsu = app.add_subcommand("otsu", "Exhaustive Otsu baseline");
    otsu->add_option("--input", ot.input, "Input PGM")->required();
    otsu->add_option("--classes", ot.classes, "Number of classes, 2 to 4");
    otsu->add_option("--report", ot.report, "JSON report");
    otsu->add_option("--runs", ot.runs, "Timed runs; the median is reported")
        ->check(CLI::PositiveNumber);

    BenchOptions be;
    auto* bench = app.add_subcommand("bench", "Median timings and PSNR over images and levels");
    bench->add_option("--input", be.inputs, "PGM files and/or directories")->required();
    bench->add_option("--levels", be.levels, "Comma-separated odd threshold counts")
        ->delimiter(',');
    bench->add_option("--csv", be.csv, "CSV output")->required();
    bench->add_option("--runs", be.runs, "Timed runs per measurement (default 20)");
    be.kappa.attach(*bench);

    std::vector<std::string> argv_storage{"mlthresh"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsageError;
    }

    try {
        if (segment->parsed()) return cmd_segment(seg, out);
        if (sweep->parsed()) return cmd_sweep(sw, out);
        if (otsu->parsed()) return cmd_otsu(ot, out);
        return cmd_bench(be, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const PgmError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    }
}

}  // namespace mlthresh::cli
