#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mlthresh/otsu.hpp"
#include "mlthresh/quality.hpp"
#include "mlthresh/thresholder.hpp"

namespace mlthresh::cli {

/// Everything one `segment` invocation produced, as written to --report.
struct RunReport {
    std::string input_path;
    std::vector<Intensity> thresholds;
    std::vector<ClassInterval> classes;
    int effective_n = 0;
    QualityReport quality;  // quality.params is the echo of the run parameters

    friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::string to_string(Replacement replacement);
Replacement replacement_from_string(const std::string& name);

nlohmann::json to_json(const RunReport& report);
RunReport run_report_from_json(const nlohmann::json& j);

/// PSNR as a JSON number, or the string "inf" for exact reconstructions.
nlohmann::json psnr_to_json(const Psnr& psnr);
Psnr psnr_from_json(const nlohmann::json& j);

struct OtsuReport {
    std::string input_path;
    int classes = 2;
    OtsuResult result;
    Psnr psnr = Psnr::infinite();
    double elapsed_ms = 0.0;
};

nlohmann::json to_json(const OtsuReport& report);

}  // namespace mlthresh::cli
