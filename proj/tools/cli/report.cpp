#include "report.hpp"

#include <stdexcept>

namespace mlthresh::cli {

using nlohmann::json;

std::string to_string(Replacement replacement) {
    return replacement == Replacement::Midpoint ? "midpoint" : "weighted-mean";
}

Replacement replacement_from_string(const std::string& name) {
    if (name == "weighted-mean") return Replacement::WeightedMean;
    if (name == "midpoint") return Replacement::Midpoint;
    throw std::invalid_argument("unknown replacement '" + name + "'");
}

json psnr_to_json(const Psnr& psnr) {
    if (psnr.is_infinite()) return "inf";
    return psnr.db();
}

Psnr psnr_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "inf") {
            throw std::invalid_argument("psnr_db: expected a number or \"inf\"");
        }
        return Psnr::infinite();
    }
    return Psnr::decibels(j.get<double>());
}

json to_json(const RunReport& report) {
    json schedule = json::array();
    for (const auto& k : report.quality.params.kappa_schedule) {
        schedule.push_back({k.lower, k.upper});
    }
    json classes = json::array();
    for (const auto& c : report.classes) {
        classes.push_back({{"lo", c.interval.lo()}, {"hi", c.interval.hi()}, {"value", c.value}});
    }
    return {
        {"input", report.input_path},
        {"params",
         {{"levels", report.quality.params.levels},
          {"kappa_schedule", schedule},
          {"replacement", to_string(report.quality.params.replacement)}}},
        {"thresholds", report.thresholds},
        {"effective_n", report.effective_n},
        {"classes", classes},
        {"quality",
         {{"mse", report.quality.mse},
          {"psnr_db", psnr_to_json(report.quality.psnr)},
          {"elapsed_ms", report.quality.elapsed_ms}}},
    };
}

RunReport run_report_from_json(const json& j) {
    RunReport report;
    report.input_path = j.at("input").get<std::string>();

    const json& params = j.at("params");
    report.quality.params.levels = params.at("levels").get<int>();
    report.quality.params.kappa_schedule.clear();
    for (const json& k : params.at("kappa_schedule")) {
        report.quality.params.kappa_schedule.push_back({k.at(0).get<double>(), k.at(1).get<double>()});
    }
    report.quality.params.replacement =
        replacement_from_string(params.at("replacement").get<std::string>());

    report.thresholds = j.at("thresholds").get<std::vector<Intensity>>();
    report.effective_n = j.at("effective_n").get<int>();
    for (const json& c : j.at("classes")) {
        report.classes.push_back({SubRange(c.at("lo").get<int>(), c.at("hi").get<int>()),
                                  c.at("value").get<Intensity>()});
    }

    const json& quality = j.at("quality");
    report.quality.mse = quality.at("mse").get<double>();
    report.quality.psnr = psnr_from_json(quality.at("psnr_db"));
    report.quality.elapsed_ms = quality.at("elapsed_ms").get<double>();
    return report;
}

json to_json(const OtsuReport& report) {
    return {
        {"input", report.input_path},
        {"classes", report.classes},
        {"thresholds", report.result.thresholds},
        {"criterion", report.result.criterion},
        {"psnr_db", psnr_to_json(report.psnr)},
        {"elapsed_ms", report.elapsed_ms},
    };
}

}  // namespace mlthresh::cli
