#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/report.hpp"
#include "mlthresh/pgm.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace mlthresh::cli {
namespace {

namespace fs = std::filesystem;

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("mlthresh_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string write_image(const std::string& name, const GrayImage& image) const {
        write_pgm_file(dir_ / name, image);
        return path(name);
    }
    static std::string camera() {
        return (mlthresh::testing::testdata_dir() / "natural" / "camera.pgm").string();
    }

    fs::path dir_;
};

TEST(KappaScheduleParseTest, Forms) {
    EXPECT_EQ(parse_kappa_schedule("1.0"), (std::vector<KappaPair>{{1.0, 1.0}}));
    EXPECT_EQ(parse_kappa_schedule("1:2,0.5:0.25,3"),
              (std::vector<KappaPair>{{1.0, 2.0}, {0.5, 0.25}, {3.0, 3.0}}));
    EXPECT_THROW(parse_kappa_schedule(""), std::invalid_argument);
    EXPECT_THROW(parse_kappa_schedule("1,"), std::invalid_argument);
    EXPECT_THROW(parse_kappa_schedule("1:"), std::invalid_argument);
    EXPECT_THROW(parse_kappa_schedule("a:1"), std::invalid_argument);
    EXPECT_THROW(parse_kappa_schedule("0:1"), std::invalid_argument);
    EXPECT_THROW(parse_kappa_schedule("1:-1"), std::invalid_argument);
    EXPECT_THROW(parse_kappa_schedule("1.5x"), std::invalid_argument);
}

TEST(RunReportTest, JsonRoundTrip) {
    mlthresh::testing::Rng rng(61);
    for (int i = 0; i < 50; ++i) {
        const auto image = mlthresh::testing::random_image(rng);
        SegmentationParams params;
        params.levels = 2 * mlthresh::testing::uniform_int(rng, 1, 5) + 1;
        params.kappa_schedule = {{0.1 * mlthresh::testing::uniform_int(rng, 1, 30), 1.0 / 3.0}};
        params.replacement = i % 2 ? Replacement::Midpoint : Replacement::WeightedMean;
        const auto seg = segment_image(image, params);

        RunReport report;
        report.input_path = "in/" + std::to_string(i) + ".pgm";
        report.thresholds = seg.result.thresholds;
        report.classes = seg.result.classes;
        report.effective_n = seg.result.effective_n;
        report.quality.mse = mse(image, seg.image);
        report.quality.psnr = psnr_from_mse(report.quality.mse);
        report.quality.elapsed_ms = 0.123456789 * i;
        report.quality.params = params;

        const auto text = to_json(report).dump();
        EXPECT_EQ(run_report_from_json(nlohmann::json::parse(text)), report);
    }
}

TEST(RunReportTest, InfinitePsnrSerializesAsString) {
    RunReport report;
    report.quality.psnr = Psnr::infinite();
    const auto j = to_json(report);
    EXPECT_EQ(j["quality"]["psnr_db"], "inf");
    EXPECT_TRUE(run_report_from_json(j).quality.psnr.is_infinite());
}

TEST_F(CliTest, SegmentWritesImageReportAndStdout) {
    const auto result = invoke({"segment", "--input", camera(), "--levels", "3", "--kappa", "1.0",
                                "--output", path("out.pgm"), "--report", path("report.json")});
    ASSERT_EQ(result.code, 0) << result.err;
    EXPECT_NE(result.out.find("thresholds: 55, 157, 203"), std::string::npos) << result.out;

    const auto image = read_pgm_file(camera());
    const auto expected = segment_image(image, SegmentationParams{});
    EXPECT_EQ(read_pgm_file(path("out.pgm")), expected.image);

    const auto report = run_report_from_json(nlohmann::json::parse(slurp(path("report.json"))));
    EXPECT_EQ(report.thresholds, expected.result.thresholds);
    EXPECT_EQ(report.classes, expected.result.classes);
    EXPECT_EQ(report.input_path, camera());
    EXPECT_NE(result.out.find("thresholds: " + join_thresholds(report.thresholds) + "\n"),
              std::string::npos);
    EXPECT_NE(result.out.find("psnr_db: " + report.quality.psnr.to_string()), std::string::npos);
}

TEST_F(CliTest, SegmentLena) {
    const auto lena = mlthresh::testing::lena_fixture();
    if (!lena) GTEST_SKIP() << "Lena fixture not fetched (tools/fetch_lena.py)";
    const auto result = invoke({"segment", "--input", lena->string(), "--levels", "3", "--kappa",
                                "1.0", "--output", path("out.pgm"), "--report", path("r.json")});
    ASSERT_EQ(result.code, 0) << result.err;
    const auto report = run_report_from_json(nlohmann::json::parse(slurp(path("r.json"))));
    const std::vector<int> reference{77, 128, 172};
    ASSERT_EQ(report.thresholds.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(report.thresholds[i], reference[i], 2);
}

TEST_F(CliTest, SegmentIsDeterministic) {
    for (const char* name : {"a.pgm", "b.pgm"}) {
        ASSERT_EQ(invoke({"segment", "--input", camera(), "--levels", "7", "--kappa-schedule",
                          "1:1.2,0.8", "--output", path(name)})
                      .code,
                  0);
    }
    EXPECT_EQ(slurp(path("a.pgm")), slurp(path("b.pgm")));
}

TEST_F(CliTest, SegmentRejectsEvenLevels) {
    const auto result =
        invoke({"segment", "--input", camera(), "--levels", "4", "--output", path("o.pgm")});
    EXPECT_EQ(result.code, 2);
    EXPECT_NE(result.err.find("odd"), std::string::npos);
    EXPECT_FALSE(fs::exists(path("o.pgm")));
}

TEST_F(CliTest, SegmentUsageErrors) {
    EXPECT_EQ(invoke({"segment", "--input", camera(), "--levels", "3", "--kappa", "1",
                      "--kappa-schedule", "1:1", "--output", path("o.pgm")})
                  .code,
              2);
    EXPECT_EQ(invoke({"segment", "--input", camera(), "--levels", "3", "--kappa-schedule", "1:x",
                      "--output", path("o.pgm")})
                  .code,
              2);
    EXPECT_EQ(invoke({"segment", "--input", camera(), "--levels", "3", "--kappa", "-1",
                      "--output", path("o.pgm")})
                  .code,
              2);
    EXPECT_EQ(invoke({"segment", "--input", camera(), "--levels", "3", "--replacement", "median",
                      "--output", path("o.pgm")})
                  .code,
              2);
    EXPECT_EQ(invoke({"segment", "--input", camera()}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST_F(CliTest, SegmentIoErrors) {
    EXPECT_EQ(invoke({"segment", "--input", path("missing.pgm"), "--levels", "3", "--output",
                      path("o.pgm")})
                  .code,
              1);
    std::ofstream(path("garbage.pgm")) << "not an image";
    EXPECT_EQ(invoke({"segment", "--input", path("garbage.pgm"), "--levels", "3", "--output",
                      path("o.pgm")})
                  .code,
              1);
    EXPECT_EQ(invoke({"segment", "--input", camera(), "--levels", "3", "--output",
                      path("no/such/dir/o.pgm")})
                  .code,
              1);
    EXPECT_EQ(invoke({"segment", "--input", camera(), "--levels", "3", "--output", path("o.pgm"),
                      "--report", path("no/such/dir/r.json")})
                  .code,
              1);
}

TEST_F(CliTest, MidpointNeverBeatsWeightedMean) {
    for (const auto& fixture : mlthresh::testing::natural_fixtures()) {
        ASSERT_EQ(invoke({"segment", "--input", fixture.string(), "--levels", "5", "--output",
                          path("wm.pgm"), "--report", path("wm.json")})
                      .code,
                  0);
        ASSERT_EQ(invoke({"segment", "--input", fixture.string(), "--levels", "5", "--replacement",
                          "midpoint", "--output", path("mid.pgm"), "--report", path("mid.json")})
                      .code,
                  0);
        const auto wm = run_report_from_json(nlohmann::json::parse(slurp(path("wm.json"))));
        const auto mid = run_report_from_json(nlohmann::json::parse(slurp(path("mid.json"))));
        EXPECT_LE(mid.quality.psnr, wm.quality.psnr) << fixture;
        EXPECT_EQ(mid.quality.params.replacement, Replacement::Midpoint);
    }
}

TEST_F(CliTest, SweepCsv) {
    const auto result = invoke({"sweep", "--input", camera(), "--max-levels", "9", "--epsilon",
                                "0.3", "--csv", path("sweep.csv"), "--runs", "3"});
    ASSERT_EQ(result.code, 0) << result.err;
    const auto rows = lines_of(slurp(path("sweep.csv")));
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0], "n,psnr_db,elapsed_ms");
    EXPECT_EQ(rows[1].rfind("3,23.59,", 0), 0u) << rows[1];
    EXPECT_EQ(rows[2].rfind("5,27.79,", 0), 0u) << rows[2];
    EXPECT_EQ(rows[3].rfind("7,28.42,", 0), 0u) << rows[3];
    EXPECT_EQ(rows[4].rfind("9,28.51,", 0), 0u) << rows[4];
    EXPECT_NE(result.out.find("chosen_n: 7"), std::string::npos);
}

TEST_F(CliTest, SweepConstantImage) {
    const auto input = write_image("flat.pgm", GrayImage::filled(16, 16, 90));
    const auto result = invoke(
        {"sweep", "--input", input, "--max-levels", "9", "--epsilon", "0.3", "--csv", path("s.csv")});
    ASSERT_EQ(result.code, 0) << result.err;
    const auto rows = lines_of(slurp(path("s.csv")));
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].rfind("3,inf,", 0), 0u);
    EXPECT_NE(result.out.find("chosen_n: 3"), std::string::npos);
}

TEST_F(CliTest, SweepValidation) {
    EXPECT_EQ(invoke({"sweep", "--input", camera(), "--max-levels", "8", "--csv", path("s.csv")}).code, 2);
    EXPECT_EQ(invoke({"sweep", "--input", camera(), "--max-levels", "9", "--epsilon", "0", "--csv",
                      path("s.csv")})
                  .code,
              2);
    EXPECT_EQ(invoke({"sweep", "--input", path("nope.pgm"), "--max-levels", "9", "--csv",
                      path("s.csv")})
                  .code,
              1);
}

TEST_F(CliTest, OtsuBimodal) {
    std::vector<Intensity> pixels(200, 40);
    std::fill(pixels.begin() + 120, pixels.end(), 210);
    const GrayImage image(20, 10, pixels);
    const auto input = write_image("bimodal.pgm", image);
    const auto result = invoke({"otsu", "--input", input, "--classes", "2", "--report", path("o.json")});
    ASSERT_EQ(result.code, 0) << result.err;
    const auto brute = oracle::brute_force_otsu(compute_histogram(image), 1);
    EXPECT_NE(result.out.find("thresholds: " + std::to_string(brute.cuts[0]) + "\n"),
              std::string::npos)
        << result.out;
    const auto report = nlohmann::json::parse(slurp(path("o.json")));
    EXPECT_EQ(report["thresholds"], nlohmann::json(brute.cuts));
    EXPECT_EQ(report["psnr_db"], "inf");
}

TEST_F(CliTest, OtsuClassRange) {
    EXPECT_EQ(invoke({"otsu", "--input", camera(), "--classes", "5"}).code, 2);
    EXPECT_EQ(invoke({"otsu", "--input", camera(), "--classes", "1"}).code, 2);
    EXPECT_EQ(invoke({"otsu", "--input", path("nope.pgm"), "--classes", "2"}).code, 1);
}

TEST_F(CliTest, BenchRowCount) {
    const auto fixtures = mlthresh::testing::natural_fixtures();
    ASSERT_GE(fixtures.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) fs::copy_file(fixtures[i], dir_ / fixtures[i].filename());
    fs::create_directories(dir_ / "empty");

    const auto result = invoke({"bench", "--input", dir_.string(), "--levels", "3,5,7,9", "--csv",
                                path("bench.csv"), "--runs", "2"});
    ASSERT_EQ(result.code, 0) << result.err;
    const auto rows = lines_of(slurp(path("bench.csv")));
    ASSERT_EQ(rows.size(), 17u);
    EXPECT_EQ(rows[0], "image,width,height,n,effective_n,thresholds,psnr_db,elapsed_ms");
    EXPECT_NE(rows[1].find(",3,3,"), std::string::npos) << rows[1];
    EXPECT_NE(rows[4].find(",9,9,"), std::string::npos) << rows[4];
}

TEST_F(CliTest, BenchValidation) {
    fs::create_directories(dir_ / "empty");
    EXPECT_EQ(invoke({"bench", "--input", path("empty"), "--csv", path("b.csv")}).code, 2);
    EXPECT_EQ(invoke({"bench", "--input", camera(), "--levels", "3,4", "--csv", path("b.csv")}).code, 2);
    EXPECT_EQ(invoke({"bench", "--input", path("missing.pgm"), "--csv", path("b.csv")}).code, 1);
}

}  // namespace
}  // namespace mlthresh::cli
