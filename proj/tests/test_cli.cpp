#include <filesystem>
#include <set>
#include <sstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"
#include "ldsym/io.hpp"
#include "ldsym/render.hpp"
#include "synthetic.hpp"

using namespace ldsym;
namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("ldsym_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_gray(const GrayImage& img, const fs::path& path) {
    cv::Mat m(img.height(), img.width(), CV_8UC1);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) m.at<std::uint8_t>(y, x) = cv::saturate_cast<std::uint8_t>(img.at(x, y) * 255.0);
    REQUIRE(cv::imwrite(path.string(), m));
}

void write_flat_rgb(int w, int h, const fs::path& path) {
    REQUIRE(cv::imwrite(path.string(), cv::Mat(h, w, CV_8UC3, cv::Scalar(128, 128, 128))));
}

SymmetryAxis horizontal(double y, double x0, double x1, double score) {
    SymmetryAxis a;
    a.p1 = {x0, y};
    a.p2 = {x1, y};
    a.score = score;
    a.theta = kPi / 2;
    return a;
}

std::set<std::array<std::uint8_t, 3>> colours(const RgbImage& img) {
    std::set<std::array<std::uint8_t, 3>> c;
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) c.insert(img.pixel(x, y));
    return c;
}

}  // namespace

TEST_CASE("detect writes deterministic json") {
    const fs::path dir = scratch("detect");
    write_gray(testing::mirrored_texture(128, 128, 21), dir / "mirror.png");

    const auto first = invoke({"detect", (dir / "mirror.png").string(), "-o", (dir / "a.json").string(),
                            "--write-config", (dir / "cfg.json").string()});
    REQUIRE(first.code == cli::kOk);
    const auto second = invoke({"detect", (dir / "mirror.png").string(), "-o", (dir / "b.json").string(), "--config",
                             (dir / "cfg.json").string(), "--set", "runtime.threads=4"});
    REQUIRE(second.code == cli::kOk);
    const std::string a = read_text_file((dir / "a.json").string());
    CHECK(a == read_text_file((dir / "b.json").string()));

    const auto axes = detections_from_json(a);
    REQUIRE(!axes.empty());
    CHECK(std::abs(axes[0].p1.x - 64.0) < 2.0);
    CHECK(std::abs(axes[0].p2.x - 64.0) < 2.0);

    const auto dumps = invoke({"detect", (dir / "mirror.png").string(), "-o", (dir / "c.json").string(),
                            "--dump-features", (dir / "f.json").string(), "--dump-candidates",
                            (dir / "c.csv").string(), "--dump-density", (dir / "density").string()});
    CHECK(dumps.code == cli::kOk);
    CHECK(fs::exists(dir / "f.json"));
    CHECK(fs::exists(dir / "c.csv"));
    CHECK(fs::exists(dir / "density.csv"));
    CHECK(Json::parse(read_text_file((dir / "density.json").string()))["n_rho"] == 800);
    fs::remove_all(dir);
}

TEST_CASE("detect exit codes") {
    const fs::path dir = scratch("codes");
    write_gray(testing::constant_image(128, 128, 0.4), dir / "flat.png");
    write_gray(testing::mirrored_texture(128, 128, 3), dir / "ok.png");
    atomic_write_file((dir / "broken.png").string(), "not an image");

    const auto flat = invoke({"detect", (dir / "flat.png").string(), "-o", (dir / "flat.json").string()});
    CHECK(flat.code == cli::kNoEvidence);
    CHECK_FALSE(fs::exists(dir / "flat.json"));

    CHECK(invoke({"detect", (dir / "broken.png").string(), "-o", (dir / "x.json").string()}).code == cli::kBadInput);
    CHECK(invoke({"detect", (dir / "nothing.png").string(), "-o", (dir / "x.json").string()}).code == cli::kBadInput);
    CHECK_FALSE(fs::exists(dir / "x.json"));

    const std::string ok = (dir / "ok.png").string(), out = (dir / "o.json").string();
    CHECK(invoke({"detect", ok, "-o", out, "--set", "density.g=-1"}).code == cli::kBadConfig);
    CHECK(invoke({"detect", ok, "-o", out, "--set", "density.h=1"}).code == cli::kBadConfig);
    CHECK(invoke({"detect", ok, "-o", out, "--set", "nonsense"}).code == cli::kBadConfig);
    CHECK(invoke({"detect", ok, "-o", out, "--peaks.top_k", "0"}).code == cli::kBadConfig);
    atomic_write_file((dir / "bad.json").string(), R"({"density.k": "big"})");
    CHECK(invoke({"detect", ok, "-o", out, "--config", (dir / "bad.json").string()}).code == cli::kBadConfig);
    CHECK_FALSE(fs::exists(dir / "o.json"));
    CHECK(invoke({"frobnicate"}).code == cli::kBadInput);
    fs::remove_all(dir);
}

TEST_CASE("batch detection over a directory") {
    const fs::path dir = scratch("batch");
    fs::create_directories(dir / "in");
    write_gray(testing::mirrored_texture(128, 128, 1), dir / "in" / "one.png");
    write_gray(testing::fourfold_texture(128, 128, 2), dir / "in" / "two.png");
    write_gray(testing::constant_image(128, 128, 0.2), dir / "in" / "three.png");

    const auto r = invoke({"detect", (dir / "in").string(), "-o", (dir / "out").string(), "--runtime.threads", "3"});
    CHECK(r.code == cli::kNoEvidence);
    CHECK(r.out.find("2/3 images processed") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "one.json"));
    CHECK(fs::exists(dir / "out" / "two.json"));
    CHECK_FALSE(fs::exists(dir / "out" / "three.json"));

    REQUIRE(invoke({"detect", (dir / "in" / "two.png").string(), "-o", (dir / "single.json").string()}).code ==
            cli::kOk);
    CHECK(read_text_file((dir / "single.json").string()) == read_text_file((dir / "out" / "two.json").string()));
    fs::remove_all(dir);
}

TEST_CASE("render overlays") {
    const fs::path dir = scratch("render");
    write_flat_rgb(128, 140, dir / "img.png");
    const std::string img = (dir / "img.png").string();

    atomic_write_file((dir / "none.json").string(), detections_to_json({}));
    REQUIRE(invoke({"render", img, (dir / "none.json").string(), "-o", (dir / "none.png").string()}).code == cli::kOk);
    const RgbImage src = load_rgb(img);
    CHECK(load_rgb((dir / "none.png").string()).rgb == src.rgb);

    atomic_write_file((dir / "one.json").string(), detections_to_json({horizontal(70, 20, 100, 1.0)}));
    REQUIRE(invoke({"render", img, (dir / "one.json").string(), "-o", (dir / "one.png").string()}).code == cli::kOk);
    const auto one = colours(load_rgb((dir / "one.png").string()));
    CHECK(one == std::set<std::array<std::uint8_t, 3>>{{128, 128, 128}, kAxisColors[0]});

    std::vector<SymmetryAxis> six;
    for (int n = 0; n < 6; ++n) six.push_back(horizontal(15 + 20 * n, 20, 100, 1.0 - 0.1 * n));
    atomic_write_file((dir / "six.json").string(), detections_to_json(six));
    REQUIRE(invoke({"render", img, (dir / "six.json").string(), "-o", (dir / "six.png").string()}).code == cli::kOk);
    const RgbImage drawn = load_rgb((dir / "six.png").string());
    CHECK(colours(drawn).size() == 6);
    for (int n = 0; n < 5; ++n) CHECK(drawn.pixel(60, 15 + 20 * n) == kAxisColors[n]);
    for (int x = 0; x < drawn.width; ++x) CHECK(drawn.pixel(x, 115) == src.pixel(x, 115));

    atomic_write_file((dir / "far.json").string(), detections_to_json({horizontal(70, 20, 400, 1.0)}));
    CHECK(invoke({"render", img, (dir / "far.json").string(), "-o", (dir / "far.png").string()}).code ==
          cli::kBadInput);
    CHECK_FALSE(fs::exists(dir / "far.png"));
    fs::remove_all(dir);
}

TEST_CASE("render heatmap panel") {
    const fs::path dir = scratch("heat");
    write_gray(testing::mirrored_texture(128, 128, 5), dir / "m.png");
    REQUIRE(invoke({"detect", (dir / "m.png").string(), "-o", (dir / "m.json").string()}).code == cli::kOk);
    REQUIRE(invoke({"render", (dir / "m.png").string(), (dir / "m.json").string(), "-o", (dir / "h.png").string(),
                 "--heatmap"})
                .code == cli::kOk);
    const RgbImage h = load_rgb((dir / "h.png").string());
    CHECK(h.height == 128);
    CHECK(h.width > 128);
    fs::remove_all(dir);
}

TEST_CASE("eval on a toy manifest") {
    const fs::path dir = scratch("eval");
    fs::create_directories(dir / "gt");
    fs::create_directories(dir / "dets");
    fs::create_directories(dir / "empty");
    atomic_write_file((dir / "gt" / "a.txt").string(), "50 10 50 90\n10 50 90 50\n");
    atomic_write_file((dir / "gt" / "b.txt").string(), "30 0 30 60\n");
    atomic_write_file((dir / "manifest.json").string(),
                      R"({"images": [{"image": "a.png", "gt": "gt/a.txt"}, {"image": "b.png", "gt": "gt/b.txt"}]})");

    // a: exact vertical hit (0.9) and a diagonal false alarm (0.5); b: one hit (0.7).
    SymmetryAxis diag;
    diag.p1 = {5, 5};
    diag.p2 = {35, 35};
    diag.score = 0.5;
    SymmetryAxis vert;
    vert.p1 = {50, 10};
    vert.p2 = {50, 90};
    vert.score = 0.9;
    SymmetryAxis hit_b;
    hit_b.p1 = {31, 2};
    hit_b.p2 = {31, 58};
    hit_b.score = 0.7;
    atomic_write_file((dir / "dets" / "a.json").string(), detections_to_json({vert, diag}));
    atomic_write_file((dir / "dets" / "b.json").string(), detections_to_json({hit_b}));

    const auto r = invoke({"eval", (dir / "manifest.json").string(), (dir / "dets").string(), "-o",
                        (dir / "report.json").string()});
    REQUIRE(r.code == cli::kOk);
    CHECK(r.out.find("max F1 = 0.8") != std::string::npos);
    const Json report = Json::parse(read_text_file((dir / "report.json").string()));
    // Best threshold 0.7: TP 2, FP 0, FN 1.
    CHECK(report["tp"] == 2);
    CHECK(report["fp"] == 0);
    CHECK(report["fn"] == 1);
    CHECK(report["precision"].get<double>() == 1.0);
    CHECK(report["recall"].get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(report["threshold"].get<double>() == 0.7);
    const std::string pr = read_text_file((dir / "report.pr.csv").string());
    CHECK(pr.rfind("threshold,precision,recall\ninf,1,0\n", 0) == 0);
    CHECK(std::count(pr.begin(), pr.end(), '\n') == 5);

    const auto empty = invoke({"eval", (dir / "manifest.json").string(), (dir / "empty").string(), "-o",
                            (dir / "empty.json").string()});
    REQUIRE(empty.code == cli::kOk);
    CHECK(Json::parse(read_text_file((dir / "empty.json").string()))["recall"].get<double>() == 0.0);

    // Ground truth used as detections scores perfectly.
    fs::create_directories(dir / "perfect");
    for (const char* name : {"a", "b"}) {
        std::vector<SymmetryAxis> axes;
        for (const auto& s : parse_ground_truth(read_text_file((dir / "gt" / (std::string(name) + ".txt")).string()))) {
            SymmetryAxis ax;
            ax.p1 = s.a;
            ax.p2 = s.b;
            ax.score = 1.0;
            axes.push_back(ax);
        }
        atomic_write_file((dir / "perfect" / (std::string(name) + ".json")).string(), detections_to_json(axes));
    }
    const auto perfect = invoke({"pr-curve", (dir / "manifest.json").string(), (dir / "perfect").string(), "-o",
                              (dir / "perfect.csv").string()});
    REQUIRE(perfect.code == cli::kOk);
    CHECK(perfect.out == "max F1 = 1\n");

    atomic_write_file((dir / "gt" / "a.txt").string(), "");
    atomic_write_file((dir / "gt" / "b.txt").string(), "");
    CHECK(invoke({"eval", (dir / "manifest.json").string(), (dir / "dets").string(), "-o", (dir / "x.json").string()})
              .code == cli::kBadInput);
    fs::remove_all(dir);
}

TEST_CASE("convert-gt") {
    const fs::path dir = scratch("convert");
    atomic_write_file((dir / "psu.txt").string(), "11 21 31 41\n");
    REQUIRE(invoke({"convert-gt", (dir / "psu.txt").string(), "-o", (dir / "out.txt").string()}).code == cli::kOk);
    const auto axes = parse_ground_truth(read_text_file((dir / "out.txt").string()));
    REQUIRE(axes.size() == 1);
    CHECK(axes[0].a == Vec2{10.5, 20.5});

    atomic_write_file((dir / "ny.txt").string(), "11 21\n31 41\n");
    REQUIRE(invoke({"convert-gt", (dir / "ny.txt").string(), "-o", (dir / "ny_out.txt").string(), "--format", "ny"})
                .code == cli::kOk);
    CHECK(read_text_file((dir / "ny_out.txt").string()) == read_text_file((dir / "out.txt").string()));
    CHECK(invoke({"convert-gt", (dir / "ny.txt").string(), "-o", (dir / "z.txt").string(), "--format", "xml"}).code ==
          cli::kBadInput);
    fs::remove_all(dir);
}
