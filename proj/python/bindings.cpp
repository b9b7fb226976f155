#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ldsym/density.hpp"
#include "ldsym/error.hpp"
#include "ldsym/evaluation.hpp"
#include "ldsym/features.hpp"
#include "ldsym/pipeline.hpp"
#include "ldsym/special.hpp"
#include "ldsym/voting.hpp"

namespace py = pybind11;
using namespace ldsym;

namespace {

using Point = std::pair<double, double>;
using SegmentTuple = std::tuple<double, double, double, double>;

Vec2 vec(const Point& p) { return {p.first, p.second}; }
Point tup(Vec2 v) { return {v.x, v.y}; }
Segment segment(const SegmentTuple& s) { return {{std::get<0>(s), std::get<1>(s)}, {std::get<2>(s), std::get<3>(s)}}; }

GrayImage to_image(const py::array& array) {
    if (array.ndim() != 2 && !(array.ndim() == 3 && array.shape(2) == 3))
        throw Error(ErrorKind::InvalidInput, "image must be HxW or HxWx3");
    const int h = static_cast<int>(array.shape(0));
    const int w = static_cast<int>(array.shape(1));
    if (py::isinstance<py::array_t<std::uint8_t>>(array)) {
        auto a = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>::ensure(array);
        std::span<const std::uint8_t> bytes(a.data(), static_cast<std::size_t>(a.size()));
        return array.ndim() == 2 ? GrayImage::from_gray8(w, h, bytes) : GrayImage::from_rgb8(w, h, bytes);
    }
    if (array.ndim() != 2) throw Error(ErrorKind::InvalidInput, "float images must be single channel");
    auto a = py::array_t<double, py::array::c_style | py::array::forcecast>::ensure(array);
    return GrayImage(w, h, std::vector<double>(a.data(), a.data() + a.size()));
}

PipelineConfig to_config(const py::dict& overrides) {
    PipelineConfig config;
    const py::object dumps = py::module_::import("json").attr("dumps");
    for (const auto& [key, value] : overrides)
        set_config_value(config, py::cast<std::string>(key), py::cast<std::string>(dumps(value)));
    config.validate();
    return config;
}

py::array_t<double> grid_array(const DensityGrid& grid) {
    const auto& spec = grid.spec();
    py::array_t<double> out({spec.n_rho, spec.n_theta});
    auto view = out.mutable_unchecked<2>();
    for (int j = 0; j < spec.n_theta; ++j)
        for (int i = 0; i < spec.n_rho; ++i) view(i, j) = grid.at(i, j);
    return out;
}

py::dict detect_image(const py::array& image, const py::dict& config, bool return_density) {
    const PipelineConfig cfg = to_config(config);
    DetectionResult result;
    {
        const GrayImage img = to_image(image);
        py::gil_scoped_release release;
        result = detect(img, cfg);
    }
    py::list axes;
    for (const auto& a : result.axes) {
        py::dict d;
        d["p1"] = tup(a.p1);
        d["p2"] = tup(a.p2);
        d["theta"] = a.theta;
        d["rho"] = a.rho;
        d["score"] = a.score;
        d["support_count"] = a.support_count;
        axes.append(d);
    }
    py::dict out;
    out["axes"] = axes;
    out["num_features"] = result.features.size();
    out["num_candidates"] = result.candidates.size();
    if (return_density) out["density"] = grid_array(result.density);
    return out;
}

py::array_t<double> joint_density(const std::vector<double>& theta, const std::vector<double>& rho,
                                  const std::vector<double>& weight, double g, double k, int n_rho, int n_theta,
                                  unsigned threads) {
    if (theta.size() != rho.size() || theta.size() != weight.size())
        throw Error(ErrorKind::InvalidInput, "theta, rho and weight must have equal length");
    CandidateSet set;
    for (std::size_t n = 0; n < theta.size(); ++n) {
        AxisCandidate c{};
        c.theta = theta[n];
        c.rho = rho[n];
        c.weight = weight[n];
        set.candidates.push_back(c);
    }
    set = normalize_weights(std::move(set));
    DensityGrid grid;
    {
        py::gil_scoped_release release;
        grid = evaluate_joint_density(set, GridSpec{n_rho, n_theta}, KernelParams{g, k}, threads);
    }
    return grid_array(grid);
}

py::dict curve_dict(const PrCurve& curve) {
    py::list points;
    for (const auto& p : curve.points) {
        py::dict d;
        d["threshold"] = p.threshold;
        d["precision"] = p.report.precision;
        d["recall"] = p.report.recall;
        d["tp"] = p.report.tp;
        d["fp"] = p.report.fp;
        d["fn"] = p.report.fn;
        points.append(d);
    }
    py::dict out;
    out["points"] = points;
    out["max_f1"] = curve.max_f1();
    out["threshold"] = curve.max_f1_threshold();
    return out;
}

// images: [(detections: [(x1, y1, x2, y2, score)], ground_truth: [(x1, y1, x2, y2)])]
py::dict benchmark_curve(const std::vector<std::pair<std::vector<std::tuple<double, double, double, double, double>>,
                                                     std::vector<SegmentTuple>>>& images) {
    std::vector<ImageEvaluation> evals;
    for (const auto& [dets, gts] : images) {
        ImageEvaluation e;
        for (const auto& [x1, y1, x2, y2, score] : dets) e.detections.push_back({{{x1, y1}, {x2, y2}}, score});
        for (const auto& g : gts) e.ground_truth.push_back(segment(g));
        evals.push_back(std::move(e));
    }
    return curve_dict(pr_curve(evals));
}

}  // namespace

PYBIND11_MODULE(_ldsym, m) {
    m.doc() = "Reflection-symmetry axis detection";
    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    m.def("normalize_point", [](Point p, double w, double h) { return tup(normalize_point(vec(p), w, h)); },
          py::arg("point"), py::arg("width"), py::arg("height"));
    m.def("denormalize_point", [](Point p, double w, double h) { return tup(denormalize_point(vec(p), w, h)); },
          py::arg("point"), py::arg("width"), py::arg("height"));
    m.def(
        "triangulate",
        [](Point a, Point b) {
            const Axis axis = triangulate(vec(a), vec(b));
            return std::pair{axis.theta, axis.rho};
        },
        py::arg("p"), py::arg("q"), "Perpendicular bisector of two normalized points as (theta, rho).");
    m.def("reflect", [](Point p, double theta, double rho) { return tup(reflect(vec(p), Axis{theta, rho})); },
          py::arg("point"), py::arg("theta"), py::arg("rho"));
    m.def(
        "pair_weight",
        [](double mag_i, double dir_i, std::vector<double> hist_i, double mag_j, double dir_j,
           std::vector<double> hist_j, double theta) {
            FeaturePoint fi, fj;
            fi.magnitude = mag_i;
            fi.direction = dir_i;
            fi.texture = std::move(hist_i);
            fj.magnitude = mag_j;
            fj.direction = dir_j;
            fj.texture = std::move(hist_j);
            const PairWeight w = pair_weight(fi, fj, theta);
            py::dict d;
            d["m"] = w.m;
            d["c"] = w.c;
            d["d"] = w.d;
            d["omega"] = w.omega;
            return d;
        },
        py::arg("magnitude_i"), py::arg("direction_i"), py::arg("texture_i"), py::arg("magnitude_j"),
        py::arg("direction_j"), py::arg("texture_j"), py::arg("theta"));
    m.def("bessel_i0", &bessel_i0, py::arg("x"));
    m.def("vmf_density", &vmf_density, py::arg("dot"), py::arg("k"));
    m.def("evaluate_joint_density", &joint_density, py::arg("theta"), py::arg("rho"), py::arg("weight"),
          py::arg("g") = 0.03, py::arg("k") = 40.0, py::arg("n_rho") = 800, py::arg("n_theta") = 180,
          py::arg("threads") = 1, "Density grid of shape (n_rho, n_theta); weights are normalized first.");
    m.def("detect", &detect_image, py::arg("image"), py::arg("config") = py::dict(),
          py::arg("return_density") = false,
          "Detect axes in an HxW float image in [0, 1] or an 8-bit gray/RGB array. "
          "`config` maps flat keys such as 'density.g' to values.");
    m.def(
        "axis_match",
        [](const SegmentTuple& det, const SegmentTuple& gt, double max_angle_deg, double center_fraction) {
            return axis_match(segment(det), segment(gt), MatchCriteria{max_angle_deg, center_fraction});
        },
        py::arg("detection"), py::arg("ground_truth"), py::arg("max_angle_deg") = 10.0,
        py::arg("center_fraction") = 0.2);
    m.def("pr_curve", &benchmark_curve, py::arg("images"),
          "images: list of (detections [(x1, y1, x2, y2, score)], ground truth [(x1, y1, x2, y2)]).");
}
