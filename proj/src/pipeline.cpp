#include "ldsym/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "ldsym/error.hpp"

namespace ldsym {

namespace {

using Json = nlohmann::ordered_json;

struct Field {
    std::function<void(PipelineConfig&, const Json&)> assign;
    std::function<Json(const PipelineConfig&)> read;
};

template <typename T, typename Access>
Field make_field(Access access) {
    return {[access](PipelineConfig& c, const Json& v) {
                if constexpr (std::is_floating_point_v<T>) {
                    if (!v.is_number()) throw std::invalid_argument("expected a number");
                    access(c) = v.template get<T>();
                } else {
                    if (v.is_number_float()) {
                        const double d = v.get<double>();
                        if (d != static_cast<double>(static_cast<long long>(d)))
                            throw std::invalid_argument("expected an integer");
                    } else if (!v.is_number_integer()) {
                        throw std::invalid_argument("expected an integer");
                    }
                    const long long n = v.is_number_float() ? static_cast<long long>(v.get<double>())
                                                            : v.get<long long>();
                    if constexpr (std::is_unsigned_v<T>) {
                        if (n < 0) throw std::invalid_argument("expected a non-negative integer");
                    }
                    if (!std::in_range<T>(n))
                        throw std::invalid_argument("integer out of range");
                    access(c) = static_cast<T>(n);
                }
            },
            [access](const PipelineConfig& c) {
                return Json(access(const_cast<PipelineConfig&>(c)));
            }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
    static const std::vector<std::pair<std::string, Field>> table = {
        {"features.num_scales", make_field<int>([](PipelineConfig& c) -> int& { return c.bank.num_scales; })},
        {"features.num_orientations",
         make_field<int>([](PipelineConfig& c) -> int& { return c.bank.num_orientations; })},
        {"features.base_wavelength",
         make_field<double>([](PipelineConfig& c) -> double& { return c.bank.base_wavelength; })},
        {"features.grid_stride", make_field<int>([](PipelineConfig& c) -> int& { return c.bank.grid_stride; })},
        {"features.magnitude_threshold",
         make_field<double>([](PipelineConfig& c) -> double& { return c.magnitude_threshold; })},
        {"features.histogram_radius",
         make_field<double>([](PipelineConfig& c) -> double& { return c.histogram_radius; })},
        {"voting.max_per_scale",
         make_field<std::size_t>([](PipelineConfig& c) -> std::size_t& { return c.max_per_scale; })},
        {"density.g", make_field<double>([](PipelineConfig& c) -> double& { return c.kernel.g; })},
        {"density.k", make_field<double>([](PipelineConfig& c) -> double& { return c.kernel.k; })},
        {"density.n_rho", make_field<int>([](PipelineConfig& c) -> int& { return c.grid.n_rho; })},
        {"density.n_theta", make_field<int>([](PipelineConfig& c) -> int& { return c.grid.n_theta; })},
        {"peaks.nms_rho_radius", make_field<int>([](PipelineConfig& c) -> int& { return c.peaks.nms_rho_radius; })},
        {"peaks.nms_theta_radius",
         make_field<int>([](PipelineConfig& c) -> int& { return c.peaks.nms_theta_radius; })},
        {"peaks.rel_threshold", make_field<double>([](PipelineConfig& c) -> double& { return c.peaks.rel_threshold; })},
        {"peaks.top_k", make_field<std::size_t>([](PipelineConfig& c) -> std::size_t& { return c.peaks.top_k; })},
        {"eval.cluster_angle_deg",
         make_field<double>([](PipelineConfig& c) -> double& { return c.cluster.angle_tol_deg; })},
        {"eval.cluster_center_tol", make_field<double>([](PipelineConfig& c) -> double& { return c.cluster.center_tol; })},
        {"runtime.threads", make_field<unsigned>([](PipelineConfig& c) -> unsigned& { return c.threads; })},
    };
    return table;
}

const Field& field(const std::string& key) {
    for (const auto& [name, f] : fields())
        if (name == key) return f;
    throw Error(ErrorKind::Config, "unknown config key '" + key + "'");
}

void assign(PipelineConfig& config, const std::string& key, const Json& value) {
    const Field& f = field(key);
    try {
        f.assign(config, value);
    } catch (const std::exception& e) {
        throw Error(ErrorKind::Config, "bad value for '" + key + "': " + e.what());
    }
}

}  // namespace

void PipelineConfig::validate() const {
    bank.validate();
    if (!(magnitude_threshold >= 0.0 && magnitude_threshold <= 1.0))
        throw Error(ErrorKind::Config, "features.magnitude_threshold must lie in [0,1]");
    if (!(histogram_radius > 0.0)) throw Error(ErrorKind::Config, "features.histogram_radius must be > 0");
    if (max_per_scale < 2) throw Error(ErrorKind::Config, "voting.max_per_scale must be >= 2");
    kernel.validate();
    grid.validate();
    peaks.validate();
    cluster.validate();
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [name, f] : fields()) keys.push_back(name);
    return keys;
}

void set_config_value(PipelineConfig& config, const std::string& key, const std::string& value) {
    Json parsed;
    try {
        parsed = Json::parse(value);
    } catch (const Json::exception&) {
        throw Error(ErrorKind::Config, "bad value for '" + key + "': '" + value + "' is not a number");
    }
    assign(config, key, parsed);
}

std::string get_config_value(const PipelineConfig& config, const std::string& key) {
    return field(key).read(config).dump();
}

std::string config_to_json(const PipelineConfig& config) {
    Json doc = Json::object();
    for (const auto& [name, f] : fields()) doc[name] = f.read(config);
    return doc.dump(2) + "\n";
}

PipelineConfig config_from_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::Config, "config must be a JSON object of flat keys");
    PipelineConfig config;
    for (const auto& [key, value] : doc.items()) assign(config, key, value);
    config.validate();
    return config;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, "cannot read config " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return config_from_json(text.str());
}

DetectionResult detect(const GrayImage& image, const PipelineConfig& config) {
    config.validate();
    DetectionResult result;
    result.features = extract_features(image, config.bank,
                                       {config.magnitude_threshold, config.histogram_radius, config.threads});
    if (result.features.empty()) throw Error(ErrorKind::NoEvidence, "image has no edge features");

    const auto pairs = generate_pairs(result.features, config.max_per_scale);
    if (pairs.empty()) throw Error(ErrorKind::NoEvidence, "no scale holds two features to pair");
    result.candidates = normalize_weights(build_candidates(result.features, pairs, config.threads));

    result.density = evaluate_joint_density(result.candidates, config.grid, config.kernel, config.threads);
    result.peaks = find_peaks(result.density, config.peaks, config.threads);

    for (const auto& peak : result.peaks) {
        auto supports = supporting_pairs(peak, result.candidates, config.kernel);
        if (supports.empty()) continue;
        try {
            result.axes.push_back(
                axis_extent(peak, supports, result.candidates, result.features, image.width(), image.height()));
            result.supports.push_back(std::move(supports));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateExtent) throw;
        }
    }
    return result;
}

}  // namespace ldsym
