#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ldsym/density.hpp"
#include "ldsym/evaluation.hpp"
#include "ldsym/features.hpp"
#include "ldsym/image.hpp"
#include "ldsym/peaks.hpp"
#include "ldsym/voting.hpp"

namespace ldsym {

/// Every tunable of the detector and the evaluator. Flat keys such as
/// "density.g" address the fields (see config_keys()).
struct PipelineConfig {
    FilterBankConfig bank;
    double magnitude_threshold = 0.05;
    double histogram_radius = 2.0;
    std::size_t max_per_scale = kDefaultMaxPerScale;
    KernelParams kernel;
    GridSpec grid;
    PeakOptions peaks;
    ClusterOptions cluster;
    unsigned threads = 1;  // 0: one per hardware thread

    void validate() const;
};

std::vector<std::string> config_keys();

/// Parses `value` into the field named by `key`. Throws Error(Config) on an
/// unknown key or a malformed value; does not validate cross-field rules.
void set_config_value(PipelineConfig& config, const std::string& key, const std::string& value);
std::string get_config_value(const PipelineConfig& config, const std::string& key);

/// Flat JSON object of every key. Parsing rejects unknown keys and
/// validates the result; absent keys keep their defaults.
std::string config_to_json(const PipelineConfig& config);
PipelineConfig config_from_json(const std::string& text);
PipelineConfig load_config(const std::string& path);

struct DetectionResult {
    std::vector<FeaturePoint> features;
    CandidateSet candidates;  // normalized
    DensityGrid density;
    std::vector<Peak> peaks;
    std::vector<SymmetryAxis> axes;  // score-descending
    std::vector<std::vector<std::size_t>> supports;  // parallel to axes
};

/// features -> voting -> density -> peaks. Throws Error(NoEvidence) when the
/// image yields no features, no pairs, or only zero-weight pairs.
DetectionResult detect(const GrayImage& image, const PipelineConfig& config = {});

}  // namespace ldsym
