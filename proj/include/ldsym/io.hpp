#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ldsym/density.hpp"
#include "ldsym/evaluation.hpp"
#include "ldsym/features.hpp"
#include "ldsym/peaks.hpp"
#include "ldsym/voting.hpp"

namespace ldsym {

/// Writes via a sibling temporary file and rename, so readers never observe
/// a partial file.
void atomic_write_file(const std::string& path, std::string_view bytes);
std::string read_text_file(const std::string& path);

// Detections: [{x1, y1, x2, y2, theta, rho, score, support_count}, ...]
std::string detections_to_json(const std::vector<SymmetryAxis>& axes);
std::vector<SymmetryAxis> detections_from_json(const std::string& text);
std::vector<Detection> as_detections(const std::vector<SymmetryAxis>& axes);

// Feature dump: [{x, y, scale, J, tau, hist: [...]}, ...], normalized frame.
std::string features_to_json(const std::vector<FeaturePoint>& features);

// Candidate dump with header theta,rho,m,c,d,omega,i,j.
std::string candidates_to_csv(const CandidateSet& set);

// Density export: row = rho bin, column = theta bin; the header carries
// {n_rho, n_theta, g, k, rho_min, rho_max}.
std::string density_to_csv(const DensityGrid& grid);
std::string density_header_json(const DensityGrid& grid);

// Canonical ground truth: one "x1 y1 x2 y2" line per axis, pixel coordinates.
std::vector<Segment> parse_ground_truth(const std::string& text);
std::string ground_truth_to_text(const std::vector<Segment>& axes);

/// Converts dataset-native annotations into canonical segments.
///   "psu": one axis per row, "x1 y1 x2 y2", 1-based pixel indices
///   "ny":  two rows "x y" per axis (stacked 2x2 endpoint matrices), 1-based
///   "canonical": already in canonical form
/// Separators may be whitespace, commas or semicolons; '#' starts a comment.
std::vector<Segment> convert_ground_truth(const std::string& text, const std::string& format);

struct ManifestEntry {
    std::string name;   // detections are looked up as <name>.json
    std::string image;  // resolved path
    std::string gt;     // resolved path
};

/// {"images": [{"name": ..., "image": ..., "gt": ...}, ...]}; relative paths
/// resolve against the manifest's directory. "name" defaults to the image
/// file stem.
std::vector<ManifestEntry> read_manifest(const std::string& path);

std::string report_to_json(const PrCurve& curve);
std::string pr_curve_to_csv(const PrCurve& curve);

}  // namespace ldsym
