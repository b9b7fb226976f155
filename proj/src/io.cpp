#include "ldsym/io.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "ldsym/error.hpp"

namespace ldsym {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string format_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

std::vector<std::vector<double>> numeric_rows(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        for (char& ch : line)
            if (ch == ',' || ch == ';' || ch == '\t' || ch == '\r') ch = ' ';
        std::istringstream fields(line);
        std::vector<double> row;
        std::string token;
        while (fields >> token) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(token, &used));
                if (used != token.size()) throw std::invalid_argument(token);
            } catch (const std::exception&) {
                throw Error(ErrorKind::InvalidInput,
                            "line " + std::to_string(line_no) + ": '" + token + "' is not a number");
            }
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

Segment checked_segment(Vec2 a, Vec2 b) {
    Segment s{a, b};
    if (!(s.length() > 0.0)) throw Error(ErrorKind::InvalidInput, "ground-truth axis has zero length");
    return s;
}

double require_number(const Json& obj, const char* key) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw Error(ErrorKind::InvalidInput, std::string("detection entry lacks numeric '") + key + "'");
    return obj[key].get<double>();
}

}  // namespace

void atomic_write_file(const std::string& path, std::string_view bytes) {
    static std::atomic<unsigned long> counter{0};
    const fs::path target(path);
    std::ostringstream suffix;
    suffix << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
    const fs::path tmp = target.string() + suffix.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error(ErrorKind::InvalidInput, "short write to " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::InvalidInput, "cannot move output into place at " + path);
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

std::string detections_to_json(const std::vector<SymmetryAxis>& axes) {
    Json doc = Json::array();
    for (const auto& a : axes) {
        doc.push_back({{"x1", a.p1.x},
                       {"y1", a.p1.y},
                       {"x2", a.p2.x},
                       {"y2", a.p2.y},
                       {"theta", a.theta},
                       {"rho", a.rho},
                       {"score", a.score},
                       {"support_count", a.support_count}});
    }
    return doc.dump(2) + "\n";
}

std::vector<SymmetryAxis> detections_from_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("detections are not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw Error(ErrorKind::InvalidInput, "detections must be a JSON array");
    std::vector<SymmetryAxis> axes;
    for (const auto& item : doc) {
        if (!item.is_object()) throw Error(ErrorKind::InvalidInput, "detection entries must be objects");
        SymmetryAxis a;
        a.p1 = {require_number(item, "x1"), require_number(item, "y1")};
        a.p2 = {require_number(item, "x2"), require_number(item, "y2")};
        a.score = require_number(item, "score");
        a.theta = item.value("theta", 0.0);
        a.rho = item.value("rho", 0.0);
        a.support_count = item.value("support_count", std::size_t{0});
        axes.push_back(a);
    }
    return axes;
}

std::vector<Detection> as_detections(const std::vector<SymmetryAxis>& axes) {
    std::vector<Detection> out;
    out.reserve(axes.size());
    for (const auto& a : axes) out.push_back({{a.p1, a.p2}, a.score});
    return out;
}

std::string features_to_json(const std::vector<FeaturePoint>& features) {
    Json doc = Json::array();
    for (const auto& f : features)
        doc.push_back({{"x", f.pos.x},
                       {"y", f.pos.y},
                       {"scale", f.scale},
                       {"J", f.magnitude},
                       {"tau", f.direction},
                       {"hist", f.texture}});
    return doc.dump() + "\n";
}

std::string candidates_to_csv(const CandidateSet& set) {
    std::ostringstream out;
    out << "theta,rho,m,c,d,omega,i,j\n";
    for (const auto& c : set.candidates)
        out << format_double(c.theta) << ',' << format_double(c.rho) << ',' << format_double(c.m) << ','
            << format_double(c.c) << ',' << format_double(c.d) << ',' << format_double(c.weight) << ',' << c.i
            << ',' << c.j << '\n';
    return out.str();
}

std::string density_to_csv(const DensityGrid& grid) {
    std::ostringstream out;
    const auto& spec = grid.spec();
    for (int i = 0; i < spec.n_rho; ++i) {
        for (int j = 0; j < spec.n_theta; ++j) {
            if (j) out << ',';
            out << format_double(grid.at(i, j));
        }
        out << '\n';
    }
    return out.str();
}

std::string density_header_json(const DensityGrid& grid) {
    const auto& spec = grid.spec();
    Json doc = {{"n_rho", spec.n_rho},
                {"n_theta", spec.n_theta},
                {"g", grid.params().g},
                {"k", grid.params().k},
                {"rho_min", spec.rho_min()},
                {"rho_max", spec.rho_max()}};
    return doc.dump(2) + "\n";
}

std::vector<Segment> parse_ground_truth(const std::string& text) {
    std::vector<Segment> out;
    for (const auto& row : numeric_rows(text)) {
        if (row.size() != 4)
            throw Error(ErrorKind::InvalidInput, "ground-truth lines must hold exactly 4 numbers: x1 y1 x2 y2");
        out.push_back(checked_segment({row[0], row[1]}, {row[2], row[3]}));
    }
    return out;
}

std::string ground_truth_to_text(const std::vector<Segment>& axes) {
    std::ostringstream out;
    for (const auto& s : axes)
        out << format_double(s.a.x) << ' ' << format_double(s.a.y) << ' ' << format_double(s.b.x) << ' '
            << format_double(s.b.y) << '\n';
    return out.str();
}

std::vector<Segment> convert_ground_truth(const std::string& text, const std::string& format) {
    if (format == "canonical") return parse_ground_truth(text);
    const auto rows = numeric_rows(text);
    // 1-based pixel index i has its centre at continuous coordinate i - 0.5.
    auto pixel = [](double x, double y) { return Vec2{x - 0.5, y - 0.5}; };
    std::vector<Segment> out;
    if (format == "psu") {
        for (const auto& r : rows) {
            if (r.size() != 4) throw Error(ErrorKind::InvalidInput, "psu rows must hold 4 numbers");
            out.push_back(checked_segment(pixel(r[0], r[1]), pixel(r[2], r[3])));
        }
    } else if (format == "ny") {
        if (rows.size() % 2 != 0) throw Error(ErrorKind::InvalidInput, "ny files hold two endpoint rows per axis");
        for (std::size_t n = 0; n < rows.size(); n += 2) {
            if (rows[n].size() != 2 || rows[n + 1].size() != 2)
                throw Error(ErrorKind::InvalidInput, "ny endpoint rows must hold 2 numbers");
            out.push_back(checked_segment(pixel(rows[n][0], rows[n][1]), pixel(rows[n + 1][0], rows[n + 1][1])));
        }
    } else {
        throw Error(ErrorKind::Config, "unknown ground-truth format '" + format + "' (psu, ny, canonical)");
    }
    return out;
}

std::vector<ManifestEntry> read_manifest(const std::string& path) {
    Json doc;
    try {
        doc = Json::parse(read_text_file(path));
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("images") || !doc["images"].is_array())
        throw Error(ErrorKind::InvalidInput, "manifest must be an object with an 'images' array");
    const fs::path base = fs::path(path).parent_path();
    auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (base / p).string(); };

    std::vector<ManifestEntry> out;
    for (const auto& item : doc["images"]) {
        if (!item.is_object() || !item.contains("gt") || !item["gt"].is_string())
            throw Error(ErrorKind::InvalidInput, "manifest entries need a 'gt' path");
        ManifestEntry e;
        e.image = item.contains("image") ? resolve(item["image"].get<std::string>()) : std::string{};
        e.gt = resolve(item["gt"].get<std::string>());
        if (item.contains("name"))
            e.name = item["name"].get<std::string>();
        else if (!e.image.empty())
            e.name = fs::path(e.image).stem().string();
        else
            throw Error(ErrorKind::InvalidInput, "manifest entry needs 'name' or 'image'");
        out.push_back(std::move(e));
    }
    return out;
}

std::string report_to_json(const PrCurve& curve) {
    const auto& best = curve.points.at(curve.best);
    const auto& r = best.report;
    Json doc = {{"tp", r.tp},
                {"fp", r.fp},
                {"fn", r.fn},
                {"precision", r.precision},
                {"recall", r.recall},
                {"f1", r.f1},
                {"threshold", std::isfinite(best.threshold) ? Json(best.threshold) : Json(nullptr)}};
    return doc.dump(2) + "\n";
}

std::string pr_curve_to_csv(const PrCurve& curve) {
    std::ostringstream out;
    out << "threshold,precision,recall\n";
    for (const auto& p : curve.points)
        out << (std::isfinite(p.threshold) ? format_double(p.threshold) : std::string("inf")) << ','
            << format_double(p.report.precision) << ',' << format_double(p.report.recall) << '\n';
    return out.str();
}

}  // namespace ldsym
