#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "frenet/curve.hpp"
#include "frenet/error.hpp"
#include "frenet/helix.hpp"
#include "frenet/pipeline.hpp"
#include "frenet/profile.hpp"

namespace frenet::cli {

/// Raised for unreadable or malformed input files; maps to exit status 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Curve files are JSON {dim, closed, params, points} or CSV with a t,x1,...,xd header.
// CSV carries no closed flag and is read as one period of a closed curve.
SampledCurve parse_curve(const std::string& text, bool csv);
SampledCurve read_curve(const std::string& path);
std::string format_curve_json(const SampledCurve& c);
std::string format_curve_csv(const SampledCurve& c);
/// Chooses CSV for a .csv extension, JSON otherwise.
void write_curve(const std::string& path, const SampledCurve& c);

/// Closed curves whose one-period span differs from 2*pi get their parameters rescaled.
void normalize_period(SampledCurve& c);

CurvatureProfile parse_profile(const std::string& text);
CurvatureProfile read_profile(const std::string& path);
nlohmann::json profile_json(const CurvatureProfile& p);

nlohmann::json report_json(const VerificationReport& r);
nlohmann::json approximation_json(const Approximation& a);
nlohmann::json helix_json(const HelixSpec& h);

struct PlotOptions {
  int plane_x = 0;
  int plane_y = 1;
  int size = 512;
};

/// Orthogonal projection onto coordinate plane (x, y) as a standalone SVG document.
std::string render_svg(const SampledCurve& c, const PlotOptions& options);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace frenet::cli
