#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

namespace frenet::cli {

using nlohmann::json;

namespace {

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& v, const char* what) {
  if (!v.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(number(x, what));
  return out;
}

// shortest form that reads back to the same double
std::string exact(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  return out;
}

double parse_cell(const std::string& cell, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": '" + cell + "' is not a number");
  }
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

// --- curves -------------------------------------------------------------------

SampledCurve parse_curve(const std::string& text, bool csv) {
  SampledCurve c;
  if (csv) {
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    while (std::getline(ss, line)) {
      ++lineno;
      if (!trim(line).empty()) {
        header = split(line);
        break;
      }
    }
    if (header.size() < 2 || header[0] != "t") throw ParseError("CSV header must be t,x1,...,xd");
    for (std::size_t k = 1; k < header.size(); ++k) {
      if (header[k] != "x" + std::to_string(k)) throw ParseError("CSV header column " + std::to_string(k + 1) + " must be x" + std::to_string(k));
    }
    c.dim = header.size() - 1;
    std::vector<std::vector<double>> rows;
    while (std::getline(ss, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      const auto cells = split(line);
      if (cells.size() != header.size()) throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(header.size()) + " columns");
      std::vector<double> row;
      for (const auto& cell : cells) row.push_back(parse_cell(cell, lineno));
      rows.push_back(std::move(row));
    }
    c.closed = true;
    c.points.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(c.dim));
    for (std::size_t j = 0; j < rows.size(); ++j) {
      c.params.push_back(rows[j][0]);
      for (std::size_t k = 0; k < c.dim; ++k) c.points(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = rows[j][k + 1];
    }
  } else {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("curve file must be a JSON object");
    for (const char* key : {"dim", "closed", "params", "points"}) {
      if (!doc.contains(key)) throw ParseError(std::string("curve file lacks '") + key + "'");
    }
    if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) throw ParseError("dim must be a positive integer");
    if (!doc["closed"].is_boolean()) throw ParseError("closed must be a boolean");
    c.dim = doc["dim"].get<std::size_t>();
    c.closed = doc["closed"].get<bool>();
    c.params = numbers(doc["params"], "params");
    const json& pts = doc["points"];
    if (!pts.is_array() || pts.size() != c.params.size()) throw ParseError("points must hold one row per parameter");
    c.points.resize(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(c.dim));
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto row = numbers(pts[j], "points");
      if (row.size() != c.dim) throw ParseError("point " + std::to_string(j) + " does not have dim entries");
      for (std::size_t k = 0; k < c.dim; ++k) c.points(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = row[k];
    }
  }
  for (std::size_t j = 1; j < c.params.size(); ++j) {
    if (!(c.params[j] > c.params[j - 1])) throw ParseError("params must be strictly increasing (index " + std::to_string(j) + ")");
  }
  try {
    c.validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return c;
}

SampledCurve read_curve(const std::string& path) {
  const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  return parse_curve(read_text(path), csv);
}

void normalize_period(SampledCurve& c) {
  if (!c.closed) return;
  const double p = c.span_length();
  const double scale = 2.0 * std::numbers::pi / p;
  if (std::abs(scale - 1.0) < 1e-12) return;
  for (double& t : c.params) t *= scale;
}

std::string format_curve_json(const SampledCurve& c) {
  std::string out = "{\"dim\": " + std::to_string(c.dim) + ", \"closed\": " + (c.closed ? "true" : "false") + ",\n \"params\": [";
  for (std::size_t j = 0; j < c.size(); ++j) out += (j ? ", " : "") + exact(c.params[j]);
  out += "],\n \"points\": [\n";
  for (std::size_t j = 0; j < c.size(); ++j) {
    out += "  [";
    for (std::size_t k = 0; k < c.dim; ++k) out += (k ? ", " : "") + exact(c.points(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)));
    out += j + 1 < c.size() ? "],\n" : "]\n";
  }
  out += " ]}\n";
  return out;
}

std::string format_curve_csv(const SampledCurve& c) {
  std::string out = "t";
  for (std::size_t k = 1; k <= c.dim; ++k) out += ",x" + std::to_string(k);
  out += "\n";
  for (std::size_t j = 0; j < c.size(); ++j) {
    out += exact(c.params[j]);
    for (std::size_t k = 0; k < c.dim; ++k) out += "," + exact(c.points(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)));
    out += "\n";
  }
  return out;
}

void write_curve(const std::string& path, const SampledCurve& c) {
  const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  write_text(path, csv ? format_curve_csv(c) : format_curve_json(c));
}

// --- profiles -----------------------------------------------------------------

CurvatureProfile parse_profile(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("kind") || !doc.contains("components")) {
    throw ParseError("profile file needs n, kind and components");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) throw ParseError("n must be a positive integer");
  const auto n = doc["n"].get<std::size_t>();
  const json& comps = doc["components"];
  if (!comps.is_array() || comps.size() != n) throw ParseError("components must hold n entries");
  const std::string kind = doc["kind"].is_string() ? doc["kind"].get<std::string>() : "";
  auto build = [&] {
    if (kind == "fourier") {
      std::vector<FourierSeries> series;
      for (const auto& comp : comps) {
        if (!comp.is_object() || !comp.contains("cos")) throw ParseError("fourier component needs a cos array");
        FourierSeries f;
        f.cos_coeffs = numbers(comp["cos"], "cos");
        if (f.cos_coeffs.empty()) throw ParseError("cos array must hold the mean");
        f.sin_coeffs.push_back(0.0);
        if (comp.contains("sin")) {
          for (double b : numbers(comp["sin"], "sin")) f.sin_coeffs.push_back(b);
        }
        series.push_back(std::move(f));
      }
      return CurvatureProfile::fourier(std::move(series));
    }
    if (kind == "table") {
      std::vector<std::vector<double>> table;
      for (const auto& comp : comps) table.push_back(numbers(comp, "table component"));
      for (const auto& comp : table) {
        if (comp.size() != table.front().size() || comp.empty()) throw ParseError("table components must be equally long and nonempty");
      }
      return CurvatureProfile::table(std::move(table));
    }
    throw ParseError("kind must be \"fourier\" or \"table\"");
  };
  // the factories run the positivity check
  try {
    return build();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

CurvatureProfile read_profile(const std::string& path) { return parse_profile(read_text(path)); }

json profile_json(const CurvatureProfile& p) {
  json doc;
  doc["n"] = p.n();
  json comps = json::array();
  if (p.kind() == CurvatureProfile::Kind::Fourier) {
    doc["kind"] = "fourier";
    for (const auto& f : p.fourier_components()) {
      json sin = json::array();
      for (std::size_t m = 1; m < f.sin_coeffs.size(); ++m) sin.push_back(f.sin_coeffs[m]);
      comps.push_back({{"cos", f.cos_coeffs}, {"sin", sin}});
    }
  } else {
    doc["kind"] = "table";
    for (const auto& t : p.table_components()) comps.push_back(t);
  }
  doc["components"] = comps;
  return doc;
}

// --- reports ------------------------------------------------------------------

json report_json(const VerificationReport& r) {
  json hits = json::array();
  for (const auto& h : r.self_intersections) hits.push_back({{"t1", h.t1}, {"t2", h.t2}, {"distance", h.distance}});
  return {{"passed", r.passed},
          {"eps", r.eps},
          {"max_deviation", r.max_deviation()},
          {"max_curvature_deviation", r.max_curvature_deviation},
          {"closure_gaps", r.closure_gaps},
          {"frame_orthonormality", r.frame_orthonormality},
          {"min_speed", r.min_speed},
          {"self_intersections", hits}};
}

json approximation_json(const Approximation& a) {
  json stages = json::array();
  for (const auto& s : a.stages) stages.push_back({{"name", s.name}, {"deviation", s.deviation}, {"budget", s.budget}});
  const auto& p = a.plan;
  return {{"passed", a.passed},
          {"verification", report_json(a.report)},
          {"stages", stages},
          {"plan",
           {{"eps", p.eps},
            {"t0", p.t0},
            {"k", std::vector<double>(p.k.data(), p.k.data() + p.k.size())},
            {"u_half", p.u_half},
            {"plateau_half", p.plateau_half},
            {"bridge_half", p.bridge_half},
            {"tau", p.tau},
            {"delta", p.delta},
            {"budget", {{"modify", p.budget.modify}, {"bridge", p.budget.bridge}, {"stitch", p.budget.stitch}}}}},
          {"samples", a.curve.size()},
          {"bridge_length", a.bridge_length},
          {"construction_closure_gap", a.construction_closure_gap},
          {"construction_frame_gap", a.construction_frame_gap},
          {"mollifier_width", a.mollifier_width},
          {"speed_ratio", a.speed_ratio},
          {"attempts", a.attempts},
          {"log", a.log}};
}

json helix_json(const HelixSpec& h) {
  auto vec = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  json planes = json::array();
  for (std::size_t l = 0; l < h.frequencies.size(); ++l) {
    planes.push_back({{"frequency", h.frequencies[l]}, {"a", vec(h.a[l])}, {"b", vec(h.b[l])}});
  }
  json doc = {{"dim", h.dim}, {"kappas", vec(h.kappas)}, {"frequencies", h.frequencies}, {"planes", planes}, {"anchor", vec(h.anchor)}};
  doc["drift"] = h.drift ? json(vec(*h.drift)) : json(nullptr);
  return doc;
}

// --- plot ---------------------------------------------------------------------

std::string render_svg(const SampledCurve& c, const PlotOptions& o) {
  const auto x = c.points.col(o.plane_x);
  const auto y = c.points.col(o.plane_y);
  const double x0 = x.minCoeff(), x1 = x.maxCoeff(), y0 = y.minCoeff(), y1 = y.maxCoeff();
  const double extent = std::max({x1 - x0, y1 - y0, 1e-12});
  const double margin = 40.0;
  const double size = static_cast<double>(o.size);
  const double scale = (size - 2.0 * margin) / extent;
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  auto px = [&](double v) { return 0.5 * size + (v - cx) * scale; };
  auto py = [&](double v) { return 0.5 * size - (v - cy) * scale; };
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  auto label = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return std::string(buf);
  };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(o.size) + "\" height=\"" +
                  std::to_string(o.size) + "\" viewBox=\"0 0 " + std::to_string(o.size) + " " + std::to_string(o.size) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes through the lower left corner of the data box
  const double left = px(x0), right = px(x1), bottom = py(y0), top = py(y1);
  s += "<g stroke=\"#888\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + fmt(left) + "\" y1=\"" + fmt(bottom + 10) + "\" x2=\"" + fmt(right) + "\" y2=\"" + fmt(bottom + 10) + "\"/>\n";
  s += "<line x1=\"" + fmt(left - 10) + "\" y1=\"" + fmt(bottom) + "\" x2=\"" + fmt(left - 10) + "\" y2=\"" + fmt(top) + "\"/>\n";
  s += "</g>\n<g font-family=\"monospace\" font-size=\"10\" fill=\"#444\">\n";
  s += "<text x=\"" + fmt(left) + "\" y=\"" + fmt(bottom + 24) + "\">" + label(x0) + "</text>\n";
  s += "<text x=\"" + fmt(right) + "\" y=\"" + fmt(bottom + 24) + "\" text-anchor=\"end\">" + label(x1) + "</text>\n";
  s += "<text x=\"" + fmt(0.5 * (left + right)) + "\" y=\"" + fmt(bottom + 24) + "\" text-anchor=\"middle\">x" +
       std::to_string(o.plane_x + 1) + "</text>\n";
  s += "<text x=\"" + fmt(left - 14) + "\" y=\"" + fmt(bottom) + "\" text-anchor=\"end\">" + label(y0) + "</text>\n";
  s += "<text x=\"" + fmt(left - 14) + "\" y=\"" + fmt(top + 8) + "\" text-anchor=\"end\">" + label(y1) + "</text>\n";
  s += "<text x=\"" + fmt(left - 14) + "\" y=\"" + fmt(0.5 * (top + bottom)) + "\" text-anchor=\"end\">x" +
       std::to_string(o.plane_y + 1) + "</text>\n";
  s += "</g>\n";
  s += std::string("<") + (c.closed ? "polygon" : "polyline") + " fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
  // consecutive samples closer than a tenth of a pixel add nothing visible
  double lx = std::numeric_limits<double>::infinity(), ly = lx;
  const auto n = static_cast<Eigen::Index>(c.size());
  for (Eigen::Index j = 0; j < n; ++j) {
    const double a = px(x(j)), b = py(y(j));
    if (j > 0 && j + 1 < n && std::hypot(a - lx, b - ly) < 0.1) continue;
    s += fmt(a) + "," + fmt(b) + " ";
    lx = a;
    ly = b;
  }
  s += "\"/>\n</svg>\n";
  return s;
}

}  // namespace frenet::cli
