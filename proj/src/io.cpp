#include "modkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace modkit {

namespace {

Linearity linearity_from_string(const std::string& s) {
  if (s == to_string(Linearity::ComplexLinear)) return Linearity::ComplexLinear;
  if (s == to_string(Linearity::Antilinear)) return Linearity::Antilinear;
  if (s == to_string(Linearity::General)) return Linearity::General;
  throw Error(ErrorKind::IoError, "unknown linearity '" + s + "'");
}

void require_rect(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::IoError, "matrix must be an array of rows");
  for (const auto& row : j)
    if (!row.is_array() || row.size() != j.front().size())
      throw Error(ErrorKind::IoError, "matrix rows must be arrays of equal length");
}

}  // namespace

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd real_matrix_from_json(const Json& j) {
  require_rect(j);
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = r ? static_cast<Eigen::Index>(j.front().size()) : 0;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) {
      const Json& e = j[i][k];
      if (!e.is_number()) throw Error(ErrorKind::IoError, "real matrix entry must be a number");
      m(i, k) = e.get<double>();
    }
  return m;
}

Eigen::MatrixXcd complex_matrix_from_json(const Json& j) {
  require_rect(j);
  const Eigen::Index r = static_cast<Eigen::Index>(j.size());
  const Eigen::Index c = r ? static_cast<Eigen::Index>(j.front().size()) : 0;
  Eigen::MatrixXcd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index k = 0; k < c; ++k) {
      const Json& e = j[i][k];
      if (e.is_number()) {
        m(i, k) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(i, k) = {e[0].get<double>(), e[1].get<double>()};
      } else {
        throw Error(ErrorKind::IoError, "complex entry must be [re, im]");
      }
    }
  return m;
}

Json to_json(const RLOperatord& op) {
  Json j;
  j["linearity"] = to_string(op.linearity());
  j["dim"] = op.dim_c();
  j["matrix"] = matrix_to_json(op.matrix());
  return j;
}

RLOperatord rl_operator_from_json(const Json& j) {
  return RLOperatord(real_matrix_from_json(j.at("matrix")), linearity_from_string(j.at("linearity").get<std::string>()));
}

Json to_json(const RealSubspaced& v) {
  Json j;
  j["dim_c"] = v.dim_c();
  j["dim"] = v.dim();
  j["basis"] = matrix_to_json(v.basis());
  return j;
}

Json to_json(const StandardSubspace& v) {
  Json j;
  j["dim"] = v.dim_c();
  j["condition"] = v.condition();
  j["basis"] = matrix_to_json(v.basis());
  return j;
}

Json to_json(const ModularTriple& m) {
  Json j;
  j["S"] = to_json(m.s);
  j["Delta"] = to_json(m.delta);
  j["J"] = to_json(m.j);
  return j;
}

Json to_json(const StarAlgebra& a) {
  Json j;
  j["n"] = a.n();
  Json basis = Json::array();
  for (const auto& b : a.basis()) basis.push_back(matrix_to_json(b));
  j["basis"] = std::move(basis);
  return j;
}

Check make_check(std::string group, std::string name, double residual, double tol, std::string provenance) {
  Check c;
  c.group = std::move(group);
  c.name = std::move(name);
  c.tolerance = tol;
  c.provenance = std::move(provenance);
  if (std::isfinite(residual)) {
    c.residual = residual;
    c.passed = residual <= tol;
  } else {
    c.residual = std::numeric_limits<double>::max();
    c.passed = false;
  }
  return c;
}

Check make_flag(std::string group, std::string name, bool ok, std::string provenance) {
  return make_check(std::move(group), std::move(name), ok ? 0.0 : 1.0, 0.0, std::move(provenance));
}

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<std::string> Report::groups() const {
  std::vector<std::string> g;
  for (const auto& c : checks)
    if (std::find(g.begin(), g.end(), c.group) == g.end()) g.push_back(c.group);
  return g;
}

void Report::append(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  artifacts.insert(artifacts.end(), other.artifacts.begin(), other.artifacts.end());
  series.insert(series.end(), other.series.begin(), other.series.end());
  if (!other.data.empty()) data[other.command] = other.data;
  if (!other.timings.empty()) timings[other.command] = other.timings;
}

Json to_json(const Check& c) {
  Json j;
  j["group"] = c.group;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["residual"] = c.residual;
  j["tolerance"] = c.tolerance;
  j["provenance"] = c.provenance;
  return j;
}

Check check_from_json(const Json& j) {
  Check c;
  c.group = j.at("group").get<std::string>();
  c.name = j.at("name").get<std::string>();
  c.passed = j.at("passed").get<bool>();
  c.residual = j.at("residual").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.provenance = j.at("provenance").get<std::string>();
  if (c.passed != (c.residual <= c.tolerance))
    throw Error(ErrorKind::IoError, "check '" + c.name + "' has passed inconsistent with its residual");
  return c;
}

Json to_json(const Series& s) {
  Json j;
  j["name"] = s.name;
  j["x_label"] = s.x_label;
  Json pts = Json::array();
  for (const auto& [x, y] : s.points) pts.push_back(Json::array({x, y}));
  j["points"] = std::move(pts);
  return j;
}

Series series_from_json(const Json& j) {
  Series s;
  s.name = j.at("name").get<std::string>();
  s.x_label = j.at("x_label").get<std::string>();
  for (const auto& p : j.at("points")) s.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  return s;
}

Json to_json(const Report& r) {
  Json j;
  j["command"] = r.command;
  j["input"] = r.input;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["artifacts"] = r.artifacts;
  j["seed"] = r.seed;
  j["wall_time"] = r.wall_time;
  j["timings"] = r.timings;
  Json series = Json::array();
  for (const auto& s : r.series) series.push_back(to_json(s));
  j["series"] = std::move(series);
  j["data"] = r.data;
  j["passed"] = r.all_passed();
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  try {
    r.command = j.at("command").get<std::string>();
    r.input = j.at("input");
    for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
    r.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.wall_time = j.at("wall_time").get<double>();
    r.timings = j.at("timings");
    for (const auto& s : j.at("series")) r.series.push_back(series_from_json(s));
    r.data = j.at("data");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::IoError, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string serialize(const Report& r) { return to_json(r).dump(2); }

Report deserialize(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::IoError, std::string("unparsable report: ") + e.what());
  }
  return report_from_json(j);
}

std::string fingerprint(const Report& r) {
  Report copy = r;
  copy.wall_time = 0.0;
  copy.timings = Json::object();
  return serialize(copy);
}

void write_report(const Report& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << serialize(r) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string render_plot(const std::vector<Series>& series) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = std::numeric_limits<double>::infinity(), ymax = -ymin;
  std::size_t count = 0;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) throw Error(ErrorKind::IoError, "non-finite point in '" + s.name + "'");
      ++count;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      if (y > 0) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  if (count == 0) throw Error(ErrorKind::IoError, "nothing to plot");
  if (!std::isfinite(ymin)) ymin = ymax = 1.0;
  const double floor_y = ymin;

  double lo = std::floor(std::log10(ymin)), hi = std::ceil(std::log10(ymax));
  if (hi <= lo) hi = lo + 1;
  if (xmax <= xmin) {
    xmin -= 1;
    xmax += 1;
  }
  const double W = 640, H = 420, left = 80, right = 180, top = 30, bottom = 50;
  const double pw = W - left - right, ph = H - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) {
    const double l = std::log10(std::max(y, floor_y));
    return top + (hi - l) / (hi - lo) * ph;
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
    << "\" viewBox=\"0 0 " << fmt(W) << ' ' << fmt(H) << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); ++e) {
    const double y = top + (hi - e) / (hi - lo) * ph;
    o << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(left + pw) << "\" y2=\"" << fmt(y)
      << "\" stroke=\"#dddddd\"/>\n";
    o << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(y + 4)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">1e" << e << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double x = xmin + (xmax - xmin) * k / 4.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    o << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(top + ph + 16)
      << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << buf << "</text>\n";
  }
  const std::string xl = series.empty() ? "" : series.front().x_label;
  o << "<text x=\"" << fmt(left + pw / 2) << "\" y=\"" << fmt(H - 10)
    << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
  o << "<text x=\"16\" y=\"" << fmt(top + ph / 2) << "\" font-family=\"sans-serif\" font-size=\"12\" "
    << "text-anchor=\"middle\" transform=\"rotate(-90 16 " << fmt(top + ph / 2) << ")\">residual</text>\n";

  std::size_t idx = 0;
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    const char* color = kPalette[idx % (sizeof kPalette / sizeof kPalette[0])];
    if (s.points.size() > 1) {
      o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i)
        o << (i ? " " : "") << fmt(px(s.points[i].first)) << ',' << fmt(py(s.points[i].second));
      o << "\"/>\n";
    }
    for (const auto& [x, y] : s.points)
      o << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    const double ly = top + 14 + 16 * static_cast<double>(idx);
    o << "<rect x=\"" << fmt(left + pw + 10) << "\" y=\"" << fmt(ly - 8) << "\" width=\"8\" height=\"8\" fill=\"" << color
      << "\"/>\n";
    o << "<text x=\"" << fmt(left + pw + 22) << "\" y=\"" << fmt(ly)
      << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.name) << "</text>\n";
    ++idx;
  }
  o << "</svg>\n";
  return o.str();
}

void emit_plot(const std::vector<Series>& series, const std::string& path) {
  const std::string svg = render_plot(series);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot open '" + path + "' for writing");
  out << svg;
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path + "' failed");
}

}  // namespace modkit
