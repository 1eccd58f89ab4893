#ifndef MODKIT_IO_HPP
#define MODKIT_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "modkit/standard.hpp"
#include "modkit/vn.hpp"

namespace modkit {

using Json = nlohmann::ordered_json;

// Row-major nested arrays; complex entries are [re, im].
Json matrix_to_json(const Eigen::MatrixXd& m);
Json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXd real_matrix_from_json(const Json& j);
Eigen::MatrixXcd complex_matrix_from_json(const Json& j);

Json to_json(const RLOperatord& op);
RLOperatord rl_operator_from_json(const Json& j);
Json to_json(const RealSubspaced& v);
Json to_json(const StandardSubspace& v);
Json to_json(const ModularTriple& m);
Json to_json(const StarAlgebra& a);

struct Check {
  std::string group;
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string provenance;
};

// passed iff the residual is finite and at most tol; a non-finite residual is stored as the largest double.
Check make_check(std::string group, std::string name, double residual, double tol, std::string provenance);
// Boolean outcome as residual 0 or 1 against tolerance 0.
Check make_flag(std::string group, std::string name, bool ok, std::string provenance);

struct Series {
  std::string name;
  std::string x_label;
  std::vector<std::pair<double, double>> points;
};

struct Report {
  std::string command;
  Json input = Json::object();
  std::vector<Check> checks;
  std::vector<std::string> artifacts;
  std::uint64_t seed = 0;
  double wall_time = 0.0;
  Json timings = Json::object();  // seconds by label; wall-clock like wall_time
  std::vector<Series> series;
  Json data = Json::object();

  bool all_passed() const;
  std::vector<std::string> groups() const;
  void append(const Report& other);
};

Json to_json(const Check& c);
Check check_from_json(const Json& j);
Json to_json(const Series& s);
Series series_from_json(const Json& j);
Json to_json(const Report& r);
Report report_from_json(const Json& j);

std::string serialize(const Report& r);
Report deserialize(const std::string& text);
// Serialization without wall-clock fields, for reproducibility comparisons.
std::string fingerprint(const Report& r);

void write_report(const Report& r, const std::string& path);

// SVG with a log-scaled y axis; throws IoError on empty input or write failure.
std::string render_plot(const std::vector<Series>& series);
void emit_plot(const std::vector<Series>& series, const std::string& path);

}  // namespace modkit

#endif
