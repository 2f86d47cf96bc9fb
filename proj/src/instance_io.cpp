#include "mfg/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace mfg {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& token, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty())
    fail(Errc::ParseError, "bad number '" + token + "' in " + key);
  return v;
}

std::vector<double> parse_array(const std::string& value, const std::string& key) {
  std::vector<double> out;
  std::istringstream ss(value);
  std::string token;
  while (ss >> token) out.push_back(parse_number(token, key));
  return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(Errc::ParseError, "bad boolean '" + value + "' in " + key);
}

long parse_integer(const std::string& value, const std::string& key) {
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty())
    fail(Errc::ParseError, "bad integer '" + value + "' in " + key);
  return v;
}

/// Reads every `key = value` line; comments start with '#'.
std::map<std::string, std::string> read_pairs(std::istream& in) {
  std::map<std::string, std::string> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(Errc::ParseError, "line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      fail(Errc::ParseError, "line " + std::to_string(lineno) + " has an empty key");
    if (pairs.count(key))
      fail(Errc::ParseError, "key '" + key + "' repeated at line " + std::to_string(lineno));
    pairs[key] = value;
  }
  return pairs;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += format_double(v[i]);
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += v[i];
  }
  return out;
}

std::vector<std::string> split_tokens(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream ss(value);
  std::string token;
  while (ss >> token) out.push_back(token);
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(Errc::ParseError, "cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open '" + path + "'");
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Instance parse_instance(std::istream& in) {
  const auto pairs = read_pairs(in);
  Instance inst;
  for (const auto& [key, value] : pairs) {
    if (key == "positions") inst.positions = parse_array(value, key);
    else if (key == "weights") inst.weights = parse_array(value, key);
    else if (key == "normalize") inst.normalize = parse_bool(value, key);
    else if (key == "label") inst.label = value;
    else fail(Errc::ParseError, "unknown key '" + key + "'");
  }
  if (inst.positions.empty()) fail(Errc::ParseError, "missing key 'positions'");
  if (inst.weights.empty()) fail(Errc::ParseError, "missing key 'weights'");
  return inst;
}

Instance read_instance(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_instance(in);
}

void write_instance(const Instance& inst, const std::string& path) {
  std::ofstream out = open_out(path);
  if (!inst.label.empty()) out << "label = " << inst.label << "\n";
  out << "normalize = " << (inst.normalize ? "true" : "false") << "\n";
  out << "positions = " << join(inst.positions) << "\n";
  out << "weights = " << join(inst.weights) << "\n";
}

const char* to_string(SolvePath path) {
  switch (path) {
    case SolvePath::NewtonOnly: return "newton_only";
    case SolvePath::FixedPointThenNewton: return "fixed_point_then_newton";
    case SolvePath::FixedPointOnly: return "fixed_point_only";
  }
  return "unknown";
}

const char* to_string(EndpointCase c) {
  switch (c) {
    case EndpointCase::NeighborIntersection: return "neighbor_intersection";
    case EndpointCase::ZeroCrossing: return "zero_crossing";
    case EndpointCase::Empty: return "empty";
  }
  return "unknown";
}

Result make_result(const DiscreteMeasure& m, const SolveReport& report,
                   const std::string& label) {
  Result res;
  res.label = label;
  res.converged = report.converged;
  res.path = to_string(report.path);
  res.newton_iters = report.newton_iters;
  res.lmap_iters = report.lmap_iters;
  res.residual_inf =
      report.residual_history.empty() ? 0.0 : report.residual_history.back();
  res.total_mass = mass_total(report.C_star, m);
  res.min_bubble_length = report.min_bubble_length;
  res.positions = m.positions;
  res.weights = m.weights;
  res.levels = report.C_star;

  const BubbleGeometry geo = bubble_endpoints(report.C_star, m);
  for (std::size_t j = 0; j < geo.size(); ++j) {
    res.alpha.push_back(geo[j].alpha);
    res.beta.push_back(geo[j].beta);
    res.left_case.push_back(to_string(geo[j].left_case));
    res.right_case.push_back(to_string(geo[j].right_case));
  }
  return res;
}

void write_result(const Result& res, const std::string& path) {
  std::ofstream out = open_out(path);
  if (!res.label.empty()) out << "label = " << res.label << "\n";
  out << "converged = " << (res.converged ? "true" : "false") << "\n";
  out << "path = " << res.path << "\n";
  out << "newton_iters = " << res.newton_iters << "\n";
  out << "lmap_iters = " << res.lmap_iters << "\n";
  out << "residual_inf = " << format_double(res.residual_inf) << "\n";
  out << "total_mass = " << format_double(res.total_mass) << "\n";
  out << "min_bubble_length = " << format_double(res.min_bubble_length) << "\n";
  out << "positions = " << join(res.positions) << "\n";
  out << "weights = " << join(res.weights) << "\n";
  out << "levels = " << join(res.levels) << "\n";
  out << "alpha = " << join(res.alpha) << "\n";
  out << "beta = " << join(res.beta) << "\n";
  out << "left_case = " << join(res.left_case) << "\n";
  out << "right_case = " << join(res.right_case) << "\n";
}

Result parse_result(std::istream& in) {
  const auto pairs = read_pairs(in);
  Result res;
  for (const auto& [key, value] : pairs) {
    if (key == "label") res.label = value;
    else if (key == "converged") res.converged = parse_bool(value, key);
    else if (key == "path") res.path = value;
    else if (key == "newton_iters") res.newton_iters = static_cast<int>(parse_integer(value, key));
    else if (key == "lmap_iters") res.lmap_iters = parse_integer(value, key);
    else if (key == "residual_inf") res.residual_inf = parse_number(value, key);
    else if (key == "total_mass") res.total_mass = parse_number(value, key);
    else if (key == "min_bubble_length") res.min_bubble_length = parse_number(value, key);
    else if (key == "positions") res.positions = parse_array(value, key);
    else if (key == "weights") res.weights = parse_array(value, key);
    else if (key == "levels") res.levels = parse_array(value, key);
    else if (key == "alpha") res.alpha = parse_array(value, key);
    else if (key == "beta") res.beta = parse_array(value, key);
    else if (key == "left_case") res.left_case = split_tokens(value);
    else if (key == "right_case") res.right_case = split_tokens(value);
    else fail(Errc::ParseError, "unknown key '" + key + "'");
  }
  return res;
}

Result read_result(const std::string& path) {
  std::ifstream in = open_in(path);
  return parse_result(in);
}

void write_density_samples(const EquilibriumDensity& density, std::size_t samples,
                           double padding, const std::string& path) {
  if (samples < 2) fail(Errc::InvalidValue, "need at least two density samples");
  double reach = 0.0;
  for (double c : density.levels) reach = std::max(reach, c);
  reach = std::sqrt(std::max(reach, 0.0));
  const double lo = density.measure.positions.front() - reach - padding;
  const double hi = density.measure.positions.back() + reach + padding;
  const double step = (hi - lo) / static_cast<double>(samples - 1);

  std::ofstream out = open_out(path);
  out << "x,f\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    out << format_double(x) << ',' << format_double(density.value(x)) << "\n";
  }
}

}  // namespace mfg
