#include "io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace estfam::cli {

namespace {

std::string trim(const std::string& s) {
  constexpr const char* kWhitespace = " \t";
  const auto begin = s.find_first_not_of(kWhitespace);
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(kWhitespace);
  return s.substr(begin, end - begin + 1);
}

std::optional<std::size_t> parse_strict_size(const std::string& field) {
  const std::string token = trim(field);
  if (token.empty() || token[0] == '-' || token[0] == '+') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size()) return std::nullopt;
  return static_cast<std::size_t>(v);
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

std::optional<double> parse_strict_double(const std::string& field) {
  const std::string token = trim(field);
  if (token.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) return std::nullopt;
  return v;
}

PopulationData read_population_csv(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || trim(lines[0]) != "y,x")
    throw ParseError("expected header 'y,x'", 1);

  PopulationData pop;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    const auto comma = lines[i].find(',');
    if (comma == std::string::npos ||
        lines[i].find(',', comma + 1) != std::string::npos) {
      throw ParseError("expected exactly two comma-separated values", line_no);
    }
    const auto y = parse_strict_double(lines[i].substr(0, comma));
    const auto x = parse_strict_double(lines[i].substr(comma + 1));
    if (!y || !x) throw ParseError("malformed number", line_no);
    if (!std::isfinite(*y) || !std::isfinite(*x))
      throw ParseError("values must be finite", line_no);
    pop.y.push_back(*y);
    pop.x.push_back(*x);
  }
  if (pop.size() < 2) {
    throw TooFewRows("population needs at least two rows, got " +
                     std::to_string(pop.size()));
  }
  return pop;
}

ParameterFile read_parameter_file(const std::string& path) {
  const std::vector<std::string> lines = read_lines(path);
  static const std::set<std::string> kKnownKeys = {
      "N",   "n",       "mean_y",  "mean_x", "cv2_y",
      "cv2_x", "rho",   "beta1_x", "beta2_x", "sigma_x"};

  std::map<std::string, std::pair<std::string, std::size_t>> entries;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    std::string line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (kKnownKeys.find(key) == kKnownKeys.end())
      throw ParseError("unknown key '" + key + "'", line_no);
    if (!entries.emplace(key, std::make_pair(value, line_no)).second)
      throw ParseError("duplicate key '" + key + "'", line_no);
  }

  auto need = [&entries,
               &path](const std::string& key) -> std::pair<std::string, std::size_t> {
    const auto it = entries.find(key);
    if (it == entries.end())
      throw ParseError("missing required key '" + key + "' in '" + path + "'", 0);
    return it->second;
  };
  auto need_real = [&need](const std::string& key) {
    const auto [value, line_no] = need(key);
    const auto v = parse_strict_double(value);
    if (!v || !std::isfinite(*v))
      throw ParseError("malformed value for '" + key + "'", line_no);
    return *v;
  };
  auto need_size = [&need](const std::string& key) {
    const auto [value, line_no] = need(key);
    const auto v = parse_strict_size(value);
    if (!v) throw ParseError("malformed value for '" + key + "'", line_no);
    return *v;
  };

  ParameterFile file;
  file.population_size = need_size("N");
  file.sample_size = need_size("n");

  PopulationMoments& m = file.moments;
  m.population_size = file.population_size;
  m.mean_y = need_real("mean_y");
  m.mean_x = need_real("mean_x");
  m.cv2_y = need_real("cv2_y");
  m.cv2_x = need_real("cv2_x");
  m.rho = need_real("rho");
  m.beta1_x = need_real("beta1_x");
  m.beta2_x = need_real("beta2_x");

  if (file.population_size < 2) throw DegenerateInput("N must be at least 2");
  if (file.sample_size < 1 || file.sample_size >= file.population_size)
    throw InvalidDesign("sample size must satisfy 1 <= n < N");
  if (m.mean_y == 0.0) throw DegenerateInput("mean_y must be nonzero");
  if (m.mean_x == 0.0) throw DegenerateInput("mean_x must be nonzero");
  if (!(m.cv2_y > 0.0)) throw DegenerateInput("cv2_y must be positive");
  if (!(m.cv2_x > 0.0)) throw DegenerateInput("cv2_x must be positive");
  if (!(std::fabs(m.rho) <= 1.0))
    throw DegenerateInput("rho must lie in [-1, 1]");
  if (!(m.beta1_x >= 0.0))
    throw DegenerateInput("beta1_x must be nonnegative");
  if (!(m.beta2_x >= m.beta1_x + 1.0 - 1e-9))
    throw DegenerateInput("beta2_x must be at least beta1_x + 1");

  m.var_y = m.cv2_y * m.mean_y * m.mean_y;
  m.var_x = m.cv2_x * m.mean_x * m.mean_x;
  if (const auto it = entries.find("sigma_x"); it != entries.end()) {
    const auto v = parse_strict_double(it->second.first);
    if (!v || !std::isfinite(*v))
      throw ParseError("malformed value for 'sigma_x'", it->second.second);
    if (!(*v >= 0.0)) throw DegenerateInput("sigma_x must be nonnegative");
    m.sigma_x = *v;
  } else {
    m.sigma_x = std::fabs(m.mean_x) * std::sqrt(m.cv2_x);
  }
  return file;
}

}  // namespace estfam::cli
