#include "rmm/model.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rmm {

double parse_lc(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF" || s == "infinity") return kInf;
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw InputError("invalid L_c value '" + s + "'");
  }
  if (pos != s.size() || !(v >= 0.0) || std::isnan(v)) throw InputError("invalid L_c value '" + s + "'");
  return v;
}

std::string format_lc(double lc) {
  if (std::isinf(lc)) return "inf";
  std::ostringstream os;
  os.precision(12);
  os << lc;
  return os.str();
}

void apply_param(MaterialParams& p, const std::string& key, const std::string& value) {
  if (key == "L_c") {
    p.L_c = parse_lc(value);
    return;
  }
  double v = 0.0;
  const auto r = std::from_chars(value.data(), value.data() + value.size(), v);
  if (r.ec != std::errc() || r.ptr != value.data() + value.size())
    throw InputError("invalid value '" + value + "' for " + key);
  if (key == "lambda_e") p.lambda_e = v;
  else if (key == "mu_e") p.mu_e = v;
  else if (key == "mu_c") p.mu_c = v;
  else if (key == "lambda_micro") p.lambda_micro = v;
  else if (key == "mu_micro") p.mu_micro = v;
  else if (key == "lambda_macro") p.lambda_macro = v;
  else if (key == "mu_macro") p.mu_macro = v;
  else throw InputError("unknown parameter '" + key + "'");
}

MaterialParams read_params_file(const std::string& path, MaterialParams base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open params file '" + path + "'");
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError(path + ":" + std::to_string(lineno) + ": expected key=value");
    apply_param(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

}  // namespace rmm
