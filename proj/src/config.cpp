#include "rdlab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rdlab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& body) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : body) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  const auto last = trim(cur);
  if (!last.empty()) out.push_back(last);
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": '" + s + "'");
  }
}

std::int64_t to_int(const std::string& s, const std::string& key) {
  const double v = to_double(s, key);
  const auto i = static_cast<std::int64_t>(std::llround(v));
  if (static_cast<double>(i) != v) {
    throw std::invalid_argument("config: integer expected for " + key);
  }
  return i;
}

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quote = !in_quote;
      if (line[i] == '#' && !in_quote) {
        line = line.substr(0, i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));

    auto as_string = [&]() {
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
        return value.substr(1, value.size() - 2);
      }
      return value;
    };
    auto as_list = [&]() {
      if (value.size() < 2 || value.front() != '[' || value.back() != ']') {
        throw std::invalid_argument("config: list expected for " + key);
      }
      return split_list(value.substr(1, value.size() - 2));
    };

    if (key == "algebra") cfg.algebra = as_string();
    else if (key == "profile") cfg.profile = as_string();
    else if (key == "lambda_rule") cfg.lambda_rule = as_string();
    else if (key == "scale") {
      cfg.scale.clear();
      for (const auto& item : as_list()) cfg.scale.push_back(to_int(item, key));
    } else if (key == "lambda") {
      cfg.lambda_list.clear();
      for (const auto& item : as_list()) cfg.lambda_list.push_back(to_double(item, key));
      cfg.lambda_rule = "explicit";
    } else if (key == "lambda_ratio") cfg.lambda_ratio = to_double(value, key);
    else if (key == "omega") cfg.omega = to_double(value, key);
    else if (key == "stage") cfg.stage = static_cast<int>(to_int(value, key));
    else if (key == "n_max") cfg.n_max = static_cast<int>(to_int(value, key));
    else if (key == "t_max") cfg.t_max = to_double(value, key);
    else if (key == "t_count") cfg.t_count = static_cast<int>(to_int(value, key));
    else if (key == "samples") cfg.samples = static_cast<int>(to_int(value, key));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(value, key));
    else if (key == "jobs") cfg.jobs = static_cast<int>(to_int(value, key));
    else if (key == "cert_c") cfg.cert_c = to_double(value, key);
    else if (key == "cert_beta") cfg.cert_beta = to_double(value, key);
    else if (key == "bd_degree") cfg.bd_degree = static_cast<int>(to_int(value, key));
    else if (key == "bd_theta_grid") cfg.bd_theta_grid = static_cast<int>(to_int(value, key));
    else if (key == "bd_exp_theta_grid") cfg.bd_exp_theta_grid = static_cast<int>(to_int(value, key));
    else if (key == "bd_window") cfg.bd_window = to_int(value, key);
    else if (key == "bd_window_iters") cfg.bd_window_iters = static_cast<int>(to_int(value, key));
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void ExperimentConfig::validate() const {
  static const char* algebras[] = {"sequences", "odometer", "dihedral", "bunce_deddens", "uhf"};
  bool ok = false;
  for (const char* a : algebras) ok = ok || algebra == a;
  if (!ok) throw std::invalid_argument("config: unknown algebra '" + algebra + "'");
  if (profile != "flat" && profile != "damped") {
    throw std::invalid_argument("config: profile must be flat or damped");
  }
  if (lambda_rule != "geometric" && lambda_rule != "explicit") {
    throw std::invalid_argument("config: lambda_rule must be geometric or explicit");
  }
  Scale s(scale);  // throws on a malformed chain
  if (stage < 0 || stage > s.depth()) throw std::invalid_argument("config: stage out of range");
  if (n_max < 0 || t_count < 1 || samples < 1) throw std::invalid_argument("config: bad counts");
  if (t_max < 1.0) throw std::invalid_argument("config: t_max must be >= 1");
  if (bd_degree < 0 || bd_theta_grid < 1 || bd_exp_theta_grid < 1 || bd_window < 1) {
    throw std::invalid_argument("config: bad bunce_deddens parameters");
  }
}

double ExperimentConfig::natural_omega() const {
  return algebra == "dihedral" ? 2.0 : 1.0;
}

LengthSequence ExperimentConfig::make_lengths() const {
  const Scale s = make_scale();
  const double om = omega > 0.0 ? omega : natural_omega();
  if (lambda_rule == "explicit") {
    return LengthSequence::make(lambda_list, om, cert_c, cert_beta, s);
  }
  return LengthSequence::geometric(lambda_ratio, om, cert_c, cert_beta, s);
}

std::vector<double> ExperimentConfig::make_level_scale(const LengthSequence& L) const {
  std::vector<double> out(L.lam.size(), 1.0);
  if (profile == "damped") {
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = 1.0 / (L.lam[n] * L.lam[n]);
  }
  return out;
}

std::vector<double> ExperimentConfig::pbe_t_grid() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(t_count));
  if (t_count == 1) {
    out.push_back(1.0);
    return out;
  }
  const double step = std::log(t_max) / static_cast<double>(t_count - 1);
  for (int i = 0; i < t_count; ++i) out.push_back(std::exp(step * i));
  return out;
}

std::string ExperimentConfig::echo() const {
  std::ostringstream os;
  os << "algebra = \"" << algebra << "\"\n";
  os << "scale = [";
  for (std::size_t i = 0; i < scale.size(); ++i) os << (i ? ", " : "") << scale[i];
  os << "]\n";
  os << "lambda_rule = \"" << lambda_rule << "\"\n";
  if (lambda_rule == "explicit") {
    os << "lambda = [";
    for (std::size_t i = 0; i < lambda_list.size(); ++i) {
      os << (i ? ", " : "") << fmt_num(lambda_list[i]);
    }
    os << "]\n";
  } else {
    os << "lambda_ratio = " << fmt_num(lambda_ratio) << "\n";
  }
  os << "omega = " << fmt_num(omega) << "\n";
  os << "stage = " << stage << "\n";
  os << "n_max = " << n_max << "\n";
  os << "t_max = " << fmt_num(t_max) << "\n";
  os << "t_count = " << t_count << "\n";
  os << "samples = " << samples << "\n";
  os << "seed = " << seed << "\n";
  os << "profile = \"" << profile << "\"\n";
  os << "jobs = " << jobs << "\n";
  os << "cert_c = " << fmt_num(cert_c) << "\n";
  os << "cert_beta = " << fmt_num(cert_beta) << "\n";
  os << "bd_degree = " << bd_degree << "\n";
  os << "bd_theta_grid = " << bd_theta_grid << "\n";
  os << "bd_exp_theta_grid = " << bd_exp_theta_grid << "\n";
  os << "bd_window = " << bd_window << "\n";
  os << "bd_window_iters = " << bd_window_iters << "\n";
  return os.str();
}

}  // namespace rdlab
