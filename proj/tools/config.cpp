#include "config.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "fxmot/errors.hpp"

namespace fxmot::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double as_double(const std::string& key, const std::string& v) {
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (v.empty() || used != v.size() || std::isnan(d)) {
    throw ParseError("`" + key + "` expects a number, got `" + v + "`", 0);
  }
  return d;
}

long long as_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long i = 0;
  try {
    i = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (v.empty() || used != v.size()) throw ParseError("`" + key + "` expects an integer, got `" + v + "`", 0);
  return i;
}

std::uint64_t as_unsigned(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long i = 0;
  try {
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    i = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (v.empty() || used != v.size()) {
    throw ParseError("`" + key + "` expects a non-negative integer, got `" + v + "`", 0);
  }
  return i;
}

int as_count(const std::string& key, const std::string& v) {
  const auto i = as_integer(key, v);
  if (i < 0 || i > std::numeric_limits<int>::max()) throw ParseError("`" + key + "` must be non-negative", 0);
  return static_cast<int>(i);
}

using Setter = std::function<void(TrackConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"max_age", [](TrackConfig& c, auto& k, auto& v) { c.max_age = as_count(k, v); }},
      {"anti_aging", [](TrackConfig& c, auto& k, auto& v) { c.anti_aging = as_count(k, v); }},
      {"c_small", [](TrackConfig& c, auto& k, auto& v) { c.c_small = as_double(k, v); }},
      {"c_large", [](TrackConfig& c, auto& k, auto& v) { c.c_large = as_double(k, v); }},
      {"s_min", [](TrackConfig& c, auto& k, auto& v) { c.s_min = as_double(k, v); }},
      {"confidence_floor", [](TrackConfig& c, auto& k, auto& v) { c.confidence_floor = as_double(k, v); }},
      {"assigner",
       [](TrackConfig& c, auto& k, auto& v) {
         if (v == "flexible") {
           c.assigner = Assigner::flexible;
         } else if (v == "hungarian") {
           c.assigner = Assigner::hungarian;
         } else {
           throw ParseError("`" + k + "` must be `flexible` or `hungarian`", 0);
         }
       }},
      {"a0", [](TrackConfig& c, auto& k, auto& v) { c.sb.a0 = as_double(k, v); }},
      {"c0", [](TrackConfig& c, auto& k, auto& v) { c.sb.c0 = as_double(k, v); }},
      {"eta", [](TrackConfig& c, auto& k, auto& v) { c.sb.eta = as_double(k, v); }},
      {"dt", [](TrackConfig& c, auto& k, auto& v) { c.sb.dt = as_double(k, v); }},
      {"n_steps", [](TrackConfig& c, auto& k, auto& v) { c.sb.n_steps = as_unsigned(k, v); }},
      {"seed", [](TrackConfig& c, auto& k, auto& v) { c.sb.seed = as_unsigned(k, v); }},
      {"init_momentum", [](TrackConfig& c, auto& k, auto& v) { c.sb.init_momentum = as_double(k, v); }},
      {"restarts", [](TrackConfig& c, auto& k, auto& v) { c.sb.restarts = as_unsigned(k, v); }},
      {"schedule",
       [](TrackConfig& c, auto& k, auto& v) {
         if (v == "linear") {
           c.sb.schedule = PumpSchedule::linear;
         } else if (v == "quadratic") {
           c.sb.schedule = PumpSchedule::quadratic;
         } else {
           throw ParseError("`" + k + "` must be `linear` or `quadratic`", 0);
         }
       }},
      {"kf_measurement_position",
       [](TrackConfig& c, auto& k, auto& v) { c.noise.measurement_position = as_double(k, v); }},
      {"kf_measurement_shape", [](TrackConfig& c, auto& k, auto& v) { c.noise.measurement_shape = as_double(k, v); }},
      {"kf_initial_position", [](TrackConfig& c, auto& k, auto& v) { c.noise.initial_position = as_double(k, v); }},
      {"kf_initial_velocity", [](TrackConfig& c, auto& k, auto& v) { c.noise.initial_velocity = as_double(k, v); }},
      {"kf_process_position", [](TrackConfig& c, auto& k, auto& v) { c.noise.process_position = as_double(k, v); }},
      {"kf_process_velocity", [](TrackConfig& c, auto& k, auto& v) { c.noise.process_velocity = as_double(k, v); }},
      {"kf_process_area_velocity",
       [](TrackConfig& c, auto& k, auto& v) { c.noise.process_area_velocity = as_double(k, v); }},
  };
  return table;
}

std::string joined_keys() {
  std::string out;
  for (const auto& k : config_keys()) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply_config_value(TrackConfig& cfg, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) {
    throw ParseError("unknown config key `" + key + "`; valid keys: " + joined_keys(), 0);
  }
  it->second(cfg, key, value);
}

TrackConfig read_config(std::istream& in) {
  struct Entry {
    std::size_t line_no;
    std::string key;
    std::string value;
  };
  std::vector<Entry> entries;
  TrackConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected `key = value`", line_no);
    Entry e{line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
    try {
      apply_config_value(cfg, e.key, e.value);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), line_no);
    }
    entries.push_back(std::move(e));
  }
  try {
    validate(cfg);
  } catch (const DomainError& err) {
    // Blame the latest line whose removal makes the configuration valid.
    for (auto skip = entries.rbegin(); skip != entries.rend(); ++skip) {
      TrackConfig without;
      for (const auto& e : entries) {
        if (&e != &*skip) apply_config_value(without, e.key, e.value);
      }
      try {
        validate(without);
      } catch (const DomainError&) {
        continue;
      }
      throw ParseError(err.what(), skip->line_no);
    }
    throw ParseError(err.what(), 0);
  }
  return cfg;
}

void write_config(std::ostream& out, const TrackConfig& cfg) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "max_age = " << cfg.max_age << '\n'
      << "anti_aging = " << cfg.anti_aging << '\n'
      << "c_small = " << cfg.c_small << '\n'
      << "c_large = " << cfg.c_large << '\n'
      << "s_min = ";
  if (std::isinf(cfg.s_min) && cfg.s_min < 0) {
    out << "-inf";
  } else {
    out << cfg.s_min;
  }
  out << '\n'
      << "confidence_floor = " << cfg.confidence_floor << '\n'
      << "assigner = " << (cfg.assigner == Assigner::flexible ? "flexible" : "hungarian") << '\n'
      << "a0 = " << cfg.sb.a0 << '\n'
      << "c0 = " << cfg.sb.c0 << '\n'
      << "eta = " << cfg.sb.eta << '\n'
      << "dt = " << cfg.sb.dt << '\n'
      << "n_steps = " << cfg.sb.n_steps << '\n'
      << "seed = " << cfg.sb.seed << '\n'
      << "init_momentum = " << cfg.sb.init_momentum << '\n'
      << "restarts = " << cfg.sb.restarts << '\n'
      << "schedule = " << (cfg.sb.schedule == PumpSchedule::linear ? "linear" : "quadratic") << '\n'
      << "kf_measurement_position = " << cfg.noise.measurement_position << '\n'
      << "kf_measurement_shape = " << cfg.noise.measurement_shape << '\n'
      << "kf_initial_position = " << cfg.noise.initial_position << '\n'
      << "kf_initial_velocity = " << cfg.noise.initial_velocity << '\n'
      << "kf_process_position = " << cfg.noise.process_position << '\n'
      << "kf_process_velocity = " << cfg.noise.process_velocity << '\n'
      << "kf_process_area_velocity = " << cfg.noise.process_area_velocity << '\n';
}

}  // namespace fxmot::cli
