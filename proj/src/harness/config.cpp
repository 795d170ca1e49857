#include "ppe/harness/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ppe/core/errors.hpp"

namespace ppe::harness {

std::string_view to_string(SolverKind k) { return k == SolverKind::aniso ? "aniso" : "hydro"; }

SolverKind solver_kind_from_string(std::string_view s) {
  if (s == "aniso") return SolverKind::aniso;
  if (s == "hydro") return SolverKind::hydro;
  throw ConfigError("unknown solver: " + std::string(s));
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw ConfigError("key '" + key + "': not a number: '" + v + "'");
  }
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) {
    throw ConfigError("key '" + key + "': not an integer: '" + v + "'");
  }
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const long long x = to_integer(key, v);
  if (x < -(1LL << 30) || x > (1LL << 30)) throw ConfigError("key '" + key + "': out of range");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected true or false");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

std::string fmt_double(double x) { return fmt::format("{}", x); }

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt_double(v[i]);
  return s;
}

struct Entry {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class M>
Entry real(M member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) { member(c) = to_double(k, v); },
          [member](const RunConfig& c) { return fmt_double(member(const_cast<RunConfig&>(c))); }};
}

template <class M>
Entry integer(M member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) { member(c) = to_int(k, v); },
          [member](const RunConfig& c) { return std::to_string(member(const_cast<RunConfig&>(c))); }};
}

const std::map<std::string, Entry>& table() {
  static const std::map<std::string, Entry> t = [] {
    std::map<std::string, Entry> m;
    m["n1"] = integer([](RunConfig& c) -> int& { return c.n1; });
    m["n2"] = integer([](RunConfig& c) -> int& { return c.n2; });
    m["n3"] = integer([](RunConfig& c) -> int& { return c.n3; });
    m["eps"] = real([](RunConfig& c) -> double& { return c.params.eps; });
    m["nu1"] = real([](RunConfig& c) -> double& { return c.params.nu1; });
    m["nu2"] = real([](RunConfig& c) -> double& { return c.params.nu2; });
    m["nu3"] = real([](RunConfig& c) -> double& { return c.params.nu3; });
    m["k1"] = real([](RunConfig& c) -> double& { return c.params.k1; });
    m["k2"] = real([](RunConfig& c) -> double& { return c.params.k2; });
    m["k3"] = real([](RunConfig& c) -> double& { return c.params.k3; });
    m["f"] = real([](RunConfig& c) -> double& { return c.params.f; });
    m["theta"] = real([](RunConfig& c) -> double& { return c.params.theta; });
    m["phi"] = real([](RunConfig& c) -> double& { return c.params.phi; });
    m["a"] = real([](RunConfig& c) -> double& { return c.params.a; });
    m["mu"] = real([](RunConfig& c) -> double& { return c.hydro.mu; });
    m["dt"] = real([](RunConfig& c) -> double& { return c.ctrl.dt; });
    m["t_end"] = real([](RunConfig& c) -> double& { return c.ctrl.t_end; });
    m["cfl_safety"] = real([](RunConfig& c) -> double& { return c.ctrl.cfl_safety; });
    m["source_amplitude"] = real([](RunConfig& c) -> double& { return c.source_amplitude; });
    m["source_radius"] = real([](RunConfig& c) -> double& { return c.source_radius; });
    m["init_amplitude"] = real([](RunConfig& c) -> double& { return c.init_amplitude; });
    m["init_bandlimit"] = integer([](RunConfig& c) -> int& { return c.init_bandlimit; });
    m["sample_every"] = integer([](RunConfig& c) -> int& { return c.sample_every; });
    m["snapshot_every"] = integer([](RunConfig& c) -> int& { return c.snapshot_every; });
    m["eps_dt_coupling"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) { c.ctrl.eps_dt_coupling = to_bool(k, v); },
        [](const RunConfig& c) { return std::string(c.ctrl.eps_dt_coupling ? "true" : "false"); }};
    m["seed"] = {[](RunConfig& c, const std::string& k, const std::string& v) {
                   const long long x = to_integer(k, v);
                   if (x < 0) throw ConfigError("key 'seed': must be nonnegative");
                   c.seed = static_cast<std::uint64_t>(x);
                 },
                 [](const RunConfig& c) { return std::to_string(c.seed); }};
    m["solver"] = {[](RunConfig& c, const std::string&, const std::string& v) { c.solver = solver_kind_from_string(v); },
                   [](const RunConfig& c) { return std::string(to_string(c.solver)); }};
    m["source"] = {[](RunConfig& c, const std::string&, const std::string& v) { c.source = model::source_kind_from_string(v); },
                   [](const RunConfig& c) { return std::string(model::to_string(c.source)); }};
    m["source_center"] = {[](RunConfig& c, const std::string& k, const std::string& v) {
                            const auto xs = to_list(k, v);
                            if (xs.size() != 3) throw ConfigError("key 'source_center': expected x1,x2,x3");
                            c.source_center = {xs[0], xs[1], xs[2]};
                          },
                          [](const RunConfig& c) {
                            return fmt_list({c.source_center[0], c.source_center[1], c.source_center[2]});
                          }};
    m["experiment_id"] = {[](RunConfig& c, const std::string&, const std::string& v) {
                            if (v.empty() || v.find_first_of("/\\ \t") != std::string::npos) {
                              throw ConfigError("key 'experiment_id': must be a nonempty name without separators");
                            }
                            c.experiment_id = v;
                          },
                          [](const RunConfig& c) { return c.experiment_id; }};
    m["output_dir"] = {[](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; },
                       [](const RunConfig& c) { return c.output_dir; }};
    m["eps_list"] = {[](RunConfig& c, const std::string& k, const std::string& v) { c.eps_list = to_list(k, v); },
                     [](const RunConfig& c) { return fmt_list(c.eps_list); }};
    m["mu_list"] = {[](RunConfig& c, const std::string& k, const std::string& v) { c.mu_list = to_list(k, v); },
                    [](const RunConfig& c) { return fmt_list(c.mu_list); }};
    return m;
  }();
  return t;
}

}  // namespace

model::SourceSpec RunConfig::source_spec(const SpectralGrid& g) const {
  model::SourceSpec s;
  s.kind = source;
  s.eps = params.eps;
  s.center = source_center;
  s.amplitude = source_amplitude;
  if (source == model::SourceKind::convolved_delta || source == model::SourceKind::custom_smooth) {
    s.kernel = model::default_kernel(g, source_radius);
  }
  return s;
}

void RunConfig::validate() const {
  for (int n : {n1, n2, n3}) {
    if (n < 4 || n % 2) throw ConfigError("grid sizes must be even and at least 4");
  }
  params.validate();
  hydro.validate();
  StepControl c = ctrl;
  if (solver == SolverKind::hydro) c.eps_dt_coupling = false;
  c.validate(params);
  c.steps();
  const int cutoff = std::min({(n1 - 1) / 3, (n2 - 1) / 3, (n3 - 1) / 3});
  if (init_bandlimit < 1 || init_bandlimit > cutoff) {
    throw ConfigError("init_bandlimit must lie in [1, " + std::to_string(cutoff) + "]");
  }
  if (!(init_amplitude >= 0.0)) throw ConfigError("init_amplitude must be nonnegative");
  if (!(source_radius > 0.0)) throw ConfigError("source_radius must be positive");
  if (sample_every < 1) throw ConfigError("sample_every must be at least 1");
  if (snapshot_every < 0) throw ConfigError("snapshot_every must be nonnegative");
  for (double m : mu_list) {
    if (!(m >= 0.0)) throw ConfigError("mu_list entries must be nonnegative");
  }
}

void set_key(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "n") {
    c.n1 = c.n2 = c.n3 = to_int(key, value);
    return;
  }
  const auto& t = table();
  const auto it = t.find(key);
  if (it == t.end()) throw ConfigError("unknown config key: '" + key + "'");
  it->second.set(c, key, value);
}

RunConfig parse_config(std::istream& is) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    }
    try {
      set_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  return parse_config(in);
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, e] : table()) keys.push_back(k);
  return keys;
}

std::string serialize(const RunConfig& c) {
  std::string out;
  for (const auto& [k, e] : table()) out += k + " = " + e.get(c) + "\n";
  return out;
}

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const auto& [k, e] : table()) {
    if (k == "output_dir") continue;
    for (char ch : k + " = " + e.get(c) + "\n") {
      h ^= static_cast<unsigned char>(ch);
      h *= 1099511628211ULL;
    }
  }
  return fmt::format("{:016x}", h);
}

}  // namespace ppe::harness
