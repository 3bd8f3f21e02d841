#include "risfox/scenario.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

#include "risfox/error.hpp"

namespace risfox::scenario {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw std::invalid_argument("expected a number, got '" + v + "'");
  return out;
}

template <class I>
I to_int(const std::string& v) {
  I out = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  if (r.ec != std::errc() || r.ptr != end) throw std::invalid_argument("expected an integer, got '" + v + "'");
  return out;
}

bool to_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

std::string fmt(double x) {
  std::ostringstream o;
  o.imbue(std::locale::classic());
  o << std::setprecision(17) << x;
  return o.str();
}

// Raw parameter store; fading objects are built once all keys are known.
struct Draft {
  mc::ScenarioConfig sc;
  mc::MCConfig mc;
  double alpha1 = 2.0, beta1 = 1.0, alpha2 = 2.0, beta2 = 2.0, msp1 = 1.0, msp2 = 1.0;
  double m = 1.0, M = 2.5454, m0 = 1.0;
  std::optional<double> sigma_db;
  std::string phase = "1";
};

using Setter = std::function<void(Draft&, const std::string&)>;
using Getter = std::function<std::string(const Scenario&)>;

struct Key {
  Setter set;
  Getter get;
};

const std::map<std::string, Key>& keys() {
  static const std::map<std::string, Key> k = [] {
    std::map<std::string, Key> t;
    t["ris.n"] = {[](Draft& d, const std::string& v) { d.sc.N = to_int<int>(v); },
                  [](const Scenario& s) { return std::to_string(s.config.N); }};
    t["link.d1"] = {[](Draft& d, const std::string& v) { d.sc.d1 = to_double(v); },
                    [](const Scenario& s) { return fmt(s.config.d1); }};
    t["link.d2"] = {[](Draft& d, const std::string& v) { d.sc.d2 = to_double(v); },
                    [](const Scenario& s) { return fmt(s.config.d2); }};
    t["link.a"] = {[](Draft& d, const std::string& v) { d.sc.path_exponent = to_double(v); },
                   [](const Scenario& s) { return fmt(s.config.path_exponent); }};
    t["link.fc"] = {[](Draft& d, const std::string& v) { d.sc.fc = to_double(v); },
                    [](const Scenario& s) { return fmt(s.config.fc); }};
    t["link.pt_dbm"] = {[](Draft& d, const std::string& v) { d.sc.pt_dbm = to_double(v); },
                        [](const Scenario& s) { return fmt(s.config.pt_dbm); }};
    t["link.noise_dbm"] = {[](Draft& d, const std::string& v) { d.sc.noise_dbm = to_double(v); },
                           [](const Scenario& s) { return fmt(s.config.noise_dbm); }};
    t["link.gt_dbi"] = {[](Draft& d, const std::string& v) { d.sc.gt_dbi = to_double(v); },
                        [](const Scenario& s) { return fmt(s.config.gt_dbi); }};
    t["link.gr_dbi"] = {[](Draft& d, const std::string& v) { d.sc.gr_dbi = to_double(v); },
                        [](const Scenario& s) { return fmt(s.config.gr_dbi); }};
    t["mobility.topology"] = {[](Draft& d, const std::string& v) {
                                if (v != "1d" && v != "2d" && v != "3d" && v != "static")
                                  throw std::invalid_argument("expected 1d, 2d, 3d or static, got '" + v + "'");
                                d.sc.topology = v;
                              },
                              [](const Scenario& s) { return s.config.topology; }};
    t["fading.kappa"] = {[](Draft& d, const std::string& v) { d.sc.element.first_hop.kappa = to_double(v); },
                         [](const Scenario& s) { return fmt(s.config.element.first_hop.kappa); }};
    t["fading.mu"] = {[](Draft& d, const std::string& v) { d.sc.element.first_hop.mu = to_double(v); },
                      [](const Scenario& s) { return fmt(s.config.element.first_hop.mu); }};
    t["fading.series_terms"] = {
        [](Draft& d, const std::string& v) { d.sc.element.first_hop.series_terms = to_int<int>(v); },
        [](const Scenario& s) { return std::to_string(s.config.element.first_hop.series_terms); }};
    t["dgg.alpha1"] = {[](Draft& d, const std::string& v) { d.alpha1 = to_double(v); },
                       [](const Scenario& s) { return fmt(s.config.element.second_hop.alpha1()); }};
    t["dgg.beta1"] = {[](Draft& d, const std::string& v) { d.beta1 = to_double(v); },
                      [](const Scenario& s) { return fmt(s.config.element.second_hop.beta1()); }};
    t["dgg.alpha2"] = {[](Draft& d, const std::string& v) { d.alpha2 = to_double(v); },
                       [](const Scenario& s) { return fmt(s.config.element.second_hop.alpha2()); }};
    t["dgg.beta2"] = {[](Draft& d, const std::string& v) { d.beta2 = to_double(v); },
                      [](const Scenario& s) { return fmt(s.config.element.second_hop.beta2()); }};
    t["dgg.msp1"] = {[](Draft& d, const std::string& v) { d.msp1 = to_double(v); },
                     [](const Scenario& s) { return fmt(s.config.element.second_hop.msp1()); }};
    t["dgg.msp2"] = {[](Draft& d, const std::string& v) { d.msp2 = to_double(v); },
                     [](const Scenario& s) { return fmt(s.config.element.second_hop.msp2()); }};
    t["phase.L"] = {[](Draft& d, const std::string& v) {
                      if (v != "perfect") (void)to_int<int>(v);
                      d.phase = v;
                    },
                    [](const Scenario& s) {
                      const auto& p = s.config.element.phase;
                      return p.perfect ? std::string("perfect") : std::to_string(p.L);
                    }};
    t["element.special_case"] = {
        [](Draft& d, const std::string& v) {
          using cascade::SpecialCase;
          if (v == "full") d.sc.element.special_case = SpecialCase::full;
          else if (v == "rayleigh_mobility") d.sc.element.special_case = SpecialCase::rayleigh_mobility;
          else if (v == "rayleigh_static") d.sc.element.special_case = SpecialCase::rayleigh_static;
          else throw std::invalid_argument("expected full, rayleigh_mobility or rayleigh_static, got '" + v + "'");
        },
        [](const Scenario& s) {
          switch (s.config.element.special_case) {
            case cascade::SpecialCase::rayleigh_mobility: return std::string("rayleigh_mobility");
            case cascade::SpecialCase::rayleigh_static: return std::string("rayleigh_static");
            default: return std::string("full");
          }
        }};
    t["element.phase_model"] = {
        [](Draft& d, const std::string& v) {
          if (v == "projection") d.sc.element.phase_model = cascade::PhaseModel::projection;
          else if (v == "printed_sinc") d.sc.element.phase_model = cascade::PhaseModel::printed_sinc;
          else throw std::invalid_argument("expected projection or printed_sinc, got '" + v + "'");
        },
        [](const Scenario& s) {
          return std::string(s.config.element.phase_model == cascade::PhaseModel::projection ? "projection"
                                                                                             : "printed_sinc");
        }};
    t["direct.enabled"] = {[](Draft& d, const std::string& v) { d.sc.direct = to_bool(v); },
                           [](const Scenario& s) { return std::string(s.config.direct ? "1" : "0"); }};
    t["direct.m"] = {[](Draft& d, const std::string& v) { d.m = to_double(v); },
                     [](const Scenario& s) { return fmt(s.config.direct_fading.m()); }};
    t["direct.M"] = {[](Draft& d, const std::string& v) { d.M = to_double(v); },
                     [](const Scenario& s) { return fmt(s.config.direct_fading.M()); }};
    t["direct.m0"] = {[](Draft& d, const std::string& v) { d.m0 = to_double(v); },
                      [](const Scenario& s) { return fmt(s.config.direct_fading.m0()); }};
    t["direct.sigma_db"] = {[](Draft& d, const std::string& v) { d.sigma_db = to_double(v); }, nullptr};
    t["metric.gamma_th_db"] = {[](Draft& d, const std::string& v) { d.sc.gamma_th_db = to_double(v); },
                               [](const Scenario& s) { return fmt(s.config.gamma_th_db); }};
    t["modulation"] = {[](Draft& d, const std::string& v) {
                         if (v == "bpsk") d.sc.modulation = metrics::Modulation::bpsk();
                         else if (v == "dbpsk") d.sc.modulation = metrics::Modulation::dbpsk();
                         else throw std::invalid_argument("expected bpsk or dbpsk, got '" + v + "'");
                       },
                       nullptr};
    t["modulation.p"] = {[](Draft& d, const std::string& v) { d.sc.modulation.p = to_double(v); },
                         [](const Scenario& s) { return fmt(s.config.modulation.p); }};
    t["modulation.q"] = {[](Draft& d, const std::string& v) { d.sc.modulation.q = to_double(v); },
                         [](const Scenario& s) { return fmt(s.config.modulation.q); }};
    t["mc.trials"] = {[](Draft& d, const std::string& v) { d.mc.trials = to_int<std::int64_t>(v); },
                      [](const Scenario& s) { return std::to_string(s.mc.trials); }};
    t["mc.seed"] = {[](Draft& d, const std::string& v) { d.mc.seed = to_int<std::uint64_t>(v); },
                    [](const Scenario& s) { return std::to_string(s.mc.seed); }};
    t["mc.streams"] = {[](Draft& d, const std::string& v) { d.mc.streams = to_int<int>(v); },
                       [](const Scenario& s) { return std::to_string(s.mc.streams); }};
    t["mc.amplitude"] = {[](Draft& d, const std::string& v) {
                           if (v == "magnitude") d.mc.amplitude = mc::AmplitudeModel::magnitude;
                           else if (v == "projection") d.mc.amplitude = mc::AmplitudeModel::projection;
                           else throw std::invalid_argument("expected magnitude or projection, got '" + v + "'");
                         },
                         [](const Scenario& s) {
                           return std::string(s.mc.amplitude == mc::AmplitudeModel::magnitude ? "magnitude"
                                                                                              : "projection");
                         }};
    return t;
  }();
  return k;
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Scenario parse(const std::string& text) {
  Draft d;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    const auto it = keys().find(key);
    if (it == keys().end()) throw ConfigError("unknown key", lineno, key);
    if (auto [pos, fresh] = seen.emplace(key, lineno); !fresh)
      throw ConfigError("duplicate key (first set on line " + std::to_string(pos->second) + ")", lineno, key);
    if (value.empty()) throw ConfigError("missing value", lineno, key);
    try {
      it->second.set(d, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), lineno, key);
    }
  }
  auto at = [&](const std::string& key) { return seen.count(key) ? seen[key] : 0; };
  Scenario s;
  s.source = text;
  s.config = d.sc;
  s.mc = d.mc;
  try {
    s.config.element.second_hop = fading::DGGParams(d.alpha1, d.beta1, d.alpha2, d.beta2, d.msp1, d.msp2);
  } catch (const Error& e) {
    throw ConfigError(e.what(), at("dgg.alpha1"), "dgg");
  }
  try {
    if (d.sigma_db)
      s.config.direct_fading = fading::GenKParams::from_sigma_db(d.m, *d.sigma_db, d.m0,
                                                                  seen.count("direct.M") ? std::optional(d.M) : std::nullopt);
    else
      s.config.direct_fading = fading::GenKParams(d.m, d.M, d.m0);
  } catch (const Error& e) {
    throw ConfigError(e.what(), at(d.sigma_db ? "direct.sigma_db" : "direct.M"), "direct");
  }
  s.config.element.phase = d.phase == "perfect" ? fading::PhaseNoiseParams::perfect_phase()
                                                : fading::PhaseNoiseParams::quantized(std::stoi(d.phase));
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw DomainError(std::string(what) + " must be positive");
  };
  const auto& c = s.config;
  const std::pair<const char*, std::function<void()>> checks[] = {
      {"ris.n", [&] { if (c.N < 1) throw DomainError("N must be at least 1"); }},
      {"link.d1", [&] { positive(c.d1, "d1"); }},
      {"link.d2", [&] { positive(c.d2, "d2"); }},
      {"link.fc", [&] { positive(c.fc, "carrier frequency"); }},
      {"link.a", [&] { if (!(c.path_exponent >= 2.0 && c.path_exponent <= 5.0)) throw DomainError("path exponent must lie in [2, 5]"); }},
      {"fading.kappa", [&] { s.config.element.first_hop.validate(); }},
      {"phase.L", [&] { s.config.element.phase.validate(); }},
      {"ris.n", [&] { s.config.validate(); }},
      {"mc.trials", [&] { s.mc.validate(); }},
  };
  for (const auto& [key, check] : checks) {
    try {
      check();
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(e.what(), at(key), key);
    }
  }
  s.hash = fnv1a(canonical(s));
  return s;
}

Scenario load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str());
}

std::string canonical(const Scenario& s) {
  std::string out;
  for (const auto& [name, key] : keys()) {
    if (!key.get) continue;
    out += name + " = " + key.get(s) + "\n";
  }
  return out;
}

}  // namespace risfox::scenario
