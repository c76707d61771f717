#include "app/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace symtomo::app {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ValidationError("unknown key '" + k + "' in " + where);
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

GridSpec grid_from_json(const json& j, const std::string& where) {
  check_keys(j, where, {"min", "max", "n"});
  GridSpec g;
  g.min = j.at("min").get<double>();
  g.max = j.at("max").get<double>();
  g.n = j.at("n").get<std::size_t>();
  return g;
}

json grid_to_json(const GridSpec& g) { return {{"min", g.min}, {"max", g.max}, {"n", g.n}}; }

void validate_grid(const GridSpec& g, const std::string& name) {
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || !(g.max > g.min) || g.n < 16) {
    throw ValidationError("grid '" + name + "' needs finite max > min and n >= 16");
  }
}

cplx alpha_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) {
    check_keys(j, "state.alpha", {"re", "im"});
    return {j.value("re", 0.0), j.value("im", 0.0)};
  }
  throw ValidationError("state.alpha must be a number, [re, im] or {re, im}");
}

}  // namespace

void RunConfig::validate() const {
  trap.validate();
  state.validate();
  if (times.empty()) throw ValidationError("time list is empty");
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("times must be finite and >= 0");
  }
  if (frame_list) {
    if (frame_list->empty()) throw ValidationError("frames list is empty");
    for (const auto& f : *frame_list) f.validate();
  }
  if (family) {
    if (!(family->half_width > 0.0) || !(family->spacing > 0.0) || family->spacing > family->half_width) {
      throw ValidationError("frames family needs 0 < spacing <= M");
    }
  }
  if (x) validate_grid(*x, "x");
  validate_grid(q, "q");
  validate_grid(p, "p");
  validate_grid(psi, "psi");
  validate_grid(transform, "transform");
  if (!(family_x_step > 0.0)) throw ValidationError("family_x_step must be > 0");
  if (!(ode_tol > 0.0) || !(quadrature_tol > 0.0)) throw ValidationError("tolerances must be positive");
  if (format != "csv" && format != "json") throw ValidationError("format must be csv or json");
  if (!(dt > 0.0)) throw ValidationError("output.dt must be > 0");
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  try {
    check_keys(j, "config", {"trap", "state", "time", "frames", "grids", "tolerances", "output", "diagnostics"});
    if (j.contains("trap")) {
      const auto& t = j["trap"];
      check_keys(t, "trap", {"kappa", "omega"});
      read(t, "kappa", c.trap.kappa);
      read(t, "omega", c.trap.omega_mod);
    }
    if (j.contains("state")) {
      const auto& s = j["state"];
      check_keys(s, "state", {"kind", "alpha"});
      if (s.contains("kind")) c.state.kind = parse_state_kind(s["kind"].get<std::string>());
      if (s.contains("alpha")) c.state.alpha = alpha_from_json(s["alpha"]);
    }
    if (j.contains("time")) {
      const auto& t = j["time"];
      c.times = t.is_array() ? t.get<std::vector<double>>() : std::vector<double>{t.get<double>()};
    }
    if (j.contains("frames")) {
      const auto& f = j["frames"];
      if (f.is_array()) {
        std::vector<ReferenceFrame> list;
        for (const auto& e : f) {
          check_keys(e, "frames[]", {"mu", "nu", "delta"});
          list.push_back({e.at("mu").get<double>(), e.at("nu").get<double>(), e.value("delta", 0.0)});
        }
        c.frame_list = std::move(list);
      } else {
        check_keys(f, "frames", {"M", "spacing", "delta"});
        FamilySpec fam;
        read(f, "M", fam.half_width);
        read(f, "spacing", fam.spacing);
        read(f, "delta", fam.delta);
        c.family = fam;
      }
    }
    if (j.contains("grids")) {
      const auto& g = j["grids"];
      check_keys(g, "grids", {"x", "q", "p", "psi", "transform", "family_x_step"});
      if (g.contains("x")) c.x = grid_from_json(g["x"], "grids.x");
      if (g.contains("q")) c.q = grid_from_json(g["q"], "grids.q");
      if (g.contains("p")) c.p = grid_from_json(g["p"], "grids.p");
      if (g.contains("psi")) c.psi = grid_from_json(g["psi"], "grids.psi");
      if (g.contains("transform")) c.transform = grid_from_json(g["transform"], "grids.transform");
      read(g, "family_x_step", c.family_x_step);
    }
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      check_keys(t, "tolerances", {"ode", "quadrature"});
      read(t, "ode", c.ode_tol);
      read(t, "quadrature", c.quadrature_tol);
    }
    if (j.contains("output")) {
      const auto& o = j["output"];
      check_keys(o, "output", {"dir", "format", "dt"});
      read(o, "dir", c.out_dir);
      read(o, "format", c.format);
      read(o, "dt", c.dt);
    }
    if (j.contains("diagnostics")) {
      const auto& d = j["diagnostics"];
      check_keys(d, "diagnostics", {"use_printed_eq7", "use_printed_eq10_shift"});
      read(d, "use_printed_eq7", c.variant.printed_cross_term);
      read(d, "use_printed_eq10_shift", c.variant.printed_cat_shift);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("config " + path + ": " + e.what());
  }
  return config_from_json(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["trap"] = {{"kappa", c.trap.kappa}, {"omega", c.trap.omega_mod}};
  j["state"] = {{"kind", to_string(c.state.kind)}, {"alpha", {c.state.alpha.real(), c.state.alpha.imag()}}};
  j["time"] = c.times;
  if (c.frame_list) {
    json list = json::array();
    for (const auto& f : *c.frame_list) list.push_back({{"mu", f.mu}, {"nu", f.nu}, {"delta", f.delta}});
    j["frames"] = list;
  } else if (c.family) {
    j["frames"] = {{"M", c.family->half_width}, {"spacing", c.family->spacing}, {"delta", c.family->delta}};
  }
  json grids = {{"q", grid_to_json(c.q)},
                {"p", grid_to_json(c.p)},
                {"psi", grid_to_json(c.psi)},
                {"transform", grid_to_json(c.transform)},
                {"family_x_step", c.family_x_step}};
  if (c.x) grids["x"] = grid_to_json(*c.x);
  j["grids"] = grids;
  j["tolerances"] = {{"ode", c.ode_tol}, {"quadrature", c.quadrature_tol}};
  j["output"] = {{"format", c.format}, {"dt", c.dt}};
  j["diagnostics"] = {{"use_printed_eq7", c.variant.printed_cross_term},
                      {"use_printed_eq10_shift", c.variant.printed_cat_shift}};
  return j;
}

std::string config_hash(const RunConfig& c) {
  // The output directory is excluded so that relocating a run keeps its hash.
  const std::string text = to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace symtomo::app
