#include <cmath>
#include <map>
#include <set>

#include "rcloop/models.hpp"
#include "rcloop_cli/cli.hpp"

namespace rcloop::cli {

namespace {

const std::map<std::string, std::set<std::string>> kCommandKeys{
    {"sample", {"replicas", "svg"}},
    {"decompose", {"input", "svg"}},
    {"explore", {"input", "gamma", "svg"}},
    {"cross", {"annulus", "replicas", "ladder"}},
    {"couple-test", {}},
    {"stability", {"annulus", "replicas", "ladder", "r"}},
    {"conditions", {"replicas", "n_small", "eps", "r", "box_radius"}},
};
const std::set<std::string> kCommonKeys{"command", "seed", "threads", "out", "geometry", "model"};

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw UsageError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "expected a finite number");
  return d;
}

std::int64_t integer(const json& v, const std::string& where, std::int64_t lo, std::int64_t hi) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  auto i = v.get<std::int64_t>();
  if (i < lo || i > hi) fail(where, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return i;
}

json numbers(const json& v, const std::string& where, std::size_t size, double lo = -1e300) {
  if (!v.is_array() || (size && v.size() != size))
    fail(where, size ? "expected " + std::to_string(size) + " numbers" : "expected an array of numbers");
  json out = json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    double d = number(v[i], where + "[" + std::to_string(i) + "]");
    if (d < lo) fail(where, "value below " + std::to_string(lo));
    out.push_back(d);
  }
  return out;
}

json resolve_geometry(const json* g, const std::string& command) {
  json out;
  if (!g) {
    if (command == "couple-test") return json{{"n", 1}, {"cells", {1, 1}}};
    return json{{"n", 16}, {"rect", {0, 0, 1, 1}}};
  }
  check_keys(*g, "geometry", {"n", "rect", "polygon", "cells"});
  out["n"] = g->contains("n") ? integer((*g)["n"], "geometry.n", 1, 4096) : 16;
  int shapes = g->contains("rect") + g->contains("polygon") + g->contains("cells");
  if (shapes != 1) fail("geometry", "exactly one of rect, polygon, cells is required");
  if (g->contains("rect")) {
    auto r = numbers((*g)["rect"], "geometry.rect", 4);
    if (!(r[0] < r[2] && r[1] < r[3])) fail("geometry.rect", "expected [x0, y0, x1, y1] with x0 < x1, y0 < y1");
    out["rect"] = r;
  } else if (g->contains("polygon")) {
    const auto& p = (*g)["polygon"];
    if (!p.is_array() || p.size() < 4) fail("geometry.polygon", "expected at least four [x, y] corners");
    json pts = json::array();
    for (std::size_t i = 0; i < p.size(); ++i) pts.push_back(numbers(p[i], "geometry.polygon", 2));
    out["polygon"] = pts;
  } else {
    const auto& c = (*g)["cells"];
    if (!c.is_array() || c.size() != 2) fail("geometry.cells", "expected [w, h]");
    out["cells"] = {integer(c[0], "geometry.cells", 1, 4096), integer(c[1], "geometry.cells", 1, 4096)};
  }
  return out;
}

json resolve_model(const json* m, const std::string& command) {
  check_keys(m ? *m : json::object(), "model", {"model", "t", "n_max", "sweeps", "burn_in"});
  json in = m ? *m : json::object();
  json out;
  std::string kind = "ising";
  if (in.contains("model")) {
    if (!in["model"].is_string()) fail("model.model", "expected a string");
    kind = in["model"].get<std::string>();
    if (kind != "ising" && kind != "bernoulli" && kind != "coupled") fail("model.model", "unknown model '" + kind + "'");
  }
  out["model"] = kind;
  const auto c = critical_constants();
  double t = in.contains("t") ? number(in["t"], "model.t") : c.t_c;
  if (t < 0 || t > 1) fail("model.t", "must lie in [0, 1]");
  if ((kind == "coupled" || command == "stability" || command == "couple-test") && t > c.t_star)
    fail("model.t", "coupling intensity must not exceed t* = 3 - 2 sqrt 2");
  out["t"] = t;
  out["n_max"] = in.contains("n_max") ? integer(in["n_max"], "model.n_max", 1, 64) : 8;
  double sweeps = in.contains("sweeps") ? number(in["sweeps"], "model.sweeps") : 1.0;
  if (sweeps <= 0) fail("model.sweeps", "must be positive");
  out["sweeps"] = sweeps;
  double burn = in.contains("burn_in") ? number(in["burn_in"], "model.burn_in") : -1.0;
  if (burn < 0 && burn != -1) fail("model.burn_in", "must be non-negative, or -1 for the default");
  out["burn_in"] = burn;
  return out;
}

json resolve_annulus(const json* a) {
  if (!a) return json{{"center", {0.5, 0.5}}, {"r_in", 0.125}, {"r_out", 0.25}};
  check_keys(*a, "annulus", {"inner", "outer", "center", "r_in", "r_out"});
  json out;
  if (a->contains("inner") || a->contains("outer")) {
    if (!a->contains("inner") || !a->contains("outer") || a->contains("center"))
      fail("annulus", "give either inner and outer rectangles or center, r_in, r_out");
    out["inner"] = numbers((*a)["inner"], "annulus.inner", 4);
    out["outer"] = numbers((*a)["outer"], "annulus.outer", 4);
  } else {
    if (!a->contains("center") || !a->contains("r_in") || !a->contains("r_out"))
      fail("annulus", "give either inner and outer rectangles or center, r_in, r_out");
    out["center"] = numbers((*a)["center"], "annulus.center", 2);
    double ri = number((*a)["r_in"], "annulus.r_in"), ro = number((*a)["r_out"], "annulus.r_out");
    if (!(0 < ri && ri < ro)) fail("annulus", "need 0 < r_in < r_out");
    out["r_in"] = ri;
    out["r_out"] = ro;
  }
  return out;
}

}  // namespace

json resolve_config(const json& raw) {
  if (!raw.is_object()) fail("config", "expected a JSON object");
  if (!raw.contains("command") || !raw["command"].is_string()) fail("config", "missing string key 'command'");
  const std::string command = raw["command"].get<std::string>();
  auto ck = kCommandKeys.find(command);
  if (ck == kCommandKeys.end()) fail("command", "unknown command '" + command + "'");
  std::set<std::string> allowed = kCommonKeys;
  allowed.insert(ck->second.begin(), ck->second.end());
  check_keys(raw, "config", allowed);

  auto get = [&](const char* k) -> const json* { return raw.contains(k) ? &raw[k] : nullptr; };
  json out;
  out["command"] = command;
  if (auto v = get("seed")) {
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0))
      fail("seed", "expected a non-negative integer");
    out["seed"] = v->get<std::uint64_t>();
  } else {
    out["seed"] = 1;
  }
  if (auto v = get("threads")) integer(*v, "threads", 0, 4096);
  if (auto v = get("out"); v && !v->is_string()) fail("out", "expected a string");
  out["geometry"] = resolve_geometry(get("geometry"), command);
  out["model"] = resolve_model(get("model"), command);

  const bool mc = command == "cross" || command == "stability" || command == "conditions";
  if (ck->second.count("replicas"))
    out["replicas"] = get("replicas") ? integer(*get("replicas"), "replicas", 1, std::int64_t{1} << 40)
                                      : (mc ? 10000 : 1);
  if (ck->second.count("svg")) {
    if (auto v = get("svg"); v && !v->is_boolean()) fail("svg", "expected a boolean");
    out["svg"] = get("svg") ? get("svg")->get<bool>() : true;
  }
  if (ck->second.count("input") && get("input")) {
    if (!get("input")->is_string()) fail("input", "expected a path string");
    out["input"] = *get("input");
  }
  if (command == "explore") {
    auto g = get("gamma");
    if (!g || !g->is_array() || g->size() < 4) fail("gamma", "expected at least four [x, y] lattice points");
    json pts = json::array();
    for (std::size_t i = 0; i < g->size(); ++i) pts.push_back(numbers((*g)[i], "gamma", 2));
    out["gamma"] = pts;
  }
  if (ck->second.count("annulus")) out["annulus"] = resolve_annulus(get("annulus"));
  if (ck->second.count("ladder")) {
    json ladder = json::array();
    if (auto v = get("ladder")) {
      if (!v->is_array() || v->empty()) fail("ladder", "expected a non-empty array of mesh sizes");
      for (const auto& x : *v) ladder.push_back(integer(x, "ladder", 1, 4096));
    } else if (command == "stability") {
      ladder = {16, 32, 64};
    } else {
      ladder.push_back(out["geometry"]["n"]);
    }
    out["ladder"] = ladder;
  }
  if (ck->second.count("r"))
    out["r"] = get("r") ? numbers(*get("r"), "r", 0, 0.0) : json{0.0, 1.0 / 32, 1.0 / 16};
  if (command == "conditions") {
    out["n_small"] = get("n_small") ? integer(*get("n_small"), "n_small", 1, 4) : 2;
    out["eps"] = get("eps") ? numbers(*get("eps"), "eps", 0, 0.0) : json{0.0, 1.0 / 32, 1.0 / 16};
    double R = get("box_radius") ? number(*get("box_radius"), "box_radius") : 1.0 / 16;
    if (R <= 0) fail("box_radius", "must be positive");
    out["box_radius"] = R;
  }
  return out;
}

}  // namespace rcloop::cli
