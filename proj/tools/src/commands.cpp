#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "rcloop/experiments.hpp"
#include "rcloop/exploration.hpp"
#include "rcloop/io.hpp"
#include "rcloop/loopdecomp.hpp"
#include "rcloop/models.hpp"
#include "rcloop_cli/cli.hpp"

namespace rcloop::cli {

namespace {

struct Ctx {
  const json& cfg;
  unsigned threads;
  std::filesystem::path base;
  std::uint64_t seed;
  std::string header;  // one line, no newline

  explicit Ctx(const json& c, unsigned t, std::filesystem::path b)
      : cfg(c), threads(t), base(std::move(b)), seed(c["seed"].get<std::uint64_t>()) {
    header = std::string("rcloop ") + version() + " config=" + cfg.dump();
  }
};

DomainSpec domain_of(const json& g) {
  DomainSpec d;
  if (g.contains("rect")) {
    const auto& r = g["rect"];
    return DomainSpec::rectangle(r[0], r[1], r[2], r[3]);
  }
  if (g.contains("polygon")) {
    for (const auto& p : g["polygon"]) d.corners.push_back({p[0].get<double>(), p[1].get<double>()});
    return d;
  }
  const double n = g["n"].get<double>();
  return DomainSpec::rectangle(0, 0, g["cells"][0].get<double>() / n, g["cells"][1].get<double>() / n);
}

DiscreteDisc disc_of(const json& g) {
  if (g.contains("cells")) return square_disc(g["cells"][0], g["cells"][1], g["n"]);
  return discretize_domain(domain_of(g), g["n"]);
}

WolffOptions wolff_of(const json& m) {
  WolffOptions w;
  w.burn_in = m["burn_in"];
  w.sweeps = m["sweeps"];
  return w;
}

PolyAnnulus annulus_of(const json& a) {
  if (a.contains("center")) return square_annulus(a["center"][0], a["center"][1], a["r_in"], a["r_out"]);
  auto rect = [](const json& r) { return Rect{r[0], r[1], r[2], r[3]}; };
  return rect_annulus(rect(a["inner"]), rect(a["outer"]));
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + p.string());
  return ss.str();
}

Config sample_model(const json& m, const std::shared_ptr<const DiscreteDisc>& D, std::uint64_t seed,
                    std::uint64_t replica) {
  const std::string kind = m["model"];
  const double t = m["t"];
  if (kind == "bernoulli") return sample_bernoulli(BernoulliField::constant(D->graph, t), seed, replica);
  if (kind == "coupled") return sample_current_trace(D, seed, replica, t, wolff_of(m)).trace;
  return interface_of(sample_ising_plus(D, seed, replica, wolff_of(m)));
}

json geometry_json(const GridGeometry& g) { return {{"n", g.n}, {"x0", g.x0}, {"y0", g.y0}, {"w", g.w}, {"h", g.h}}; }

json points_json(const std::vector<Pt>& pts) {
  json a = json::array();
  for (Pt p : pts) a.push_back({p.x, p.y});
  return a;
}

json header_json(const Ctx& c) { return {{"rcloop_version", version()}, {"config", c.cfg}}; }

std::string with_svg_comment(std::string svg, const std::string& header) {
  auto pos = svg.find('\n');
  std::string safe = header;
  for (std::size_t i; (i = safe.find("--")) != std::string::npos;) safe.replace(i, 2, "- -");
  return svg.insert(pos + 1, "<!-- " + safe + " -->\n");
}

std::string csv(const Ctx& c, const std::vector<Row>& rows) {
  std::ostringstream os;
  write_csv(os, c.header, rows);
  return os.str();
}

// Input configuration and its disc: from the `input` file when given,
// otherwise sampled from the model on the geometry.
std::pair<Config, std::shared_ptr<const DiscreteDisc>> load_or_sample(const Ctx& c) {
  if (c.cfg.contains("input")) {
    Config k;
    try {
      k = config_from_rle(read_file(c.base / c.cfg["input"].get<std::string>()));
    } catch (const PreconditionError& e) {
      throw UsageError(std::string("input: ") + e.what());
    }
    std::shared_ptr<const DiscreteDisc> D;
    try {
      D = std::make_shared<const DiscreteDisc>(disc_from_subgraph(k.support()));
    } catch (const Error& e) {
      throw UsageError(std::string("input: support is not a disc: ") + e.what());
    }
    if (!source_set(k, D->graph).empty()) throw UsageError("input: configuration has sources");
    Config on(D->graph);
    for (int e : k.open_edges()) on.set_open(e);
    return {on, D};
  }
  auto D = std::make_shared<const DiscreteDisc>(disc_of(c.cfg["geometry"]));
  Config k = sample_model(c.cfg["model"], D, c.seed, 0);
  if (!source_set(k, D->graph).empty()) throw UsageError("model: sampled configuration has sources; use ising");
  return {k, D};
}

json loop_json(const LevelledLoop& l, bool outmost) {
  return {{"level", l.level},
          {"orientation", to_string(l.orientation)},
          {"class", to_string(classify_loop(l.pts).cls)},
          {"outmost_seed", outmost},
          {"vertices", points_json(l.pts)}};
}

std::vector<Artifact> cmd_sample(const Ctx& c) {
  auto D = std::make_shared<const DiscreteDisc>(disc_of(c.cfg["geometry"]));
  const std::uint64_t n = c.cfg["replicas"];
  std::vector<Artifact> out;
  json list = json::array();
  for (std::uint64_t r = 0; r < n; ++r) {
    Config k = sample_model(c.cfg["model"], D, c.seed, r);
    bool sourceless = source_set(k, D->graph).empty();
    std::string stem = "sample_" + std::to_string(r);
    out.push_back({stem + ".rle", config_to_rle(k, c.header)});
    list.push_back({{"replica", r}, {"file", stem + ".rle"}, {"open_edges", k.num_open()}, {"sourceless", sourceless}});
    if (c.cfg["svg"].get<bool>()) {
      std::vector<LevelledLoop> loops;
      if (sourceless) loops = decompose(k, *D).loops;
      out.push_back({stem + ".svg", with_svg_comment(loops_svg(D->geometry(), loops, &k), c.header)});
    }
  }
  json j = {{"header", header_json(c)}, {"geometry", geometry_json(D->geometry())}, {"samples", list}};
  out.push_back({"samples.json", j.dump(2) + "\n"});
  return out;
}

std::vector<Artifact> cmd_decompose(const Ctx& c) {
  auto [k, D] = load_or_sample(c);
  auto d = decompose(k, *D);
  json loops = json::array();
  for (std::size_t i = 0; i < d.loops.size(); ++i) loops.push_back(loop_json(d.loops[i], d.seed_outmost[i]));
  json j = {{"header", header_json(c)},
            {"geometry", geometry_json(D->geometry())},
            {"open_edges", k.num_open()},
            {"N", d.N},
            {"loops", loops}};
  std::vector<Artifact> out{{"loops.json", j.dump(2) + "\n"}};
  if (c.cfg["svg"].get<bool>())
    out.push_back({"loops.svg", with_svg_comment(loops_svg(D->geometry(), d.loops, &k), c.header)});
  return out;
}

std::vector<Artifact> cmd_explore(const Ctx& c) {
  auto [k, D] = load_or_sample(c);
  const int n = D->geometry().n;
  std::vector<Pt> gamma;
  for (const auto& p : c.cfg["gamma"]) {
    double x = p[0].get<double>() * 2 * n, y = p[1].get<double>() * 2 * n;
    if (std::fabs(x - std::round(x)) > 1e-9 || std::fabs(y - std::round(y)) > 1e-9 ||
        static_cast<long long>(std::llround(x)) % 2 || static_cast<long long>(std::llround(y)) % 2)
      throw UsageError("gamma: points must be lattice points at mesh 1/n");
    gamma.push_back({static_cast<int>(std::llround(x)), static_cast<int>(std::llround(y))});
  }
  // Corners to unit steps.
  std::vector<Pt> walk;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    Pt a = gamma[i], b = gamma[(i + 1) % gamma.size()];
    if (a.x != b.x && a.y != b.y) throw UsageError("gamma: consecutive corners must be axis-aligned");
    int sx = (b.x > a.x) - (b.x < a.x), sy = (b.y > a.y) - (b.y < a.y);
    for (Pt p = a; !(p == b); p = {p.x + 2 * sx, p.y + 2 * sy}) walk.push_back(p);
  }
  gamma = walk;
  ExplorationContext ctx;
  try {
    ctx = make_context(*D, gamma);
  } catch (const PreconditionError& e) {
    throw UsageError(std::string("gamma: ") + e.what());
  }
  auto x = explore_outside(k, ctx);
  auto discs = unexplored_discs(x);
  json loops = json::array();
  for (const auto& l : x.explored_loops) loops.push_back(loop_json(l, false));
  json un = json::array();
  for (const auto& d : discs)
    un.push_back({{"vertices", d.graph.num_vertices()},
                  {"edges", d.graph.num_edges()},
                  {"cells", std::count(d.cells.begin(), d.cells.end(), 1)},
                  {"boundary", points_json(d.boundary_loop)}});
  json j = {{"header", header_json(c)},
            {"geometry", geometry_json(D->geometry())},
            {"gamma", points_json(gamma)},
            {"admissible", is_admissible(ctx, x.R, x.state)},
            {"R", {{"vertices", x.R.num_vertices()}, {"edges", x.R.edge_ids()}}},
            {"explored_loops", loops},
            {"unexplored_discs", un}};
  std::vector<Artifact> out{{"exploration.json", j.dump(2) + "\n"}};
  if (c.cfg["svg"].get<bool>())
    out.push_back({"exploration.svg", with_svg_comment(exploration_svg(x, discs), c.header)});
  return out;
}

ExperimentSetup setup_of(const Ctx& c, int n) {
  ExperimentSetup s;
  s.domain = domain_of(c.cfg["geometry"]);
  s.n = n;
  s.replicas = c.cfg["replicas"];
  s.seed = c.seed;
  s.threads = c.threads;
  return s;
}

std::string tparam(const json& m) { return "t=" + format_double(m["t"].get<double>()); }

std::vector<Artifact> cmd_cross(const Ctx& c) {
  const auto& m = c.cfg["model"];
  ModelSpec spec;
  const std::string kind = m["model"];
  spec.model = kind == "bernoulli" ? SampleModel::bernoulli
               : kind == "coupled" ? SampleModel::coupled_trace
                                   : SampleModel::ising_interface;
  spec.t = m["t"];
  spec.wolff = wolff_of(m);
  auto A = annulus_of(c.cfg["annulus"]);
  std::vector<Row> rows;
  for (int n : c.cfg["ladder"]) {
    auto e = estimate_crossing_prob(spec, A, setup_of(c, n));
    rows.push_back({"crossing_prob", n, annulus_label(A), "model=" + kind + ";" + tparam(m), e.value, e.stderr_,
                    e.replicas, e.seed});
  }
  return {{"cross.csv", csv(c, rows)}};
}

std::vector<Artifact> cmd_couple_test(const Ctx& c) {
  const auto& m = c.cfg["model"];
  auto D = disc_of(c.cfg["geometry"]);
  LawOptions opt;
  opt.n_max = m["n_max"];
  auto ising = enumerate_law(ModelKind::ising_plus, D, opt);
  auto ht = enumerate_law(ModelKind::ht_expansion, D, opt);
  auto cur = enumerate_law(ModelKind::current_trace, D, opt);
  auto mixed = convolve_bernoulli(ising, m["t"]);
  const int n = D.geometry().n;
  const std::string label = "edges=" + std::to_string(cur.edges.size());
  const std::string p = tparam(m) + ";n_max=" + std::to_string(opt.n_max);
  std::vector<Row> rows{
      {"couple_tv", n, label, p, total_variation(mixed, cur), 0, 0, c.seed},
      {"truncation_bound", n, label, p, cur.truncation_bound * static_cast<double>(cur.edges.size()), 0, 0, c.seed},
      {"kramers_wannier_tv", n, label, "-", total_variation(ising, ht), 0, 0, c.seed},
  };
  return {{"couple_test.csv", csv(c, rows)}};
}

std::vector<Artifact> cmd_stability(const Ctx& c) {
  const auto& m = c.cfg["model"];
  auto A = annulus_of(c.cfg["annulus"]);
  std::vector<double> r = c.cfg["r"].get<std::vector<double>>();
  const double t = m["t"];
  const auto w = wolff_of(m);
  std::vector<Row> rows;
  std::vector<Estimate> sd;
  std::vector<int> ns = c.cfg["ladder"].get<std::vector<int>>();
  for (int n : ns) {
    auto s = setup_of(c, n);
    sd.push_back(symdiff_crossing(A, t, s, w));
    rows.push_back({"symdiff", n, annulus_label(A), tparam(m), sd.back().value, sd.back().stderr_,
                    sd.back().replicas, sd.back().seed});
    auto gap = stability_gap(A, r, t, s, w);
    for (std::size_t i = 0; i < r.size(); ++i)
      rows.push_back({"stability_gap", n, annulus_label(A), tparam(m) + ";r=" + format_double(r[i]), gap[i].value,
                      gap[i].stderr_, gap[i].replicas, gap[i].seed});
  }
  // Flags, does not fail: last rung above the first by more than two joint
  // standard errors.
  const double joint = std::sqrt(sd.front().stderr_ * sd.front().stderr_ + sd.back().stderr_ * sd.back().stderr_);
  const double diff = sd.back().value - sd.front().value;
  const bool ok = diff <= 2 * joint;
  rows.push_back({"symdiff_ladder_check", ns.back(), annulus_label(A),
                  std::string("n0=") + std::to_string(ns.front()) + ";flag=" + (ok ? "ok" : "non_monotone"), diff,
                  joint, sd.back().replicas, c.seed});
  return {{"stability.csv", csv(c, rows)}};
}

std::vector<Artifact> cmd_conditions(const Ctx& c) {
  ConditionOptions o;
  o.n_small = c.cfg["n_small"];
  o.eps = c.cfg["eps"].get<std::vector<double>>();
  o.r = c.cfg["r"].get<std::vector<double>>();
  o.box_radius = c.cfg["box_radius"];
  auto rows = condition_suite(o, setup_of(c, c.cfg["geometry"]["n"]), wolff_of(c.cfg["model"]));
  return {{"conditions.csv", csv(c, rows)}};
}

}  // namespace

std::vector<Artifact> execute(const json& resolved, unsigned threads, const std::filesystem::path& base) {
  Ctx c(resolved, threads, base);
  const std::string cmd = resolved["command"];
  try {
    if (cmd == "sample") return cmd_sample(c);
    if (cmd == "decompose") return cmd_decompose(c);
    if (cmd == "explore") return cmd_explore(c);
    if (cmd == "cross") return cmd_cross(c);
    if (cmd == "couple-test") return cmd_couple_test(c);
    if (cmd == "stability") return cmd_stability(c);
    if (cmd == "conditions") return cmd_conditions(c);
  } catch (const PreconditionError& e) {
    throw UsageError(e.what());
  } catch (const BoundsError& e) {
    throw UsageError(e.what());
  } catch (const CapacityError& e) {
    throw UsageError(e.what());
  }
  throw UsageError("unknown command '" + cmd + "'");
}

}  // namespace rcloop::cli
