#include "rcloop/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <thread>

#include "rcloop/percolation.hpp"

namespace rcloop {

double pairwise_sum(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

Estimate summarize(const std::vector<double>& samples, std::uint64_t seed) {
  Estimate e;
  e.replicas = samples.size();
  e.seed = seed;
  if (samples.empty()) return e;
  const double n = static_cast<double>(samples.size());
  e.value = pairwise_sum(samples.data(), samples.size()) / n;
  if (samples.size() > 1) {
    std::vector<double> dev(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) dev[i] = (samples[i] - e.value) * (samples[i] - e.value);
    double var = pairwise_sum(dev.data(), dev.size()) / (n - 1);
    e.stderr_ = std::sqrt(var / n);
  }
  return e;
}

std::vector<std::vector<double>> run_replicas(std::uint64_t count, unsigned threads,
                                              const std::function<std::vector<double>(std::uint64_t)>& fn) {
  std::vector<std::vector<double>> out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) err = std::current_exception();
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
  return out;
}

namespace {

std::vector<Estimate> columns(const std::vector<std::vector<double>>& per_replica, std::size_t k, std::uint64_t seed) {
  std::vector<Estimate> out;
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> col(per_replica.size());
    for (std::size_t i = 0; i < per_replica.size(); ++i) col[i] = per_replica[i].at(j);
    out.push_back(summarize(col, seed));
  }
  return out;
}

double resolve_t(double t) {
  if (t < 0) t = critical_constants().t_c;
  if (t > critical_constants().t_star + 1e-15) throw PreconditionError("coupling intensity above t*");
  return t;
}

void check_inside(const PolyAnnulus& a, const DiscreteDisc& D) {
  const auto& g = D.geometry();
  double x0 = static_cast<double>(g.x0) / g.n, y0 = static_cast<double>(g.y0) / g.n;
  double x1 = static_cast<double>(g.x0 + g.w) / g.n, y1 = static_cast<double>(g.y0 + g.h) / g.n;
  for (auto p : a.outer)
    if (p.x < x0 || p.x > x1 || p.y < y0 || p.y > y1) throw PreconditionError("annulus outside the domain");
}

}  // namespace

std::string annulus_label(const PolyAnnulus& a) {
  Rect in, out;
  if (as_rects(a, in, out)) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "[%g,%g]x[%g,%g]/[%g,%g]x[%g,%g]", in.x0, in.x1, in.y0, in.y1, out.x0, out.x1,
                  out.y0, out.y1);
    return buf;
  }
  return "polygon";
}

Estimate estimate_crossing_prob(const ModelSpec& m, const PolyAnnulus& a, const ExperimentSetup& s) {
  auto D = std::make_shared<const DiscreteDisc>(discretize_domain(s.domain, s.n));
  check_inside(a, *D);
  auto res = run_replicas(s.replicas, s.threads, [&](std::uint64_t r) -> std::vector<double> {
    Config c;
    switch (m.model) {
      case SampleModel::bernoulli: {
        double t = m.t < 0 ? critical_constants().t_c : m.t;
        c = sample_bernoulli(BernoulliField::constant(D->graph, t), s.seed, r);
        break;
      }
      case SampleModel::ising_interface:
        c = interface_of(sample_ising_plus(D, s.seed, r, m.wolff));
        break;
      case SampleModel::coupled_trace:
        c = sample_current_trace(D, s.seed, r, resolve_t(m.t), m.wolff).trace;
        break;
    }
    return {crosses(LatticeSet::from_config(c), a) ? 1.0 : 0.0};
  });
  return columns(res, 1, s.seed)[0];
}

std::vector<Estimate> stability_gap(const PolyAnnulus& a, const std::vector<double>& r, double t,
                                    const ExperimentSetup& s, const WolffOptions& w) {
  for (double v : r)
    if (!(v >= 0)) throw PreconditionError("invalid thickening radius");
  t = resolve_t(t);
  auto D = std::make_shared<const DiscreteDisc>(discretize_domain(s.domain, s.n));
  check_inside(a, *D);
  auto res = run_replicas(s.replicas, s.threads, [&](std::uint64_t rep) {
    auto cs = sample_current_trace(D, s.seed, rep, t, w);
    bool eta_cross = crosses(LatticeSet::from_config(cs.eta), a);
    auto omega = LatticeSet::from_config(cs.trace);
    std::vector<double> v;
    for (double rad : r) v.push_back(!eta_cross && thick_connects(omega, a, rad) ? 1.0 : 0.0);
    return v;
  });
  return columns(res, r.size(), s.seed);
}

Estimate symdiff_crossing(const PolyAnnulus& a, double t, const ExperimentSetup& s, const WolffOptions& w) {
  t = resolve_t(t);
  auto D = std::make_shared<const DiscreteDisc>(discretize_domain(s.domain, s.n));
  check_inside(a, *D);
  auto res = run_replicas(s.replicas, s.threads, [&](std::uint64_t rep) -> std::vector<double> {
    auto cs = sample_current_trace(D, s.seed, rep, t, w);
    bool e = crosses(LatticeSet::from_config(cs.eta), a);
    bool o = crosses(LatticeSet::from_config(cs.trace), a);
    if (e && !o) throw InvariantError("eta crosses an annulus that omega does not");
    return {o && !e ? 1.0 : 0.0};
  });
  return columns(res, 1, s.seed)[0];
}

double markov_property_tv(int n_small) {
  if (n_small < 1 || n_small > 4) throw PreconditionError("markov check supports 1..4 cells per side");
  auto D = square_disc(n_small, n_small);
  auto law = enumerate_law(ModelKind::ht_expansion, D);
  const auto& g = D.geometry();
  double worst = 0;
  for (int i0 = 0; i0 < n_small; ++i0)
    for (int i1 = i0 + 1; i1 <= n_small; ++i1)
      for (int j0 = 0; j0 < n_small; ++j0)
        for (int j1 = j0 + 1; j1 <= n_small; ++j1) {
          std::vector<std::uint8_t> cells(static_cast<std::size_t>(g.num_faces()), 0);
          for (int i = i0; i < i1; ++i)
            for (int j = j0; j < j1; ++j) cells[g.face_id({2 * i + 1, 2 * j + 1})] = 1;
          auto K = disc_from_cells(g, cells);
          auto lawK = enumerate_law(ModelKind::ht_expansion, K);
          Subgraph R = subtract(D.graph, K.graph);
          std::uint64_t kmask = 0, rmask = 0;
          for (std::size_t j = 0; j < law.edges.size(); ++j) {
            if (K.graph.has_edge(law.edges[j])) kmask |= std::uint64_t{1} << j;
            if (R.has_edge(law.edges[j])) rmask |= std::uint64_t{1} << j;
          }
          std::map<std::uint64_t, std::map<std::uint64_t, double>> cond;
          for (auto [m, p] : law.p) cond[m & rmask][m & kmask] += p;
          for (auto& [outside, inner] : cond) {
            Config rest = restrict(law.config_of(outside), R);
            if (!source_set(rest, R).empty()) continue;
            double z = 0;
            for (auto& [m, p] : inner) z += p;
            EdgeLaw c;
            c.support = K.graph;
            c.edges = lawK.edges;
            for (auto& [m, p] : inner) {
              Config full = law.config_of(m);
              Config onK(K.graph);
              for (int e : full.open_edges()) onK.set_open(e);
              c.p[lawK.mask_of(onK)] += p / z;
            }
            worst = std::max(worst, total_variation(c, lawK));
          }
        }
  return worst;
}

std::vector<Row> condition_suite(const ConditionOptions& c, const ExperimentSetup& s, const WolffOptions& w) {
  std::vector<Row> rows;
  rows.push_back({"H0_markov_tv", c.n_small, "-", "n_small=" + std::to_string(c.n_small), markov_property_tv(c.n_small),
                  0.0, 0, 0});

  auto D = std::make_shared<const DiscreteDisc>(discretize_domain(s.domain, s.n));
  const auto& g = D->geometry();
  double cx = (g.x0 + 0.5 * g.w) / g.n, cy = (g.y0 + 0.5 * g.h) / g.n;
  double R = c.box_radius;
  PolyAnnulus A = square_annulus(cx, cy, 2 * R, 4 * R);
  check_inside(A, *D);
  std::vector<PolyAnnulus> eroded;
  for (double e : c.eps) eroded.push_back(e == 0 ? A : erode_inner(A, e));

  // (H2) discs: rectangles around the centre with half-widths >= 2R, not
  // inside the 3R box.
  std::vector<std::pair<double, double>> halves{{4 * R, 4 * R}, {2 * R, 4 * R}, {4 * R, 2 * R}};
  const double tc = critical_constants().t_c;
  const std::size_t nh1 = c.eps.size(), nh2 = halves.size() * c.r.size();
  auto res = run_replicas(s.replicas, s.threads, [&](std::uint64_t rep) {
    auto cs = sample_current_trace(D, s.seed, rep, tc, w);
    std::vector<double> v;
    auto eta = LatticeSet::from_config(cs.eta);
    bool crossA = crosses(eta, A);
    for (const auto& Ae : eroded) v.push_back(!crossA && crosses(eta, Ae) ? 1.0 : 0.0);
    for (auto [hx, hy] : halves) {
      double kx0 = cx - hx, kx1 = cx + hx, ky0 = cy - hy, ky1 = cy + hy;
      auto inside = [&](Pt p, double x0, double y0, double x1, double y1) {
        double x = g.coord(p.x), y = g.coord(p.y);
        return x >= x0 && x <= x1 && y >= y0 && y <= y1;
      };
      std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()));
      std::iota(parent.begin(), parent.end(), 0);
      auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (int e : cs.trace.open_edges()) {
        auto [a, b] = g.edge_vertex_ids(e);
        if (inside(g.vertex(a), kx0, ky0, kx1, ky1) && inside(g.vertex(b), kx0, ky0, kx1, ky1))
          parent[find(a)] = find(b);
      }
      std::vector<std::uint8_t> in_box(parent.size(), 0);
      for (int e : cs.trace.open_edges())
        for (int vtx : {g.edge_vertex_ids(e).first, g.edge_vertex_ids(e).second})
          if (inside(g.vertex(vtx), cx - R, cy - R, cx + R, cy + R)) in_box[find(vtx)] = 1;
      for (double r : c.r) {
        bool hit = false;
        for (int e : cs.trace.open_edges()) {
          for (int vtx : {g.edge_vertex_ids(e).first, g.edge_vertex_ids(e).second}) {
            Pt p = g.vertex(vtx);
            if (!inside(p, kx0, ky0, kx1, ky1)) continue;
            double x = g.coord(p.x), y = g.coord(p.y);
            double d = std::min({x - kx0, kx1 - x, y - ky0, ky1 - y});
            if (d < r && in_box[find(vtx)]) hit = true;
          }
          if (hit) break;
        }
        v.push_back(hit ? 1.0 : 0.0);
      }
    }
    return v;
  });
  auto est = columns(res, nh1 + nh2, s.seed);
  for (std::size_t i = 0; i < nh1; ++i)
    rows.push_back({"H1_eroded_gap", s.n, annulus_label(A), "eps=" + format_double(c.eps[i]), est[i].value,
                    est[i].stderr_, est[i].replicas, s.seed});
  std::size_t k = nh1;
  for (auto [hx, hy] : halves)
    for (double r : c.r) {
      rows.push_back({"H2_boundary_connection", s.n, "K=" + format_double(2 * hx) + "x" + format_double(2 * hy),
                      "r=" + format_double(r), est[k].value, est[k].stderr_, est[k].replicas, s.seed});
      ++k;
    }
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, const std::string& comment, const std::vector<Row>& rows) {
  os << "# " << comment << "\n";
  os << "experiment,n,annulus,param,value,stderr,replicas,seed\n";
  for (const auto& r : rows)
    os << csv_field(r.experiment) << ',' << r.n << ',' << csv_field(r.annulus) << ',' << csv_field(r.param) << ','
       << format_double(r.value) << ','
       << format_double(r.stderr_) << ',' << r.replicas << ',' << r.seed << "\n";
}

}  // namespace rcloop
