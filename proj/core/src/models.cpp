#include "rcloop/models.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace rcloop {

namespace {

double resolve_beta(double beta) { return beta > 0 ? beta : critical_constants().beta_c; }

std::vector<int> support_edges(const Subgraph& s) {
  auto e = s.edge_ids();
  if (e.size() > 64) throw CapacityError("law enumeration supports at most 64 edges");
  return e;
}

// Fundamental cycles of the support as masks over `edges`.
std::vector<std::uint64_t> cycle_basis(const Subgraph& s, const std::vector<int>& edges) {
  const auto& g = s.geometry();
  std::vector<int> parent(static_cast<std::size_t>(g.num_vertices()), -1), parent_edge(parent.size(), -1),
      depth(parent.size(), -1);
  std::vector<int> pos(static_cast<std::size_t>(g.edge_slots()), -1);
  for (std::size_t j = 0; j < edges.size(); ++j) pos[edges[j]] = static_cast<int>(j);
  std::vector<std::uint8_t> tree(edges.size(), 0);
  for (int root : s.vertex_ids()) {
    if (depth[root] >= 0) continue;
    depth[root] = 0;
    std::deque<int> q{root};
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int dir = 0; dir < 4; ++dir) {
        int e = g.edge_from(v, dir);
        if (e < 0 || pos[e] < 0) continue;
        int u = g.neighbor(v, dir);
        if (depth[u] >= 0) continue;
        depth[u] = depth[v] + 1;
        parent[u] = v;
        parent_edge[u] = e;
        tree[pos[e]] = 1;
        q.push_back(u);
      }
    }
  }
  std::vector<std::uint64_t> basis;
  for (std::size_t j = 0; j < edges.size(); ++j) {
    if (tree[j]) continue;
    std::uint64_t m = std::uint64_t{1} << j;
    auto [a, b] = g.edge_vertex_ids(edges[j]);
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      m ^= std::uint64_t{1} << pos[parent_edge[a]];
      a = parent[a];
    }
    basis.push_back(m);
  }
  return basis;
}

std::vector<std::uint64_t> sourceless_masks(const Subgraph& s, const std::vector<int>& edges,
                                            std::uint64_t max_states) {
  auto basis = cycle_basis(s, edges);
  if (basis.size() >= 63 || (std::uint64_t{1} << basis.size()) > max_states)
    throw CapacityError("too many sourceless configurations to enumerate");
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << basis.size());
  std::uint64_t cur = 0;
  out.push_back(cur);
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << basis.size()); ++i) {
    cur ^= basis[static_cast<std::size_t>(__builtin_ctzll(i))];
    out.push_back(cur);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void normalize(EdgeLaw& law) {
  // Neumaier summation; laws reach 2^16 entries.
  double z = 0, c = 0;
  for (auto& [m, w] : law.p) {
    double t = z + w;
    c += std::fabs(z) >= std::fabs(w) ? (z - t) + w : (w - t) + z;
    z = t;
  }
  z += c;
  for (auto& [m, w] : law.p) w /= z;
}

double series_tail(double beta, int n_max) {
  double term = 1, tail = 0;
  for (int m = 1; m <= n_max + 60; ++m) {
    term *= beta / m;
    if (m > n_max) tail += term;
  }
  return tail;
}

}  // namespace

CriticalConstants critical_constants() {
  CriticalConstants c;
  c.beta_c = 0.5 * std::log1p(std::sqrt(2.0));
  c.tanh_beta_c = std::sqrt(2.0) - 1.0;
  c.t_c = 1.0 - 1.0 / std::cosh(c.beta_c);
  double sech = 1.0 / std::cosh(c.beta_c);
  c.t_star = 1.0 - sech * sech;
  return c;
}

std::uint64_t EdgeLaw::mask_of(const Config& c) const {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < edges.size(); ++j)
    if (c.open(edges[j])) m |= std::uint64_t{1} << j;
  for (int e : c.open_edges())
    if (!support.has_edge(e)) throw PreconditionError("configuration open outside the law's support");
  return m;
}

Config EdgeLaw::config_of(std::uint64_t mask) const {
  Config c(support);
  for (std::size_t j = 0; j < edges.size(); ++j)
    if (mask >> j & 1) c.set_open(edges[j]);
  return c;
}

double EdgeLaw::prob(const Config& c) const {
  auto it = p.find(mask_of(c));
  return it == p.end() ? 0.0 : it->second;
}

double total_variation(const EdgeLaw& a, const EdgeLaw& b) {
  if (!(a.support == b.support) || a.edges != b.edges) throw PreconditionError("laws on different supports");
  double s = 0;
  auto ia = a.p.begin(), ib = b.p.begin();
  while (ia != a.p.end() || ib != b.p.end()) {
    if (ib == b.p.end() || (ia != a.p.end() && ia->first < ib->first)) {
      s += std::fabs(ia->second);
      ++ia;
    } else if (ia == a.p.end() || ib->first < ia->first) {
      s += std::fabs(ib->second);
      ++ib;
    } else {
      s += std::fabs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * s;
}

ConfigWeight tanh_weight(double x) {
  return [x](const Config& c) { return std::pow(x, c.num_open()); };
}

std::vector<Config> sourceless_configs(const Subgraph& support, std::uint64_t max_states) {
  auto edges = support_edges(support);
  std::vector<Config> out;
  for (auto m : sourceless_masks(support, edges, max_states)) {
    Config c(support);
    for (std::size_t j = 0; j < edges.size(); ++j)
      if (m >> j & 1) c.set_open(edges[j]);
    out.push_back(std::move(c));
  }
  return out;
}

EdgeLaw enumerate_law(ModelKind kind, const DiscreteDisc& D, const LawOptions& opt) {
  const auto& g = D.geometry();
  const double beta = resolve_beta(opt.beta);
  EdgeLaw law;
  law.support = D.graph;
  law.edges = support_edges(D.graph);
  std::vector<int> pos(static_cast<std::size_t>(g.edge_slots()), -1);
  for (std::size_t j = 0; j < law.edges.size(); ++j) pos[law.edges[j]] = static_cast<int>(j);

  if (kind == ModelKind::ising_plus) {
    std::vector<int> free_faces;
    for (int f = 0; f < g.num_faces(); ++f)
      if (D.cells[f]) free_faces.push_back(f);
    if (free_faces.size() >= 63 || (std::uint64_t{1} << free_faces.size()) > opt.max_states)
      throw CapacityError("too many free spins to enumerate");
    // Dual edges between K* faces, each once.
    struct Bond {
      int f1, f2, pos;  // pos: index of the crossed primal edge in law.edges, or -1
    };
    std::vector<Bond> bonds;
    for (int f = 0; f < g.num_faces(); ++f) {
      if (!D.dual_vertices[f]) continue;
      Pt c = g.face(f);
      for (int dir : {0, 1}) {
        Pt c2 = step(c, dir);
        if (!g.has_face(c2) || !D.dual_vertices[g.face_id(c2)]) continue;
        Edge crossed{{(c.x + c2.x) / 2, (c.y + c2.y) / 2}, false};
        int p = g.has_edge(crossed) ? pos[g.edge_id(crossed)] : -1;
        bonds.push_back({f, g.face_id(c2), p});
      }
    }
    std::vector<std::int8_t> spin(static_cast<std::size_t>(g.num_faces()), 1);
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << free_faces.size()); ++s) {
      for (std::size_t i = 0; i < free_faces.size(); ++i) spin[free_faces[i]] = (s >> i & 1) ? -1 : 1;
      int disagree = 0;  // weight relative to the all-plus state
      std::uint64_t mask = 0;
      for (const auto& b : bonds) {
        if (spin[b.f1] != spin[b.f2]) {
          ++disagree;
          if (b.pos < 0) throw InvariantError("disagreement across an edge outside the disc");
          mask |= std::uint64_t{1} << b.pos;
        }
      }
      law.p[mask] += std::exp(-2 * beta * disagree);
    }
    normalize(law);
    return law;
  }

  auto masks = sourceless_masks(D.graph, law.edges, opt.max_states);
  if (kind == ModelKind::ht_expansion) {
    const double x = std::tanh(beta);
    for (auto m : masks) {
      double w = opt.weight ? opt.weight(law.config_of(m)) : std::pow(x, __builtin_popcountll(m));
      law.p[m] += w;
    }
    normalize(law);
    return law;
  }

  // current_trace: currents 0..n_max per edge, even degree at every vertex,
  // weight prod beta^n/n!. Parity pattern eta is sourceless; an edge outside
  // eta carries an even current, >= 2 when it is in the trace.
  if (opt.n_max < 1) throw PreconditionError("n_max must be positive");
  double even = 0, odd = 0, term = 1;
  for (int m = 0; m <= opt.n_max; ++m) {
    if (m > 0) term *= beta / m;
    (m % 2 ? odd : even) += term;
  }
  const int E = static_cast<int>(law.edges.size());
  const std::uint64_t full = E == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << E) - 1);
  std::uint64_t states = 0;
  for (auto m : masks) states += std::uint64_t{1} << (E - __builtin_popcountll(m));
  if (states > opt.max_states) throw CapacityError("current trace state space too large");
  for (auto eta : masks) {
    int k = __builtin_popcountll(eta);
    double base = std::pow(odd, k);
    std::uint64_t rest = full & ~eta;
    // Enumerate subsets of rest.
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
      int extra = __builtin_popcountll(sub);
      law.p[eta | sub] += base * std::pow(even - 1.0, extra);
      if (sub == 0) break;
    }
  }
  normalize(law);
  law.truncation_bound = series_tail(beta, opt.n_max);
  return law;
}

EdgeLaw convolve_bernoulli(const EdgeLaw& law, double t) {
  if (!(t >= 0 && t <= 1)) throw PreconditionError("Bernoulli parameter outside [0,1]");
  EdgeLaw out;
  out.support = law.support;
  out.edges = law.edges;
  const int E = static_cast<int>(law.edges.size());
  const std::uint64_t full = E == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << E) - 1);
  for (auto [eta, p] : law.p) {
    std::uint64_t rest = full & ~eta;
    int free_edges = __builtin_popcountll(rest);
    for (std::uint64_t sub = rest;; sub = (sub - 1) & rest) {
      int k = __builtin_popcountll(sub);
      out.p[eta | sub] += p * std::pow(t, k) * std::pow(1 - t, free_edges - k);
      if (sub == 0) break;
    }
  }
  return out;
}

IsingState all_plus(std::shared_ptr<const DiscreteDisc> D) {
  IsingState s;
  s.spin.assign(static_cast<std::size_t>(D->geometry().num_faces()), 0);
  for (int f = 0; f < D->geometry().num_faces(); ++f)
    if (D->dual_vertices[f]) s.spin[f] = 1;
  s.D = std::move(D);
  return s;
}

Config interface_of(const IsingState& s) {
  const auto& D = *s.D;
  const auto& g = D.geometry();
  Config c(D.graph);
  for (int e : D.graph.edge_ids()) {
    auto [f1, f2] = g.faces_of(e);
    int a = s.spin[g.face_id(f1)], b = s.spin[g.face_id(f2)];
    if (a == 0 || b == 0) throw InvariantError("disc edge next to a face outside K*");
    if (a != b) c.set_open(e);
  }
  return c;
}

IsingState spins_from_interface(std::shared_ptr<const DiscreteDisc> Dp, const Config& eta) {
  const auto& D = *Dp;
  const auto& g = D.geometry();
  IsingState s;
  s.D = Dp;
  s.spin.assign(static_cast<std::size_t>(g.num_faces()), 0);
  std::deque<int> q;
  for (int f = 0; f < g.num_faces(); ++f)
    if (D.dual_boundary[f]) {
      s.spin[f] = 1;
      q.push_back(f);
    }
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    Pt c = g.face(f);
    for (int dir = 0; dir < 4; ++dir) {
      Pt c2 = step(c, dir);
      if (!g.has_face(c2)) continue;
      int f2 = g.face_id(c2);
      if (!D.dual_vertices[f2]) continue;
      Edge crossed{{(c.x + c2.x) / 2, (c.y + c2.y) / 2}, false};
      bool flip = g.has_edge(crossed) && eta.bits()[g.edge_id(crossed)];
      int want = flip ? -s.spin[f] : s.spin[f];
      if (s.spin[f2] == 0) {
        s.spin[f2] = static_cast<std::int8_t>(want);
        q.push_back(f2);
      } else if (s.spin[f2] != want) {
        throw PreconditionError("configuration is not an interface with + boundary");
      }
    }
  }
  return s;
}

WolffSampler::WolffSampler(std::shared_ptr<const DiscreteDisc> D, std::uint64_t seed, std::uint64_t replica,
                           WolffOptions opt)
    : D_(std::move(D)), rng_(seed, replica, 1), opt_(opt) {
  const auto& g = D_->geometry();
  const double beta = resolve_beta(opt_.beta);
  p_add_ = -std::expm1(-2.0 * beta);
  std::vector<int> site(static_cast<std::size_t>(g.num_faces()), -1);
  for (int f = 0; f < g.num_faces(); ++f)
    if (D_->cells[f]) {
      site[f] = static_cast<int>(face_of_site_.size());
      face_of_site_.push_back(f);
    }
  ghost_ = static_cast<int>(face_of_site_.size());
  nbr_.assign(face_of_site_.size() + 1, {});
  for (std::size_t i = 0; i < face_of_site_.size(); ++i) {
    Pt c = g.face(face_of_site_[i]);
    for (int dir = 0; dir < 4; ++dir) {
      int f2 = g.face_id(step(c, dir));
      if (site[f2] >= 0) {
        nbr_[i].push_back(site[f2]);
      } else {
        nbr_[i].push_back(ghost_);
        nbr_[ghost_].push_back(static_cast<int>(i));
      }
    }
  }
  s_.assign(nbr_.size(), 1);
  in_cluster_.assign(nbr_.size(), 0);
  const int L = std::max(g.w, g.h);
  if (opt_.burn_in < 0) opt_.burn_in = std::ceil(20.0 * std::pow(std::max(L, 1), 0.25));
  // Fixed update count per sweep, independent of the chain: sites over the
  // critical cluster-size scale L^(7/4).
  const double sites = static_cast<double>(nbr_.size());
  updates_per_sweep_ = std::max(1.0, std::ceil(sites / std::min(sites, std::pow(static_cast<double>(L), 1.75))));
}

void WolffSampler::update() {
  int seed_site = static_cast<int>(rng_.below(nbr_.size()));
  const std::int8_t sign = s_[seed_site];
  stack_.clear();
  stack_.push_back(seed_site);
  in_cluster_[seed_site] = 1;
  std::size_t head = 0;
  while (head < stack_.size()) {
    int u = stack_[head++];
    for (int v : nbr_[u]) {
      if (in_cluster_[v] || s_[v] != sign) continue;
      if (rng_.uniform() < p_add_) {
        in_cluster_[v] = 1;
        stack_.push_back(v);
      }
    }
  }
  for (int u : stack_) {
    s_[u] = static_cast<std::int8_t>(-s_[u]);
    in_cluster_[u] = 0;
  }
  ++updates_;
}

void WolffSampler::run_sweeps(double sweeps) {
  if (face_of_site_.empty()) return;
  const auto n = static_cast<std::uint64_t>(std::ceil(sweeps * updates_per_sweep_));
  for (std::uint64_t i = 0; i < n; ++i) update();
}

IsingState WolffSampler::next() {
  if (!burned_) {
    run_sweeps(opt_.burn_in);
    burned_ = true;
  } else {
    run_sweeps(opt_.sweeps);
  }
  IsingState st = all_plus(D_);
  const int sign = s_[ghost_];
  for (std::size_t i = 0; i < face_of_site_.size(); ++i) st.spin[face_of_site_[i]] = static_cast<std::int8_t>(s_[i] * sign);
  return st;
}

IsingState sample_ising_plus(std::shared_ptr<const DiscreteDisc> D, std::uint64_t seed, std::uint64_t replica,
                             WolffOptions opt) {
  WolffSampler w(std::move(D), seed, replica, opt);
  return w.next();
}

CoupledSample sample_current_trace(std::shared_ptr<const DiscreteDisc> D, std::uint64_t seed, std::uint64_t replica,
                                   double t, WolffOptions opt) {
  if (t < 0) t = critical_constants().t_c;
  CoupledSample out;
  out.eta = interface_of(sample_ising_plus(D, seed, replica, opt));
  out.trace = overlay(out.eta, sample_bernoulli(BernoulliField::constant(D->graph, t), seed, replica));
  return out;
}

IsingLoops ising_loop_levels(const IsingState& s) {
  const auto& D = *s.D;
  const auto& g = D.geometry();
  const Config eta = interface_of(s);
  IsingLoops out;
  out.edge_level.assign(static_cast<std::size_t>(g.edge_slots()), 0);

  // Spin depth: changes of spin along 4-connected dual paths from the boundary.
  const int INF = 1 << 29;
  std::vector<int> depth(static_cast<std::size_t>(g.num_faces()), INF);
  std::deque<int> q;
  for (int f = 0; f < g.num_faces(); ++f)
    if (D.dual_boundary[f]) {
      depth[f] = 0;
      q.push_back(f);
    }
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    Pt c = g.face(f);
    for (int dir = 0; dir < 4; ++dir) {
      Pt c2 = step(c, dir);
      if (!g.has_face(c2)) continue;
      int f2 = g.face_id(c2);
      if (!D.dual_vertices[f2]) continue;
      int w = s.spin[f2] != s.spin[f] ? 1 : 0;
      if (depth[f] + w < depth[f2]) {
        depth[f2] = depth[f] + w;
        if (w) q.push_back(f2);
        else q.push_front(f2);
      }
    }
  }
  int max_level = 0;
  for (int e : eta.open_edges()) {
    auto [f1, f2] = g.faces_of(e);
    int lvl = 1 + std::min(depth[g.face_id(f1)], depth[g.face_id(f2)]);
    out.edge_level[e] = lvl;
    max_level = std::max(max_level, lvl);
  }

  auto spin_at = [&](Pt c) { return s.spin[g.face_id(c)]; };
  // Face on the left of the step a -> b.
  auto left_face = [](Pt a, Pt b) {
    int dx = (b.x - a.x) / 2, dy = (b.y - a.y) / 2;
    return Pt{(a.x + b.x) / 2 - dy, (a.y + b.y) / 2 + dx};
  };
  auto right_face = [](Pt a, Pt b) {
    int dx = (b.x - a.x) / 2, dy = (b.y - a.y) / 2;
    return Pt{(a.x + b.x) / 2 + dy, (a.y + b.y) / 2 - dx};
  };

  out.levels.assign(static_cast<std::size_t>(max_level), {});
  out.most.assign(static_cast<std::size_t>(max_level), {});
  std::vector<std::uint8_t> used(out.edge_level.size(), 0);
  for (int lvl = 1; lvl <= max_level; ++lvl) {
    const bool odd = lvl % 2 == 1;
    for (int e0 = 0; e0 < g.edge_slots(); ++e0) {
      if (out.edge_level[e0] != lvl || used[e0]) continue;
      auto [va, vb] = g.edge_vertex_ids(e0);
      Pt a = g.vertex(va), b = g.vertex(vb);
      if (spin_at(left_face(a, b)) != 1) std::swap(a, b);
      std::vector<Pt> pts{a};
      used[e0] = 1;
      Pt prev = a, at = b;
      for (;;) {
        int heading = direction(prev, at);
        int vid = g.vertex_id(at);
        int deg = 0;
        for (int dir = 0; dir < 4; ++dir) {
          int e = g.edge_from(vid, dir);
          if (e >= 0 && out.edge_level[e] == lvl) ++deg;
        }
        int next_dir = -1;
        if (deg == 2) {
          for (int dir = 0; dir < 4; ++dir) {
            int e = g.edge_from(vid, dir);
            if (e >= 0 && out.edge_level[e] == lvl && dir != ((heading + 2) & 3)) next_dir = dir;
          }
        } else if (deg == 4) {
          next_dir = odd ? (heading + 1) & 3 : (heading + 3) & 3;
        } else {
          throw InvariantError("odd degree in a level of the Ising interface");
        }
        int e = g.edge_from(vid, next_dir);
        Pt nxt = step(at, next_dir);
        if (e == e0) break;
        if (used[e]) throw InvariantError("Ising loop trace reused an edge");
        if (spin_at(left_face(at, nxt)) != 1) throw InvariantError("Ising loop without + on its left");
        used[e] = 1;
        pts.push_back(at);
        prev = at;
        at = nxt;
      }
      LevelledLoop l;
      l.pts = pts;
      l.level = lvl;
      l.orientation = classify_loop(pts).orientation;
      // s(i)-most: the faces on the s(i) side form a strong loop of s(i) spins.
      const int want = odd ? 1 : -1;
      std::vector<Pt> side;
      for (std::size_t i = 0; i < pts.size(); ++i) {
        Pt p = pts[i], q2 = pts[(i + 1) % pts.size()];
        side.push_back(odd ? left_face(p, q2) : right_face(p, q2));
      }
      // Turning away from the side, the strong loop goes through the outer
      // corner face.
      bool most = true;
      for (std::size_t i = 0; i < side.size() && most; ++i) {
        Pt c = side[i], c2 = side[(i + 1) % side.size()];
        if (spin_at(c) != want) most = false;
        if (c == c2 || std::abs(c.x - c2.x) + std::abs(c.y - c2.y) == 2) continue;
        Pt p = pts[i], v = pts[(i + 1) % pts.size()];
        Pt opp = odd ? right_face(p, v) : left_face(p, v);
        Pt corner{c.x + c2.x - opp.x, c.y + c2.y - opp.y};
        if (!g.has_face(corner) || spin_at(corner) != want) most = false;
      }
      out.levels[lvl - 1].push_back(std::move(l));
      out.most[lvl - 1].push_back(most);
    }
  }
  return out;
}

}  // namespace rcloop
