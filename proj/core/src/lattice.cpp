#include "rcloop/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <string>

namespace rcloop {

namespace {

int floor_half(int v) { return v >> 1; }  // arithmetic shift floors

std::string pt_str(Pt p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

}  // namespace

int direction(Pt from, Pt to) {
  for (int d = 0; d < 4; ++d)
    if (step(from, d) == to) return d;
  throw PreconditionError("malformed loop: " + pt_str(from) + " and " + pt_str(to) +
                          " are not neighbours");
}

Edge edge_between(Pt a, Pt b) {
  if (!are_neighbors(a, b) || is_primal(a) != is_primal(b) || (!is_primal(a) && !is_dual(a)))
    throw PreconditionError("not a lattice edge: " + pt_str(a) + "-" + pt_str(b));
  return {{(a.x + b.x) / 2, (a.y + b.y) / 2}, is_dual(a)};
}

std::pair<Pt, Pt> endpoints(const Edge& e) {
  bool along_x = ((e.mid.x & 1) != 0) != e.dual;
  if (along_x) return {{e.mid.x - 1, e.mid.y}, {e.mid.x + 1, e.mid.y}};
  return {{e.mid.x, e.mid.y - 1}, {e.mid.x, e.mid.y + 1}};
}

// ---------------------------------------------------------------- geometry

bool GridGeometry::has_vertex(Pt p) const {
  if (!is_primal(p)) return false;
  int i = p.x / 2 - x0, j = p.y / 2 - y0;
  return i >= 0 && i <= w && j >= 0 && j <= h;
}

int GridGeometry::vertex_id(Pt p) const {
  if (!has_vertex(p)) throw BoundsError("vertex outside window: " + pt_str(p));
  return (p.x / 2 - x0) * (h + 1) + (p.y / 2 - y0);
}

Pt GridGeometry::vertex(int id) const {
  return {2 * (x0 + id / (h + 1)), 2 * (y0 + id % (h + 1))};
}

bool GridGeometry::valid_edge_id(int id) const {
  if (id < 0 || id >= edge_slots()) return false;
  int v = id / 2;
  int i = v / (h + 1), j = v % (h + 1);
  return (id & 1) == 0 ? j < h : i < w;
}

bool GridGeometry::has_edge(const Edge& e) const {
  if (e.dual) return false;
  auto [a, b] = endpoints(e);
  return has_vertex(a) && has_vertex(b);
}

int GridGeometry::edge_id(const Edge& e) const {
  if (!has_edge(e)) throw BoundsError("edge outside window at " + pt_str(e.mid));
  auto [a, b] = endpoints(e);
  return 2 * vertex_id(a) + (a.x == b.x ? 0 : 1);
}

Edge GridGeometry::edge(int id) const {
  Pt p = vertex(id / 2);
  if ((id & 1) == 0) return {{p.x, p.y + 1}, false};
  return {{p.x + 1, p.y}, false};
}

std::pair<int, int> GridGeometry::edge_vertex_ids(int id) const {
  int v = id / 2;
  return {v, (id & 1) == 0 ? v + 1 : v + (h + 1)};
}

int GridGeometry::edge_from(int vid, int dir) const {
  int i = vid / (h + 1), j = vid % (h + 1);
  switch (dir & 3) {
    case 0: return i < w ? 2 * vid + 1 : -1;
    case 1: return j < h ? 2 * vid : -1;
    case 2: return i > 0 ? 2 * (vid - (h + 1)) + 1 : -1;
    default: return j > 0 ? 2 * (vid - 1) : -1;
  }
}

int GridGeometry::neighbor(int vid, int dir) const {
  int i = vid / (h + 1), j = vid % (h + 1);
  switch (dir & 3) {
    case 0: return i < w ? vid + (h + 1) : -1;
    case 1: return j < h ? vid + 1 : -1;
    case 2: return i > 0 ? vid - (h + 1) : -1;
    default: return j > 0 ? vid - 1 : -1;
  }
}

bool GridGeometry::has_face(Pt c) const {
  if (!is_dual(c)) return false;
  int i = floor_half(c.x - 1) - (x0 - 1), j = floor_half(c.y - 1) - (y0 - 1);
  return i >= 0 && i <= w + 1 && j >= 0 && j <= h + 1;
}

int GridGeometry::face_id(Pt c) const {
  if (!has_face(c)) throw BoundsError("face outside window: " + pt_str(c));
  int i = floor_half(c.x - 1) - (x0 - 1), j = floor_half(c.y - 1) - (y0 - 1);
  return i * (h + 2) + j;
}

Pt GridGeometry::face(int id) const {
  int i = id / (h + 2), j = id % (h + 2);
  return {2 * (x0 - 1 + i) + 1, 2 * (y0 - 1 + j) + 1};
}

std::pair<Pt, Pt> GridGeometry::faces_of(int id) const {
  Edge e = edge(id);
  auto [f1, f2] = endpoints(dual_of(e));
  return {f1, f2};
}

Edge GridGeometry::dual_edge(int id) const {
  if (!valid_edge_id(id)) throw BoundsError("edge id outside window: " + std::to_string(id));
  return dual_of(edge(id));
}

// ---------------------------------------------------------------- subgraph

Subgraph::Subgraph(const GridGeometry& g)
    : g_(g), v_(static_cast<std::size_t>(g.num_vertices()), 0),
      e_(static_cast<std::size_t>(g.edge_slots()), 0) {}

Subgraph Subgraph::full(const GridGeometry& g) {
  Subgraph s(g);
  std::fill(s.v_.begin(), s.v_.end(), 1);
  for (int e = 0; e < g.edge_slots(); ++e) s.e_[e] = g.valid_edge_id(e);
  return s;
}

void Subgraph::set_edge(int eid, bool on) {
  if (!g_.valid_edge_id(eid)) throw BoundsError("invalid edge id " + std::to_string(eid));
  e_[eid] = on;
}

void Subgraph::add_edge_with_ends(int eid) {
  set_edge(eid, true);
  auto [a, b] = g_.edge_vertex_ids(eid);
  v_[a] = v_[b] = 1;
}

std::vector<int> Subgraph::vertex_ids() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(v_.size()); ++i)
    if (v_[i]) out.push_back(i);
  return out;
}

std::vector<int> Subgraph::edge_ids() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(e_.size()); ++i)
    if (e_[i]) out.push_back(i);
  return out;
}

int Subgraph::num_vertices() const { return static_cast<int>(std::count(v_.begin(), v_.end(), 1)); }
int Subgraph::num_edges() const { return static_cast<int>(std::count(e_.begin(), e_.end(), 1)); }

Subgraph unite(const Subgraph& a, const Subgraph& b) {
  if (!(a.geometry() == b.geometry())) throw PreconditionError("geometry mismatch");
  Subgraph out = a;
  for (int v : b.vertex_ids()) out.set_vertex(v);
  for (int e : b.edge_ids()) out.set_edge(e);
  return out;
}

Subgraph subtract(const Subgraph& a, const Subgraph& b) {
  if (!(a.geometry() == b.geometry())) throw PreconditionError("geometry mismatch");
  Subgraph out = a;
  for (int v : b.vertex_ids()) out.set_vertex(v, false);
  for (int e : b.edge_ids()) out.set_edge(e, false);
  return out;
}

bool is_subgraph(const Subgraph& a, const Subgraph& b) {
  if (!(a.geometry() == b.geometry())) return false;
  for (int v : a.vertex_ids())
    if (!b.has_vertex(v)) return false;
  for (int e : a.edge_ids())
    if (!b.has_edge(e)) return false;
  return true;
}

std::vector<int> boundary(const Subgraph& g) {
  const auto& geo = g.geometry();
  std::vector<int> out;
  for (int v : g.vertex_ids()) {
    for (int d = 0; d < 4; ++d) {
      int u = geo.neighbor(v, d);
      if (u < 0 || !g.has_vertex(u)) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- loops

const char* to_string(LoopClass c) {
  switch (c) {
    case LoopClass::simple: return "simple";
    case LoopClass::weakly_simple: return "weakly_simple";
    case LoopClass::non_self_crossing: return "non_self_crossing";
    default: return "general";
  }
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::ccw: return "CCW";
    case Orientation::cw: return "CW";
    default: return "undefined";
  }
}

std::vector<Pt> open_walk(const std::vector<Pt>& walk) {
  std::vector<Pt> pts = walk;
  if (pts.size() >= 2 && pts.front() == pts.back()) pts.pop_back();
  return pts;
}

std::vector<Edge> loop_edges(const std::vector<Pt>& walk) {
  auto pts = open_walk(walk);
  std::vector<Edge> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) out.push_back(edge_between(pts[i], pts[(i + 1) % pts.size()]));
  return out;
}

long long signed_area2(const std::vector<Pt>& walk) {
  auto pts = open_walk(walk);
  long long s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Pt& a = pts[i];
    const Pt& b = pts[(i + 1) % pts.size()];
    s += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
  }
  return s;
}

LoopInfo classify_loop(const std::vector<Pt>& walk) {
  auto pts = open_walk(walk);
  const std::size_t n = pts.size();
  if (n < 2) throw PreconditionError("malformed loop: fewer than two vertices");
  const bool primal = is_primal(pts[0]);
  if (!primal && !is_dual(pts[0])) throw PreconditionError("malformed loop: off-lattice vertex");
  std::vector<int> dir(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_primal(pts[i]) != primal) throw PreconditionError("malformed loop: mixed lattices");
    dir[i] = direction(pts[i], pts[(i + 1) % n]);
  }

  std::set<Pt> distinct(pts.begin(), pts.end());
  std::set<Edge> unoriented;
  std::set<std::pair<Pt, Pt>> oriented;
  bool unoriented_ok = true, oriented_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    Pt a = pts[i], b = pts[(i + 1) % n];
    if (!unoriented.insert(edge_between(a, b)).second) unoriented_ok = false;
    if (!oriented.insert({a, b}).second) oriented_ok = false;
  }

  // visits[x] = list of (incoming dir, outgoing dir)
  std::map<Pt, std::vector<std::pair<int, int>>> visits;
  for (std::size_t i = 0; i < n; ++i) visits[pts[i]].push_back({dir[(i + n - 1) % n], dir[i]});

  LoopInfo info;
  bool weakly = unoriented_ok;
  if (weakly) {
    for (const auto& [p, vs] : visits) {
      if (vs.size() < 2) continue;  // four incident loop edges only when visited twice
      for (auto [in, out] : vs)
        if (((in - out) & 1) == 0) weakly = false;
    }
  }
  bool nsc = oriented_ok;
  if (nsc) {
    for (const auto& [p, vs] : visits) {
      for (std::size_t a = 0; a < vs.size() && nsc; ++a)
        for (std::size_t b = a + 1; b < vs.size(); ++b) {
          bool sa = vs[a].first == vs[a].second, sb = vs[b].first == vs[b].second;
          if (sa && sb && ((vs[a].first - vs[b].first) & 1) != 0) {
            nsc = false;
            break;
          }
        }
    }
  }

  if (n >= 4 && distinct.size() == n) info.cls = LoopClass::simple;
  else if (weakly) info.cls = LoopClass::weakly_simple;
  else if (nsc) info.cls = LoopClass::non_self_crossing;
  else info.cls = LoopClass::general;

  if (info.cls == LoopClass::simple || info.cls == LoopClass::weakly_simple) {
    long long a = signed_area2(pts);
    info.orientation = a > 0 ? Orientation::ccw : (a < 0 ? Orientation::cw : Orientation::undefined);
  }
  return info;
}

DiscreteLoop make_loop(std::vector<Pt> walk) {
  DiscreteLoop l;
  l.pts = open_walk(walk);
  auto info = classify_loop(l.pts);
  l.cls = info.cls;
  l.orientation = info.orientation;
  return l;
}

int winding_number(const std::vector<Pt>& walk, Pt p) {
  auto pts = open_walk(walk);
  int wn = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Pt a = pts[i], b = pts[(i + 1) % pts.size()];
    if (a.x != b.x || a.x <= p.x) continue;
    int lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
    if (p.y > lo && p.y < hi) wn += b.y > a.y ? 1 : -1;
  }
  return wn;
}

std::vector<Pt> canonical_rotation(const std::vector<Pt>& walk) {
  auto pts = open_walk(walk);
  if (pts.empty()) return pts;
  std::size_t n = pts.size(), best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    auto key = std::make_pair(pts[i], pts[(i + 1) % n]);
    auto bkey = std::make_pair(pts[best], pts[(best + 1) % n]);
    if (key < bkey) best = i;
  }
  std::rotate(pts.begin(), pts.begin() + static_cast<long>(best), pts.end());
  return pts;
}

bool same_up_to_rotation(const std::vector<Pt>& a, const std::vector<Pt>& b) {
  return canonical_rotation(a) == canonical_rotation(b);
}

std::vector<Pt> reversed(const std::vector<Pt>& walk) {
  auto pts = open_walk(walk);
  if (pts.size() > 1) std::reverse(pts.begin() + 1, pts.end());
  return pts;
}

double diameter(const std::vector<Pt>& walk) {
  double best = 0;
  for (std::size_t i = 0; i < walk.size(); ++i)
    for (std::size_t j = i + 1; j < walk.size(); ++j) {
      double dx = walk[i].x - walk[j].x, dy = walk[i].y - walk[j].y;
      best = std::max(best, std::sqrt(dx * dx + dy * dy));
    }
  return best;
}

bool surrounds(const std::vector<Pt>& dual_loop, const std::vector<Pt>& l) {
  auto dl = open_walk(dual_loop);
  if (dl.empty() || !is_dual(dl[0])) throw PreconditionError("surrounds: first argument must be a dual loop");
  if (classify_loop(dl).cls != LoopClass::simple)
    throw PreconditionError("surrounds: dual loop is not simple");
  auto info = classify_loop(l);
  if (info.cls != LoopClass::simple && info.cls != LoopClass::weakly_simple)
    throw PreconditionError("surrounds: primal loop is not weakly simple");
  std::set<Pt> on(dl.begin(), dl.end());
  for (const Edge& e : loop_edges(l)) {
    auto [f1, f2] = endpoints(dual_of(e));
    int w1 = winding_number(l, f1), w2 = winding_number(l, f2);
    Pt outside;
    if (w1 == 0 && w2 != 0) outside = f1;
    else if (w2 == 0 && w1 != 0) outside = f2;
    else return false;
    if (!on.count(outside)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- regions

std::vector<int> face_winding(const GridGeometry& g, const std::vector<Pt>& walk) {
  auto pts = open_walk(walk);
  const int fw = g.w + 2, fh = g.h + 2;
  // diff[i][j]: contribution of vertical steps at face column boundary i
  std::vector<int> col(static_cast<std::size_t>((fw + 1) * fh), 0);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    Pt a = pts[k], b = pts[(k + 1) % pts.size()];
    if (a.x != b.x || a.y == b.y) continue;
    int ymid = (a.y + b.y) / 2;  // odd: row of faces crossed by the ray
    int j = floor_half(ymid - 1) - (g.y0 - 1);
    if (j < 0 || j >= fh) continue;
    // faces with centre x < a.x: face index i with 2*(x0-1+i)+1 < a.x
    int imax = floor_half(a.x - 1) - (g.x0 - 1);  // last face strictly left of a.x
    imax = std::min(imax, fw - 1);
    if (imax < 0) continue;
    col[static_cast<std::size_t>(imax * fh + j)] += b.y > a.y ? 1 : -1;
  }
  std::vector<int> wn(static_cast<std::size_t>(fw * fh), 0);
  for (int j = 0; j < fh; ++j) {
    int acc = 0;
    for (int i = fw - 1; i >= 0; --i) {
      acc += col[static_cast<std::size_t>(i * fh + j)];
      wn[static_cast<std::size_t>(i * fh + j)] = acc;
    }
  }
  return wn;
}

Subgraph closed_region(const GridGeometry& g, const std::vector<Pt>& walk) {
  auto pts = open_walk(walk);
  auto wn = face_winding(g, pts);
  Subgraph s(g);
  std::set<Pt> on(pts.begin(), pts.end());
  std::set<Edge> on_edges;
  if (pts.size() >= 2)
    for (const Edge& e : loop_edges(pts)) on_edges.insert(e);
  for (int e = 0; e < g.edge_slots(); ++e) {
    if (!g.valid_edge_id(e)) continue;
    auto [f1, f2] = g.faces_of(e);
    bool in = on_edges.count(g.edge(e)) ||
              (g.has_face(f1) && wn[g.face_id(f1)] != 0) || (g.has_face(f2) && wn[g.face_id(f2)] != 0);
    if (in) s.add_edge_with_ends(e);
  }
  for (Pt p : pts)
    if (g.has_vertex(p)) s.set_vertex(g.vertex_id(p));
  for (int v = 0; v < g.num_vertices(); ++v) {
    Pt p = g.vertex(v);
    Pt f{p.x + 1, p.y + 1};
    if (g.has_face(f) && wn[g.face_id(f)] != 0) s.set_vertex(v);
  }
  return s;
}

// ---------------------------------------------------------------- discs

namespace {

void build_dual(DiscreteDisc& d) {
  const auto& g = d.geometry();
  d.dual_vertices.assign(static_cast<std::size_t>(g.num_faces()), 0);
  d.dual_boundary.assign(static_cast<std::size_t>(g.num_faces()), 0);
  for (int v : d.graph.vertex_ids()) {
    Pt p = g.vertex(v);
    for (int dx : {-1, 1})
      for (int dy : {-1, 1}) d.dual_vertices[g.face_id({p.x + dx, p.y + dy})] = 1;
  }
  for (int f = 0; f < g.num_faces(); ++f)
    if (d.dual_vertices[f] && !d.cells[f]) d.dual_boundary[f] = 1;
  Pt start{0, 0};
  bool found = false;
  for (int f = 0; f < g.num_faces() && !found; ++f)
    if (d.dual_boundary[f]) {
      start = g.face(f);
      found = true;
    }
  if (!found) return;
  auto in_bdy = [&](Pt c) { return g.has_face(c) && d.dual_boundary[g.face_id(c)]; };
  d.dual_boundary_loop = trace_outer(start, [&](Pt a, Pt b) { return in_bdy(a) && in_bdy(b); });
}

std::vector<Pt> trace_graph(const Subgraph& s) {
  const auto& g = s.geometry();
  auto vids = s.vertex_ids();
  if (vids.empty()) return {};
  Pt start = g.vertex(vids.front());  // ids are lexicographic
  return trace_outer(start, [&](Pt a, Pt b) {
    if (!g.has_vertex(a) || !g.has_vertex(b)) return false;
    return s.has_edge(g.edge_id(edge_between(a, b)));
  });
}

bool connected(const Subgraph& s) {
  const auto& g = s.geometry();
  auto vids = s.vertex_ids();
  if (vids.empty()) return true;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  std::queue<int> q;
  q.push(vids[0]);
  seen[vids[0]] = 1;
  int count = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    ++count;
    for (int dir = 0; dir < 4; ++dir) {
      int e = g.edge_from(v, dir);
      if (e < 0 || !s.has_edge(e)) continue;
      int u = g.neighbor(v, dir);
      if (!seen[u] && s.has_vertex(u)) {
        seen[u] = 1;
        q.push(u);
      }
    }
  }
  return count == static_cast<int>(vids.size());
}

}  // namespace

bool certify_disc(const Subgraph& graph) {
  if (graph.num_vertices() == 0) return false;
  for (int e : graph.edge_ids()) {
    auto [a, b] = graph.geometry().edge_vertex_ids(e);
    if (!graph.has_vertex(a) || !graph.has_vertex(b)) return false;
  }
  if (!connected(graph)) return false;
  auto walk = trace_graph(graph);
  if (walk.size() >= 2) {
    auto info = classify_loop(walk);
    if (info.cls == LoopClass::general) return false;
  }
  return closed_region(graph.geometry(), walk) == graph;
}

DiscreteDisc disc_from_subgraph(const Subgraph& graph) {
  if (!certify_disc(graph)) throw InvariantError("subgraph is not a discrete disc");
  DiscreteDisc d;
  d.graph = graph;
  const auto& g = graph.geometry();
  d.cells.assign(static_cast<std::size_t>(g.num_faces()), 0);
  for (int f = 0; f < g.num_faces(); ++f) {
    Pt c = g.face(f);
    bool all = true;
    for (int dir = 0; dir < 4 && all; ++dir) {
      Pt m{c.x + kDx[dir] / 2, c.y + kDy[dir] / 2};
      Edge e{m, false};
      all = g.has_edge(e) && graph.has_edge(g.edge_id(e));
    }
    d.cells[f] = all;
  }
  d.boundary_loop = trace_graph(graph);
  build_dual(d);
  return d;
}

DiscreteDisc disc_from_cells(const GridGeometry& g, const std::vector<std::uint8_t>& cells) {
  Subgraph s(g);
  for (int f = 0; f < g.num_faces(); ++f) {
    if (!cells[f]) continue;
    Pt c = g.face(f);
    for (int dir = 0; dir < 4; ++dir) {
      Edge e{{c.x + kDx[dir] / 2, c.y + kDy[dir] / 2}, false};
      if (!g.has_edge(e)) throw BoundsError("cell outside window");
      s.add_edge_with_ends(g.edge_id(e));
    }
  }
  if (s.num_vertices() == 0) throw PreconditionError("empty cell set");
  return disc_from_subgraph(s);
}

DomainSpec DomainSpec::rectangle(double x0, double y0, double x1, double y1) {
  return {{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}};
}

DiscreteDisc discretize_domain(const DomainSpec& spec, int n) {
  if (n < 1) throw PreconditionError("n must be positive");
  const auto& c = spec.corners;
  if (c.size() < 4) throw PreconditionError("domain polygon needs at least four corners");
  for (std::size_t i = 0; i < c.size(); ++i) {
    auto a = c[i], b = c[(i + 1) % c.size()];
    if (a.first != b.first && a.second != b.second)
      throw PreconditionError("domain polygon must be rectilinear");
  }
  double minx = c[0].first, maxx = minx, miny = c[0].second, maxy = miny;
  for (auto [x, y] : c) {
    minx = std::min(minx, x); maxx = std::max(maxx, x);
    miny = std::min(miny, y); maxy = std::max(maxy, y);
  }
  GridGeometry g;
  g.n = n;
  g.x0 = static_cast<int>(std::floor(minx * n));
  g.y0 = static_cast<int>(std::floor(miny * n));
  g.w = std::max(1, static_cast<int>(std::ceil(maxx * n)) - g.x0);
  g.h = std::max(1, static_cast<int>(std::ceil(maxy * n)) - g.y0);

  // Corners scaled to lattice units; exact for dyadic corners.
  std::vector<std::pair<double, double>> s;
  for (auto [x, y] : c) s.push_back({x * n, y * n});
  auto inside = [&](double px, double py) {
    int cross = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto a = s[i], b = s[(i + 1) % s.size()];
      if (a.first != b.first || a.first <= px) continue;
      double lo = std::min(a.second, b.second), hi = std::max(a.second, b.second);
      if (py >= lo && py < hi) ++cross;
    }
    return (cross & 1) != 0;
  };
  auto cuts_cell = [&](double cx0, double cy0) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto a = s[i], b = s[(i + 1) % s.size()];
      if (a.first == b.first) {
        double lo = std::min(a.second, b.second), hi = std::max(a.second, b.second);
        if (a.first > cx0 && a.first < cx0 + 1 && hi > cy0 && lo < cy0 + 1) return true;
      } else {
        double lo = std::min(a.first, b.first), hi = std::max(a.first, b.first);
        if (a.second > cy0 && a.second < cy0 + 1 && hi > cx0 && lo < cx0 + 1) return true;
      }
    }
    return false;
  };

  std::vector<std::uint8_t> cells(static_cast<std::size_t>(g.num_faces()), 0);
  for (int f = 0; f < g.num_faces(); ++f) {
    Pt fc = g.face(f);
    double cx0 = (fc.x - 1) / 2, cy0 = (fc.y - 1) / 2;
    if (cx0 < g.x0 || cy0 < g.y0 || cx0 + 1 > g.x0 + g.w || cy0 + 1 > g.y0 + g.h) continue;
    if (inside(cx0 + 0.5, cy0 + 0.5) && !cuts_cell(cx0, cy0)) cells[f] = 1;
  }

  // Largest edge-connected component; ties go to the lexicographically first.
  std::vector<int> comp(cells.size(), -1);
  int best = -1;
  std::size_t best_size = 0;
  int ncomp = 0;
  for (int f = 0; f < g.num_faces(); ++f) {
    if (!cells[f] || comp[f] >= 0) continue;
    std::vector<int> stack{f};
    comp[f] = ncomp;
    std::size_t size = 0;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      ++size;
      Pt pc = g.face(u);
      for (int dir = 0; dir < 4; ++dir) {
        Pt q = step(pc, dir);
        if (!g.has_face(q)) continue;
        int qi = g.face_id(q);
        if (cells[qi] && comp[qi] < 0) {
          comp[qi] = ncomp;
          stack.push_back(qi);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best = ncomp;
    }
    ++ncomp;
  }
  if (best < 0) throw PreconditionError("domain too small to contain a lattice cell at this mesh");
  for (std::size_t f = 0; f < cells.size(); ++f) cells[f] = comp[f] == best;
  return disc_from_cells(g, cells);
}

DiscreteDisc square_disc(int cells_x, int cells_y, int n) {
  GridGeometry g;
  g.n = n > 0 ? n : std::max(cells_x, cells_y);
  g.w = cells_x;
  g.h = cells_y;
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(g.num_faces()), 0);
  for (int i = 0; i < cells_x; ++i)
    for (int j = 0; j < cells_y; ++j) cells[g.face_id({2 * i + 1, 2 * j + 1})] = 1;
  return disc_from_cells(g, cells);
}

}  // namespace rcloop
