#include "rcloop/annuli.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace rcloop {

namespace {

using Poly = std::vector<P2>;

Poly scaled(const Poly& p, double s) {
  Poly out(p);
  for (auto& q : out) {
    q.x *= s;
    q.y *= s;
  }
  return out;
}

bool on_boundary(const Poly& poly, P2 p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    if (a.x == b.x) {
      if (p.x == a.x && p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y)) return true;
    } else if (p.y == a.y && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x)) {
      return true;
    }
  }
  return false;
}

// Ray casting towards +x; meaningful only off the boundary.
bool inside_raw(const Poly& poly, P2 p) {
  int cross = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    if (a.x != b.x || a.x <= p.x) continue;
    double lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
    if (p.y >= lo && p.y < hi) ++cross;
  }
  return (cross & 1) != 0;
}

bool in_closed(const Poly& poly, P2 p) { return on_boundary(poly, p) || inside_raw(poly, p); }
bool in_open(const Poly& poly, P2 p) { return !on_boundary(poly, p) && inside_raw(poly, p); }

// Annulus in doubled lattice units.
struct ScaledAnnulus {
  Poly in, out;
  bool member(P2 p) const { return in_closed(out, p) && !in_open(in, p); }
};

ScaledAnnulus scale_annulus(const PolyAnnulus& a, int n) {
  return {scaled(a.inner, 2.0 * n), scaled(a.outer, 2.0 * n)};
}

struct Fragment {
  P2 lo, hi;  // endpoints along the segment
  bool touch0 = false, touch1 = false;
  bool at_a = false, at_b = false;  // contains the segment's first / last point
};

// Breakpoints of an axis-aligned segment against polygon edges, as values of
// the varying coordinate.
void add_breaks(const Poly& poly, bool vertical, double c, double ua, double ub, std::vector<double>& us) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    bool edge_vertical = a.x == b.x;
    double e_fixed = edge_vertical ? a.x : a.y;
    double lo = edge_vertical ? std::min(a.y, b.y) : std::min(a.x, b.x);
    double hi = edge_vertical ? std::max(a.y, b.y) : std::max(a.x, b.x);
    if (edge_vertical == vertical) {
      if (e_fixed != c) continue;
      double l = std::max(ua, lo), h = std::min(ub, hi);
      if (l <= h) {
        us.push_back(l);
        us.push_back(h);
      }
    } else if (c >= lo && c <= hi && e_fixed >= ua && e_fixed <= ub) {
      us.push_back(e_fixed);
    }
  }
}

std::vector<Fragment> clip(const LatticeSet::Seg& s, const ScaledAnnulus& A) {
  bool vertical = s.a.x == s.b.x;
  double c = vertical ? s.a.x : s.a.y;
  double ua = vertical ? s.a.y : s.a.x, ub = vertical ? s.b.y : s.b.x;
  bool flipped = ua > ub;
  if (flipped) std::swap(ua, ub);
  std::vector<double> us{ua, ub};
  add_breaks(A.in, vertical, c, ua, ub, us);
  add_breaks(A.out, vertical, c, ua, ub, us);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  auto at = [&](double u) { return vertical ? P2{c, u} : P2{u, c}; };
  std::vector<Fragment> out;
  Fragment cur;
  bool open = false;
  auto touch = [&](Fragment& f, P2 p) {
    if (on_boundary(A.in, p)) f.touch0 = true;
    if (on_boundary(A.out, p)) f.touch1 = true;
  };
  for (std::size_t i = 0; i < us.size(); ++i) {
    P2 p = at(us[i]);
    bool pin = A.member(p);
    if (pin) {
      if (!open) {
        cur = Fragment{};
        cur.lo = p;
        cur.at_a = i == 0;
        open = true;
      }
      cur.hi = p;
      touch(cur, p);
      if (i + 1 == us.size()) cur.at_b = true;
    } else if (open) {
      out.push_back(cur);
      open = false;
    }
    if (i + 1 < us.size()) {
      bool min = A.member(at(0.5 * (us[i] + us[i + 1])));
      if (!min && open) {
        out.push_back(cur);
        open = false;
      }
    }
  }
  if (open) out.push_back(cur);
  if (flipped)
    for (auto& f : out) std::swap(f.at_a, f.at_b);
  return out;
}

struct DSU {
  std::vector<int> p;
  explicit DSU(std::size_t n = 0) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

int max_key(const LatticeSet& s) {
  int m = -1;
  for (const auto& g : s.segs) m = std::max({m, g.ka, g.kb});
  return m;
}

struct ClipResult {
  std::vector<Fragment> frags;
  std::vector<int> comp;  // root per fragment
};

ClipResult clip_all(const LatticeSet& s, const ScaledAnnulus& A) {
  ClipResult r;
  std::vector<std::pair<int, int>> key_links;  // fragment, key
  for (const auto& seg : s.segs) {
    for (const auto& f : clip(seg, A)) {
      int id = static_cast<int>(r.frags.size());
      r.frags.push_back(f);
      if (f.at_a) key_links.push_back({id, seg.ka});
      if (f.at_b) key_links.push_back({id, seg.kb});
    }
  }
  const int nf = static_cast<int>(r.frags.size());
  DSU d(static_cast<std::size_t>(nf + max_key(s) + 1));
  for (auto [f, k] : key_links) d.unite(f, nf + k);
  r.comp.resize(r.frags.size());
  for (int i = 0; i < nf; ++i) r.comp[i] = d.find(i);
  return r;
}

// Fast path: rectangles on lattice lines, where an edge lies in the annulus
// exactly when its midpoint does.
struct IRect {
  int x0, y0, x1, y1;
};

bool lattice_rects(const PolyAnnulus& a, int n, IRect& in, IRect& out) {
  Rect ri, ro;
  if (!as_rects(a, ri, ro)) return false;
  auto conv = [&](const Rect& r, IRect& q) {
    double v[4] = {r.x0 * 2.0 * n, r.y0 * 2.0 * n, r.x1 * 2.0 * n, r.y1 * 2.0 * n};
    int iv[4];
    for (int i = 0; i < 4; ++i) {
      if (v[i] != std::floor(v[i]) || std::fabs(v[i]) > 1e9) return false;
      iv[i] = static_cast<int>(v[i]);
      if (iv[i] & 1) return false;
    }
    q = {iv[0], iv[1], iv[2], iv[3]};
    return true;
  };
  return conv(ri, in) && conv(ro, out);
}

class FastCrosser {
 public:
  explicit FastCrosser(const LatticeSet& s) : s_(s), parent_(static_cast<std::size_t>(max_key(s) + 1)), flag_(parent_.size(), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  bool operator()(const IRect& I, const IRect& O) {
    auto on_border = [](const IRect& r, Pt p) {
      bool in = p.x >= r.x0 && p.x <= r.x1 && p.y >= r.y0 && p.y <= r.y1;
      return in && (p.x == r.x0 || p.x == r.x1 || p.y == r.y0 || p.y == r.y1);
    };
    used_.clear();
    bool hit = false;
    for (const auto& g : s_.segs) {
      int mx = (g.a.x + g.b.x) / 2, my = (g.a.y + g.b.y) / 2;
      if (mx < O.x0 || mx > O.x1 || my < O.y0 || my > O.y1) continue;
      if (mx > I.x0 && mx < I.x1 && my > I.y0 && my < I.y1) continue;
      used_.push_back(g.ka);
      used_.push_back(g.kb);
      int ra = find(g.ka), rb = find(g.kb);
      if (ra != rb) {
        parent_[ra] = rb;
        flag_[rb] |= flag_[ra];
      }
      int r = rb;
      if (on_border(I, g.a) || on_border(I, g.b)) flag_[r] |= 1;
      if (on_border(O, g.a) || on_border(O, g.b)) flag_[r] |= 2;
      if (flag_[r] == 3) {
        hit = true;
        break;
      }
    }
    for (int k : used_) {
      parent_[k] = k;
      flag_[k] = 0;
    }
    return hit;
  }

 private:
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  const LatticeSet& s_;
  std::vector<int> parent_;
  std::vector<std::uint8_t> flag_;
  std::vector<int> used_;
};

double box_gap(double alo, double ahi, double blo, double bhi) { return std::max({0.0, blo - ahi, alo - bhi}); }

double sup_dist_to_poly(const Fragment& f, const Poly& poly) {
  double best = std::numeric_limits<double>::infinity();
  double fx0 = std::min(f.lo.x, f.hi.x), fx1 = std::max(f.lo.x, f.hi.x);
  double fy0 = std::min(f.lo.y, f.hi.y), fy1 = std::max(f.lo.y, f.hi.y);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    P2 a = poly[i], b = poly[(i + 1) % poly.size()];
    double gx = box_gap(fx0, fx1, std::min(a.x, b.x), std::max(a.x, b.x));
    double gy = box_gap(fy0, fy1, std::min(a.y, b.y), std::max(a.y, b.y));
    best = std::min(best, std::max(gx, gy));
  }
  return best;
}

bool rectilinear_simple(const Poly& p) {
  if (p.size() < 4) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    P2 a = p[i], b = p[(i + 1) % p.size()];
    if (a == b) return false;
    if (a.x != b.x && a.y != b.y) return false;
  }
  // Non-adjacent edges must not meet.
  const std::size_t m = p.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (j == i + 1 || (i == 0 && j == m - 1)) continue;
      P2 a = p[i], b = p[(i + 1) % m], c = p[j], d = p[(j + 1) % m];
      double gx = box_gap(std::min(a.x, b.x), std::max(a.x, b.x), std::min(c.x, d.x), std::max(c.x, d.x));
      double gy = box_gap(std::min(a.y, b.y), std::max(a.y, b.y), std::min(c.y, d.y), std::max(c.y, d.y));
      if (gx == 0 && gy == 0) return false;
    }
  return true;
}

// Every point of segment [a,b] satisfies pred (checked at breakpoints and
// midpoints against the given polygons).
template <class Pred>
bool segment_all(P2 a, P2 b, const std::vector<const Poly*>& polys, Pred pred) {
  bool vertical = a.x == b.x;
  double c = vertical ? a.x : a.y;
  double ua = vertical ? a.y : a.x, ub = vertical ? b.y : b.x;
  if (ua > ub) std::swap(ua, ub);
  std::vector<double> us{ua, ub};
  for (const Poly* p : polys) add_breaks(*p, vertical, c, ua, ub, us);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  auto at = [&](double u) { return vertical ? P2{c, u} : P2{u, c}; };
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (!pred(at(us[i]))) return false;
    if (i + 1 < us.size() && !pred(at(0.5 * (us[i] + us[i + 1])))) return false;
  }
  return true;
}

P2 interior_point(const Poly& p) {
  P2 a = p[0], b = p[1];
  P2 m{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
  double span = std::max(std::fabs(a.x - b.x), std::fabs(a.y - b.y));
  double eps = span * 1e-6;
  P2 c1 = a.x == b.x ? P2{m.x + eps, m.y} : P2{m.x, m.y + eps};
  P2 c2 = a.x == b.x ? P2{m.x - eps, m.y} : P2{m.x, m.y - eps};
  return inside_raw(p, c1) ? c1 : c2;
}

}  // namespace

std::vector<P2> rect_polygon(const Rect& r) { return {{r.x0, r.y0}, {r.x1, r.y0}, {r.x1, r.y1}, {r.x0, r.y1}}; }

PolyAnnulus rect_annulus(const Rect& inner, const Rect& outer) {
  PolyAnnulus a{rect_polygon(inner), rect_polygon(outer), -1};
  validate(a);
  return a;
}

PolyAnnulus square_annulus(double cx, double cy, double r_in, double r_out) {
  return rect_annulus({cx - r_in, cy - r_in, cx + r_in, cy + r_in}, {cx - r_out, cy - r_out, cx + r_out, cy + r_out});
}

bool as_rects(const PolyAnnulus& a, Rect& inner, Rect& outer) {
  auto one = [](const Poly& p, Rect& r) {
    if (p.size() != 4) return false;
    double x0 = p[0].x, x1 = p[0].x, y0 = p[0].y, y1 = p[0].y;
    for (auto q : p) {
      x0 = std::min(x0, q.x); x1 = std::max(x1, q.x);
      y0 = std::min(y0, q.y); y1 = std::max(y1, q.y);
    }
    for (auto q : p)
      if ((q.x != x0 && q.x != x1) || (q.y != y0 && q.y != y1)) return false;
    r = {x0, y0, x1, y1};
    return x0 < x1 && y0 < y1;
  };
  return one(a.inner, inner) && one(a.outer, outer);
}

void validate(const PolyAnnulus& a) {
  if (!rectilinear_simple(a.inner) || !rectilinear_simple(a.outer))
    throw PreconditionError("annulus boundaries must be simple rectilinear polygons");
  for (std::size_t i = 0; i < a.inner.size(); ++i)
    if (!segment_all(a.inner[i], a.inner[(i + 1) % a.inner.size()], {&a.outer},
                     [&](P2 p) { return in_open(a.outer, p); }))
      throw PreconditionError("inner boundary must lie strictly inside the outer boundary");
}

LatticeSet LatticeSet::from_config(const Config& k) {
  const auto& g = k.geometry();
  LatticeSet s;
  s.n = g.n;
  for (int e : k.open_edges()) {
    auto [a, b] = g.edge_vertex_ids(e);
    s.segs.push_back({g.vertex(a), g.vertex(b), a, b});
  }
  return s;
}

LatticeSet LatticeSet::from_loop(const GridGeometry& g, const std::vector<Pt>& walk) {
  return from_loops(g, {walk});
}

LatticeSet LatticeSet::from_loops(const GridGeometry& g, const std::vector<std::vector<Pt>>& loops) {
  LatticeSet s;
  s.n = g.n;
  const int V = g.num_vertices();
  for (std::size_t i = 0; i < loops.size(); ++i) {
    auto w = open_walk(loops[i]);
    for (std::size_t j = 0; j < w.size(); ++j) {
      Pt a = w[j], b = w[(j + 1) % w.size()];
      if (w.size() == 1) break;
      s.segs.push_back({a, b, static_cast<int>(i) * V + g.vertex_id(a), static_cast<int>(i) * V + g.vertex_id(b)});
    }
  }
  return s;
}

bool crosses_general(const LatticeSet& s, const PolyAnnulus& a) {
  auto A = scale_annulus(a, s.n);
  auto r = clip_all(s, A);
  std::vector<std::uint8_t> flag(r.comp.empty() ? 0 : *std::max_element(r.comp.begin(), r.comp.end()) + 1, 0);
  for (std::size_t i = 0; i < r.frags.size(); ++i) {
    auto& f = flag[r.comp[i]];
    if (r.frags[i].touch0) f |= 1;
    if (r.frags[i].touch1) f |= 2;
    if (f == 3) return true;
  }
  return false;
}

bool crosses(const LatticeSet& s, const PolyAnnulus& a) {
  IRect in, out;
  if (lattice_rects(a, s.n, in, out)) return FastCrosser(s)(in, out);
  return crosses_general(s, a);
}

bool thick_connects(const LatticeSet& s, const PolyAnnulus& a, double r) {
  if (!(r >= 0)) throw PreconditionError("thickening radius must be nonnegative");
  auto A = scale_annulus(a, s.n);
  double rs = r * 2.0 * s.n;
  auto res = clip_all(s, A);
  std::vector<std::uint8_t> flag(res.comp.empty() ? 0 : *std::max_element(res.comp.begin(), res.comp.end()) + 1, 0);
  for (std::size_t i = 0; i < res.frags.size(); ++i) {
    auto& f = flag[res.comp[i]];
    if (sup_dist_to_poly(res.frags[i], A.in) <= rs) f |= 1;
    if (sup_dist_to_poly(res.frags[i], A.out) <= rs) f |= 2;
    if (f == 3) return true;
  }
  return false;
}

bool separates(const LatticeSet& s, const PolyAnnulus& a) {
  auto A = scale_annulus(a, s.n);
  auto res = clip_all(s, A);
  if (res.frags.empty()) return false;
  std::vector<double> xs, ys;
  for (const auto& f : res.frags) {
    xs.push_back(f.lo.x); xs.push_back(f.hi.x);
    ys.push_back(f.lo.y); ys.push_back(f.hi.y);
  }
  for (const Poly* p : {&A.in, &A.out})
    for (auto q : *p) {
      xs.push_back(q.x);
      ys.push_back(q.y);
    }
  auto uniq = [](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(xs);
  uniq(ys);
  const int NX = 2 * static_cast<int>(xs.size()) + 1, NY = 2 * static_cast<int>(ys.size()) + 1;
  auto sample = [](const std::vector<double>& v, int i) {
    if (i & 1) return v[i / 2];
    int j = i / 2;
    if (j == 0) return v[0] - 1.0;
    if (j == static_cast<int>(v.size())) return v.back() + 1.0;
    return 0.5 * (v[j - 1] + v[j]);
  };
  auto line_index = [](const std::vector<double>& v, double x) {
    return 2 * static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin()) + 1;
  };
  int hole = -1;
  for (int i = 0; i < NX && hole < 0; i += 2)
    for (int j = 0; j < NY; j += 2)
      if (in_open(A.in, {sample(xs, i), sample(ys, j)})) {
        hole = i * NY + j;
        break;
      }
  if (hole < 0) throw InvariantError("separates: no cell inside the hole");

  std::vector<int> roots(res.comp);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(NX) * NY);
  for (int root : roots) {
    std::fill(blocked.begin(), blocked.end(), 0);
    for (std::size_t i = 0; i < res.frags.size(); ++i) {
      if (res.comp[i] != root) continue;
      const auto& f = res.frags[i];
      int x0 = line_index(xs, std::min(f.lo.x, f.hi.x)), x1 = line_index(xs, std::max(f.lo.x, f.hi.x));
      int y0 = line_index(ys, std::min(f.lo.y, f.hi.y)), y1 = line_index(ys, std::max(f.lo.y, f.hi.y));
      for (int x = x0; x <= x1; ++x)
        for (int y = y0; y <= y1; ++y) blocked[static_cast<std::size_t>(x) * NY + y] = 1;
    }
    std::vector<std::uint8_t> seen(blocked.size(), 0);
    std::queue<int> q;
    q.push(hole);
    seen[hole] = 1;
    bool escaped = false;
    while (!q.empty() && !escaped) {
      int c = q.front();
      q.pop();
      int x = c / NY, y = c % NY;
      if (x == 0 || y == 0 || x == NX - 1 || y == NY - 1) escaped = true;
      for (int d = 0; d < 4; ++d) {
        int nx = x + (d == 0) - (d == 2), ny = y + (d == 1) - (d == 3);
        if (nx < 0 || ny < 0 || nx >= NX || ny >= NY) continue;
        int id = nx * NY + ny;
        if (seen[id] || blocked[id]) continue;
        seen[id] = 1;
        q.push(id);
      }
    }
    if (!escaped) return true;
  }
  return false;
}

bool leq_crs(const PolyAnnulus& a1, const PolyAnnulus& a2) {
  Rect i1, o1, i2, o2;
  if (as_rects(a1, i1, o1) && as_rects(a2, i2, o2)) {
    auto contains = [](const Rect& big, const Rect& small) {
      return big.x0 <= small.x0 && big.y0 <= small.y0 && small.x1 <= big.x1 && small.y1 <= big.y1;
    };
    return contains(i1, i2) && contains(o1, i1) && contains(o2, o1);
  }
  auto in_region = [&](P2 p) { return in_closed(a2.outer, p) && !in_open(a2.inner, p); };
  P2 hole_pt = interior_point(a2.inner);
  for (const Poly* loop : {&a1.inner, &a1.outer}) {
    for (std::size_t i = 0; i < loop->size(); ++i)
      if (!segment_all((*loop)[i], (*loop)[(i + 1) % loop->size()], {&a2.inner, &a2.outer}, in_region))
        return false;
    if (!in_open(*loop, hole_pt)) return false;
  }
  return true;
}

DyadicFamily::DyadicFamily(int k, int X0, int Y0, int cols, int rows, std::size_t cap)
    : k_(k), X0_(X0), Y0_(Y0), cols_(cols), rows_(rows) {
  if (k < 0 || cols < 3 || rows < 3) throw PreconditionError("dyadic window too small for a nested pair");
  auto quads = [](int span) {
    std::vector<Quad> q;
    for (int a = 0; a <= span; ++a)
      for (int c = a + 1; c <= span; ++c)
        for (int d = c + 1; d <= span; ++d)
          for (int b = d + 1; b <= span; ++b) q.push_back({a, c, d, b});
    return q;
  };
  auto choose4 = [](double s) { return s * (s - 1) * (s - 2) * (s - 3) / 24.0; };
  if (choose4(cols + 1) * choose4(rows + 1) > static_cast<double>(cap))
    throw CapacityError("dyadic family exceeds the configured cap");
  qx_ = quads(cols);
  qy_ = quads(rows);
  auto table = [](const std::vector<Quad>& qs, int span) {
    int s = span + 1;
    std::vector<int> t(static_cast<std::size_t>(s) * s * s * s, -1);
    for (std::size_t i = 0; i < qs.size(); ++i) {
      const auto& q = qs[i];
      t[((static_cast<std::size_t>(q[0]) * s + q[1]) * s + q[2]) * s + q[3]] = static_cast<int>(i);
    }
    return t;
  };
  index_x_ = table(qx_, cols);
  index_y_ = table(qy_, rows);
}

DyadicFamily DyadicFamily::covering(int k, double xmin, double ymin, double xmax, double ymax) {
  double s = std::ldexp(1.0, k);
  int X0 = static_cast<int>(std::floor(xmin * s)), Y0 = static_cast<int>(std::floor(ymin * s));
  int X1 = static_cast<int>(std::ceil(xmax * s)), Y1 = static_cast<int>(std::ceil(ymax * s));
  return DyadicFamily(k, X0, Y0, X1 - X0, Y1 - Y0);
}

DyadicFamily DyadicFamily::for_geometry(int k, const GridGeometry& g) {
  return covering(k, static_cast<double>(g.x0) / g.n, static_cast<double>(g.y0) / g.n,
                  static_cast<double>(g.x0 + g.w) / g.n, static_cast<double>(g.y0 + g.h) / g.n);
}

int DyadicFamily::quad_index(const std::vector<int>& table, int span, const Quad& q) const {
  for (int v : q)
    if (v < 0 || v > span) return -1;
  if (!(q[0] < q[1] && q[1] < q[2] && q[2] < q[3])) return -1;
  std::size_t s = static_cast<std::size_t>(span) + 1;
  return table[((q[0] * s + q[1]) * s + q[2]) * s + q[3]];
}

PolyAnnulus DyadicFamily::annulus(std::size_t idx) const {
  if (idx >= size()) throw BoundsError("annulus index out of range");
  const Quad& qx = qx_[idx / qy_.size()];
  const Quad& qy = qy_[idx % qy_.size()];
  double s = std::ldexp(1.0, -k_);
  auto X = [&](int v) { return (X0_ + v) * s; };
  auto Y = [&](int v) { return (Y0_ + v) * s; };
  PolyAnnulus a{rect_polygon({X(qx[1]), Y(qy[1]), X(qx[2]), Y(qy[2])}),
                rect_polygon({X(qx[0]), Y(qy[0]), X(qx[3]), Y(qy[3])}), k_};
  return a;
}

std::vector<std::size_t> DyadicFamily::children(std::size_t idx) const {
  std::size_t ix = idx / qy_.size(), iy = idx % qy_.size();
  std::vector<std::size_t> out;
  static constexpr std::array<std::array<int, 4>, 4> moves{{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}}};
  for (const auto& m : moves) {
    Quad q = qx_[ix];
    for (int t = 0; t < 4; ++t) q[t] += m[t];
    int j = quad_index(index_x_, cols_, q);
    if (j >= 0) out.push_back(static_cast<std::size_t>(j) * qy_.size() + iy);
    q = qy_[iy];
    for (int t = 0; t < 4; ++t) q[t] += m[t];
    j = quad_index(index_y_, rows_, q);
    if (j >= 0) out.push_back(ix * qy_.size() + static_cast<std::size_t>(j));
  }
  return out;
}

std::size_t CrossingFingerprint::count() const {
  std::size_t c = 0;
  for (auto w : words) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

std::string CrossingFingerprint::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < size; i += 4) {
    int v = 0;
    for (std::size_t b = 0; b < 4 && i + b < size; ++b)
      if (bit(i + b)) v |= 1 << b;
    out.push_back(digits[v]);
  }
  return out;
}

CrossingFingerprint CrossingFingerprint::from_hex(int k, std::size_t size, const std::string& hex) {
  if (hex.size() != (size + 3) / 4) throw PreconditionError("fingerprint hex length mismatch");
  CrossingFingerprint f;
  f.k = k;
  f.size = size;
  f.words.assign((size + 63) / 64, 0);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    char c = hex[i];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else throw PreconditionError("invalid hex digit in fingerprint");
    for (int b = 0; b < 4; ++b)
      if (v >> b & 1) {
        if (4 * i + b >= size) throw PreconditionError("fingerprint hex sets a bit past the end");
        f.set(4 * i + b);
      }
  }
  return f;
}

CrossingFingerprint fingerprint(const LatticeSet& s, const DyadicFamily& fam, int k_max) {
  if (fam.k() > k_max) throw CapacityError("fingerprint resolution above k_max");
  CrossingFingerprint f;
  f.k = fam.k();
  f.size = fam.size();
  f.words.assign((f.size + 63) / 64, 0);
  FastCrosser fast(s);
  for (std::size_t i = 0; i < f.size; ++i) {
    auto a = fam.annulus(i);
    IRect in, out;
    bool hit = lattice_rects(a, s.n, in, out) ? fast(in, out) : crosses_general(s, a);
    if (hit) f.set(i);
  }
  return f;
}

CrossingFingerprint fingerprint(const Config& c, int k, int k_max) {
  if (k > k_max) throw CapacityError("fingerprint resolution above k_max");
  return fingerprint(LatticeSet::from_config(c), DyadicFamily::for_geometry(k, c.geometry()), k_max);
}

std::size_t heredity_violations(const CrossingFingerprint& f, const DyadicFamily& fam) {
  if (f.size != fam.size()) throw PreconditionError("fingerprint and family sizes differ");
  std::size_t bad = 0;
  for (std::size_t i = 0; i < f.size; ++i) {
    if (!f.bit(i)) continue;
    for (auto c : fam.children(i))
      if (!f.bit(c)) ++bad;
  }
  return bad;
}

double annulus_distance(const PolyAnnulus& a, const PolyAnnulus& b) {
  auto ccw = [](Poly p) {
    double area = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      P2 u = p[i], v = p[(i + 1) % p.size()];
      area += u.x * v.y - v.x * u.y;
    }
    if (area < 0) std::reverse(p.begin(), p.end());
    return p;
  };
  return std::max(cyclic_discrete_frechet(ccw(a.inner), ccw(b.inner)),
                  cyclic_discrete_frechet(ccw(a.outer), ccw(b.outer)));
}

PolyAnnulus erode_inner(const PolyAnnulus& a, double eps) {
  Rect in, out;
  if (!as_rects(a, in, out)) throw PreconditionError("erode_inner supports rectangular annuli only");
  if (eps < 0) throw PreconditionError("erosion must be nonnegative");
  Rect grown{in.x0 - eps, in.y0 - eps, in.x1 + eps, in.y1 + eps};
  if (!(grown.x0 > out.x0 && grown.y0 > out.y0 && grown.x1 < out.x1 && grown.y1 < out.y1))
    throw PreconditionError("erosion closes the annulus");
  PolyAnnulus r = rect_annulus(grown, out);
  r.k = a.k;
  return r;
}

}  // namespace rcloop
