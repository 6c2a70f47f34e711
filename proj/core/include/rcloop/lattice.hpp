#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rcloop/error.hpp"

namespace rcloop {

// Point in doubled integer coordinates: primal vertices are (even, even),
// dual vertices (face centres) are (odd, odd).
struct Pt {
  int x = 0;
  int y = 0;
  auto operator<=>(const Pt&) const = default;
};

inline bool is_primal(Pt p) { return (p.x & 1) == 0 && (p.y & 1) == 0; }
inline bool is_dual(Pt p) { return (p.x & 1) != 0 && (p.y & 1) != 0; }
inline bool are_neighbors(Pt a, Pt b) {
  int dx = a.x - b.x, dy = a.y - b.y;
  return (dx == 0 && (dy == 2 || dy == -2)) || (dy == 0 && (dx == 2 || dx == -2));
}

// Directions: 0 = +x, 1 = +y, 2 = -x, 3 = -y.
inline constexpr std::array<int, 4> kDx{2, 0, -2, 0};
inline constexpr std::array<int, 4> kDy{0, 2, 0, -2};
inline Pt step(Pt p, int dir) { return {p.x + kDx[dir & 3], p.y + kDy[dir & 3]}; }
int direction(Pt from, Pt to);  // throws PreconditionError if not neighbours

// An edge is its midpoint plus a lattice flag. A primal edge and the dual
// edge crossing it share the midpoint.
struct Edge {
  Pt mid;
  bool dual = false;
  auto operator<=>(const Edge&) const = default;
};

Edge edge_between(Pt a, Pt b);
std::pair<Pt, Pt> endpoints(const Edge& e);  // ordered lexicographically
inline Edge dual_of(const Edge& e) { return {e.mid, !e.dual}; }

// Finite window of delta Z^2 with delta = 1/n. Primal vertices are lattice
// points (x0+i, y0+j), 0<=i<=w, 0<=j<=h (lattice units). Faces are the unit
// cells with lower-left corner (x0-1+i, y0-1+j), 0<=i<=w+1, 0<=j<=h+1, i.e.
// one ring beyond the window so that dual discs fit.
struct GridGeometry {
  int n = 1;
  int x0 = 0, y0 = 0, w = 1, h = 1;

  bool operator==(const GridGeometry&) const = default;

  int num_vertices() const { return (w + 1) * (h + 1); }
  int edge_slots() const { return 2 * num_vertices(); }
  int num_faces() const { return (w + 2) * (h + 2); }

  bool has_vertex(Pt p) const;
  int vertex_id(Pt p) const;  // throws BoundsError
  Pt vertex(int id) const;

  // Edge id = 2*vertex_id(lower endpoint) + (0 for +y, 1 for +x); this is the
  // lexicographic order of (min endpoint, max endpoint).
  bool valid_edge_id(int id) const;
  bool has_edge(const Edge& e) const;
  int edge_id(const Edge& e) const;  // throws BoundsError
  Edge edge(int id) const;
  std::pair<int, int> edge_vertex_ids(int id) const;
  int edge_from(int vid, int dir) const;  // -1 outside the window
  int neighbor(int vid, int dir) const;   // -1 outside the window

  bool has_face(Pt c) const;
  int face_id(Pt c) const;  // throws BoundsError
  Pt face(int id) const;
  // The two faces on either side of a primal edge.
  std::pair<Pt, Pt> faces_of(int edge_id) const;

  // Dual edge crossing primal edge `id`; throws BoundsError when invalid.
  Edge dual_edge(int id) const;

  double coord(int doubled) const { return doubled / (2.0 * n); }
};

// Subgraph of the window: vertex and edge membership bits.
class Subgraph {
 public:
  Subgraph() = default;
  explicit Subgraph(const GridGeometry& g);
  static Subgraph full(const GridGeometry& g);

  const GridGeometry& geometry() const { return g_; }
  bool has_vertex(int vid) const { return v_[vid] != 0; }
  bool has_edge(int eid) const { return e_[eid] != 0; }
  void set_vertex(int vid, bool on = true) { v_[vid] = on; }
  void set_edge(int eid, bool on = true);
  // Adds the edge and both endpoints.
  void add_edge_with_ends(int eid);

  std::vector<int> vertex_ids() const;
  std::vector<int> edge_ids() const;
  int num_vertices() const;
  int num_edges() const;
  bool empty() const { return num_vertices() == 0 && num_edges() == 0; }

  const std::vector<std::uint8_t>& vertex_bits() const { return v_; }
  const std::vector<std::uint8_t>& edge_bits() const { return e_; }

  bool operator==(const Subgraph&) const = default;

 private:
  GridGeometry g_{};
  std::vector<std::uint8_t> v_;
  std::vector<std::uint8_t> e_;
};

Subgraph unite(const Subgraph& a, const Subgraph& b);
// (V(a) \ V(b), E(a) \ E(b)).
Subgraph subtract(const Subgraph& a, const Subgraph& b);
bool is_subgraph(const Subgraph& a, const Subgraph& b);  // a inside b

// Inner boundary: vertices of g with a lattice neighbour outside V(g).
std::vector<int> boundary(const Subgraph& g);

enum class LoopClass { simple, weakly_simple, non_self_crossing, general };
enum class Orientation { ccw, cw, undefined };
const char* to_string(LoopClass c);
const char* to_string(Orientation o);

struct LoopInfo {
  LoopClass cls = LoopClass::general;
  Orientation orientation = Orientation::undefined;
};

// Closed lattice walk x_0..x_{n-1} (x_n = x_0 implicit).
struct DiscreteLoop {
  std::vector<Pt> pts;
  LoopClass cls = LoopClass::general;
  Orientation orientation = Orientation::undefined;
};

// Accepts the walk with or without the repeated closing point. Works on the
// primal or dual lattice. Throws PreconditionError on a non-neighbour step.
LoopInfo classify_loop(const std::vector<Pt>& walk);
DiscreteLoop make_loop(std::vector<Pt> walk);
std::vector<Pt> open_walk(const std::vector<Pt>& walk);  // drops closing point
std::vector<Edge> loop_edges(const std::vector<Pt>& walk);
long long signed_area2(const std::vector<Pt>& walk);  // twice the area, doubled units
// Winding number of p around the walk; p must have the opposite lattice
// parity to the walk's vertices.
int winding_number(const std::vector<Pt>& walk, Pt p);
bool same_up_to_rotation(const std::vector<Pt>& a, const std::vector<Pt>& b);
// Rotates so that the walk starts at its smallest vertex (ties broken by the
// following vertex).
std::vector<Pt> canonical_rotation(const std::vector<Pt>& walk);
std::vector<Pt> reversed(const std::vector<Pt>& walk);
double diameter(const std::vector<Pt>& walk);  // Euclidean, doubled units

bool surrounds(const std::vector<Pt>& dual_loop, const std::vector<Pt>& l);

// Outer boundary walk of the connected piece of a planar lattice graph that
// contains `start`, which must be the lexicographically smallest vertex of
// that piece. Traced counterclockwise with the piece on the left, taking the
// rightmost available turn. `has_edge(a, b)` reports adjacency.
template <class HasEdge>
std::vector<Pt> trace_outer(Pt start, HasEdge has_edge) {
  std::vector<Pt> walk{start};
  int heading = 3;
  int first_dir = -1;
  Pt cur = start;
  for (std::size_t guard = 0;; ++guard) {
    int chosen = -1;
    for (int k : {3, 0, 1, 2}) {  // right, straight, left, back
      int d = (heading + k) & 3;
      if (has_edge(cur, step(cur, d))) {
        chosen = d;
        break;
      }
    }
    if (chosen < 0) return walk;  // isolated vertex
    if (cur == start && first_dir == chosen) break;
    if (first_dir < 0) first_dir = chosen;
    cur = step(cur, chosen);
    heading = chosen;
    walk.push_back(cur);
    if (guard > (1u << 26)) throw InvariantError("trace_outer did not close");
  }
  walk.pop_back();
  return walk;
}

struct DomainSpec {
  // Rectilinear polygon corners in physical coordinates, in order. A
  // rectangle [x0,x1]x[y0,y1] is given by its four corners.
  std::vector<std::pair<double, double>> corners;
  static DomainSpec rectangle(double x0, double y0, double x1, double y1);
};

// Disc made of closed unit cells (possibly degenerate: no cells, a tree of
// edges, a single vertex) together with its dual disc.
struct DiscreteDisc {
  Subgraph graph;
  std::vector<std::uint8_t> cells;         // per face id
  std::vector<Pt> boundary_loop;           // outer walk, counterclockwise
  std::vector<std::uint8_t> dual_vertices; // faces of K*
  std::vector<std::uint8_t> dual_boundary; // faces of the surrounding circuit
  std::vector<Pt> dual_boundary_loop;
  const GridGeometry& geometry() const { return graph.geometry(); }
};

DiscreteDisc disc_from_cells(const GridGeometry& g, const std::vector<std::uint8_t>& cells);
// Builds the disc structure for an arbitrary connected subgraph; cells are the
// faces with all four edges present. Throws InvariantError if `graph` is not
// the closed region of its outer boundary walk.
DiscreteDisc disc_from_subgraph(const Subgraph& graph);
// Largest edge-connected union of closed cells inside the domain.
DiscreteDisc discretize_domain(const DomainSpec& spec, int n);
DiscreteDisc square_disc(int cells_x, int cells_y, int n = 0);

// Disc certificate: connected, outer walk non-self-crossing (or a single
// vertex), and the graph equals the closed region of the walk.
bool certify_disc(const Subgraph& graph);

// Per face id, the winding number of the walk around that face centre.
std::vector<int> face_winding(const GridGeometry& g, const std::vector<Pt>& walk);
// Closed region [l]: vertices on or inside, edges on or inside.
Subgraph closed_region(const GridGeometry& g, const std::vector<Pt>& walk);

}  // namespace rcloop
