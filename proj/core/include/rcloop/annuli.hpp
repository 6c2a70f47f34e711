#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rcloop/frechet.hpp"
#include "rcloop/lattice.hpp"
#include "rcloop/percolation.hpp"

namespace rcloop {

// Annulus between two rectilinear simple polygons (physical coordinates,
// corners in order). inner must lie strictly inside outer.
struct PolyAnnulus {
  std::vector<P2> inner;
  std::vector<P2> outer;
  int k = -1;  // dyadic resolution tag, -1 if none
};

struct Rect {
  double x0, y0, x1, y1;
};
std::vector<P2> rect_polygon(const Rect& r);
PolyAnnulus rect_annulus(const Rect& inner, const Rect& outer);
// Sup-norm annulus {r_in <= |p - c|_inf <= r_out}.
PolyAnnulus square_annulus(double cx, double cy, double r_in, double r_out);
// Axis-aligned bounding rectangles when the polygons are rectangles.
bool as_rects(const PolyAnnulus& a, Rect& inner, Rect& outer);
// Throws PreconditionError unless both polygons are simple, rectilinear and
// strictly nested.
void validate(const PolyAnnulus& a);

// Finite union of lattice edges in doubled coordinates at mesh 1/n. Edges
// sharing an endpoint key are connected there; keys let several loops that
// share a vertex be kept apart.
struct LatticeSet {
  int n = 1;
  struct Seg {
    Pt a, b;
    int ka, kb;
  };
  std::vector<Seg> segs;

  static LatticeSet from_config(const Config& k);
  static LatticeSet from_loop(const GridGeometry& g, const std::vector<Pt>& walk);
  // Each loop gets its own endpoint keys.
  static LatticeSet from_loops(const GridGeometry& g, const std::vector<std::vector<Pt>>& loops);
};

bool crosses(const LatticeSet& s, const PolyAnnulus& a);
// Same predicate through the general clipping engine (no fast path).
bool crosses_general(const LatticeSet& s, const PolyAnnulus& a);
// Some component of s clipped to a comes within sup-distance r of both
// boundaries.
bool thick_connects(const LatticeSet& s, const PolyAnnulus& a, double r);
// Some component of s clipped to a disconnects the hole from infinity.
bool separates(const LatticeSet& s, const PolyAnnulus& a);

// a1 circulates a2: both boundaries of a1 lie in the closed annular region
// of a2 and surround the hole of a2.
bool leq_crs(const PolyAnnulus& a1, const PolyAnnulus& a2);

// Strictly nested pairs of rectangles with corners on 2^-k Z^2 inside the
// window [X0, X0+cols] x [Y0, Y0+rows] (units of 2^-k). Index order: x
// quadruple (a < c < d < b) lexicographic, then y quadruple; index =
// ix * qy + iy where outer = [a,b], inner = [c,d] on each axis.
class DyadicFamily {
 public:
  DyadicFamily() = default;
  DyadicFamily(int k, int X0, int Y0, int cols, int rows, std::size_t cap = 20'000'000);
  // Smallest dyadic window containing [xmin,xmax] x [ymin,ymax].
  static DyadicFamily covering(int k, double xmin, double ymin, double xmax, double ymax);
  static DyadicFamily for_geometry(int k, const GridGeometry& g);

  int k() const { return k_; }
  std::size_t size() const { return qx_.size() * qy_.size(); }
  PolyAnnulus annulus(std::size_t idx) const;
  // One-step covers: annuli reached by moving one side of the outer
  // rectangle inward or one side of the inner rectangle outward.
  std::vector<std::size_t> children(std::size_t idx) const;
  bool operator==(const DyadicFamily& o) const {
    return k_ == o.k_ && X0_ == o.X0_ && Y0_ == o.Y0_ && cols_ == o.cols_ && rows_ == o.rows_;
  }
  int X0() const { return X0_; }
  int Y0() const { return Y0_; }
  int cols() const { return cols_; }
  int rows() const { return rows_; }

 private:
  using Quad = std::array<int, 4>;  // a < c < d < b
  int k_ = 0, X0_ = 0, Y0_ = 0, cols_ = 0, rows_ = 0;
  std::vector<Quad> qx_, qy_;
  std::vector<int> index_x_, index_y_;  // dense lookup of quads
  int quad_index(const std::vector<int>& table, int span, const Quad& q) const;
};

struct CrossingFingerprint {
  int k = 0;
  std::size_t size = 0;
  std::vector<std::uint64_t> words;
  bool bit(std::size_t i) const { return (words[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words[i >> 6] |= std::uint64_t{1} << (i & 63); }
  std::size_t count() const;
  // Hex digit j holds bits 4j..4j+3, least significant bit first.
  std::string hex() const;
  static CrossingFingerprint from_hex(int k, std::size_t size, const std::string& hex);
  bool operator==(const CrossingFingerprint&) const = default;
};

inline constexpr int kDefaultKMax = 4;

CrossingFingerprint fingerprint(const LatticeSet& s, const DyadicFamily& fam, int k_max = kDefaultKMax);
CrossingFingerprint fingerprint(const Config& c, int k, int k_max = kDefaultKMax);
// Number of (A, child) pairs with bit(A) = 1 and bit(child) = 0.
std::size_t heredity_violations(const CrossingFingerprint& f, const DyadicFamily& fam);

// Maximum over the two boundaries of the cyclic discrete Frechet distance.
double annulus_distance(const PolyAnnulus& a, const PolyAnnulus& b);
// Inner rectangle grown by eps on every side (rectangular annuli only).
PolyAnnulus erode_inner(const PolyAnnulus& a, double eps);

}  // namespace rcloop
