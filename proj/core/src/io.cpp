#include "rcloop/io.hpp"

#include <cstdio>
#include <sstream>

namespace rcloop {

std::string rle_encode(const std::vector<std::uint8_t>& bits) {
  std::ostringstream os;
  std::uint8_t cur = 0;
  std::size_t run = 0;
  bool first = true;
  auto flush = [&] {
    if (!first) os << ' ';
    os << run;
    first = false;
  };
  for (auto b : bits) {
    std::uint8_t v = b ? 1 : 0;
    if (v != cur) {
      flush();
      cur = v;
      run = 0;
    }
    ++run;
  }
  flush();
  return os.str();
}

std::vector<std::uint8_t> rle_decode(const std::string& runs, std::size_t size) {
  std::istringstream is(runs);
  std::vector<std::uint8_t> out;
  out.reserve(size);
  std::uint8_t cur = 0;
  long long run;
  while (is >> run) {
    if (run < 0 || out.size() + static_cast<std::size_t>(run) > size) throw PreconditionError("rle: run overflows");
    out.insert(out.end(), static_cast<std::size_t>(run), cur);
    cur ^= 1;
  }
  if (!is.eof()) throw PreconditionError("rle: non-numeric run");
  if (out.size() != size) throw PreconditionError("rle: runs do not cover all edge slots");
  return out;
}

const char* version() { return RCLOOP_VERSION_STRING; }

std::string config_to_rle(const Config& k, const std::string& comment) {
  const auto& g = k.geometry();
  std::ostringstream os;
  if (!comment.empty()) os << "# " << comment << '\n';
  os << "rcloop-config 1\n";
  os << "geometry " << g.n << ' ' << g.x0 << ' ' << g.y0 << ' ' << g.w << ' ' << g.h << '\n';
  os << "support " << rle_encode(k.support().edge_bits()) << '\n';
  os << "open " << rle_encode(k.bits()) << '\n';
  return os.str();
}

Config config_from_rle(const std::string& text) {
  std::istringstream is(text);
  std::string line, tag;
  auto next = [&](const char* want) {
    do {
      if (!std::getline(is, line)) throw PreconditionError(std::string("rle: missing '") + want + "' line");
    } while (!line.empty() && line[0] == '#');
    std::istringstream ls(line);
    ls >> tag;
    if (tag != want) throw PreconditionError(std::string("rle: expected '") + want + "'");
    std::string rest;
    std::getline(ls, rest);
    return rest;
  };
  if (next("rcloop-config") != " 1") throw PreconditionError("rle: unsupported version");
  GridGeometry g;
  {
    std::istringstream gs(next("geometry"));
    if (!(gs >> g.n >> g.x0 >> g.y0 >> g.w >> g.h) || g.n < 1 || g.w < 0 || g.h < 0)
      throw PreconditionError("rle: bad geometry");
    std::string extra;
    if (gs >> extra) throw PreconditionError("rle: bad geometry");
    if (static_cast<long long>(g.w + 1) * (g.h + 1) > (1LL << 28)) throw PreconditionError("rle: geometry too large");
  }
  const auto slots = static_cast<std::size_t>(g.edge_slots());
  auto support = rle_decode(next("support"), slots);
  auto open = rle_decode(next("open"), slots);
  Subgraph s(g);
  for (std::size_t e = 0; e < slots; ++e)
    if (support[e]) {
      if (!g.valid_edge_id(static_cast<int>(e))) throw PreconditionError("rle: support uses an invalid edge slot");
      s.add_edge_with_ends(static_cast<int>(e));
    }
  Config k(s);
  for (std::size_t e = 0; e < slots; ++e)
    if (open[e]) {
      if (!support[e]) throw PreconditionError("rle: open edge outside the support");
      k.set_open(static_cast<int>(e));
    }
  return k;
}

namespace {

const char* kLevelColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};

struct Canvas {
  const GridGeometry& g;
  SvgStyle st;
  std::ostringstream os;

  double X(int doubled) const { return st.margin + (doubled / 2.0 - g.x0 + 1) * st.scale; }
  double Y(int doubled) const { return st.margin + (g.y0 + g.h + 1 - doubled / 2.0) * st.scale; }

  void open() {
    double w = 2 * st.margin + (g.w + 2) * st.scale, h = 2 * st.margin + (g.h + 2) * st.scale;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", w, h,
                  w, h);
    os << buf << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  }
  void edge(int eid, const char* colour, double width) {
    auto e = g.edge(eid);
    auto [a, b] = endpoints(e);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" stroke-width=\"%g\" "
                  "stroke-linecap=\"round\"/>\n",
                  X(a.x), Y(a.y), X(b.x), Y(b.y), colour, width);
    os << buf;
  }
  void polyline(const std::vector<Pt>& pts, const char* stroke, const char* fill, double width) {
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%g,%g", i ? " " : "", X(pts[i].x), Y(pts[i].y));
      os << buf;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "\" stroke=\"%s\" fill=\"%s\" stroke-width=\"%g\" stroke-linejoin=\"round\"/>\n",
                  stroke, fill, width);
    os << buf;
  }
  std::string close() {
    os << "</svg>\n";
    return os.str();
  }
};

}  // namespace

std::string loops_svg(const GridGeometry& g, const std::vector<LevelledLoop>& loops, const Config* k,
                      const SvgStyle& st) {
  Canvas c{g, st, {}};
  c.open();
  if (k)
    for (int e : k->open_edges()) c.edge(e, "#cccccc", st.scale * 0.25);
  for (const auto& l : loops) {
    const char* colour = kLevelColours[(l.level > 0 ? l.level - 1 : 0) % 7];
    c.os << "<g class=\"level-" << l.level << "\">\n";
    for (int e : walk_edge_ids(g, l.pts)) c.edge(e, colour, st.scale * 0.12);
    c.os << "</g>\n";
  }
  return c.close();
}

std::string exploration_svg(const Exploration& x, const std::vector<DiscreteDisc>& unexplored, const SvgStyle& st) {
  const auto& g = x.ctx.D.geometry();
  Canvas c{g, st, {}};
  c.open();
  for (int e : x.ctx.D.graph.edge_ids()) c.edge(e, "#eeeeee", st.scale * 0.06);
  for (int e : x.R.edge_ids()) c.edge(e, "#9ecae1", st.scale * 0.3);
  for (int e : x.state.open_edges()) c.edge(e, "#3182bd", st.scale * 0.12);
  for (const auto& d : unexplored)
    if (d.boundary_loop.size() > 1) c.polyline(d.boundary_loop, "#e6550d", "none", st.scale * 0.08);
  c.polyline(x.ctx.gamma, "black", "none", st.scale * 0.1);
  return c.close();
}

}  // namespace rcloop
