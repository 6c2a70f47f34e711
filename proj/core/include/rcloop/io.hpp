#pragma once

#include <string>
#include <vector>

#include "rcloop/exploration.hpp"
#include "rcloop/lattice.hpp"
#include "rcloop/loopdecomp.hpp"
#include "rcloop/percolation.hpp"

namespace rcloop {

// Library version string.
const char* version();

// Text serialization of a configuration (layout in docs/formats.md):
//   [# comment lines]
//   rcloop-config 1
//   geometry <n> <x0> <y0> <w> <h>
//   support <runs>
//   open <runs>
// Runs alternate 0-runs and 1-runs over edge slots, starting with a 0-run.
std::string config_to_rle(const Config& k, const std::string& comment = "");
// Throws PreconditionError on malformed input.
Config config_from_rle(const std::string& text);

std::string rle_encode(const std::vector<std::uint8_t>& bits);
std::vector<std::uint8_t> rle_decode(const std::string& runs, std::size_t size);

struct SvgStyle {
  double scale = 24;  // pixels per lattice unit
  double margin = 12;
};

// Loops coloured by level; open edges of `k` (if given) drawn light grey.
std::string loops_svg(const GridGeometry& g, const std::vector<LevelledLoop>& loops, const Config* k = nullptr,
                      const SvgStyle& st = {});
// gamma in black, R shaded, unexplored discs outlined.
std::string exploration_svg(const Exploration& x, const std::vector<DiscreteDisc>& unexplored,
                            const SvgStyle& st = {});

}  // namespace rcloop
