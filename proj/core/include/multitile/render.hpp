#pragma once

#include <string>
#include <vector>

#include "multitile/lattice.hpp"

namespace multitile {

struct RenderStyle {
  // Fill colours by coset index, cycled.
  std::vector<std::string> fills{"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2",
                                 "#edc948"};
  std::string stroke = "#222222";
  std::string background = "#ffffff";
  // Output pixels per unit length.
  int pixels_per_unit = 80;
};

// SVG 1.1 drawing of every translate P + λ meeting the window [lo, hi],
// filled by coset, with the coset points as dots. Coordinates are decimal
// approximations at 12 significant digits; output is deterministic.
std::string render_tiling(const Polytope& p, const QuasiPeriodicSet& q, const Vec& lo,
                          const Vec& hi, const RenderStyle& style = {});

}  // namespace multitile
