#pragma once

#include <string>
#include <vector>

#include "bigres/bipoly.hpp"

namespace bigres {

/// Renders a grid indexed [a1][a2] with a2 decreasing down the page and a1
/// increasing to the right. Each row is "      | " + cells + " |" where the
/// cells of a column are left-justified to the widest entry of that column.
std::string render_grid(const std::vector<std::vector<long long>>& grid);

struct PlotPoint {
  int a1 = 0;
  int a2 = 0;
  long long beta = 0;
};

struct PlotSpec {
  BiDegree d;
  BiDegree box;
  std::vector<PlotPoint> points;
  std::string title;
};

/// Polylines (in grid coordinates) tracing the boundary of {a : nd(d,a) >= 1}
/// on [0,box] through cell-edge midpoints.
std::vector<std::vector<std::pair<double, double>>> nd_boundary(BiDegree d, BiDegree box);

/// Deterministic SVG 1.1 document. Throws std::invalid_argument when a point
/// lies outside the box.
std::string render_svg(const PlotSpec& spec);
/// Writes render_svg(spec) to path; throws std::runtime_error if the file
/// cannot be written.
void emit_svg(const PlotSpec& spec, const std::string& path);

}  // namespace bigres
