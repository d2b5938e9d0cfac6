#include "bigres/render.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "bigres/combinat.hpp"

namespace bigres {

std::string render_grid(const std::vector<std::vector<long long>>& grid) {
  if (grid.empty()) return "";
  const std::size_t cols = grid.size();
  const std::size_t rows = grid[0].size();
  std::vector<std::vector<std::string>> cells(cols);
  std::vector<std::size_t> width(cols, 0);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < rows; ++j) {
      cells[i].push_back(std::to_string(grid[i][j]));
      width[i] = std::max(width[i], cells[i].back().size());
    }
  std::string out;
  for (std::size_t r = rows; r-- > 0;) {
    out += "      | ";
    for (std::size_t i = 0; i < cols; ++i) {
      if (i > 0) out += ' ';
      out += cells[i][r];
      out.append(width[i] - cells[i][r].size(), ' ');
    }
    out += " |\n";
  }
  return out;
}

namespace {

// Points are stored doubled so that edge midpoints have integer keys.
using Key = std::pair<int, int>;

}  // namespace

std::vector<std::vector<std::pair<double, double>>> nd_boundary(BiDegree d, BiDegree box) {
  std::vector<std::pair<Key, Key>> segs;
  auto in = [&](int i, int j) { return nd(d, {i, j}) >= 1; };
  for (int i = 0; i < box.a1; ++i)
    for (int j = 0; j < box.a2; ++j) {
      const bool c00 = in(i, j), c10 = in(i + 1, j), c11 = in(i + 1, j + 1), c01 = in(i, j + 1);
      const Key bottom{2 * i + 1, 2 * j}, right{2 * i + 2, 2 * j + 1}, top{2 * i + 1, 2 * j + 2},
          left{2 * i, 2 * j + 1};
      std::vector<Key> hits;
      if (c00 != c10) hits.push_back(bottom);
      if (c10 != c11) hits.push_back(right);
      if (c11 != c01) hits.push_back(top);
      if (c01 != c00) hits.push_back(left);
      if (hits.size() == 2) {
        segs.emplace_back(hits[0], hits[1]);
      } else if (hits.size() == 4) {
        if (c00) {
          segs.emplace_back(bottom, left);
          segs.emplace_back(right, top);
        } else {
          segs.emplace_back(bottom, right);
          segs.emplace_back(top, left);
        }
      }
    }

  std::map<Key, std::vector<std::size_t>> at;
  for (std::size_t k = 0; k < segs.size(); ++k) {
    at[segs[k].first].push_back(k);
    at[segs[k].second].push_back(k);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<std::vector<std::pair<double, double>>> lines;
  auto walk = [&](Key start) {
    std::vector<std::pair<double, double>> line{{start.first / 2.0, start.second / 2.0}};
    Key cur = start;
    for (;;) {
      std::size_t next = segs.size();
      for (std::size_t k : at[cur])
        if (!used[k]) {
          next = k;
          break;
        }
      if (next == segs.size()) break;
      used[next] = true;
      cur = segs[next].first == cur ? segs[next].second : segs[next].first;
      line.emplace_back(cur.first / 2.0, cur.second / 2.0);
    }
    lines.push_back(std::move(line));
  };
  // Open chains start at an endpoint of odd degree; what remains are cycles.
  for (const auto& [key, ks] : at)
    if (ks.size() % 2 == 1 && std::any_of(ks.begin(), ks.end(), [&](std::size_t k) { return !used[k]; }))
      walk(key);
  for (const auto& [key, ks] : at)
    if (std::any_of(ks.begin(), ks.end(), [&](std::size_t k) { return !used[k]; })) walk(key);
  return lines;
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  for (const auto& p : spec.points)
    if (p.a1 < 0 || p.a2 < 0 || p.a1 > spec.box.a1 || p.a2 > spec.box.a2)
      throw std::invalid_argument("plot point (" + std::to_string(p.a1) + "," + std::to_string(p.a2) +
                                  ") lies outside the box " + spec.box.to_string());
  const double unit = 10.0, margin = 40.0;
  const double w = spec.box.a1 * unit, h = spec.box.a2 * unit;
  const double width = w + 2 * margin, height = h + 2 * margin;
  auto X = [&](double a1) { return margin + a1 * unit; };
  auto Y = [&](double a2) { return margin + h - a2 * unit; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  if (!spec.title.empty()) os << "  <title>" << spec.title << "</title>\n";
  os << "  <rect x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" fill=\"white\"/>\n";
  os << "  <g stroke=\"black\" stroke-width=\"1\">\n"
     << "    <line x1=\"" << num(X(0)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(spec.box.a1))
     << "\" y2=\"" << num(Y(0)) << "\"/>\n"
     << "    <line x1=\"" << num(X(0)) << "\" y1=\"" << num(Y(0)) << "\" x2=\"" << num(X(0)) << "\" y2=\""
     << num(Y(spec.box.a2)) << "\"/>\n"
     << "  </g>\n";
  os << "  <g font-family=\"sans-serif\" font-size=\"12\">\n"
     << "    <text x=\"" << num(X(spec.box.a1) + 8) << "\" y=\"" << num(Y(0) + 4) << "\">a1</text>\n"
     << "    <text x=\"" << num(X(0) - 6) << "\" y=\"" << num(Y(spec.box.a2) - 10) << "\">a2</text>\n"
     << "    <text x=\"" << num(X(0) - 4) << "\" y=\"" << num(Y(0) + 16) << "\">0</text>\n"
     << "    <text x=\"" << num(X(spec.box.a1) - 6) << "\" y=\"" << num(Y(0) + 16) << "\">"
     << spec.box.a1 << "</text>\n"
     << "    <text x=\"" << num(X(0) - 26) << "\" y=\"" << num(Y(spec.box.a2) + 4) << "\">" << spec.box.a2
     << "</text>\n"
     << "  </g>\n";
  os << "  <g fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\">\n";
  for (const auto& line : nd_boundary(spec.d, spec.box)) {
    os << "    <polyline points=\"";
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (k) os << ' ';
      os << num(X(line[k].first)) << ',' << num(Y(line[k].second));
    }
    os << "\"/>\n";
  }
  os << "  </g>\n";
  os << "  <g fill=\"black\">\n";
  auto pts = spec.points;
  std::sort(pts.begin(), pts.end(),
            [](const PlotPoint& a, const PlotPoint& b) { return std::tie(a.a1, a.a2) < std::tie(b.a1, b.a2); });
  for (const auto& p : pts) {
    const double cx = X(p.a1), cy = Y(p.a2), r = 4.0;
    os << "    <polygon points=\"" << num(cx) << ',' << num(cy - r) << ' ' << num(cx + r) << ',' << num(cy)
       << ' ' << num(cx) << ',' << num(cy + r) << ' ' << num(cx - r) << ',' << num(cy) << "\"><title>("
       << p.a1 << "," << p.a2 << "): " << p.beta << "</title></polygon>\n";
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

void emit_svg(const PlotSpec& spec, const std::string& path) {
  const std::string doc = render_svg(spec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc;
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace bigres
