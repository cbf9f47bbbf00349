#include "nse/plane2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nse/line1d.hpp"

namespace nse {

namespace {

using Vec2 = Eigen::Vector2d;

Matrix shifted_points(const PlaneRep& rep) {
  Matrix sh = rep.points;
  sh.colwise() -= rep.origin;
  return sh;
}

double point_scale(const Matrix& pts) {
  if (pts.size() == 0) return 1.0;
  return std::max(1.0, pts.cwiseAbs().maxCoeff());
}

double det2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

// --- deterministic seed mixing (same scheme as the line driver) ----------
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

// ---------------------------------------------------------------------------
// Area matrices and edge splits

AreaMatrix area_matrix(const PlaneRep& rep) {
  const Matrix sh = shifted_points(rep);
  const int n = static_cast<int>(sh.cols());
  Matrix t = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double v = det2(sh.col(i), sh.col(j));
      t(i, j) = v;
      t(j, i) = -v;
    }
  }
  return AreaMatrix{std::move(t)};
}

EdgeSplit split_edges(const PlaneRep& rep, const Graph& g, double tol_scale) {
  const Matrix sh = shifted_points(rep);
  const int n = g.node_count();
  if (static_cast<int>(sh.cols()) != n)
    throw std::invalid_argument("representation size does not match the graph");
  const double scale = point_scale(sh);
  EdgeSplit out;
  out.node_count = n;
  for (const Edge& e : g.edges()) {
    const Vec2 a = sh.col(e.i);
    const Vec2 b = sh.col(e.j);
    const double na = a.norm();
    const double nb = b.norm();
    if (na <= tol_scale * scale || nb <= tol_scale * scale)
      throw std::invalid_argument("zero shifted vector at a node of edge " +
                                  std::to_string(e.i) + "-" +
                                  std::to_string(e.j));
    const double t = det2(a, b);
    if (std::abs(t) <= tol_scale * na * nb) {
      out.degenerate.push_back(e);
    } else if (t > 0) {
      out.arcs.push_back(Arc{e.i, e.j});
    } else {
      out.arcs.push_back(Arc{e.j, e.i});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Circulations

std::optional<Circulation> positive_circulation(const EdgeSplit& split) {
  const int n = split.node_count;
  const int m = static_cast<int>(split.arcs.size());
  std::vector<std::vector<int>> out_arcs(n);  // arc indices leaving each node
  for (int a = 0; a < m; ++a) out_arcs[split.arcs[a].i].push_back(a);

  // Tarjan strongly connected components (iterative).
  std::vector<int> comp(n, -1), low(n, 0), num(n, -1), stk;
  std::vector<bool> on_stack(n, false);
  int counter = 0, ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (num[root] >= 0) continue;
    // frame: (node, next out-arc position)
    std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
    num[root] = low[root] = counter++;
    stk.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < out_arcs[v].size()) {
        const int w = split.arcs[out_arcs[v][pos++]].j;
        if (num[w] < 0) {
          num[w] = low[w] = counter++;
          stk.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
      } else {
        if (low[v] == num[v]) {
          while (true) {
            const int w = stk.back();
            stk.pop_back();
            on_stack[w] = false;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        const int child = v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().first] =
              std::min(low[frames.back().first], low[child]);
      }
    }
  }

  for (const Arc& a : split.arcs)
    if (comp[a.i] != comp[a.j]) return std::nullopt;

  // Cover every arc by a directed cycle through it: for an uncovered arc
  // (i, j), find a directed path j -> i (BFS) and add the cycle's incidence.
  Vector f = Vector::Zero(m);
  for (int a = 0; a < m; ++a) {
    if (f[a] > 0) continue;
    const int src = split.arcs[a].j;
    const int dst = split.arcs[a].i;
    std::vector<int> via(n, -1);  // arc index used to reach each node
    std::vector<bool> seen(n, false);
    std::deque<int> queue{src};
    seen[src] = true;
    bool found = (src == dst);
    while (!queue.empty() && !found) {
      const int v = queue.front();
      queue.pop_front();
      for (int b : out_arcs[v]) {
        const int w = split.arcs[b].j;
        if (seen[w]) continue;
        seen[w] = true;
        via[w] = b;
        if (w == dst) {
          found = true;
          break;
        }
        queue.push_back(w);
      }
    }
    if (!found) return std::nullopt;  // defensive; contradicts the SCC test
    f[a] += 1.0;
    for (int v = dst; v != src;) {
      const int b = via[v];
      f[b] += 1.0;
      v = split.arcs[b].i;
    }
  }
  return Circulation{std::move(f)};
}

// ---------------------------------------------------------------------------
// Assembling and decomposing nullspace members

namespace {

// Net outflow per node; a circulation must vanish here.
Vector flow_balance(const EdgeSplit& split, const Vector& f) {
  Vector net = Vector::Zero(split.node_count);
  for (int a = 0; a < static_cast<int>(split.arcs.size()); ++a) {
    net[split.arcs[a].i] += f[a];
    net[split.arcs[a].j] -= f[a];
  }
  return net;
}

// Remove the divergence of an approximate circulation by subtracting the
// minimum-norm correction B^T x with (B B^T) x = B f, where B is the
// node-arc incidence matrix.  Flows decomposed from a witness whose kernel
// is only eigenvalue-accurate carry a small imbalance that assemble would
// otherwise reject.
void project_conservation(const EdgeSplit& split, Vector& f) {
  const int n = split.node_count;
  const int na = static_cast<int>(split.arcs.size());
  if (na == 0) return;
  Matrix b = Matrix::Zero(n, na);
  for (int a = 0; a < na; ++a) {
    b(split.arcs[a].i, a) += 1.0;
    b(split.arcs[a].j, a) -= 1.0;
  }
  const Vector net = b * f;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(b * b.transpose());
  f -= b.transpose() * cod.solve(net);
}

}  // namespace

GMatrix assemble(const PlaneRep& rep, const Graph& g, const EdgeSplit& split,
                 const Circulation& f, const Vector& gneg) {
  const int m = g.edge_count();
  if (static_cast<int>(f.values.size()) != static_cast<int>(split.arcs.size()))
    throw std::invalid_argument("circulation size does not match the split");
  if (gneg.size() != static_cast<Eigen::Index>(split.degenerate.size()))
    throw std::invalid_argument("degenerate map size does not match the split");
  if (static_cast<int>(split.arcs.size() + split.degenerate.size()) != m)
    throw std::invalid_argument("split does not cover the edge set");
  const double fmax = split.arcs.empty() ? 0.0 : f.values.cwiseAbs().maxCoeff();
  const Vector net = flow_balance(split, f.values);
  if (net.size() > 0 && net.cwiseAbs().maxCoeff() > 1e-8 * std::max(1.0, fmax))
    throw std::invalid_argument("circulation violates flow conservation");

  const Matrix sh = shifted_points(rep);
  const AreaMatrix t = area_matrix(rep);
  Vector edge_values = Vector::Zero(m);
  std::vector<bool> assigned(m, false);
  auto edge_index = [&](int i, int j) {
    const auto& edges = g.edges();
    for (int e = 0; e < m; ++e) {
      if ((edges[e].i == i && edges[e].j == j) ||
          (edges[e].i == j && edges[e].j == i))
        return e;
    }
    throw std::invalid_argument("split references a non-edge");
  };
  for (int a = 0; a < static_cast<int>(split.arcs.size()); ++a) {
    const Arc& arc = split.arcs[a];
    const int e = edge_index(arc.i, arc.j);
    const double area = t.t(arc.i, arc.j);
    if (std::abs(area) < 1e-300)
      throw DegeneracyError("vanishing area on an arc");
    edge_values[e] = -f.values[a] / area;
    assigned[e] = true;
  }
  for (int d = 0; d < static_cast<int>(split.degenerate.size()); ++d) {
    const Edge& e0 = split.degenerate[d];
    const int e = edge_index(e0.i, e0.j);
    edge_values[e] = gneg[d];
    assigned[e] = true;
  }
  for (int e = 0; e < m; ++e)
    if (!assigned[e])
      throw std::invalid_argument("split does not cover the edge set");
  return complete_diagonal(g, edge_values, sh);
}

std::pair<Circulation, Vector> decompose(const PlaneRep& rep, const Graph& g,
                                         const EdgeSplit& split,
                                         const GMatrix& m, double tol_scale) {
  const Matrix sh = shifted_points(rep);
  const Matrix dense = m.to_dense();
  const double mscale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  const double residual = (sh * dense).cwiseAbs().maxCoeff();
  // Kernel vectors recovered from spectra carry eigenvalue-grade error, so
  // the gate leaves three orders of slack above the spectral tolerance.
  if (residual > 1e3 * tol_scale * mscale * point_scale(sh) *
                     static_cast<double>(g.node_count()))
    throw std::invalid_argument(
        "matrix is not annihilated by the shifted representation");
  const AreaMatrix t = area_matrix(rep);
  Vector f = Vector::Zero(static_cast<Eigen::Index>(split.arcs.size()));
  for (int a = 0; a < static_cast<int>(split.arcs.size()); ++a) {
    const Arc& arc = split.arcs[a];
    f[a] = -t.t(arc.i, arc.j) * dense(arc.i, arc.j);
  }
  Vector gmap = Vector::Zero(static_cast<Eigen::Index>(split.degenerate.size()));
  for (int d = 0; d < static_cast<int>(split.degenerate.size()); ++d)
    gmap[d] = dense(split.degenerate[d].i, split.degenerate[d].j);
  return {Circulation{std::move(f)}, std::move(gmap)};
}

// ---------------------------------------------------------------------------
// Degenerate components

int nondegenerate_components(const PlaneRep& rep, const EdgeSplit& split,
                             const Graph& g, double tol_scale) {
  const Matrix sh = shifted_points(rep);
  const int n = g.node_count();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : split.degenerate) parent[find(e.i)] = find(e.j);

  const double eps = tol_scale * point_scale(sh);
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  int count = 0;
  for (const auto& group : groups) {
    if (group.size() < 2) continue;  // isolated nodes are always degenerate
    // All points of the component lie on one line through the shift point;
    // it is degenerate exactly when they are confined to one closed side.
    int pivot = group[0];
    for (int i : group)
      if (sh.col(i).norm() > sh.col(pivot).norm()) pivot = i;
    const Vec2 dir = sh.col(pivot).normalized();
    double lo = 0.0, hi = 0.0;
    for (int i : group) {
      const double t = dir.dot(sh.col(i));
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    if (lo < -eps && hi > eps) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// The line arrangement

namespace {

struct LineSet {
  std::vector<ArrangementLine> lines;
  double scale = 1.0;
};

LineSet collect_lines(const Matrix& pts, const Graph& g, double tol_scale) {
  LineSet out;
  out.scale = point_scale(pts);
  const auto& edges = g.edges();
  for (int e = 0; e < g.edge_count(); ++e) {
    const Vec2 a = pts.col(edges[e].i);
    const Vec2 b = pts.col(edges[e].j);
    const Vec2 d = b - a;
    if (d.norm() <= tol_scale * out.scale)
      throw std::invalid_argument("adjacent points coincide on edge " +
                                  std::to_string(edges[e].i) + "-" +
                                  std::to_string(edges[e].j));
    Vec2 normal(-d.y(), d.x());
    normal.normalize();
    double offset = normal.dot(a);
    // Canonical orientation so identical lines are detected.
    if (normal.x() < 0 ||
        (std::abs(normal.x()) <= 1e-14 && normal.y() < 0)) {
      normal = -normal;
      offset = -offset;
    }
    bool merged = false;
    for (auto& line : out.lines) {
      if ((line.normal - normal).norm() <= 1e-9 &&
          std::abs(line.offset - offset) <= 1e-9 * out.scale) {
        line.edges.push_back(e);
        merged = true;
        break;
      }
    }
    if (!merged) out.lines.push_back(ArrangementLine{normal, offset, {e}});
  }
  return out;
}

double line_value(const ArrangementLine& line, const Vec2& p) {
  return line.normal.dot(p) - line.offset;
}

std::vector<int> sign_vector(const std::vector<ArrangementLine>& lines,
                             const Vec2& p, double snap) {
  std::vector<int> signs(lines.size(), 0);
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const double v = line_value(lines[k], p);
    signs[k] = (std::abs(v) <= snap) ? 0 : (v > 0 ? 1 : -1);
  }
  return signs;
}

}  // namespace

CellComplex build_complex(const PlaneRep& rep, const Graph& g,
                          double tol_scale) {
  LineSet ls = collect_lines(rep.points, g, tol_scale);
  CellComplex cplx;
  cplx.lines = ls.lines;
  const int L = static_cast<int>(cplx.lines.size());

  // 0-cells: pairwise intersections, deduplicated.
  std::vector<Vec2> verts;
  for (int a = 0; a < L; ++a) {
    for (int b = a + 1; b < L; ++b) {
      const Vec2& n1 = cplx.lines[a].normal;
      const Vec2& n2 = cplx.lines[b].normal;
      const double det = det2(n1, n2);
      if (std::abs(det) <= 1e-12) continue;  // parallel
      const Vec2 x((cplx.lines[a].offset * n2.y() - cplx.lines[b].offset * n1.y()) / det,
                   (cplx.lines[b].offset * n1.x() - cplx.lines[a].offset * n2.x()) / det);
      bool dup = false;
      for (const Vec2& v : verts)
        if ((v - x).norm() <= 1e-9 * ls.scale) {
          dup = true;
          break;
        }
      if (!dup) verts.push_back(x);
    }
  }
  std::sort(verts.begin(), verts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });

  double extent = ls.scale;
  for (const Vec2& v : verts) extent = std::max(extent, v.cwiseAbs().maxCoeff());
  const double snap = 1e-12 * std::max(1.0, extent);

  // Feature scale: smallest positive distance between vertices or from a
  // vertex to a non-incident line; bounds how far interior samples may move.
  double feature = std::max(1.0, extent);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      feature = std::min(feature, (verts[i] - verts[j]).norm());
    for (const auto& line : cplx.lines) {
      const double d = std::abs(line_value(line, verts[i]));
      if (d > snap) feature = std::min(feature, d);
    }
  }
  const double eps = std::max(0.25 * feature, 1e-9);
  const double far = 2.0 * extent + 3.0;

  // 0-cells.
  for (const Vec2& v : verts)
    cplx.cells.push_back(ArrangementCell{0, sign_vector(cplx.lines, v, snap), v});

  // 1-cells: per line, the vertices on it cut it into segments and rays.
  for (int k = 0; k < L; ++k) {
    const ArrangementLine& line = cplx.lines[k];
    const Vec2 dir(-line.normal.y(), line.normal.x());
    const Vec2 base = line.normal * line.offset;
    std::vector<double> params;
    for (const Vec2& v : verts)
      if (std::abs(line_value(line, v)) <= snap)
        params.push_back(dir.dot(v - base));
    std::sort(params.begin(), params.end());
    std::vector<Vec2> samples;
    if (params.empty()) {
      samples.push_back(base);
    } else {
      samples.push_back(base + (params.front() - far) * dir);
      for (std::size_t s = 0; s + 1 < params.size(); ++s)
        samples.push_back(base + 0.5 * (params[s] + params[s + 1]) * dir);
      samples.push_back(base + (params.back() + far) * dir);
    }
    for (const Vec2& s : samples) {
      auto signs = sign_vector(cplx.lines, s, snap);
      signs[k] = 0;  // by construction the sample lies on line k
      cplx.cells.push_back(ArrangementCell{1, std::move(signs), s});
    }
  }

  // 2-cells: interior samples around each vertex (angular bisectors of the
  // incident lines), far samples along and between lines, and a ring of far
  // directions; deduplicated by sign vector.
  std::vector<Vec2> candidates;
  for (const Vec2& v : verts) {
    std::vector<double> angles;
    for (const auto& line : cplx.lines) {
      if (std::abs(line_value(line, v)) > snap) continue;
      const Vec2 dir(-line.normal.y(), line.normal.x());
      const double th = std::atan2(dir.y(), dir.x());
      angles.push_back(th);
      angles.push_back(th > 0 ? th - M_PI : th + M_PI);
    }
    std::sort(angles.begin(), angles.end());
    for (std::size_t s = 0; s < angles.size(); ++s) {
      const double next =
          (s + 1 < angles.size()) ? angles[s + 1] : angles[0] + 2 * M_PI;
      const double mid = 0.5 * (angles[s] + next);
      candidates.push_back(v + eps * Vec2(std::cos(mid), std::sin(mid)));
    }
  }
  for (int k = 0; k < L; ++k) {
    const ArrangementLine& line = cplx.lines[k];
    const Vec2 dir(-line.normal.y(), line.normal.x());
    const Vec2 base = line.normal * line.offset;
    for (double side : {-1.0, 1.0})
      for (double along : {-1.0, 1.0})
        candidates.push_back(base + along * far * dir +
                             side * eps * line.normal);
    // Midlines between parallel neighbours catch strip cells.
    for (int k2 = k + 1; k2 < L; ++k2) {
      if (std::abs(det2(line.normal, cplx.lines[k2].normal)) > 1e-9) continue;
      const double dot = line.normal.dot(cplx.lines[k2].normal);
      const double off2 =
          dot > 0 ? cplx.lines[k2].offset : -cplx.lines[k2].offset;
      const Vec2 mbase = line.normal * (0.5 * (line.offset + off2));
      candidates.push_back(mbase + far * dir);
      candidates.push_back(mbase - far * dir);
    }
  }
  for (int s = 0; s < 24; ++s) {
    const double th = 2 * M_PI * s / 24.0 + 0.0371;
    candidates.push_back(far * Vec2(std::cos(th), std::sin(th)));
  }
  candidates.push_back(Vec2::Zero());

  std::vector<std::vector<int>> seen;
  std::vector<ArrangementCell> faces;
  for (const Vec2& c : candidates) {
    auto signs = sign_vector(cplx.lines, c, snap);
    if (std::any_of(signs.begin(), signs.end(), [](int s) { return s == 0; }))
      continue;  // not interior to a 2-cell
    if (std::find(seen.begin(), seen.end(), signs) != seen.end()) continue;
    seen.push_back(signs);
    faces.push_back(ArrangementCell{2, std::move(signs), c});
  }
  std::sort(faces.begin(), faces.end(),
            [](const ArrangementCell& a, const ArrangementCell& b) {
              return a.signs < b.signs;
            });
  for (auto& f : faces) cplx.cells.push_back(std::move(f));
  return cplx;
}

bool cells_incident(const ArrangementCell& a, const ArrangementCell& b) {
  if (a.signs.size() != b.signs.size()) return false;
  if (a.signs == b.signs) return false;
  auto in_closure = [](const ArrangementCell& d, const ArrangementCell& c) {
    for (std::size_t k = 0; k < c.signs.size(); ++k) {
      if (c.signs[k] == 0) {
        if (d.signs[k] != 0) return false;
      } else if (d.signs[k] != 0 && d.signs[k] != c.signs[k]) {
        return false;
      }
    }
    return true;
  };
  return in_closure(a, b) || in_closure(b, a);
}

int locate_cell(const CellComplex& cplx, const Vec2& p) {
  double extent = 1.0;
  for (const auto& c : cplx.cells)
    extent = std::max(extent, c.sample.cwiseAbs().maxCoeff());
  const auto signs = sign_vector(cplx.lines, p, 1e-12 * extent);
  for (int k = 0; k < static_cast<int>(cplx.cells.size()); ++k)
    if (cplx.cells[k].signs == signs) return k;
  return -1;
}

EdgeSplit cell_signature(const CellComplex& cplx, int cell,
                         const PlaneRep& rep, const Graph& g,
                         double tol_scale) {
  if (cell < 0 || cell >= static_cast<int>(cplx.cells.size()))
    throw std::invalid_argument("cell index out of range");
  const ArrangementCell& c = cplx.cells[cell];
  const Matrix& pts = rep.points;
  const double scale = point_scale(pts);
  for (int i = 0; i < static_cast<int>(pts.cols()); ++i)
    if ((Vec2(pts.col(i)) - c.sample).norm() <= tol_scale * scale)
      throw std::invalid_argument("cell contains a node point");

  // Edges on the cell's zero lines are degenerate by construction; the rest
  // orient by the sign of the area at the sample.
  std::vector<bool> on_zero_line(g.edge_count(), false);
  for (std::size_t k = 0; k < cplx.lines.size(); ++k)
    if (c.signs[k] == 0)
      for (int e : cplx.lines[k].edges) on_zero_line[e] = true;

  EdgeSplit out;
  out.node_count = g.node_count();
  const auto& edges = g.edges();
  for (int e = 0; e < g.edge_count(); ++e) {
    if (on_zero_line[e]) {
      out.degenerate.push_back(edges[e]);
      continue;
    }
    const Vec2 a = Vec2(pts.col(edges[e].i)) - c.sample;
    const Vec2 b = Vec2(pts.col(edges[e].j)) - c.sample;
    if (det2(a, b) > 0)
      out.arcs.push_back(Arc{edges[e].i, edges[e].j});
    else
      out.arcs.push_back(Arc{edges[e].j, edges[e].i});
  }
  return out;
}

std::vector<int> separating_segments(const PlaneRep& rep, const Graph& g,
                                     const CellComplex& cplx,
                                     double tol_scale) {
  const Matrix& pts = rep.points;
  const int n = g.node_count();
  const double scale = point_scale(pts);
  std::vector<int> result;
  const auto& edges = g.edges();
  for (int e = 0; e < g.edge_count(); ++e) {
    const int a = edges[e].i;
    const int b = edges[e].j;
    const Vec2 pa = pts.col(a);
    const Vec2 pb = pts.col(b);
    const Vec2 d = pb - pa;
    if (d.norm() <= tol_scale * scale) continue;
    Vec2 normal(-d.y(), d.x());
    normal.normalize();
    const double offset = normal.dot(pa);
    std::vector<int> xs, ys;
    bool valid = true;
    for (int k = 0; k < n && valid; ++k) {
      if (k == a || k == b) continue;
      const double v = normal.dot(Vec2(pts.col(k))) - offset;
      if (std::abs(v) <= tol_scale * scale)
        valid = false;  // a third point on the line: no strict two-sided split
      else if (v > 0)
        xs.push_back(k);
      else
        ys.push_back(k);
    }
    if (!valid || xs.empty() || ys.empty()) continue;
    std::vector<bool> in_x(n, false);
    for (int k : xs) in_x[k] = true;
    bool crossing_edge = false;
    for (const Edge& e2 : g.edges()) {
      const bool xi = in_x[e2.i], xj = in_x[e2.j];
      const bool yi = !xi && e2.i != a && e2.i != b;
      const bool yj = !xj && e2.j != a && e2.j != b;
      if ((xi && yj) || (xj && yi)) {
        crossing_edge = true;
        break;
      }
    }
    if (crossing_edge) continue;

    // The segment is separating; report the 1-cells between its endpoints.
    int line_id = -1;
    for (std::size_t k = 0; k < cplx.lines.size(); ++k) {
      const auto& ln = cplx.lines[k];
      const bool same = (ln.normal - normal).norm() <= 1e-9 &&
                        std::abs(ln.offset - offset) <= 1e-9 * scale;
      const bool flipped = (ln.normal + normal).norm() <= 1e-9 &&
                           std::abs(ln.offset + offset) <= 1e-9 * scale;
      if (same || flipped) {
        line_id = static_cast<int>(k);
        break;
      }
    }
    if (line_id < 0) continue;
    const Vec2 dir = d.normalized();
    const double t_end = dir.dot(pb - pa);
    for (int k = 0; k < static_cast<int>(cplx.cells.size()); ++k) {
      const ArrangementCell& c = cplx.cells[k];
      if (c.dim != 1 || c.signs[line_id] != 0) continue;
      const double t = dir.dot(c.sample - pa);
      if (t > tol_scale * scale && t < t_end - tol_scale * scale &&
          std::abs(normal.dot(c.sample) - offset) <= 1e-7 * scale)
        result.push_back(k);
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

// ---------------------------------------------------------------------------
// Shifting the origin toward a closure point

ShiftFamily shift_limit(const PlaneRep& rep, const Graph& g, const Vec2& q,
                        const GMatrix& witness, double tol_scale) {
  if (!is_well_signed(witness))
    throw std::invalid_argument("witness is not well-signed");
  const EdgeSplit split_p = split_edges(rep, g, tol_scale);
  auto [f, gmap] = decompose(rep, g, split_p, witness, tol_scale);

  const Matrix pts = rep.points;
  const Vec2 p = rep.origin;

  // q must lie in the closure of the origin's cell: no area sign may flip.
  PlaneRep repq{pts, q};
  const Matrix shp = shifted_points(rep);
  const Matrix shq = shifted_points(repq);
  const auto& edges = g.edges();
  for (const Edge& e : edges) {
    const double tp = det2(shp.col(e.i), shp.col(e.j));
    const double tq = det2(shq.col(e.i), shq.col(e.j));
    const double ep = tol_scale * shp.col(e.i).norm() * shp.col(e.j).norm();
    const double eq = tol_scale * shq.col(e.i).norm() * shq.col(e.j).norm();
    const int sp = (std::abs(tp) <= ep) ? 0 : (tp > 0 ? 1 : -1);
    const int sq = (std::abs(tq) <= eq) ? 0 : (tq > 0 ? 1 : -1);
    if ((sp == 0 && sq != 0) || (sp != 0 && sq != 0 && sq != sp))
      throw std::invalid_argument("q is not in the closure of the origin cell");
  }

  // The limit matrix keeps the witness's entries on edges degenerate at q
  // and zeroes every arc (the zero-flow member); it is not well-signed, so
  // it is built directly rather than through assemble.
  const EdgeSplit split_q = split_edges(repq, g, tol_scale);
  GMatrix limit;
  limit.graph = g;
  limit.edge_values = Vector::Zero(g.edge_count());
  {
    const Matrix wd = witness.to_dense();
    for (const Edge& e : split_q.degenerate) {
      const int k = g.edge_index(e.i, e.j);
      limit.edge_values[k] = wd(e.i, e.j);
    }
  }
  limit.diagonal = Vector::Zero(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) {
    const double norm2 = shq.col(i).squaredNorm();
    double acc = 0.0;
    for (int j : g.neighbors(i))
      acc += limit.edge_values[g.edge_index(i, j)] * shq.col(j).dot(shq.col(i));
    limit.diagonal[i] = -acc / norm2;
  }

  // The connecting path: at parameter a, origin (1-a) q + a p, flow a f,
  // degenerate entries fixed.  Areas interpolate affinely between the two
  // endpoint area matrices, which is exact and cancellation-free.
  const Matrix tp_mat = area_matrix(rep).t;
  const Matrix tq_mat = area_matrix(repq).t;
  const Matrix limit_dense = limit.to_dense();
  const Matrix witness_dense = witness.to_dense();
  const Vector fvals = f.values;
  const Vector gvals = gmap;
  const std::vector<Arc> arcs = split_p.arcs;
  const std::vector<Edge> degs = split_p.degenerate;
  const int n = g.node_count();
  std::vector<Edge> all_edges = edges;

  auto family = [=](double a) -> Matrix {
    if (a <= 0.0) return limit_dense;
    if (a >= 1.0) return witness_dense;
    const Vec2 pa = (1.0 - a) * q + a * p;
    Matrix dense = Matrix::Zero(n, n);
    for (int k = 0; k < static_cast<int>(arcs.size()); ++k) {
      const int i = arcs[k].i;
      const int j = arcs[k].j;
      const double area = a * tp_mat(i, j) + (1.0 - a) * tq_mat(i, j);
      if (std::abs(area) < 1e-300)
        throw DegeneracyError("vanishing area along the shift family");
      const double v = -a * fvals[k] / area;
      dense(i, j) = v;
      dense(j, i) = v;
    }
    for (int k = 0; k < static_cast<int>(degs.size()); ++k) {
      dense(degs[k].i, degs[k].j) = gvals[k];
      dense(degs[k].j, degs[k].i) = gvals[k];
    }
    for (int i = 0; i < n; ++i) {
      const Vec2 shi = Vec2(pts.col(i)) - pa;
      const double den = shi.squaredNorm();
      if (den < 1e-300)
        throw DegeneracyError("shift path passes through a node point");
      double acc = 0.0;
      for (const Edge& e : all_edges) {
        if (e.i != i && e.j != i) continue;
        const int j = (e.i == i) ? e.j : e.i;
        acc += dense(i, j) * (Vec2(pts.col(j)) - pa).dot(shi);
      }
      dense(i, i) = -acc / den;
    }
    return dense;
  };
  return ShiftFamily{std::move(limit), std::move(family)};
}

// ---------------------------------------------------------------------------
// Geometric outerplanarity check

OuterplanarCheck verify_outerplanar(const PlaneRep& rep, const Graph& g,
                                    double tol_scale) {
  const Matrix sh = shifted_points(rep);
  const int n = g.node_count();
  if (static_cast<int>(sh.cols()) != n)
    return {false, "representation size does not match the graph"};
  for (int i = 0; i < n; ++i)
    if (std::abs(sh.col(i).norm() - 1.0) > 1e-6)
      return {false, "node " + std::to_string(i) + " is not on the unit circle"};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((sh.col(i) - sh.col(j)).norm() <= std::max(tol_scale, 1e-9))
        return {false, "points of nodes " + std::to_string(i) + " and " +
                           std::to_string(j) + " coincide"};
  const auto& edges = g.edges();
  // No node may lie on the open chord of an edge.
  for (const Edge& e : edges) {
    const Vec2 a = sh.col(e.i), b = sh.col(e.j);
    const Vec2 d = b - a;
    for (int k = 0; k < n; ++k) {
      if (k == e.i || k == e.j) continue;
      const Vec2 x = Vec2(sh.col(k)) - a;
      if (std::abs(det2(d, x)) <= 1e-9 * d.norm() && x.dot(d) > 0 &&
          x.dot(d) < d.squaredNorm())
        return {false, "node " + std::to_string(k) + " lies on the chord of edge " +
                           std::to_string(e.i) + "-" + std::to_string(e.j)};
    }
  }
  // No two chords may cross.
  for (std::size_t x = 0; x < edges.size(); ++x) {
    for (std::size_t y = x + 1; y < edges.size(); ++y) {
      const Edge& e1 = edges[x];
      const Edge& e2 = edges[y];
      if (e1.i == e2.i || e1.i == e2.j || e1.j == e2.i || e1.j == e2.j)
        continue;  // distinct unit points sharing an endpoint cannot overlap
      const Vec2 a = sh.col(e1.i), b = sh.col(e1.j);
      const Vec2 c = sh.col(e2.i), d = sh.col(e2.j);
      const double o1 = det2(b - a, c - a);
      const double o2 = det2(b - a, d - a);
      const double o3 = det2(d - c, a - c);
      const double o4 = det2(d - c, b - c);
      const double eps = 1e-9;
      if (((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) &&
          ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps)))
        return {false, "chords of edges " + std::to_string(e1.i) + "-" +
                           std::to_string(e1.j) + " and " +
                           std::to_string(e2.i) + "-" + std::to_string(e2.j) +
                           " cross"};
    }
  }
  return {true, ""};
}

// ---------------------------------------------------------------------------
// The 2-D driver

namespace {

Certificate make_high_corank(const Graph& g, const GMatrix& m,
                             double tol_scale, std::vector<std::string> log) {
  const Matrix dense = m.to_dense();
  if (!is_well_signed(m) || !check_well_signed(g, dense, tol_scale).ok)
    throw DegeneracyError("certificate candidate is not well-signed");
  const EigenSummary es = eigen_summary(dense, tol_scale);
  if (es.n_negative != 1 || es.corank < 3)
    throw DegeneracyError("certificate candidate has the wrong signature");
  Certificate cert;
  cert.kind = CertificateKind::HighCorankMatrix;
  cert.matrix = m;
  cert.eigen = es;
  cert.embedding = Matrix::Zero(0, 0);
  cert.tolerance = tol_scale;
  cert.report = std::move(log);
  return cert;
}

// Escalation for a node whose kernel column vanishes: lowering that node's
// diagonal keeps the full kernel while pushing one eigenvalue down; the
// crossing parameter carries corank 3.
GMatrix escalate_zero_node(const GMatrix& m, int node, double tol_scale,
                           std::vector<std::string>& log) {
  const Matrix base = m.to_dense();
  double s = 1.0;
  bool found = false;
  for (int iter = 0; iter < 60; ++iter) {
    Matrix cand = base;
    cand(node, node) -= s;
    if (eigen_summary(cand, tol_scale).n_negative >= 2) {
      found = true;
      break;
    }
    s *= 2.0;
  }
  if (!found)
    throw DegeneracyError("diagonal escalation found no second negative");
  auto family = [&](double t) -> Matrix {
    Matrix cand = base;
    cand(node, node) -= t * s;
    return cand;
  };
  auto jump = corank_jump(family, 2, tol_scale);
  if (!jump)
    throw DegeneracyError("diagonal escalation family never gained corank");
  GMatrix out = m;
  out.diagonal[node] -= jump->t * s;
  log.push_back("zero kernel column at node " + std::to_string(node) +
                ": diagonal escalation reached corank 3");
  return out;
}

// Escalation for coincident kernel points: fade the edges inside the
// coincidence class.  At a shifted origin separated from the remaining
// points the faded matrix must lose an eigenvalue, and the crossing
// parameter carries corank 3.
struct CoincidenceClasses {
  std::vector<std::vector<int>> classes;  // size >= 2 each
};

CoincidenceClasses coincidence_classes(const Matrix& pts, double ctol) {
  const int n = static_cast<int>(pts.cols());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((pts.col(i) - pts.col(j)).norm() <= ctol) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  CoincidenceClasses out;
  for (auto& gset : groups)
    if (gset.size() >= 2) out.classes.push_back(std::move(gset));
  return out;
}

std::optional<GMatrix> fade_internal_edges(const Graph& g, const GMatrix& m,
                                           const std::vector<int>& cls,
                                           double tol_scale) {
  std::vector<bool> in_cls(g.node_count(), false);
  for (int i : cls) in_cls[i] = true;
  std::vector<int> internal;
  const auto& edges = g.edges();
  for (int e = 0; e < g.edge_count(); ++e)
    if (in_cls[edges[e].i] && in_cls[edges[e].j]) internal.push_back(e);
  if (internal.empty()) return std::nullopt;

  const Matrix base = m.to_dense();
  auto family = [&](double a) -> Matrix {
    Matrix dense = base;
    for (int e : internal) {
      const int i = edges[e].i;
      const int j = edges[e].j;
      const double v = base(i, j);
      dense(i, j) = (1.0 - a) * v;
      dense(j, i) = (1.0 - a) * v;
      dense(i, i) += a * v;
      dense(j, j) += a * v;
    }
    return dense;
  };
  auto jump = corank_jump(family, 2, tol_scale);
  if (!jump) return std::nullopt;
  const double t = jump->t;
  GMatrix out = m;
  for (int e : internal) {
    const int i = edges[e].i;
    const int j = edges[e].j;
    const double v = out.edge_values[e];
    out.edge_values[e] = (1.0 - t) * v;
    out.diagonal[i] += t * v;
    out.diagonal[j] += t * v;
  }
  return out;
}

GMatrix escalate_coincidence(const Graph& g, const GMatrix& m,
                             const Matrix& pts,
                             const CoincidenceClasses& classes,
                             double tol_scale, int& budget,
                             std::vector<std::string>& log) {
  const int n = g.node_count();
  for (const auto& cls : classes.classes) {
    if (budget <= 0) break;
    --budget;
    // Variant A: fade the internal edges at the current origin.
    if (auto out = fade_internal_edges(g, m, cls, tol_scale)) {
      const EigenSummary es = eigen_summary(out->to_dense(), tol_scale);
      if (es.n_negative == 1 && es.corank >= 3 && is_well_signed(*out)) {
        log.push_back("coincident class of " + std::to_string(cls.size()) +
                      " nodes: edge fading reached corank 3");
        return *out;
      }
    }
    // Variant B: shift the origin past the class point, rebuild a witness
    // there, and fade again; separation makes the crossing unavoidable.
    const Vec2 v = pts.col(cls[0]);
    double maxcos = -1.0;
    std::vector<bool> in_cls(n, false);
    for (int i : cls) in_cls[i] = true;
    for (int k = 0; k < n; ++k)
      if (!in_cls[k]) maxcos = std::max(maxcos, v.dot(Vec2(pts.col(k))));
    if (maxcos >= 1.0 - 1e-9) continue;
    for (double shrink : {2.0, 8.0, 32.0}) {
      const double delta = (1.0 - maxcos) / shrink;
      PlaneRep rep{pts, (1.0 - delta) * v};
      EdgeSplit split;
      try {
        split = split_edges(rep, g, tol_scale);
      } catch (const std::invalid_argument&) {
        continue;
      }
      auto f = positive_circulation(split);
      if (!f) continue;
      const Vector gneg = Vector::Constant(
          static_cast<Eigen::Index>(split.degenerate.size()), -1.0);
      GMatrix witness = assemble(rep, g, split, *f, gneg);
      const EigenSummary ew = eigen_summary(witness.to_dense(), tol_scale);
      if (ew.n_negative != 1 || ew.corank < 2) continue;
      if (ew.corank >= 3 && is_well_signed(witness)) {
        log.push_back("coincident class: shifted witness already had corank 3");
        return witness;
      }
      if (auto out = fade_internal_edges(g, witness, cls, tol_scale)) {
        const EigenSummary es = eigen_summary(out->to_dense(), tol_scale);
        if (es.n_negative == 1 && es.corank >= 3 && is_well_signed(*out)) {
          log.push_back("coincident class of " + std::to_string(cls.size()) +
                        " nodes: shifted edge fading reached corank 3");
          return *out;
        }
      }
    }
  }
  throw DegeneracyError("coincidence escalation failed");
}

struct ChordCrossing {
  int e1 = 0;
  int e2 = 0;
  Vec2 point = Vec2::Zero();
};

std::vector<ChordCrossing> chord_crossings(const Matrix& pts, const Graph& g,
                                           double eps) {
  std::vector<ChordCrossing> out;
  const auto& edges = g.edges();
  for (int x = 0; x < g.edge_count(); ++x) {
    for (int y = x + 1; y < g.edge_count(); ++y) {
      const Edge& e1 = edges[x];
      const Edge& e2 = edges[y];
      if (e1.i == e2.i || e1.i == e2.j || e1.j == e2.i || e1.j == e2.j)
        continue;
      const Vec2 a = pts.col(e1.i), b = pts.col(e1.j);
      const Vec2 c = pts.col(e2.i), d = pts.col(e2.j);
      const double o1 = det2(b - a, c - a);
      const double o2 = det2(b - a, d - a);
      const double o3 = det2(d - c, a - c);
      const double o4 = det2(d - c, b - c);
      if (((o1 > eps && o2 < -eps) || (o1 < -eps && o2 > eps)) &&
          ((o3 > eps && o4 < -eps) || (o3 < -eps && o4 > eps))) {
        const double denom = det2(b - a, d - c);
        if (std::abs(denom) <= eps) continue;
        const double s = det2(c - a, d - c) / denom;
        out.push_back(ChordCrossing{x, y, a + s * (b - a)});
      }
    }
  }
  return out;
}

// Walk the origin from 0 toward the crossing point q, rebuilding a witness
// in every cell the segment passes through.  Witnesses keep one negative
// eigenvalue only while the shift point stays in the region reachable from
// the original origin; the walk stops at the last cell where that holds
// (at the latest next to q, whose own split has two straddling components,
// which caps the shifted witnesses at two or more negative eigenvalues).
// The shift family from the stop cell toward the first unreachable
// boundary point pins the two-dimensional kernel while its tracked third
// eigenvalue reaches zero — at an interior corank jump or in the zero-flow
// limit, whose corank is at least n minus the nodes on the boundary line —
// and the bisected jump point is the corank-3 member.
GMatrix escalate_crossing(const Graph& g, const GMatrix& m, const Matrix& pts,
                          const ChordCrossing& crossing, double tol_scale,
                          std::vector<std::string>& log) {
  const Vec2 q = crossing.point;
  LineSet ls = collect_lines(pts, g, tol_scale);

  std::vector<double> roots;
  for (const auto& line : ls.lines) {
    const double denom = line.normal.dot(q);
    if (std::abs(denom) <= 1e-13) continue;  // the segment stays parallel
    const double t = line.offset / denom;
    if (t > 1e-9 && t < 1.0 - 1e-9) roots.push_back(t);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              roots.end());

  GMatrix witness = m;
  Vec2 origin = Vec2::Zero();
  double target_t = 1.0;
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const double lo = roots[k];
    const double hi = (k + 1 < roots.size()) ? roots[k + 1] : 1.0;
    const Vec2 pm = 0.5 * (lo + hi) * q;
    bool good = false;
    try {
      PlaneRep rep{pts, pm};
      EdgeSplit split = split_edges(rep, g, tol_scale);
      if (auto f = positive_circulation(split)) {
        const Vector gneg = Vector::Constant(
            static_cast<Eigen::Index>(split.degenerate.size()), -1.0);
        GMatrix cand = assemble(rep, g, split, *f, gneg);
        const EigenSummary es = eigen_summary(cand.to_dense(), tol_scale);
        if (es.n_negative == 1 && es.corank >= 3 && is_well_signed(cand)) {
          log.push_back("origin walk found a corank-3 witness en route");
          return cand;
        }
        if (es.n_negative == 1) {
          witness = cand;
          origin = pm;
          good = true;
        }
      }
    } catch (const std::invalid_argument&) {
    } catch (const DegeneracyError&) {
    }
    if (!good) {
      target_t = roots[k];
      break;
    }
  }

  const Vec2 target = target_t * q;
  PlaneRep rep{pts, origin};
  ShiftFamily sf = [&] {
    try {
      return shift_limit(rep, g, target, witness, tol_scale);
    } catch (const std::invalid_argument& err) {
      throw DegeneracyError(std::string("shift toward crossing failed: ") +
                            err.what());
    }
  }();
  auto family = [&](double t) { return sf.family(1.0 - t); };
  auto jump = corank_jump(family, 2, tol_scale);
  if (!jump)
    throw DegeneracyError("shift family toward the crossing never jumped");
  auto out = gmatrix_from_dense(g, jump->matrix, tol_scale);
  if (!out)
    throw DegeneracyError("shift family jump left the well-signed class");
  log.push_back("crossing chords: shift family reached corank 3 at the "
                "boundary of the reachable region");
  return *out;
}

Certificate plane_attempt(const Graph& g, const PlaneOptions& opts,
                          int attempt) {
  std::vector<std::string> log;
  if (attempt > 0)
    log.push_back("restart " + std::to_string(attempt) +
                  " with randomized preparation");

  LineOptions lo;
  lo.tol_scale = opts.tol_scale;
  lo.seed = mix_seed(opts.seed, 0x2d00 + attempt);
  lo.max_restarts = 3;
  lo.start_attempt = attempt == 0 ? 0 : 1;
  Certificate base = embed_line(g, lo);
  if (base.kind != CertificateKind::HighCorankMatrix)
    throw DegeneracyError("line stage did not produce a matrix witness");
  log.push_back("line stage produced a witness of corank " +
                std::to_string(base.eigen.corank));

  GMatrix m = base.matrix;
  int budget = opts.max_rounds;

  const EigenSummary es = eigen_summary(m.to_dense(), opts.tol_scale);
  if (es.n_negative != 1)
    throw DegeneracyError("witness does not have one negative eigenvalue");
  if (es.corank >= 3) return make_high_corank(g, m, opts.tol_scale, log);

  Matrix u = nullspace_rep(m, opts.tol_scale);
  if (u.rows() != 2) throw DegeneracyError("kernel is not two-dimensional");

  // Zero kernel columns escalate directly.
  const double uscale = u.cwiseAbs().maxCoeff();
  for (int i = 0; i < g.node_count(); ++i) {
    if (u.col(i).norm() <= 1e3 * opts.tol_scale * std::max(1.0, uscale)) {
      GMatrix out = escalate_zero_node(m, i, opts.tol_scale, log);
      return make_high_corank(g, out, opts.tol_scale, log);
    }
  }

  NormalizedRep normalized = normalize_rep(u, m);
  const Matrix& pts = normalized.points;
  GMatrix mn = normalized.matrix;

  // Re-fit the matrix to the normalized representation: the rescaled kernel
  // carries eigenvalue-grade error, while downstream corank tracking needs
  // the representation pinned to machine precision.  Decomposing, projecting
  // the flow onto conservation, and reassembling does exactly that.
  try {
    PlaneRep rep0{pts};
    EdgeSplit split0 = split_edges(rep0, g, opts.tol_scale);
    auto [f0, gm0] = decompose(rep0, g, split0, mn, opts.tol_scale);
    project_conservation(split0, f0.values);
    GMatrix snapped = assemble(rep0, g, split0, f0, gm0);
    const EigenSummary esn = eigen_summary(snapped.to_dense(), opts.tol_scale);
    if (esn.n_negative == 1 && esn.corank >= 2 && is_well_signed(snapped))
      mn = snapped;
  } catch (const std::invalid_argument&) {
  } catch (const DegeneracyError&) {
  }

  // Coincident points escalate by fading the internal edges.
  CoincidenceClasses classes =
      coincidence_classes(pts, 1e3 * opts.tol_scale);
  if (!classes.classes.empty()) {
    log.push_back("nullspace points coincide for " +
                  std::to_string(classes.classes.size()) + " class(es)");
    GMatrix out = escalate_coincidence(g, mn, pts, classes, opts.tol_scale,
                                       budget, log);
    return make_high_corank(g, out, opts.tol_scale, log);
  }

  // Crossing chords escalate by walking the origin to the crossing point.
  std::vector<ChordCrossing> crossings =
      chord_crossings(pts, g, opts.tol_scale);
  if (!crossings.empty()) {
    log.push_back(std::to_string(crossings.size()) +
                  " chord crossing(s) detected");
    std::string last = "no crossing explored";
    for (const ChordCrossing& c : crossings) {
      if (budget <= 0) break;
      --budget;
      try {
        GMatrix out = escalate_crossing(g, mn, pts, c, opts.tol_scale, log);
        return make_high_corank(g, out, opts.tol_scale, log);
      } catch (const DegeneracyError& err) {
        last = err.what();
      }
    }
    throw DegeneracyError("crossing escalation failed: " + last);
  }

  OuterplanarCheck check = verify_outerplanar(PlaneRep{pts}, g, opts.tol_scale);
  if (!check.ok)
    throw DegeneracyError("embedding check failed: " + check.detail);
  log.push_back("nullspace points form an outerplanar embedding");

  Certificate cert;
  cert.kind = CertificateKind::OuterplanarEmbedding;
  cert.matrix = mn;
  cert.eigen = eigen_summary(mn.to_dense(), opts.tol_scale);
  cert.embedding = pts;
  cert.tolerance = opts.tol_scale;
  cert.report = std::move(log);
  return cert;
}

}  // namespace

Certificate embed_plane(const Graph& g, const PlaneOptions& opts) {
  if (g.node_count() < 3 || !is_biconnected(g))
    throw std::invalid_argument("graph must be 2-connected");
  std::string last;
  for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
    try {
      return plane_attempt(g, opts, attempt);
    } catch (const DegeneracyError& err) {
      last = err.what();
    } catch (const std::invalid_argument& err) {
      // Numerical corner cases inside an attempt restart like degeneracies.
      last = err.what();
    }
  }
  throw DegeneracyError("plane embedding failed after restarts: " + last);
}

}  // namespace nse
