#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nse/gmatrix.hpp"
#include "nse/graph.hpp"
#include "nse/spectra.hpp"

namespace nse {

// A planar representation u: V -> R^2 together with the current shift
// point.  Operations act on the shifted vectors u_i - origin.
struct PlaneRep {
  Matrix points;  // 2 x n, one column per node
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();
};

// Skew-symmetric matrix of signed parallelogram areas of the shifted
// vectors: t(i, j) = det(u_i - p, u_j - p).
struct AreaMatrix {
  Matrix t;
};

// One edge of the graph oriented counterclockwise as seen from the
// shift point.
struct Arc {
  int i = 0;
  int j = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Partition of the edge set by the shifted representation: arcs carry
// positive area, degenerate edges lie on a line through the shift point.
struct EdgeSplit {
  int node_count = 0;
  std::vector<Arc> arcs;        // oriented, t(i, j) > 0
  std::vector<Edge> degenerate; // t(i, j) = 0
};

// Flow values per arc of an EdgeSplit (extended skew-symmetrically);
// conservation holds at every node.
struct Circulation {
  Vector values;  // aligned with EdgeSplit::arcs
};

AreaMatrix area_matrix(const PlaneRep& rep);

// Classifies every edge of g as an arc or as degenerate for the shifted
// representation.  Throws std::invalid_argument on a zero shifted vector.
EdgeSplit split_edges(const PlaneRep& rep, const Graph& g,
                      double tol_scale = 1e-9);

// A strictly positive conserving flow on the arcs, built as a sum of
// directed-cycle incidence vectors; absent when some component of the
// arc digraph is not strongly connected.
std::optional<Circulation> positive_circulation(const EdgeSplit& split);

// The matrix with entries -f_ij / t_ij on arcs, gneg on degenerate
// edges, and the unique diagonal that makes the shifted representation
// annihilate it.  Throws std::invalid_argument when f violates flow
// conservation.
GMatrix assemble(const PlaneRep& rep, const Graph& g, const EdgeSplit& split,
                 const Circulation& f, const Vector& gneg);

// Inverse of assemble on matrices annihilated by the shifted
// representation: recovers the circulation and the degenerate-edge map.
std::pair<Circulation, Vector> decompose(const PlaneRep& rep, const Graph& g,
                                         const EdgeSplit& split,
                                         const GMatrix& m,
                                         double tol_scale = 1e-9);

// Number of connected components of the degenerate-edge graph whose
// shifted points are not contained in one closed semiline from the
// shift point.
int nondegenerate_components(const PlaneRep& rep, const EdgeSplit& split,
                             const Graph& g, double tol_scale = 1e-9);

// Arrangement of the lines through pairs of distinct adjacent points.
struct ArrangementLine {
  Eigen::Vector2d normal;  // unit normal; the line is normal . x = offset
  double offset = 0.0;
  std::vector<int> edges;  // edge indices of g lying on this line
};

struct ArrangementCell {
  int dim = 2;              // 0, 1, or 2
  std::vector<int> signs;   // per line: -1, 0, +1
  Eigen::Vector2d sample;   // a point of the cell (the point itself if dim 0)
};

struct CellComplex {
  std::vector<ArrangementLine> lines;
  std::vector<ArrangementCell> cells;
};

// Builds the full arrangement cell complex.  Throws
// std::invalid_argument when two adjacent points coincide.
CellComplex build_complex(const PlaneRep& rep, const Graph& g,
                          double tol_scale = 1e-9);

// True when one cell lies in the closure of the other minus the cell
// itself (the arrangement incidence relation, decided on sign vectors).
bool cells_incident(const ArrangementCell& a, const ArrangementCell& b);

// Index of the cell containing p, or -1 if p matches no stored cell.
int locate_cell(const CellComplex& cplx, const Eigen::Vector2d& p);

// The edge split shared by all points of the cell (its signature).
// Throws std::invalid_argument when the cell contains a node point.
EdgeSplit cell_signature(const CellComplex& cplx, int cell,
                         const PlaneRep& rep, const Graph& g,
                         double tol_scale = 1e-9);

// Indices of the 1-cells lying on a separating segment: a segment
// between adjacent points u_a, u_b such that the remaining nodes split
// into two nonempty sets with no joining edge and with their points on
// distinct sides of the segment's line.
std::vector<int> separating_segments(const PlaneRep& rep, const Graph& g,
                                     const CellComplex& cplx,
                                     double tol_scale = 1e-9);

// The limit of shifting the origin from rep.origin to q within the
// closure of the origin's cell: `limit` is the matrix with zero flow at
// origin q whose degenerate entries are inherited from the witness, and
// `family(a)` evaluates the connecting path (a = 1 gives the witness,
// a = 0 the limit).
struct ShiftFamily {
  GMatrix limit;
  std::function<Matrix(double)> family;
};

ShiftFamily shift_limit(const PlaneRep& rep, const Graph& g,
                        const Eigen::Vector2d& q, const GMatrix& witness,
                        double tol_scale = 1e-9);

// Geometric outerplanarity check for a normalized representation:
// pairwise-distinct unit points, no node interior to another edge's
// chord, and no two crossing chords.  detail names the first violation.
struct OuterplanarCheck {
  bool ok = false;
  std::string detail;
};

OuterplanarCheck verify_outerplanar(const PlaneRep& rep, const Graph& g,
                                    double tol_scale = 1e-9);

struct PlaneOptions {
  double tol_scale = 1e-9;
  std::uint64_t seed = 0;
  int max_restarts = 3;
  int max_rounds = 16;
};

// For a 2-connected graph: either an outerplanar embedding read off a
// corank-2 matrix nullspace, or a well-signed matrix with one negative
// eigenvalue and corank at least 3.
Certificate embed_plane(const Graph& g, const PlaneOptions& opts = {});

}  // namespace nse
