#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nse/graph.hpp"
#include "nse/spectra.hpp"

namespace nse {

// Symmetric matrix supported on a graph: entries on edges and the diagonal
// only; non-adjacent pairs are zero structurally.
struct GMatrix {
  Graph graph;
  Vector diagonal;     // size n
  Vector edge_values;  // size m, aligned with graph.edges()

  Matrix to_dense() const;
};

// Extracts the sparse form when m fits the support of g (symmetric within
// tolerance, zero off-support, negative on edges); nullopt otherwise.
std::optional<GMatrix> gmatrix_from_dense(const Graph& g, const Matrix& m,
                                          double tol_scale);

// True iff every edge entry is strictly negative (diagonal unconstrained;
// the zero pattern holds structurally).
bool is_well_signed(const GMatrix& gm);

struct WellSignedCheck {
  bool ok = true;
  std::string detail;  // first violation when !ok
};

// Dense-matrix check against a graph. strict: edge entries must be negative;
// otherwise they may also vanish (the closure class used by intermediate
// families).
WellSignedCheck check_well_signed(const Graph& g, const Matrix& m,
                                  double tol_scale, bool strict = true);

// -A + mu2*I where mu2 is the second largest adjacency eigenvalue. For a
// connected graph on n >= 2 nodes this has exactly one negative eigenvalue
// (Perron separation) and corank equal to the multiplicity of mu2.
GMatrix initial_good_matrix(const Graph& g);

// Randomized variant: edge entries drawn uniformly from [-2, -1/2] before
// the same diagonal shift; used by retry logic to escape degenerate spectra.
GMatrix initial_good_matrix(const Graph& g, std::mt19937_64& rng);

// Unique diagonal making the rows orthogonal to the given points: with
// points u_1..u_n (columns, all nonzero) and negative edge values,
//   M_ii = -sum_j M_ij (u_j . u_i) / |u_i|^2.
// For one-dimensional points M u = 0 exactly; in higher dimension only the
// component along u_i is cancelled, so full annihilation is up to the caller
// to arrange and verify.
GMatrix complete_diagonal(const Graph& g, const Vector& edge_values,
                          const Matrix& points);
GMatrix complete_diagonal(const Graph& g, const Vector& edge_values,
                          const Vector& u);

// Congruence scaling M' = D^{-1} M D^{-1} with D = diag(d_vec), paired with
// the representation scaling U' = U D.  Entries of d_vec must be nonzero;
// positive scalings preserve well-signedness and the eigenvalue signature.
GMatrix node_scale(const GMatrix& gm, const Vector& d_vec);
Vector rep_scale(const Vector& u, const Vector& d_vec);
Matrix rep_scale(const Matrix& points, const Vector& d_vec);

// Scale every node vector to unit Euclidean norm, co-scaling the source
// matrix.  Throws DegeneracyError when some column is zero.
struct NormalizedRep {
  Matrix points;
  GMatrix matrix;
};
NormalizedRep normalize_rep(const Matrix& points, const GMatrix& gm);

// Kernel of the matrix arranged as one point per node: d x n with
// orthonormal rows, d = corank at the given tolerance.  Throws
// DegeneracyError when the corank is zero.
Matrix nullspace_rep(const GMatrix& gm, double tol_scale);
Matrix nullspace_rep(const Matrix& m, double tol_scale);

// ---------------------------------------------------------------------------
// Certificates: the explicit outcomes of the two dichotomies.

enum class CertificateKind {
  PathEmbedding,         // 1-D line layout; the graph is a path
  OuterplanarEmbedding,  // unit-circle layout with noncrossing chords
  HighCorankMatrix,      // well-signed, one negative eigenvalue, high corank
};

std::string certificate_kind_name(CertificateKind kind);

struct Certificate {
  CertificateKind kind = CertificateKind::HighCorankMatrix;
  GMatrix matrix;          // witnessing matrix (always present)
  EigenSummary eigen;      // spectrum summary of `matrix` at `tolerance`
  Matrix embedding;        // d x n coordinates for embedding kinds; 0 x 0 else
  double tolerance = 0.0;  // tol_scale the producer used
  std::vector<std::string> report;  // run log: case decisions, restarts, flips
};

// Independent re-validation of a certificate against the graph it claims to
// describe.  Failures are report entries, never exceptions.
struct VerificationCheck {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  std::string detail;
};
struct VerificationReport {
  bool ok = false;
  std::vector<VerificationCheck> checks;
};
VerificationReport verify_certificate(const Certificate& cert, const Graph& g,
                                      double tol_scale);

}  // namespace nse
