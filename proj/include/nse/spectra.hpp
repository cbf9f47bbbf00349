#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>

namespace nse {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Thrown when a numerical routine cannot certify the structure it was asked
// to produce (e.g. an eigenvalue crossing too rough to bracket).
class DegeneracyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SpectralDecomposition {
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // orthonormal columns, matching order
};

SpectralDecomposition full_spectrum(const Matrix& m);

// Absolute zero threshold used throughout: tol_scale * n * max(1, max|m_ij|).
double spectral_tolerance(const Matrix& m, double tol_scale);

struct EigenSummary {
  Vector eigenvalues;  // ascending
  double tol = 0.0;    // threshold the counts below were classified with
  int n_negative = 0;
  int corank = 0;
  int n_positive = 0;
};

EigenSummary eigen_summary(const Matrix& m, double tol_scale);

// Orthonormal basis (columns) of the numerical kernel.
Matrix nullspace_basis(const Matrix& m, double tol_scale);

// ---------------------------------------------------------------------------
// Eigenvalue sign tracking along a one-parameter family.

using MatrixFamily = std::function<Matrix(double)>;

struct CorankJump {
  double t = 0.0;         // first parameter where the tracked eigenvalue hits 0
  Matrix matrix;          // family evaluated at t
  double bracket_width = 0.0;
};

// The family must be continuous on [0, 1], start with some negative count nu
// and corank >= d, and preserve a d-dimensional kernel throughout. Scanning
// `samples` uniform points, the routine watches the eigenvalue directly above
// the kernel block (index nu + d in ascending order) and bisects the first
// interval where it falls to <= tol/2, refining until the bracket is narrower
// than `bracket_width`. Returns the high end of the bracket, at which the
// matrix has negative count nu and corank >= d + 1 (verified; throws
// DegeneracyError when the verification fails). Returns nullopt when the
// tracked eigenvalue stays positive over the whole range.
std::optional<CorankJump> corank_jump(const MatrixFamily& family, int d,
                                      double tol_scale, int samples = 1024,
                                      double bracket_width = 1e-12);

}  // namespace nse
