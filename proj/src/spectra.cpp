#include "nse/spectra.hpp"

#include <algorithm>
#include <cmath>

namespace nse {

SpectralDecomposition full_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()));
  if (solver.info() != Eigen::Success)
    throw DegeneracyError("eigenvalue decomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double spectral_tolerance(const Matrix& m, double tol_scale) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return tol_scale * static_cast<double>(m.rows()) * scale;
}

EigenSummary eigen_summary(const Matrix& m, double tol_scale) {
  EigenSummary out;
  out.eigenvalues = full_spectrum(m).eigenvalues;
  out.tol = spectral_tolerance(m, tol_scale);
  for (int k = 0; k < out.eigenvalues.size(); ++k) {
    const double ev = out.eigenvalues[k];
    if (ev < -out.tol)
      ++out.n_negative;
    else if (ev > out.tol)
      ++out.n_positive;
    else
      ++out.corank;
  }
  return out;
}

Matrix nullspace_basis(const Matrix& m, double tol_scale) {
  const SpectralDecomposition dec = full_spectrum(m);
  const double tol = spectral_tolerance(m, tol_scale);
  int lo = 0;
  while (lo < dec.eigenvalues.size() && dec.eigenvalues[lo] < -tol) ++lo;
  int hi = lo;
  while (hi < dec.eigenvalues.size() && dec.eigenvalues[hi] <= tol) ++hi;
  return dec.eigenvectors.middleCols(lo, hi - lo);
}

std::optional<CorankJump> corank_jump(const MatrixFamily& family, int d,
                                      double tol_scale, int samples,
                                      double bracket_width) {
  const int k = [&] {
    const EigenSummary start = eigen_summary(family(0.0), tol_scale);
    if (start.corank < d)
      throw DegeneracyError("family start has corank below the tracked kernel");
    return start.n_negative + d;
  }();
  auto tracked = [&](const Matrix& m) {
    const Vector evs = full_spectrum(m).eigenvalues;
    if (k >= evs.size()) throw DegeneracyError("tracked eigenvalue out of range");
    return std::pair(evs[k], spectral_tolerance(m, tol_scale));
  };
  auto tripped = [&](double t) {
    const auto [ev, tol] = tracked(family(t));
    return ev <= 0.5 * tol;
  };

  int first = -1;
  for (int j = 0; j <= samples; ++j) {
    if (tripped(static_cast<double>(j) / samples)) {
      first = j;
      break;
    }
  }
  if (first < 0) return std::nullopt;

  double lo = first == 0 ? 0.0 : static_cast<double>(first - 1) / samples;
  double hi = static_cast<double>(first) / samples;
  while (hi - lo > bracket_width) {
    const double mid = 0.5 * (lo + hi);
    (tripped(mid) ? hi : lo) = mid;
  }

  CorankJump jump;
  jump.t = hi;
  jump.matrix = family(hi);
  jump.bracket_width = hi - lo;

  const EigenSummary start = eigen_summary(family(0.0), tol_scale);
  const EigenSummary at = eigen_summary(jump.matrix, tol_scale);
  if (at.n_negative != start.n_negative || at.corank < d + 1)
    throw DegeneracyError("eigenvalue crossing too sharp to certify");
  return jump;
}

}  // namespace nse
