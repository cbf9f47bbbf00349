#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "nse/gmatrix.hpp"

namespace nse {

// Observer for the interpolation step: receives every (base, target) pair
// whose family produced a certified corank jump, e.g. to harvest test
// fixtures.  Pairs whose scan ends in DegeneracyError (the caller retries
// with a fresh start) are not reported.
struct InterpolationProbe {
  std::function<void(const GMatrix& base, const GMatrix& target)> pair;
};

struct LineOptions {
  double tol_scale = 1e-9;
  std::uint64_t seed = 0;
  int max_restarts = 3;
  // Index of the first preparation attempt.  Attempt 0 uses the
  // deterministic initial matrix; higher attempts draw randomized edge
  // weights seeded by (seed, attempt).
  int start_attempt = 0;
  InterpolationProbe* probe = nullptr;
};

// A well-signed matrix annihilating u.  Exists iff every node with u_i = 0
// has either all neighbors at zero or neighbors with values of both signs;
// free diagonal entries (zero nodes) are set to 0.
std::optional<GMatrix> wu_member(const Graph& g, const Vector& u);

// Scans the family (1-t) m + t mprime for the first member whose corank
// exceeds m's.  Requires m good (one negative eigenvalue, corank 1) and
// mprime with at least two negative eigenvalues, both on the same graph and
// annihilating a common vector; the result then keeps one negative
// eigenvalue and reaches corank >= 2.  Throws DegeneracyError when no jump
// is found (e.g. mprime == m).
GMatrix interpolate(const GMatrix& m, const GMatrix& mprime, double tol_scale,
                    InterpolationProbe* probe = nullptr);

// Two nodes at level zero: subtracting t = 1 + 2 max{|M_ii|,|M_jj|,|M_ij|}
// from both diagonal entries keeps u annihilated and forces at least two
// negative eigenvalues (the 2x2 block gets negative trace and positive
// determinant).
GMatrix double_node(const GMatrix& m, const Vector& u, int i, int j);

// Two edges spanning a common cell across zero (each with one endpoint at a
// negative and one at a positive value), with distinct positive endpoints:
// adds rank-one corrections annihilating u that force two negative
// eigenvalues.  Throws when the positive endpoints coincide; apply the
// construction to -u to anchor on the (then distinct) other side.
GMatrix double_cover(const GMatrix& m, const Vector& u, const Edge& ab,
                     const Edge& cd);

// The level family of the single-zero case: p the unique node with u_p = 0,
// t in (0, c) with c the smallest positive entry of u.  Off-diagonal entries
// of row p become u_j/(u_j - t) * M_pj, the p diagonal is 0, and every other
// diagonal entry is recomputed so the result annihilates u - t exactly.
GMatrix case21_shift(const GMatrix& m, const Vector& u, int p, double t);

// The level family of the positive-level case: u_p > 0 the smallest positive
// entry, b a well-signed matrix annihilating u - u_p (from wu_member), t in
// [0, u_p).  Row p entries become (u_j - u_p)/(u_j - t) * B_pj; the result
// annihilates u - t and tends to b as t -> u_p.
GMatrix case22_shift(const GMatrix& b, const Vector& u, int p, double t);

// The one-dimensional dichotomy: either a PathEmbedding certificate (the
// graph is a path, embedding row = node coordinates) or a HighCorankMatrix
// certificate (well-signed, one negative eigenvalue, corank >= 2).  Throws
// DegeneracyError when numerical degeneracy persists across the retry
// budget, std::invalid_argument for empty or disconnected input.
Certificate embed_line(const Graph& g, const LineOptions& opts = {});

}  // namespace nse
