#include "nse/line1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace nse {

std::optional<GMatrix> wu_member(const Graph& g, const Vector& u) {
  const int n = g.node_count();
  if (u.size() != n) throw std::invalid_argument("vector/graph size mismatch");
  Vector ev = Vector::Constant(g.edge_count(), -1.0);
  for (int i = 0; i < n; ++i) {
    if (u[i] != 0.0) continue;
    double pos = 0.0, neg = 0.0;
    for (int j : g.neighbors(i)) {
      if (u[j] > 0.0) pos += u[j];
      else if (u[j] < 0.0) neg -= u[j];
    }
    if (pos == 0.0 && neg == 0.0) continue;  // all neighbors at zero
    if (pos == 0.0 || neg == 0.0) return std::nullopt;
    // Balance the zero row: edges toward positive neighbors weigh -neg/mx,
    // toward negative neighbors -pos/mx, so the row sum against u vanishes.
    const double mx = std::max(pos, neg);
    const double toward_pos = -neg / mx;
    const double toward_neg = -pos / mx;
    for (int j : g.neighbors(i)) {
      if (u[j] == 0.0) continue;
      ev[g.edge_index(i, j)] = u[j] > 0.0 ? toward_pos : toward_neg;
    }
  }
  GMatrix out;
  out.graph = g;
  out.edge_values = std::move(ev);
  out.diagonal = Vector::Zero(n);
  for (int i = 0; i < n; ++i) {
    if (u[i] == 0.0) continue;  // free diagonal entries stay 0
    double acc = 0.0;
    for (int j : g.neighbors(i)) acc += out.edge_values[g.edge_index(i, j)] * u[j];
    out.diagonal[i] = -acc / u[i];
  }
  return out;
}

GMatrix interpolate(const GMatrix& m, const GMatrix& mprime, double tol_scale,
                    InterpolationProbe* probe) {
  if (m.graph.edges() != mprime.graph.edges() ||
      m.graph.node_count() != mprime.graph.node_count())
    throw std::invalid_argument("interpolation endpoints live on different graphs");
  const Matrix base = m.to_dense();
  const Matrix target = mprime.to_dense();
  auto family = [&](double t) { return Matrix((1.0 - t) * base + t * target); };
  std::optional<CorankJump> jump = corank_jump(family, 1, tol_scale);
  if (!jump) throw DegeneracyError("interpolation family never gains corank");
  if (probe && probe->pair) probe->pair(m, mprime);
  const double t = jump->t;
  GMatrix out;
  out.graph = m.graph;
  out.diagonal = (1.0 - t) * m.diagonal + t * mprime.diagonal;
  out.edge_values = (1.0 - t) * m.edge_values + t * mprime.edge_values;
  return out;
}

GMatrix double_node(const GMatrix& m, const Vector& u, int i, int j) {
  const int n = m.graph.node_count();
  if (u.size() != n) throw std::invalid_argument("vector/graph size mismatch");
  if (i < 0 || j < 0 || i >= n || j >= n || i == j)
    throw std::invalid_argument("double_node needs two distinct nodes");
  if (u[i] != 0.0 || u[j] != 0.0)
    throw std::invalid_argument("double_node needs both nodes at level zero");
  const int k = m.graph.edge_index(i, j);
  const double mij = k >= 0 ? m.edge_values[k] : 0.0;
  const double t = 1.0 + 2.0 * std::max({std::abs(m.diagonal[i]),
                                         std::abs(m.diagonal[j]),
                                         std::abs(mij)});
  GMatrix out = m;
  out.diagonal[i] -= t;
  out.diagonal[j] -= t;
  return out;
}

GMatrix double_cover(const GMatrix& m, const Vector& u, const Edge& ab,
                     const Edge& cd) {
  const Graph& g = m.graph;
  const int n = g.node_count();
  if (u.size() != n) throw std::invalid_argument("vector/graph size mismatch");
  const int kab = g.edge_index(ab.i, ab.j);
  const int kcd = g.edge_index(cd.i, cd.j);
  if (kab < 0 || kcd < 0 || kab == kcd)
    throw std::invalid_argument("double_cover needs two distinct edges of the graph");
  auto split = [&](const Edge& e) {
    int lo = e.i, hi = e.j;
    if (u[lo] > u[hi]) std::swap(lo, hi);
    if (!(u[lo] < 0.0 && u[hi] > 0.0))
      throw std::invalid_argument("double_cover needs edges spanning level zero");
    return std::pair<int, int>(lo, hi);
  };
  const auto [a, b] = split(ab);
  const auto [c, d] = split(cd);
  if (b == d)
    throw std::invalid_argument(
        "double_cover positive endpoints coincide; anchor on the other side");
  const int kbd = g.edge_index(b, d);
  const double mbd = kbd >= 0 ? m.edge_values[kbd] : 0.0;
  const double t = 1.0 + 2.0 * std::max({std::abs(m.diagonal[b]),
                                         std::abs(m.diagonal[d]),
                                         std::abs(mbd)});
  GMatrix out = m;
  // Rank-one correction per edge: N annihilates u, adds -t at the positive
  // endpoint and pushes the edge entry further negative.
  out.edge_values[kab] += t * u[b] / u[a];
  out.diagonal[a] += -t * (u[b] * u[b]) / (u[a] * u[a]);
  out.diagonal[b] += -t;
  out.edge_values[kcd] += t * u[d] / u[c];
  out.diagonal[c] += -t * (u[d] * u[d]) / (u[c] * u[c]);
  out.diagonal[d] += -t;
  return out;
}

namespace {

// Shared core of the two level families: rebuild row p so the annihilated
// vector's level moves from s to t, then force every other row against u - t
// through the diagonal.
GMatrix slide_level(const GMatrix& k, const Vector& u, int p, double s,
                    double t) {
  const Graph& g = k.graph;
  const int n = g.node_count();
  const double dmin = 1e-13 * std::max(1.0, u.cwiseAbs().maxCoeff());
  GMatrix out = k;
  for (int j : g.neighbors(p)) {
    const double den = u[j] - t;
    if (std::abs(den) <= dmin)
      throw DegeneracyError("level slide denominator vanished");
    const int e = g.edge_index(p, j);
    out.edge_values[e] = (u[j] - s) / den * k.edge_values[e];
  }
  out.diagonal[p] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == p) continue;
    const double den = u[i] - t;
    if (std::abs(den) <= dmin)
      throw DegeneracyError("level slide denominator vanished");
    double acc = 0.0;
    for (int j : g.neighbors(i))
      acc += out.edge_values[g.edge_index(i, j)] * (u[j] - t);
    out.diagonal[i] = -acc / den;
  }
  return out;
}

double smallest_positive(const Vector& u) {
  double c = std::numeric_limits<double>::infinity();
  for (int i = 0; i < u.size(); ++i)
    if (u[i] > 0.0 && u[i] < c) c = u[i];
  return c;
}

}  // namespace

GMatrix case21_shift(const GMatrix& m, const Vector& u, int p, double t) {
  const int n = m.graph.node_count();
  if (u.size() != n) throw std::invalid_argument("vector/graph size mismatch");
  if (p < 0 || p >= n || u[p] != 0.0)
    throw std::invalid_argument("case21_shift needs u_p = 0");
  for (int i = 0; i < n; ++i)
    if (i != p && u[i] == 0.0)
      throw std::invalid_argument("case21_shift needs a unique zero entry");
  const double c = smallest_positive(u);
  if (!(t > 0.0 && t < c))
    throw std::invalid_argument("case21_shift needs t in (0, c)");
  return slide_level(m, u, p, 0.0, t);
}

GMatrix case22_shift(const GMatrix& b, const Vector& u, int p, double t) {
  const int n = b.graph.node_count();
  if (u.size() != n) throw std::invalid_argument("vector/graph size mismatch");
  if (p < 0 || p >= n || !(u[p] > 0.0))
    throw std::invalid_argument("case22_shift needs u_p > 0");
  for (int i = 0; i < n; ++i)
    if (u[i] > 0.0 && u[i] < u[p])
      throw std::invalid_argument("case22_shift needs u_p minimal positive");
  if (!(t >= 0.0 && t < u[p]))
    throw std::invalid_argument("case22_shift needs t in [0, u_p)");
  return slide_level(b, u, p, u[p], t);
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double matrix_scale(const GMatrix& gm) {
  double mx = gm.diagonal.size() ? gm.diagonal.cwiseAbs().maxCoeff() : 0.0;
  if (gm.edge_values.size())
    mx = std::max(mx, gm.edge_values.cwiseAbs().maxCoeff());
  return mx;
}

// Zero entries below ztol are snapped to exact zero; remaining values within
// ztol of each other are merged to their mean so that level comparisons and
// cell construction can use exact equality.
void snap_values(Vector& u, double ztol) {
  const int n = static_cast<int>(u.size());
  for (int i = 0; i < n; ++i)
    if (std::abs(u[i]) <= ztol) u[i] = 0.0;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return u[a] < u[b]; });
  int start = 0;
  while (start < n) {
    int stop = start + 1;
    while (stop < n && u[idx[stop]] - u[idx[stop - 1]] <= ztol) ++stop;
    bool has_zero = false;
    double sum = 0.0;
    for (int k = start; k < stop; ++k) {
      has_zero = has_zero || u[idx[k]] == 0.0;
      sum += u[idx[k]];
    }
    const double rep = has_zero ? 0.0 : sum / (stop - start);
    for (int k = start; k < stop; ++k) u[idx[k]] = rep;
    start = stop;
  }
}

struct CellStructure {
  std::vector<double> values;              // sorted distinct levels
  std::vector<int> coverage;               // per cell (values[t], values[t+1])
  std::vector<std::vector<int>> covering;  // edge indices per cell
};

CellStructure build_cells(const Graph& g, const Vector& u) {
  CellStructure out;
  out.values.assign(u.data(), u.data() + u.size());
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()),
                   out.values.end());
  const int cells = static_cast<int>(out.values.size()) - 1;
  out.coverage.assign(std::max(cells, 0), 0);
  out.covering.assign(std::max(cells, 0), {});
  auto level_index = [&](double v) {
    return static_cast<int>(std::lower_bound(out.values.begin(),
                                             out.values.end(), v) -
                            out.values.begin());
  };
  for (int k = 0; k < g.edge_count(); ++k) {
    const Edge e = g.edges()[k];
    const int lo = level_index(std::min(u[e.i], u[e.j]));
    const int hi = level_index(std::max(u[e.i], u[e.j]));
    for (int t = lo; t < hi; ++t) {
      out.coverage[t] += 1;
      out.covering[t].push_back(k);
    }
  }
  return out;
}

std::pair<int, int> sign_counts(const Vector& u) {
  int ge0 = 0, gt0 = 0;
  for (int i = 0; i < u.size(); ++i) {
    if (u[i] >= 0.0) ++ge0;
    if (u[i] > 0.0) ++gt0;
  }
  return {ge0, gt0};
}

Certificate high_corank_certificate(const GMatrix& gm, double tol_scale,
                                    std::vector<std::string> log) {
  const Matrix dense = gm.to_dense();
  const WellSignedCheck ws = check_well_signed(gm.graph, dense, tol_scale, true);
  if (!ws.ok) throw DegeneracyError("witness is not well-signed: " + ws.detail);
  const EigenSummary s = eigen_summary(dense, tol_scale);
  if (s.n_negative != 1 || s.corank < 2)
    throw DegeneracyError("witness failed the spectrum check");
  Certificate cert;
  cert.kind = CertificateKind::HighCorankMatrix;
  cert.matrix = gm;
  cert.eigen = s;
  cert.tolerance = tol_scale;
  cert.report = std::move(log);
  return cert;
}

Certificate run_attempt(const Graph& g, GMatrix gm, const LineOptions& opts,
                        std::vector<std::string> log) {
  const int n = g.node_count();
  const double tol_scale = opts.tol_scale;

  // Preparation: confirm the start is good and scale nodes by the positive
  // eigenvector of the negative eigenvalue, which grants the monotone
  // neighbor property of the kernel vector.
  {
    const Matrix dense = gm.to_dense();
    const EigenSummary s = eigen_summary(dense, tol_scale);
    if (s.n_negative != 1)
      throw DegeneracyError("prepared matrix is not good");
    if (s.corank >= 2) {
      log.push_back("initial matrix already has corank " +
                    std::to_string(s.corank));
      return high_corank_certificate(gm, tol_scale, std::move(log));
    }
    if (s.corank < 1) throw DegeneracyError("prepared matrix is nonsingular");
  }
  SpectralDecomposition dec = full_spectrum(gm.to_dense());
  Vector pi = dec.eigenvectors.col(0);
  if (pi.sum() < 0.0) pi = -pi;
  if (!(pi.minCoeff() > 0.0))
    throw DegeneracyError("eigenvector of the negative eigenvalue is not positive");
  gm = node_scale(gm, pi.cwiseInverse());
  Vector u = rep_scale(Vector(dec.eigenvectors.col(1)), pi.cwiseInverse());

  bool flipped = false;
  std::string stage = "preparation";
  const int iter_cap = n * n + n + 4;

  for (int iter = 0;; ++iter) {
    if (iter >= iter_cap) throw DegeneracyError("iteration budget exhausted");

    // Keep scales tame: both objects are only meaningful up to positive
    // factors.
    const double mscale = matrix_scale(gm);
    if (!(mscale > 0.0)) throw DegeneracyError("matrix vanished");
    gm.diagonal /= mscale;
    gm.edge_values /= mscale;

    const Matrix dense = gm.to_dense();
    const double tol = spectral_tolerance(dense, tol_scale);
    dec = full_spectrum(dense);
    int n_negative = 0, corank = 0;
    for (int i = 0; i < n; ++i) {
      if (dec.eigenvalues[i] < -tol) ++n_negative;
      else if (dec.eigenvalues[i] <= tol) ++corank;
    }
    if (n_negative != 1)
      throw DegeneracyError("matrix lost the single negative eigenvalue");
    if (corank >= 2) {
      log.push_back("corank reached " + std::to_string(corank) + " after " +
                    stage);
      return high_corank_certificate(gm, tol_scale, std::move(log));
    }
    if (corank < 1) throw DegeneracyError("matrix became nonsingular");

    // Refresh the kernel vector from the current matrix (index 1: right
    // above the single negative eigenvalue), keeping the carried
    // orientation.
    {
      Vector fresh = dec.eigenvectors.col(1);
      const double align = fresh.dot(u);
      if (u.size() == fresh.size() && u.cwiseAbs().maxCoeff() > 0.0) {
        if (std::abs(align) < 0.1 * fresh.norm() * u.norm())
          throw DegeneracyError("kernel direction drifted");
        if (align < 0.0) fresh = -fresh;
      }
      u = fresh;
    }
    const double uscale = u.cwiseAbs().maxCoeff();
    if (!(uscale > 0.0)) throw DegeneracyError("kernel vector vanished");
    u /= uscale;
    snap_values(u, tol_scale * n);

    std::vector<int> zeros;
    for (int i = 0; i < n; ++i)
      if (u[i] == 0.0) zeros.push_back(i);

    if (zeros.size() >= 2) {
      log.push_back("two nodes at level zero: double node and interpolation");
      GMatrix target = double_node(gm, u, zeros[0], zeros[1]);
      GMatrix witness = interpolate(gm, target, tol_scale, opts.probe);
      return high_corank_certificate(witness, tol_scale, std::move(log));
    }

    const CellStructure cells = build_cells(g, u);
    const int levels = static_cast<int>(cells.values.size());
    if (levels < 2) throw DegeneracyError("kernel vector has a single level");

    bool all_single = true;
    for (int t = 0; t + 1 < levels; ++t)
      all_single = all_single && cells.coverage[t] == 1;
    if (all_single) {
      if (levels == n && g.edge_count() == n - 1) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return u[a] < u[b]; });
        bool consecutive = true;
        for (int i = 0; i + 1 < n && consecutive; ++i)
          consecutive = g.has_edge(order[i], order[i + 1]);
        if (consecutive) {
          log.push_back("every cell covered once: path embedding");
          Certificate cert;
          cert.kind = CertificateKind::PathEmbedding;
          cert.matrix = gm;
          cert.eigen = eigen_summary(dense, tol_scale);
          cert.embedding = Matrix(u.transpose());
          cert.tolerance = tol_scale;
          cert.report = std::move(log);
          return cert;
        }
      }
      throw DegeneracyError("cells covered once on a graph that is not a path");
    }

    // Nearest doubly covered cell (ties toward the smaller left endpoint).
    auto pick = [&](bool positive_only) {
      int best = -1;
      double best_dist = 0.0;
      for (int t = 0; t + 1 < levels; ++t) {
        if (cells.coverage[t] < 2) continue;
        const double a = cells.values[t], b = cells.values[t + 1];
        if (positive_only && !(b > 0.0)) continue;
        const double dist = b <= 0.0 ? -b : (a >= 0.0 ? a : 0.0);
        if (best < 0 || dist < best_dist ||
            (dist == best_dist && a < cells.values[best])) {
          best = t;
          best_dist = dist;
        }
      }
      return best;
    };
    int best = pick(false);
    if (best < 0) throw DegeneracyError("lost the doubly covered cell");
    if (cells.values[best + 1] <= 0.0) {
      if (!flipped) {
        flipped = true;
        log.push_back("nearest doubly covered cell is negative: flipping u");
        u = -u;
        continue;
      }
      best = pick(true);
      if (best < 0) throw DegeneracyError("no doubly covered cell above zero");
    }
    const double cell_a = cells.values[best];

    if (cell_a < 0.0) {
      // Case 1: the cell straddles zero; its two covering edges admit the
      // double cover construction.
      log.push_back("doubly covered cell across zero: double cover and interpolation");
      const Edge e1 = g.edges()[cells.covering[best][0]];
      const Edge e2 = g.edges()[cells.covering[best][1]];
      const int hi1 = u[e1.i] > u[e1.j] ? e1.i : e1.j;
      const int hi2 = u[e2.i] > u[e2.j] ? e2.i : e2.j;
      GMatrix target = hi1 != hi2 ? double_cover(gm, u, e1, e2)
                                  : double_cover(gm, Vector(-u), e1, e2);
      GMatrix witness = interpolate(gm, target, tol_scale, opts.probe);
      return high_corank_certificate(witness, tol_scale, std::move(log));
    }

    if (!zeros.empty()) {
      // Case 2.1: a single node sits at level zero.
      const int p = zeros[0];
      const double c = smallest_positive(u);
      if (!std::isfinite(c)) throw DegeneracyError("no level above zero");
      GMatrix mprime = gm;
      mprime.diagonal[p] = 0.0;
      const EigenSummary sp = eigen_summary(mprime.to_dense(), tol_scale);
      if (sp.n_negative == 0)
        throw DegeneracyError("zeroed diagonal gave a positive semidefinite matrix");
      if (sp.n_negative >= 2) {
        log.push_back("zeroed diagonal has two negative eigenvalues: interpolation");
        GMatrix witness = interpolate(gm, mprime, tol_scale, opts.probe);
        return high_corank_certificate(witness, tol_scale, std::move(log));
      }
      if (sp.corank >= 2) {
        log.push_back("zeroed diagonal already has corank 2");
        return high_corank_certificate(mprime, tol_scale, std::move(log));
      }
      GMatrix ahalf = case21_shift(gm, u, p, c / 2);
      const EigenSummary sa = eigen_summary(ahalf.to_dense(), tol_scale);
      if (sa.n_negative == 1) {
        Vector next = u.array() - c / 2;
        if (!(sign_counts(next) < sign_counts(u)))
          throw DegeneracyError("level step made no progress");
        log.push_back("zero level moved by half a cell");
        gm = std::move(ahalf);
        u = std::move(next);
        stage = "a level step";
        continue;
      }
      log.push_back("level family lost goodness: sweeping for the corank jump");
      auto family = [&](double s) -> Matrix {
        if (s <= 0.0) return mprime.to_dense();
        return case21_shift(gm, u, p, s * c / 2).to_dense();
      };
      std::optional<CorankJump> jump = corank_jump(family, 1, tol_scale);
      if (!jump) throw DegeneracyError("level sweep found no corank jump");
      GMatrix witness =
          jump->t <= 0.0 ? mprime : case21_shift(gm, u, p, jump->t * c / 2);
      return high_corank_certificate(witness, tol_scale, std::move(log));
    }

    // Case 2.2: no zero entry; p is the unique node at the smallest positive
    // level (uniqueness and two-sided neighbors follow from the monotone
    // property, since the cell below p contains zero and is covered once).
    const double level = smallest_positive(u);
    if (!std::isfinite(level)) throw DegeneracyError("no positive level");
    std::vector<int> at_level;
    for (int i = 0; i < n; ++i)
      if (u[i] == level) at_level.push_back(i);
    if (at_level.size() != 1)
      throw DegeneracyError("smallest positive level is not a single node");
    const int p = at_level[0];
    Vector w = u.array() - level;
    w[p] = 0.0;
    std::optional<GMatrix> b = wu_member(g, w);
    if (!b)
      throw DegeneracyError("no well-signed matrix annihilates the shifted vector");
    const EigenSummary sb = eigen_summary(b->to_dense(), tol_scale);
    if (sb.n_negative == 0)
      throw DegeneracyError("shifted-level matrix is positive semidefinite");
    if (sb.n_negative == 1) {
      if (!(sign_counts(w) < sign_counts(u)))
        throw DegeneracyError("level step made no progress");
      log.push_back("positive level rebuilt at zero");
      gm = std::move(*b);
      u = std::move(w);
      stage = "a level step";
      continue;
    }
    GMatrix b0 = case22_shift(*b, u, p, 0.0);
    const EigenSummary s0 = eigen_summary(b0.to_dense(), tol_scale);
    if (s0.n_negative == 0)
      throw DegeneracyError("slid matrix is positive semidefinite");
    if (s0.n_negative >= 2) {
      log.push_back("slid matrix has two negative eigenvalues: interpolation");
      GMatrix witness = interpolate(gm, b0, tol_scale, opts.probe);
      return high_corank_certificate(witness, tol_scale, std::move(log));
    }
    if (s0.corank >= 2) {
      log.push_back("slid matrix already has corank 2");
      return high_corank_certificate(b0, tol_scale, std::move(log));
    }
    log.push_back("sweeping the positive level family for the corank jump");
    auto family = [&](double s) -> Matrix {
      if (s >= 1.0) return b->to_dense();
      return case22_shift(*b, u, p, s * level).to_dense();
    };
    std::optional<CorankJump> jump = corank_jump(family, 1, tol_scale);
    if (!jump) throw DegeneracyError("level sweep found no corank jump");
    GMatrix witness =
        jump->t >= 1.0 ? *b : case22_shift(*b, u, p, jump->t * level);
    return high_corank_certificate(witness, tol_scale, std::move(log));
  }
}

}  // namespace

Certificate embed_line(const Graph& g, const LineOptions& opts) {
  const int n = g.node_count();
  if (n == 0) throw std::invalid_argument("graph is empty");
  if (!is_connected(g)) throw std::invalid_argument("graph must be connected");
  if (n == 1) {
    Certificate cert;
    cert.kind = CertificateKind::PathEmbedding;
    cert.matrix = GMatrix{g, Vector::Zero(1), Vector(0)};
    cert.eigen = eigen_summary(cert.matrix.to_dense(), opts.tol_scale);
    cert.embedding = Matrix::Zero(1, 1);
    cert.tolerance = opts.tol_scale;
    cert.report = {"single node: trivial path"};
    return cert;
  }
  std::string last;
  for (int attempt = opts.start_attempt;
       attempt <= opts.start_attempt + opts.max_restarts; ++attempt) {
    std::vector<std::string> log;
    GMatrix start;
    if (attempt == 0) {
      start = initial_good_matrix(g);
    } else {
      log.push_back("restart " + std::to_string(attempt) + " after: " + last);
      std::mt19937_64 rng(mix_seed(opts.seed, attempt));
      start = initial_good_matrix(g, rng);
    }
    try {
      return run_attempt(g, std::move(start), opts, std::move(log));
    } catch (const DegeneracyError& err) {
      last = err.what();
    }
  }
  throw DegeneracyError("line embedding failed after restarts: " + last);
}

}  // namespace nse
