// Acceptance harness: one line per criterion, exit 0 iff all pass.
//
// Usage: acceptance <nse-binary> <data-dir>
//
// The criteria pin down the complete contract of the library: the two
// embedding dichotomies checked exhaustively against structural oracles,
// closed-form anchor matrices, the flow decomposition round trip, the
// circulation existence characterization, the two witness constructions,
// the interpolation contract, the convex-position invariant of every
// high-corank witness, and byte-level determinism of the command line.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nse/certificate_io.hpp"
#include "nse/cli.hpp"
#include "nse/gmatrix.hpp"
#include "nse/graph.hpp"
#include "nse/line1d.hpp"
#include "nse/plane2d.hpp"
#include "nse/spectra.hpp"

using namespace nse;
namespace fs = std::filesystem;

namespace {

constexpr double kTol = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1fs", s);
  return buf;
}

// Runs job(i, parts[w]) over i = 0..count-1 on a worker pool; each worker
// owns one Part, so jobs never share mutable state.
template <typename Part, typename Job>
std::vector<Part> run_parallel(int count, const Job& job) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int workers =
      std::max(1, std::min<int>(count, hw ? static_cast<int>(hw) : 4));
  std::vector<Part> parts(workers);
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        job(i, parts[w]);
    });
  for (auto& t : pool) t.join();
  return parts;
}

// --------------------------------------------------------------------------
// Criterion 8 helper: the origin is strictly inside the convex hull of the
// nullspace columns of every high-corank witness.  The normalized
// eigenvector of the unique negative eigenvalue is strictly positive on a
// connected graph and orthogonal to the kernel, so it is an explicit
// feasible point of the hull LP; when its smallest weight is below the
// required margin, the LP  max t  s.t.  U*l = 0, sum(l) = 1, l >= t  is
// solved exactly by enumerating the vertices of the reduced polytope
// (dimensions stay below 10, so the enumeration is cheap).

struct HullPoint {
  double margin = -1.0;
  double residual = 1.0;
};

HullPoint best_hull_point(const Matrix& u) {
  const int n = static_cast<int>(u.cols());
  const int d = static_cast<int>(u.rows());
  Matrix aeq(d + 1, n);
  aeq.topRows(d) = u;
  aeq.bottomRows(1).setOnes();
  Vector beq = Vector::Zero(d + 1);
  beq[d] = 1.0;

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(aeq);
  const Vector lam0 = cod.solve(beq);
  auto evaluate = [&](const Vector& lam) {
    return HullPoint{lam.minCoeff(), (aeq * lam - beq).cwiseAbs().maxCoeff()};
  };
  HullPoint best = evaluate(lam0);

  Eigen::FullPivLU<Matrix> lu(aeq);
  lu.setThreshold(1e-10);
  const int k = static_cast<int>(lu.dimensionOfKernel());
  if (k == 0) return best;  // the feasible point is unique
  const Matrix nbasis = lu.kernel();  // n x k

  // Reduced variables (y, t): maximize t subject to lam0 + N y >= t.  Every
  // vertex activates k + 1 of the n inequalities.
  const int vars = k + 1;
  std::vector<int> subset(vars);
  std::function<void(int, int)> visit = [&](int start, int depth) {
    if (depth == vars) {
      Matrix sys(vars, vars);
      Vector rhs(vars);
      for (int r = 0; r < vars; ++r) {
        sys.row(r).head(k) = nbasis.row(subset[r]);
        sys(r, k) = -1.0;
        rhs[r] = -lam0[subset[r]];
      }
      Eigen::FullPivLU<Matrix> solver(sys);
      solver.setThreshold(1e-10);
      if (!solver.isInvertible()) return;
      const Vector x = solver.solve(rhs);
      const Vector lam = lam0 + nbasis * x.head(k);
      const double t = x[k];
      if (lam.minCoeff() < t - 1e-12) return;  // vertex is infeasible
      const HullPoint cand = evaluate(lam);
      if (cand.margin > best.margin) best = cand;
      return;
    }
    for (int i = start; i <= n - (vars - depth); ++i) {
      subset[depth] = i;
      visit(i + 1, depth + 1);
    }
  };
  visit(0, 0);
  return best;
}

struct HullStats {
  long checked = 0;
  long failures = 0;
  long lp_solved = 0;
  double min_weight = 1.0;
  double max_residual = 0.0;
  std::string first_failure;
};

void check_origin_interior(const Certificate& cert, HullStats& st) {
  ++st.checked;
  const Matrix dense = cert.matrix.to_dense();
  Eigen::SelfAdjointEigenSolver<Matrix> es(dense);
  Vector w = es.eigenvectors().col(0);  // ascending: the negative eigenvalue
  if (w.sum() < 0.0) w = -w;
  Matrix u;
  try {
    u = nullspace_rep(cert.matrix, kTol);
  } catch (const std::exception& e) {
    ++st.failures;
    if (st.first_failure.empty()) st.first_failure = e.what();
    return;
  }

  HullPoint point;
  if (w.minCoeff() > 0.0) {
    const Vector lambda = w / w.sum();
    point.margin = lambda.minCoeff();
    point.residual = (u * lambda).cwiseAbs().maxCoeff();
  }
  if (point.margin < 1e-10 || point.residual > 1e-10) {
    point = best_hull_point(u);
    ++st.lp_solved;
  }

  st.min_weight = std::min(st.min_weight, point.margin);
  st.max_residual = std::max(st.max_residual, point.residual);
  if (point.margin < 1e-10 || point.residual > 1e-10) {
    ++st.failures;
    if (st.first_failure.empty()) {
      std::ostringstream os;
      os << "margin " << point.margin << ", residual " << point.residual
         << " on a " << cert.matrix.graph.node_count() << "-node graph";
      st.first_failure = os.str();
    }
  }
}

// --------------------------------------------------------------------------
// Criteria 1 and 2: exhaustive dichotomy sweeps.  The 1-D sweep doubles as
// the harvest for criteria 7 (interpolation pairs) and 8 (witnesses).

struct SweepPart {
  long graphs = 0;
  long embeddings = 0;
  long witnesses = 0;
  long mismatches = 0;
  long verify_failures = 0;
  long exceptions = 0;
  std::string first_error;
  std::vector<std::pair<GMatrix, GMatrix>> pairs;  // criterion 7 harvest
  HullStats hull;                                  // criterion 8 tally
};

void merge_into(SweepPart& total, const SweepPart& p) {
  total.graphs += p.graphs;
  total.embeddings += p.embeddings;
  total.witnesses += p.witnesses;
  total.mismatches += p.mismatches;
  total.verify_failures += p.verify_failures;
  total.exceptions += p.exceptions;
  if (total.first_error.empty()) total.first_error = p.first_error;
  total.pairs.insert(total.pairs.end(), p.pairs.begin(), p.pairs.end());
  total.hull.checked += p.hull.checked;
  total.hull.failures += p.hull.failures;
  total.hull.lp_solved += p.hull.lp_solved;
  total.hull.min_weight = std::min(total.hull.min_weight, p.hull.min_weight);
  total.hull.max_residual =
      std::max(total.hull.max_residual, p.hull.max_residual);
  if (total.hull.first_failure.empty())
    total.hull.first_failure = p.hull.first_failure;
}

SweepPart sweep_line(int nmax) {
  SweepPart total;
  for (int n = 1; n <= nmax; ++n) {
    const std::vector<Graph> graphs = connected_graphs(n);
    auto parts = run_parallel<SweepPart>(
        static_cast<int>(graphs.size()), [&](int i, SweepPart& part) {
          const Graph& g = graphs[i];
          ++part.graphs;
          InterpolationProbe probe{[&part](const GMatrix& a, const GMatrix& b) {
            part.pairs.emplace_back(a, b);
          }};
          LineOptions opts;
          opts.tol_scale = kTol;
          opts.probe = &probe;
          try {
            const Certificate cert = embed_line(g, opts);
            const bool embedded = cert.kind == CertificateKind::PathEmbedding;
            (embedded ? part.embeddings : part.witnesses) += 1;
            if (embedded != path_order(g).has_value()) ++part.mismatches;
            if (!verify_certificate(cert, g, kTol).ok)
              ++part.verify_failures;
            if (!embedded) check_origin_interior(cert, part.hull);
          } catch (const std::exception& e) {
            ++part.exceptions;
            if (part.first_error.empty()) part.first_error = e.what();
          }
        });
    for (const SweepPart& p : parts) merge_into(total, p);
  }
  return total;
}

SweepPart sweep_plane(int nmax) {
  SweepPart total;
  for (int n = 3; n <= nmax; ++n) {
    const std::vector<Graph> graphs = biconnected_graphs(n);
    auto parts = run_parallel<SweepPart>(
        static_cast<int>(graphs.size()), [&](int i, SweepPart& part) {
          const Graph& g = graphs[i];
          ++part.graphs;
          PlaneOptions opts;
          opts.tol_scale = kTol;
          try {
            const Certificate cert = embed_plane(g, opts);
            const bool embedded =
                cert.kind == CertificateKind::OuterplanarEmbedding;
            (embedded ? part.embeddings : part.witnesses) += 1;
            if (embedded != is_outerplanar(g)) ++part.mismatches;
            if (!verify_certificate(cert, g, kTol).ok) ++part.verify_failures;
            if (embedded) {
              const OuterplanarCheck oc =
                  verify_outerplanar(PlaneRep{cert.embedding}, g, kTol);
              if (!oc.ok) {
                ++part.verify_failures;
                if (part.first_error.empty()) part.first_error = oc.detail;
              }
            } else {
              if (cert.eigen.corank < 3) ++part.verify_failures;
              check_origin_interior(cert, part.hull);
            }
          } catch (const std::exception& e) {
            ++part.exceptions;
            if (part.first_error.empty()) part.first_error = e.what();
          }
        });
    for (const SweepPart& p : parts) merge_into(total, p);
  }
  return total;
}

Outcome report_sweep(const SweepPart& s, double elapsed,
                     const std::string& what) {
  std::ostringstream os;
  os << s.graphs << " graphs, " << s.embeddings << " " << what << ", "
     << s.witnesses << " witnesses, " << s.mismatches << " mismatches, "
     << s.verify_failures << " verify failures, " << s.exceptions
     << " exceptions (" << fmt_seconds(elapsed) << ")";
  if (!s.first_error.empty()) os << "; first error: " << s.first_error;
  return {s.mismatches == 0 && s.verify_failures == 0 && s.exceptions == 0,
          os.str()};
}

// --------------------------------------------------------------------------
// Criterion 3: closed-form anchors.

bool spectrum_matches(const GMatrix& gm, const std::vector<double>& expect,
                      double tol, std::string& why) {
  const EigenSummary es = eigen_summary(gm.to_dense(), kTol);
  if (es.eigenvalues.size() != static_cast<int>(expect.size())) {
    why = "wrong matrix size";
    return false;
  }
  for (int i = 0; i < es.eigenvalues.size(); ++i)
    if (std::abs(es.eigenvalues[i] - expect[i]) > tol) {
      std::ostringstream os;
      os << "eigenvalue " << i << " is " << es.eigenvalues[i] << ", expected "
         << expect[i];
      why = os.str();
      return false;
    }
  return true;
}

bool anchor_verifies(const GMatrix& gm, int min_corank, std::string& why) {
  Certificate cert;
  cert.kind = CertificateKind::HighCorankMatrix;
  cert.matrix = gm;
  cert.eigen = eigen_summary(gm.to_dense(), kTol);
  cert.tolerance = kTol;
  if (cert.eigen.corank < min_corank) {
    why = "corank " + std::to_string(cert.eigen.corank);
    return false;
  }
  const VerificationReport rep = verify_certificate(cert, gm.graph, kTol);
  if (!rep.ok) {
    for (const auto& c : rep.checks)
      if (!c.pass) {
        why = "check failed: " + c.name;
        return false;
      }
  }
  return rep.ok;
}

Outcome criterion_anchors() {
  std::string why;

  const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  const GMatrix init = initial_good_matrix(k3);
  if (!spectrum_matches(init, {-3.0, 0.0, 0.0}, 1e-10, why))
    return {false, "triangle initial matrix: " + why};

  Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  GMatrix neg_j4{k4, Vector::Constant(4, -1.0), Vector::Constant(6, -1.0)};
  if (!spectrum_matches(neg_j4, {-4.0, 0.0, 0.0, 0.0}, 1e-10, why))
    return {false, "negated all-ones matrix: " + why};
  if (!anchor_verifies(neg_j4, 3, why))
    return {false, "negated all-ones matrix: " + why};

  Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  GMatrix neg_a{star, Vector::Zero(4), Vector::Constant(3, -1.0)};
  const double r3 = std::sqrt(3.0);
  if (!spectrum_matches(neg_a, {-r3, 0.0, 0.0, r3}, 1e-9, why))
    return {false, "negated star adjacency: " + why};
  if (!anchor_verifies(neg_a, 2, why))
    return {false, "negated star adjacency: " + why};

  return {true, "triangle, clique, and star anchors all match"};
}

// --------------------------------------------------------------------------
// Criterion 4: assemble / decompose round trip on random instances.

struct RoundTripPart {
  long instances = 0;
  long failures = 0;
  double max_rel_err = 0.0;
  double max_residual = 0.0;
  std::string first_error;
};

Outcome criterion_round_trip(int count) {
  auto parts = run_parallel<RoundTripPart>(count, [&](int k,
                                                      RoundTripPart& part) {
    std::mt19937_64 rng(0xace00004ULL + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int n = 3 + k % 10;  // 3..12
    const bool want_degenerate = (k % 3 == 0) && n >= 4;
    if (want_degenerate && n % 2 == 1) ++n;
    const int half = n / 2;

    // Points in angular order around the origin: one counterclockwise
    // cycle of arcs exists, so a positive circulation always does.
    const double phase = 2.0 * M_PI * unit(rng);
    std::vector<double> angle(n);
    Matrix pts(2, n);
    for (int i = 0; i < n; ++i) {
      angle[i] = phase + 2.0 * M_PI * i / n +
                 (unit(rng) - 0.5) * 0.6 * M_PI / n;
      const double r = 0.7 + 0.7 * unit(rng);
      pts.col(i) << r * std::cos(angle[i]), r * std::sin(angle[i]);
    }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;  // cycle edge
        if (want_degenerate && i == 0 && j == half) continue;
        if (unit(rng) < 0.25) edges.emplace_back(i, j);
      }
    if (want_degenerate) {
      pts.col(half) = -(0.5 + unit(rng)) * pts.col(0);
      edges.emplace_back(0, half);
    }
    const Graph g(n, edges);
    const PlaneRep rep{pts};
    ++part.instances;
    try {
      const EdgeSplit split = split_edges(rep, g, kTol);
      if (want_degenerate && split.degenerate.empty())
        throw std::logic_error("expected a degenerate edge");
      auto flow = positive_circulation(split);
      if (!flow)
        throw std::logic_error("expected a positive circulation");
      flow->values *= 0.5 + 2.5 * unit(rng);
      Vector gneg(split.degenerate.size());
      for (int i = 0; i < gneg.size(); ++i) gneg[i] = -0.5 - 1.5 * unit(rng);

      const GMatrix m1 = assemble(rep, g, split, *flow, gneg);
      auto [f2, g2] = decompose(rep, g, split, m1, kTol);
      const GMatrix m2 = assemble(rep, g, split, f2, g2);

      const Matrix d1 = m1.to_dense();
      const double scale = d1.cwiseAbs().maxCoeff();
      const double rel_err =
          (d1 - m2.to_dense()).cwiseAbs().maxCoeff() / scale;
      const double residual = (pts * d1).cwiseAbs().maxCoeff() / scale;
      part.max_rel_err = std::max(part.max_rel_err, rel_err);
      part.max_residual = std::max(part.max_residual, residual);
      if (rel_err > 1e-10 || residual > 1e-10) {
        ++part.failures;
        if (part.first_error.empty()) {
          std::ostringstream os;
          os << "instance " << k << ": rel err " << rel_err << ", residual "
             << residual;
          part.first_error = os.str();
        }
      }
    } catch (const std::exception& e) {
      ++part.failures;
      if (part.first_error.empty())
        part.first_error = "instance " + std::to_string(k) + ": " + e.what();
    }
  });
  RoundTripPart total;
  for (const auto& p : parts) {
    total.instances += p.instances;
    total.failures += p.failures;
    total.max_rel_err = std::max(total.max_rel_err, p.max_rel_err);
    total.max_residual = std::max(total.max_residual, p.max_residual);
    if (total.first_error.empty()) total.first_error = p.first_error;
  }
  std::ostringstream os;
  os << total.instances << " instances, max relative error "
     << total.max_rel_err << ", max annihilation residual "
     << total.max_residual;
  if (!total.first_error.empty()) os << "; " << total.first_error;
  return {total.failures == 0, os.str()};
}

// --------------------------------------------------------------------------
// Criterion 5: circulation existence against strong connectivity.

bool every_weak_component_strong(int n, const std::vector<Arc>& arcs) {
  std::vector<std::vector<int>> fwd(n), bwd(n), und(n);
  for (const Arc& a : arcs) {
    fwd[a.i].push_back(a.j);
    bwd[a.j].push_back(a.i);
    und[a.i].push_back(a.j);
    und[a.j].push_back(a.i);
  }
  auto reach = [n](const std::vector<std::vector<int>>& adj, int s) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w : adj[v])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    return seen;
  };
  std::vector<char> assigned(n, 0);
  for (int s = 0; s < n; ++s) {
    if (assigned[s]) continue;
    const auto weak = reach(und, s);
    const auto out = reach(fwd, s);
    const auto in = reach(bwd, s);
    for (int v = 0; v < n; ++v)
      if (weak[v]) {
        assigned[v] = 1;
        if (!out[v] || !in[v]) return false;
      }
  }
  return true;
}

Outcome criterion_circulations(int count) {
  struct Part {
    long instances = 0;
    long disagreements = 0;
    long bad_flows = 0;
  };
  auto parts = run_parallel<Part>(count, [&](int k, Part& part) {
    std::mt19937_64 rng(0xace00005ULL + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = 2 + k % 9;  // 2..10
    EdgeSplit split;
    split.node_count = n;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (unit(rng) >= 0.35) continue;
        if (unit(rng) < 0.5)
          split.arcs.push_back({i, j});
        else
          split.arcs.push_back({j, i});
      }
    ++part.instances;
    const auto flow = positive_circulation(split);
    const bool oracle = every_weak_component_strong(n, split.arcs);
    if (flow.has_value() != oracle) {
      ++part.disagreements;
      return;
    }
    if (!flow) return;
    // The returned flow must be >= 1 on every arc and exactly conserved.
    Vector net = Vector::Zero(n);
    bool ok = true;
    for (std::size_t a = 0; a < split.arcs.size(); ++a) {
      if (flow->values[static_cast<int>(a)] < 1.0 - 1e-12) ok = false;
      net[split.arcs[a].i] += flow->values[static_cast<int>(a)];
      net[split.arcs[a].j] -= flow->values[static_cast<int>(a)];
    }
    if (net.cwiseAbs().maxCoeff() > 1e-9) ok = false;
    if (!ok) ++part.bad_flows;
  });
  long instances = 0, disagreements = 0, bad = 0;
  for (const auto& p : parts) {
    instances += p.instances;
    disagreements += p.disagreements;
    bad += p.bad_flows;
  }
  std::ostringstream os;
  os << instances << " oriented instances, " << disagreements
     << " disagreements, " << bad << " ill-formed flows";
  return {disagreements == 0 && bad == 0, os.str()};
}

// --------------------------------------------------------------------------
// Criterion 6: the two witness constructions land in W_u with at least two
// negative eigenvalues.

struct WitnessPart {
  long built = 0;
  long failures = 0;
  std::string first_error;
};

void check_witness(const GMatrix& r, const Vector& u, int instance,
                   WitnessPart& part) {
  ++part.built;
  const Matrix dense = r.to_dense();
  const double scale = std::max(1.0, dense.cwiseAbs().maxCoeff());
  const double residual = (dense * u).cwiseAbs().maxCoeff();
  const EigenSummary es = eigen_summary(dense, kTol);
  const bool ok =
      is_well_signed(r) && residual <= 1e-9 * scale && es.n_negative >= 2;
  if (!ok) {
    ++part.failures;
    if (part.first_error.empty()) {
      std::ostringstream os;
      os << "instance " << instance << ": residual " << residual
         << ", negatives " << es.n_negative
         << (is_well_signed(r) ? "" : ", not well signed");
      part.first_error = os.str();
    }
  }
}

Outcome criterion_witness_constructions(int per_kind) {
  auto node_parts = run_parallel<WitnessPart>(per_kind, [&](int k,
                                                            WitnessPart& part) {
    std::mt19937_64 rng(0xace00006ULL + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = 4 + k % 6;  // 4..9
    for (int attempt = 0; attempt < 400; ++attempt) {
      const Graph g = random_connected_graph(n, 0.3, rng);
      const int zi = static_cast<int>(rng() % n);
      int zj = zi;
      while (zj == zi) zj = static_cast<int>(rng() % n);
      Vector u(n);
      for (int i = 0; i < n; ++i)
        u[i] = (i == zi || i == zj)
                   ? 0.0
                   : (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 1.5 * unit(rng));
      const auto m = wu_member(g, u);
      if (!m) continue;
      const GMatrix r = double_node(*m, u, zi, zj);
      check_witness(r, u, k, part);
      return;
    }
    ++part.failures;
    if (part.first_error.empty())
      part.first_error =
          "instance " + std::to_string(k) + ": no admissible zero pair found";
  });

  auto cover_parts = run_parallel<WitnessPart>(per_kind, [&](int k,
                                                             WitnessPart&
                                                                 part) {
    std::mt19937_64 rng(0xace00007ULL + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int n = 4 + k % 6;
    for (int attempt = 0; attempt < 400; ++attempt) {
      const Graph g = random_connected_graph(n, 0.35, rng);
      Vector u(n);
      for (int i = 0; i < n; ++i)
        u[i] = (unit(rng) < 0.5 ? -1.0 : 1.0) * (0.5 + 1.5 * unit(rng));
      // Two sign-spanning edges with distinct positive endpoints.
      std::optional<Edge> ab, cd;
      for (const Edge& e : g.edges()) {
        if (u[e.i] * u[e.j] >= 0.0) continue;
        if (!ab) {
          ab = e;
          continue;
        }
        const int pos_ab = u[ab->i] > 0 ? ab->i : ab->j;
        const int pos_e = u[e.i] > 0 ? e.i : e.j;
        if (pos_e != pos_ab) {
          cd = e;
          break;
        }
      }
      if (!ab || !cd) continue;
      const auto m = wu_member(g, u);
      if (!m) continue;
      const GMatrix r = double_cover(*m, u, *ab, *cd);
      check_witness(r, u, k, part);
      return;
    }
    ++part.failures;
    if (part.first_error.empty())
      part.first_error =
          "instance " + std::to_string(k) + ": no spanning edge pair found";
  });

  WitnessPart total;
  for (const auto& p : node_parts) {
    total.built += p.built;
    total.failures += p.failures;
    if (total.first_error.empty()) total.first_error = p.first_error;
  }
  for (const auto& p : cover_parts) {
    total.built += p.built;
    total.failures += p.failures;
    if (total.first_error.empty()) total.first_error = p.first_error;
  }
  std::ostringstream os;
  os << total.built << " constructed witnesses, " << total.failures
     << " failures";
  if (!total.first_error.empty()) os << "; " << total.first_error;
  return {total.failures == 0 && total.built == 2L * per_kind, os.str()};
}

// --------------------------------------------------------------------------
// Criterion 7: the interpolation contract on every harvested pair.

Outcome criterion_interpolation(
    const std::vector<std::pair<GMatrix, GMatrix>>& pairs) {
  if (pairs.empty()) return {false, "no pairs harvested from the sweeps"};
  struct Part {
    long checked = 0;
    long failures = 0;
    std::string first_error;
  };
  auto parts = run_parallel<Part>(
      static_cast<int>(pairs.size()), [&](int i, Part& part) {
        ++part.checked;
        try {
          const GMatrix r = interpolate(pairs[i].first, pairs[i].second, kTol);
          const EigenSummary es = eigen_summary(r.to_dense(), kTol);
          if (es.n_negative != 1 || es.corank < 2) {
            ++part.failures;
            if (part.first_error.empty()) {
              std::ostringstream os;
              os << "pair " << i << ": negatives " << es.n_negative
                 << ", corank " << es.corank;
              part.first_error = os.str();
            }
          }
        } catch (const std::exception& e) {
          ++part.failures;
          if (part.first_error.empty())
            part.first_error = "pair " + std::to_string(i) + ": " + e.what();
        }
      });
  long checked = 0, failures = 0;
  std::string first;
  for (const auto& p : parts) {
    checked += p.checked;
    failures += p.failures;
    if (first.empty()) first = p.first_error;
  }
  std::ostringstream os;
  os << checked << " harvested pairs, " << failures << " contract violations";
  if (!first.empty()) os << "; " << first;
  return {failures == 0, os.str()};
}

Outcome report_hull(const HullStats& hull) {
  std::ostringstream os;
  os << hull.checked << " witnesses, min margin " << hull.min_weight
     << ", max residual " << hull.max_residual << ", " << hull.lp_solved
     << " solved as full LPs, " << hull.failures << " violations";
  if (!hull.first_failure.empty()) os << "; " << hull.first_failure;
  return {hull.failures == 0 && hull.checked > 0, os.str()};
}

// --------------------------------------------------------------------------
// Criterion 9: byte-identical certificates across repeated runs, both
// in-process and through the installed binary.

std::string capture_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

std::string run_binary(const std::string& exe,
                       const std::vector<std::string>& args, int& code) {
  std::string cmd = "'" + exe + "'";
  for (const std::string& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return "";
  }
  std::string out;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  code = pclose(pipe);
  return out;
}

Outcome criterion_determinism(const std::string& exe, const fs::path& data) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"embed1d", (data / "p4.txt").string()},
      {"embed1d", (data / "k13.txt").string()},
      {"embed1d", (data / "c5.txt").string()},
      {"embed2d", (data / "k3.txt").string()},
      {"embed2d", (data / "k4.txt").string()},
      {"embed2d", (data / "k23.txt").string()},
      {"embed2d", (data / "c5.txt").string()},
  };
  int compared = 0;
  for (const auto& [cmd, input] : cases) {
    if (!fs::exists(input)) return {false, "missing fixture " + input};
    int c1 = 0, c2 = 0;
    const std::string a = capture_cli({cmd, input, "--seed", "0"}, c1);
    const std::string b = capture_cli({cmd, input, "--seed", "0"}, c2);
    if (c1 != c2 || a != b)
      return {false, cmd + " " + input + ": repeated runs differ"};
    if (a.empty() || a.front() != '{')
      return {false, cmd + " " + input + ": no certificate emitted"};
    ++compared;
    int b1 = 0, b2 = 0;
    const std::string x = run_binary(exe, {cmd, input, "--seed", "0"}, b1);
    const std::string y = run_binary(exe, {cmd, input, "--seed", "0"}, b2);
    if (b1 != b2 || x != y)
      return {false, cmd + " " + input + ": binary runs differ"};
    if (x != a)
      return {false, cmd + " " + input + ": binary and in-process disagree"};
    ++compared;
  }
  return {true, std::to_string(compared) + " repeated runs byte-identical"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <nse-binary> <data-dir>\n";
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path data = argv[2];

  std::vector<std::pair<std::string, Outcome>> results;

  auto t0 = std::chrono::steady_clock::now();
  SweepPart line = sweep_line(8);
  results.emplace_back(
      "1 dichotomy 1-D (connected, n <= 8)",
      report_sweep(line, seconds_since(t0), "path embeddings"));

  t0 = std::chrono::steady_clock::now();
  SweepPart plane = sweep_plane(7);
  results.emplace_back(
      "2 dichotomy 2-D (2-connected, n <= 7)",
      report_sweep(plane, seconds_since(t0), "outerplanar embeddings"));

  results.emplace_back("3 closed-form anchors", criterion_anchors());
  results.emplace_back("4 flow decomposition round trip",
                       criterion_round_trip(1000));
  results.emplace_back("5 circulation existence", criterion_circulations(1000));
  results.emplace_back("6 witness constructions",
                       criterion_witness_constructions(100));
  results.emplace_back("7 interpolation contract",
                       criterion_interpolation(line.pairs));

  HullStats hull = line.hull;
  hull.checked += plane.hull.checked;
  hull.failures += plane.hull.failures;
  hull.lp_solved += plane.hull.lp_solved;
  hull.min_weight = std::min(hull.min_weight, plane.hull.min_weight);
  hull.max_residual = std::max(hull.max_residual, plane.hull.max_residual);
  if (hull.first_failure.empty()) hull.first_failure = plane.hull.first_failure;
  results.emplace_back("8 origin inside witness hulls", report_hull(hull));

  results.emplace_back("9 certificate determinism",
                       criterion_determinism(exe, data));

  bool all = true;
  for (const auto& [name, outcome] : results) {
    std::cout << "criterion " << name << ": "
              << (outcome.pass ? "PASS" : "FAIL") << " — " << outcome.detail
              << "\n";
    all = all && outcome.pass;
  }
  std::cout << (all ? "acceptance: all criteria hold"
                    : "acceptance: FAILURES present")
            << "\n";
  return all ? 0 : 1;
}
