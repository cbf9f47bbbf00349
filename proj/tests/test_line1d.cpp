#include <doctest.h>

#include <cmath>
#include <vector>

#include "nse/line1d.hpp"

using namespace nse;

namespace {

Graph path_of(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

GMatrix neg_adjacency(const Graph& g) {
  return GMatrix{g, Vector::Zero(g.node_count()),
                 Vector::Constant(g.edge_count(), -1.0)};
}

double residual(const GMatrix& m, const Vector& u) {
  return (m.to_dense() * u).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("line1d") {

TEST_CASE("wu_member balances every zero row") {
  Graph p3 = path_of(3);
  Vector u(3);
  u << -1, 0, 1;
  auto m = wu_member(p3, u);
  REQUIRE(m.has_value());
  // The balanced instance is exactly the negated adjacency matrix.
  CHECK((m->to_dense() - neg_adjacency(p3).to_dense()).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK(residual(*m, u) <= 1e-15);

  // Unbalanced neighbor sums still cancel exactly.
  Vector v(3);
  v << -1, 0, 3;
  auto mv = wu_member(p3, v);
  REQUIRE(mv.has_value());
  CHECK(is_well_signed(*mv));
  CHECK(residual(*mv, v) <= 1e-12);

  // A zero node with one-signed nonzero neighbors admits no member.
  Vector bad(3);
  bad << 0, 1, 2;
  CHECK(!wu_member(p3, bad).has_value());

  // All-zero neighborhoods are unconstrained.
  Graph p2 = path_of(2);
  auto mz = wu_member(p2, Vector::Zero(2));
  REQUIRE(mz.has_value());
  CHECK(is_well_signed(*mz));

  // Triangle with one zero node: the two incident edges balance.
  Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  Vector w(3);
  w << -1, 0, 1;
  auto mk = wu_member(k3, w);
  REQUIRE(mk.has_value());
  CHECK(is_well_signed(*mk));
  CHECK(residual(*mk, w) <= 1e-12);
}

TEST_CASE("interpolate finds the first corank jump") {
  // Diamond (K4 minus one edge): -A has one negative eigenvalue, corank 1,
  // kernel (0, 0, 1, -1).  Dropping the diagonal at the two adjacent nodes
  // keeps the kernel and forces a second negative eigenvalue (interlacing
  // with the 2x2 principal block [[-5,-1],[-1,-5]]).
  Graph diamond(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  GMatrix m = neg_adjacency(diamond);
  Vector u(4);
  u << 0, 0, 1, -1;
  REQUIRE(residual(m, u) == 0.0);
  REQUIRE(eigen_summary(m.to_dense(), 1e-9).n_negative == 1);
  GMatrix target = m;
  target.diagonal[0] = -5.0;
  target.diagonal[1] = -5.0;
  REQUIRE(eigen_summary(target.to_dense(), 1e-9).n_negative >= 2);

  int fired = 0;
  InterpolationProbe probe;
  probe.pair = [&](const GMatrix&, const GMatrix&) { ++fired; };
  GMatrix out = interpolate(m, target, 1e-9, &probe);
  CHECK(fired == 1);
  EigenSummary s = eigen_summary(out.to_dense(), 1e-9);
  CHECK(s.n_negative == 1);
  CHECK(s.corank >= 2);
  CHECK(is_well_signed(out));
  CHECK(residual(out, u) <= 1e-9);

  // A constant family never jumps.
  CHECK_THROWS_AS(interpolate(m, m, 1e-9), DegeneracyError);
}

TEST_CASE("double_node forces two negative eigenvalues") {
  // Star with kernel vector vanishing at center and one leaf.
  Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  GMatrix m = neg_adjacency(star);
  Vector u(4);
  u << 0, 1, -1, 0;
  REQUIRE(residual(m, u) == 0.0);
  GMatrix out = double_node(m, u, 0, 3);
  CHECK(residual(out, u) <= 1e-12);
  CHECK(eigen_summary(out.to_dense(), 1e-9).n_negative >= 2);
  CHECK(is_well_signed(out));

  // Non-adjacent zero pair on a 4-cycle.
  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Vector v(4);
  v << 0, 1, 0, -1;
  auto base = wu_member(c4, v);
  REQUIRE(base.has_value());
  GMatrix out2 = double_node(*base, v, 0, 2);
  CHECK(residual(out2, v) <= 1e-12);
  CHECK(eigen_summary(out2.to_dense(), 1e-9).n_negative >= 2);

  CHECK_THROWS_AS(double_node(m, u, 0, 1), std::invalid_argument);  // u_1 != 0
  CHECK_THROWS_AS(double_node(m, u, 0, 0), std::invalid_argument);
}

TEST_CASE("double_cover forces two negative eigenvalues") {
  // 4-cycle, kernel (-1, 1, -1, 1): edges 01 and 23 both cover (-1, 1).
  Graph c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Vector u(4);
  u << -1, 1, -1, 1;
  GMatrix m = complete_diagonal(c4, Vector::Constant(4, -1.0), u);
  REQUIRE(residual(m, u) <= 1e-15);
  GMatrix out = double_cover(m, u, Edge{0, 1}, Edge{2, 3});
  CHECK(residual(out, u) <= 1e-9);
  CHECK(eigen_summary(out.to_dense(), 1e-9).n_negative >= 2);
  CHECK(is_well_signed(out));

  // Exact entries on two disjoint edges with u = (-1, 2, -1, 2): the
  // rank-one block per edge is [[-4,-2],[-2,-1]] scaled by t = 2.
  Graph two(4, {{0, 1}, {2, 3}});
  Vector v(4);
  v << -1, 2, -1, 2;
  GMatrix md = complete_diagonal(two, Vector::Constant(2, -1.0), v);
  GMatrix outd = double_cover(md, v, Edge{0, 1}, Edge{2, 3});
  CHECK(outd.diagonal[0] == doctest::Approx(-10.0));
  CHECK(outd.diagonal[1] == doctest::Approx(-2.5));
  CHECK(outd.edge_values[0] == doctest::Approx(-5.0));
  CHECK(residual(outd, v) <= 1e-12);
  CHECK(eigen_summary(outd.to_dense(), 1e-9).n_negative >= 2);

  // Shared positive endpoint requires anchoring on the other side.
  Graph p3 = path_of(3);
  Vector w(3);
  w << -1, 1, -2;
  GMatrix mp = complete_diagonal(p3, Vector::Constant(2, -1.0), w);
  CHECK_THROWS_AS(double_cover(mp, w, Edge{0, 1}, Edge{1, 2}),
                  std::invalid_argument);
  GMatrix mirrored = double_cover(mp, Vector(-w), Edge{0, 1}, Edge{1, 2});
  CHECK(residual(mirrored, w) <= 1e-12);
  CHECK(eigen_summary(mirrored.to_dense(), 1e-9).n_negative >= 2);
  CHECK(is_well_signed(mirrored));
}

TEST_CASE("case21_shift matches the hand-computed family member") {
  Graph p3 = path_of(3);
  Vector u(3);
  u << -1, 0, 1;
  GMatrix m = *wu_member(p3, u);  // = -A(P3)
  GMatrix a = case21_shift(m, u, 1, 0.5);
  Matrix expected(3, 3);
  expected << 2.0 / 9.0, -2.0 / 3.0, 0.0,
             -2.0 / 3.0, 0.0, -2.0,
              0.0, -2.0, -2.0;
  CHECK((a.to_dense() - expected).cwiseAbs().maxCoeff() <= 1e-15);
  Vector shifted = u.array() - 0.5;
  CHECK((a.to_dense() * shifted).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(is_well_signed(a));

  // The family tends to the zero-diagonal matrix as t -> 0.
  GMatrix mprime = m;
  mprime.diagonal[1] = 0.0;
  GMatrix near0 = case21_shift(m, u, 1, 1e-6);
  CHECK((near0.to_dense() - mprime.to_dense()).cwiseAbs().maxCoeff() <= 1e-5);

  CHECK_THROWS_AS(case21_shift(m, u, 1, 1.0), std::invalid_argument);  // t = c
  CHECK_THROWS_AS(case21_shift(m, u, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(case21_shift(m, u, 0, 0.5), std::invalid_argument);  // u_p != 0
}

TEST_CASE("case22_shift interpolates between the two levels") {
  Graph p4 = path_of(4);
  Vector u(4);
  u << -2, -1, 1, 2;
  Vector w = u.array() - 1.0;
  auto b = wu_member(p4, w);
  REQUIRE(b.has_value());
  REQUIRE(residual(*b, w) <= 1e-15);

  // t = 0 lands in the class annihilating u itself.
  GMatrix b0 = case22_shift(*b, u, 2, 0.0);
  CHECK(residual(b0, u) <= 1e-12);
  CHECK(is_well_signed(b0));

  // Interior parameter annihilates u - t.
  GMatrix bt = case22_shift(*b, u, 2, 0.3);
  Vector shifted = u.array() - 0.3;
  CHECK((bt.to_dense() * shifted).cwiseAbs().maxCoeff() <= 1e-12);

  // Continuity at the far end: B^t -> B as t -> u_p.
  GMatrix bnear = case22_shift(*b, u, 2, 1.0 - 1e-6);
  const double scale = b->to_dense().cwiseAbs().maxCoeff();
  CHECK((bnear.to_dense() - b->to_dense()).cwiseAbs().maxCoeff() <=
        1e-4 * scale);

  CHECK_THROWS_AS(case22_shift(*b, u, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(case22_shift(*b, u, 2, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(case22_shift(*b, u, 3, 0.5), std::invalid_argument);  // not minimal
}

TEST_CASE("embed_line recognizes paths and lays them out monotonically") {
  for (int n = 2; n <= 8; ++n) {
    Graph p = path_of(n);
    Certificate cert = embed_line(p);
    REQUIRE(cert.kind == CertificateKind::PathEmbedding);
    REQUIRE(cert.embedding.cols() == n);
    // Values strictly increase along the path from one endpoint.
    const Vector u = cert.embedding.row(0);
    const double step = u[1] - u[0];
    for (int i = 0; i + 1 < n; ++i) {
      CHECK(std::abs(u[i + 1] - u[i]) > 0);
      CHECK((u[i + 1] - u[i]) * step > 0);  // consistent direction
    }
    CHECK(verify_certificate(cert, p, 1e-9).ok);
  }

  // A relabeled path is still recognized.
  Graph scrambled(6, {{2, 4}, {0, 4}, {0, 5}, {3, 5}, {1, 3}});
  Certificate cert = embed_line(scrambled);
  CHECK(cert.kind == CertificateKind::PathEmbedding);
  CHECK(verify_certificate(cert, scrambled, 1e-9).ok);
}

TEST_CASE("embed_line certifies the anchor non-paths") {
  Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
  Certificate c3 = embed_line(k3);
  REQUIRE(c3.kind == CertificateKind::HighCorankMatrix);
  CHECK(c3.eigen.n_negative == 1);
  CHECK(c3.eigen.corank >= 2);
  CHECK(verify_certificate(c3, k3, 1e-9).ok);

  Graph star(4, {{0, 1}, {0, 2}, {0, 3}});
  Certificate cs = embed_line(star);
  REQUIRE(cs.kind == CertificateKind::HighCorankMatrix);
  CHECK(cs.eigen.corank >= 2);
  CHECK(verify_certificate(cs, star, 1e-9).ok);
}

TEST_CASE("embed_line resolves the dichotomy on every small connected graph") {
  for (int n = 1; n <= 6; ++n) {
    for (const Graph& g : connected_graphs(n)) {
      Certificate cert = embed_line(g);
      const bool is_path = path_order(g).has_value();
      if (is_path) {
        CHECK(cert.kind == CertificateKind::PathEmbedding);
      } else {
        CHECK(cert.kind == CertificateKind::HighCorankMatrix);
        CHECK(cert.eigen.n_negative == 1);
        CHECK(cert.eigen.corank >= 2);
      }
      CHECK(verify_certificate(cert, g, 1e-9).ok);
    }
  }
}

TEST_CASE("interpolation pairs harvested from runs satisfy the contract") {
  std::vector<std::pair<GMatrix, GMatrix>> pairs;
  InterpolationProbe probe;
  probe.pair = [&](const GMatrix& a, const GMatrix& b) {
    pairs.emplace_back(a, b);
  };
  LineOptions opts;
  opts.probe = &probe;
  for (int n = 4; n <= 6; ++n)
    for (const Graph& g : connected_graphs(n)) embed_line(g, opts);
  REQUIRE(!pairs.empty());
  for (const auto& [base, target] : pairs) {
    EigenSummary sb = eigen_summary(base.to_dense(), 1e-9);
    CHECK(sb.n_negative == 1);
    CHECK(eigen_summary(target.to_dense(), 1e-9).n_negative >= 2);
    GMatrix out = interpolate(base, target, 1e-9);
    EigenSummary s = eigen_summary(out.to_dense(), 1e-9);
    CHECK(s.n_negative == 1);
    CHECK(s.corank >= 2);
    CHECK(is_well_signed(out));
  }
}

TEST_CASE("embed_line is deterministic for a fixed seed") {
  Graph paw(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}});
  Certificate a = embed_line(paw);
  Certificate b = embed_line(paw);
  REQUIRE(a.kind == b.kind);
  CHECK((a.matrix.diagonal - b.matrix.diagonal).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.matrix.edge_values - b.matrix.edge_values).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK(a.report == b.report);
}

TEST_CASE("embed_line rejects invalid input") {
  CHECK_THROWS_AS(embed_line(Graph(0, {})), std::invalid_argument);
  CHECK_THROWS_AS(embed_line(Graph(4, {{0, 1}, {2, 3}})), std::invalid_argument);
}

}  // TEST_SUITE
