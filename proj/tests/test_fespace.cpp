#include "rmm/fespace.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace rmm;

namespace {

Mesh cube(int n) { return generate_cube_mesh(n, Vec3(-1, -1, -1), Vec3(1, 1, 1)); }

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

// Exact integral of x^a y^b z^c over the reference tet.
double monomial_integral(int a, int b, int c) {
  return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
}

Vec3 random_ref_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec3 p;
  do p = Vec3(u(rng), u(rng), u(rng));
  while (p.sum() >= 1.0);
  return p;
}

ElementGeometry geometry_from(const Mat3& j) {
  ElementGeometry g;
  g.origin = Vec3::Zero();
  g.jacobian = j;
  g.det_j = j.determinant();
  g.inv_jt = j.inverse().transpose();
  g.volume = std::abs(g.det_j) / 6.0;
  return g;
}

// Nodes of the P2 element: vertices, then edge midpoints in kRefEdges order.
Vec3 p2_node(int i) {
  if (i < 4) return reference_vertex(i);
  return 0.5 * (reference_vertex(kRefEdges[i - 4][0]) + reference_vertex(kRefEdges[i - 4][1]));
}

// Row r of the test field; its curl below was taken by hand.
Vec3 cubic_row(const Vec3& x, int r) {
  return {x[1] * x[1] * x[2] + r * x[0] * x[0] * x[0], x[0] * x[2] * x[2] - r * x[1],
          x[0] * x[1] * x[2] + r * x[2] * x[2] * x[2]};
}
Vec3 cubic_row_curl(const Vec3& x) {
  return {-x[0] * x[2], x[1] * x[1] - x[1] * x[2], x[2] * x[2] - 2 * x[1] * x[2]};
}

}  // namespace

TEST_SUITE("fespace") {
  TEST_CASE("quadrature weights sum to the reference volume and integrate monomials") {
    for (int deg = 1; deg <= 12; ++deg) {
      const QuadratureRule& q = quadrature(deg);
      double sum = 0.0;
      for (double w : q.weights) {
        CHECK(w > 0.0);
        sum += w;
      }
      CHECK(sum == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
      for (int a = 0; a <= deg; ++a)
        for (int b = 0; a + b <= deg; ++b)
          for (int c = 0; a + b + c <= deg; ++c) {
            double s = 0.0;
            for (size_t i = 0; i < q.points.size(); ++i)
              s += q.weights[i] * std::pow(q.points[i][0], a) * std::pow(q.points[i][1], b) *
                   std::pow(q.points[i][2], c);
            CHECK(std::abs(s - monomial_integral(a, b, c)) <= 1e-13 * monomial_integral(a, b, c));
          }
    }
  }

  TEST_CASE("named quadrature examples") {
    const QuadratureRule& q1 = quadrature(1);
    REQUIRE(q1.points.size() == 1);
    CHECK((q1.points[0] - Vec3::Constant(0.25)).norm() < 1e-15);
    CHECK(q1.weights[0] == doctest::Approx(1.0 / 6.0));
    double xi = 0.0;
    for (size_t i = 0; i < q1.points.size(); ++i) xi += q1.weights[i] * q1.points[i][0];
    CHECK(xi == doctest::Approx(1.0 / 24.0));
    const QuadratureRule& q4 = quadrature(4);
    double s = 0.0;
    for (size_t i = 0; i < q4.points.size(); ++i)
      s += q4.weights[i] * std::pow(q4.points[i][0] * q4.points[i][1], 2);
    CHECK(s == doctest::Approx(1.0 / 1260.0).epsilon(1e-13));
    CHECK_THROWS_AS(quadrature(0), InputError);
  }

  TEST_CASE("triangle and line rules") {
    const TriangleRule& t = triangle_rule(6);
    double area = 0.0, st = 0.0;
    for (size_t i = 0; i < t.points.size(); ++i) {
      area += t.weights[i];
      st += t.weights[i] * t.points[i][0] * t.points[i][0] * t.points[i][1];
    }
    CHECK(area == doctest::Approx(0.5));
    CHECK(st == doctest::Approx(2.0 / 120.0));  // 2! 1! / 5!
    const LineRule& l = gauss_line(3);
    double m5 = 0.0;
    for (size_t i = 0; i < l.points.size(); ++i) m5 += l.weights[i] * std::pow(l.points[i], 5);
    CHECK(m5 == doctest::Approx(1.0 / 6.0));
  }

  TEST_CASE("Lagrange bases: named values, Kronecker property, partition of unity") {
    const ScalarBasis b1 = eval_lagrange(1, Vec3::Zero());
    CHECK(b1.value[0] == 1.0);
    CHECK(b1.value[1] == 0.0);
    CHECK(b1.value[2] == 0.0);
    CHECK(b1.value[3] == 0.0);

    const ScalarBasis b2 = eval_lagrange(2, Vec3::Zero());
    CHECK(b2.value[0] == 1.0);  // 2(-0.5)(-1)
    for (int i = 1; i < 10; ++i) CHECK(b2.value[i] == 0.0);

    for (int j = 0; j < 10; ++j) {
      const ScalarBasis b = eval_lagrange(2, p2_node(j));
      for (int i = 0; i < 10; ++i) CHECK(b.value[i] == doctest::Approx(i == j ? 1.0 : 0.0));
    }

    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
      const Vec3 p = k == 0 ? Vec3::Constant(0.25) : random_ref_point(rng);
      for (int order : {1, 2}) {
        const ScalarBasis b = eval_lagrange(order, p);
        double s = 0.0;
        Vec3 g = Vec3::Zero();
        for (int i = 0; i < b.size; ++i) {
          s += b.value[i];
          g += b.grad[i];
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(g.norm() < 1e-13);
      }
    }
    CHECK_THROWS_AS(eval_lagrange(3, Vec3::Zero()), InputError);
  }

  TEST_CASE("Lagrange gradients match central differences") {
    std::mt19937_64 rng(5);
    const double h = 1e-6;
    for (int k = 0; k < 5; ++k) {
      const Vec3 p = random_ref_point(rng);
      const ScalarBasis b = eval_lagrange(2, p);
      for (int d = 0; d < 3; ++d) {
        const Vec3 e = Vec3::Unit(d) * h;
        const ScalarBasis bp = eval_lagrange(2, p + e), bm = eval_lagrange(2, p - e);
        for (int i = 0; i < 10; ++i) CHECK(b.grad[i][d] == doctest::Approx((bp.value[i] - bm.value[i]) / (2 * h)));
      }
    }
  }

  TEST_CASE("Nedelec named values") {
    const VectorBasis i0 = eval_nedelec(NedelecKind::I0, Vec3(0.5, 0.5, 0.0));
    CHECK((i0.value[1] - Vec3(-0.5, 0.5, 0.0)).norm() < 1e-15);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 5; ++k)
      CHECK((eval_nedelec(NedelecKind::I0, random_ref_point(rng)).curl[0] - Vec3(0, -2, 2)).norm() < 1e-15);

    const VectorBasis ii = eval_nedelec(NedelecKind::II1, Vec3(1, 0, 0));
    CHECK((ii.value[1] - Vec3(1, 1, 1)).norm() < 1e-15);
    CHECK(ii.value[1].dot(reference_tangent(0)) == doctest::Approx(1.0));
  }

  TEST_CASE("Nedelec I0 is dual to edge tangential moments") {
    const LineRule& l = gauss_line(4);
    for (int e = 0; e < 6; ++e) {
      const Vec3 a = reference_vertex(kRefEdges[e][0]);
      const Vec3 t = reference_tangent(e);
      for (int j = 0; j < 6; ++j) {
        double m = 0.0;
        for (size_t q = 0; q < l.points.size(); ++q)
          m += l.weights[q] * eval_nedelec(NedelecKind::I0, a + l.points[q] * t).value[j].dot(t);
        CHECK(m == doctest::Approx(e == j ? 1.0 : 0.0));
      }
    }
  }

  TEST_CASE("Nedelec II1 is dual to tangential values at edge vertices") {
    for (int e = 0; e < 6; ++e) {
      const Vec3 t = reference_tangent(e);
      for (int k = 0; k < 2; ++k) {
        const VectorBasis b = eval_nedelec(NedelecKind::II1, reference_vertex(kRefEdges[e][k]));
        for (int j = 0; j < 12; ++j) CHECK(b.value[j].dot(t) == doctest::Approx(j == 2 * e + k ? 1.0 : 0.0));
      }
    }
  }

  TEST_CASE("Nedelec curls match central differences") {
    std::mt19937_64 rng(11);
    const double h = 1e-6;
    for (NedelecKind kind : {NedelecKind::I0, NedelecKind::II1}) {
      const Vec3 p = random_ref_point(rng);
      const VectorBasis b = eval_nedelec(kind, p);
      Mat3 jac[12];  // jac[i](c, d) = d value_c / d x_d
      for (int d = 0; d < 3; ++d) {
        const Vec3 e = Vec3::Unit(d) * h;
        const VectorBasis bp = eval_nedelec(kind, p + e), bm = eval_nedelec(kind, p - e);
        for (int i = 0; i < b.size; ++i) jac[i].col(d) = (bp.value[i] - bm.value[i]) / (2 * h);
      }
      for (int i = 0; i < b.size; ++i) {
        const Mat3& g = jac[i];
        const Vec3 curl(g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1));
        CHECK((curl - b.curl[i]).norm() < 1e-8);
      }
    }
  }

  TEST_CASE("Raviart-Thomas values, divergence and face duality") {
    CHECK(eval_rt0(Vec3::Zero()).value[2].norm() == 0.0);
    CHECK((eval_rt0(Vec3(0.1, 0.2, 0.3)).value[2] - Vec3(0.1, 0.2, 0.3)).norm() < 1e-15);
    CHECK(eval_rt0(Vec3(0.1, 0.2, 0.3)).div[2] == 3.0);
    for (int f = 0; f < 4; ++f) {
      const Vec3 a = reference_vertex(kRefFaces[f][0]), b = reference_vertex(kRefFaces[f][1]),
                 c = reference_vertex(kRefFaces[f][2]);
      for (int j = 0; j < 4; ++j) {
        const double l = rt_face_dof(a, b, c, [j](const Vec3& x) { return eval_rt0(x).value[j]; });
        CHECK(l == doctest::Approx(f == j ? 1.0 : 0.0));
      }
    }
  }

  TEST_CASE("Piola maps") {
    const ElementGeometry id = geometry_from(Mat3::Identity());
    const Vec3 v(0.3, -1.0, 2.0);
    CHECK((piola_covariant(id, v) - v).norm() == 0.0);
    CHECK((piola_contravariant(id, v) - v).norm() == 0.0);
    CHECK((piola_covariant(geometry_from(2.0 * Mat3::Identity()), Vec3(1, 0, 0)) - Vec3(0.5, 0, 0)).norm() < 1e-15);
    const Mat3 d = Vec3(1, 2, 4).asDiagonal();
    CHECK((piola_contravariant(geometry_from(d), Vec3(0, 0, 1)) - Vec3(0, 0, 0.5)).norm() < 1e-15);
  }

  TEST_CASE("mapped bases keep their edge moments and face fluxes") {
    Mat3 j;
    j << 1.2, 0.3, -0.1, 0.2, 0.9, 0.4, -0.3, 0.1, 1.5;
    const ElementGeometry g = geometry_from(j);
    for (int e = 0; e < 6; ++e) {
      const Vec3 a = g.map(reference_vertex(kRefEdges[e][0])), b = g.map(reference_vertex(kRefEdges[e][1]));
      for (int i = 0; i < 6; ++i) {
        const auto dofs = nedelec_edge_dofs(NedelecKind::I0, a, b, [&](const Vec3& x) {
          return piola_covariant(g, eval_nedelec(NedelecKind::I0, j.inverse() * (x - g.origin)).value[i]);
        });
        CHECK(dofs[0] == doctest::Approx(i == e ? 1.0 : 0.0));
      }
    }
    for (int f = 0; f < 4; ++f) {
      const Vec3 a = g.map(reference_vertex(kRefFaces[f][0])), b = g.map(reference_vertex(kRefFaces[f][1])),
                 c = g.map(reference_vertex(kRefFaces[f][2]));
      for (int i = 0; i < 4; ++i) {
        const double flux = rt_face_dof(a, b, c, [&](const Vec3& x) {
          return piola_contravariant(g, eval_rt0(j.inverse() * (x - g.origin)).value[i]);
        });
        CHECK(flux == doctest::Approx(i == f ? 1.0 : 0.0));
      }
    }
  }

  TEST_CASE("edge dofs of linear tangential traces are exact") {
    const Vec3 a(0.1, 0.2, -0.3), b(0.7, -0.4, 0.5);
    const VectorField p = [](const Vec3& x) { return Vec3(1.0 + x[0], 2.0 * x[1] - x[2], 0.5); };
    const auto i0 = nedelec_edge_dofs(NedelecKind::I0, a, b, p);
    CHECK(i0[0] == doctest::Approx(p(0.5 * (a + b)).dot(b - a)));
    const auto ii = nedelec_edge_dofs(NedelecKind::II1, a, b, p);
    CHECK(ii[0] == doctest::Approx(p(a).dot(b - a)));
    CHECK(ii[1] == doctest::Approx(p(b).dot(b - a)));
  }

  TEST_CASE("dof counts of single elements") {
    const Mesh one = enumerate_entities({Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)}, {{0, 1, 2, 3}});
    CHECK(build_dofmap(one, Sequence::linear, Formulation::primal).total == 30);
    CHECK(build_dofmap(one, Sequence::quadratic, Formulation::primal).total == 66);
    // Mixed maps add three global multipliers fixing the mean of q.
    const DofMap lm = build_dofmap(one, Sequence::linear, Formulation::mixed);
    CHECK(lm.local_size == 45);
    CHECK(lm.total == 45 + 3);
    const DofMap qm = build_dofmap(one, Sequence::quadratic, Formulation::mixed);
    CHECK(qm.n_u == 30);
    CHECK(qm.n_p == 36);
    CHECK(qm.n_d == 12);
    CHECK(qm.n_q == 3);
    CHECK(qm.local_size == 81);
    CHECK(qm.total == 81 + qm.n_mean);
  }

  TEST_CASE("shared entities get one global dof") {
    const Mesh two = enumerate_entities(
        {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), Vec3(1, 1, 1)}, {{0, 1, 2, 3}, {1, 2, 3, 4}});
    const DofMap dm = build_dofmap(two, Sequence::linear, Formulation::primal);
    CHECK(dm.total == 3 * 5 + 3 * 9);
    // Local vertices 1,2,3 of tet 0 are local vertices 0,1,2 of tet 1.
    const auto e0 = dm.element(0), e1 = dm.element(1);
    for (int k = 0; k < 3; ++k)
      for (int c = 0; c < 3; ++c) CHECK(e0[3 * (k + 1) + c] == e1[3 * k + c]);
    // Edge (1,2) is local edge 1 of tet 0 and local edge 0 of tet 1.
    for (int r = 0; r < 3; ++r) CHECK(e0[dm.local_u + 3 * 1 + r] == e1[dm.local_u + 3 * 0 + r]);
  }

  TEST_CASE("scatter arrays cover every dof in range") {
    const Mesh m = cube(2);
    for (Sequence s : {Sequence::linear, Sequence::quadratic})
      for (Formulation f : {Formulation::primal, Formulation::mixed}) {
        const DofMap dm = build_dofmap(m, s, f);
        CHECK(dm.total == dm.n_u + dm.n_p + dm.n_d + dm.n_q + dm.n_mean);
        std::set<int> seen;
        for (int t = 0; t < m.num_tets(); ++t)
          for (int d : dm.element(t)) {
            CHECK(d >= 0);
            CHECK(d < dm.total);
            seen.insert(d);
          }
        CHECK(static_cast<int>(seen.size()) == dm.total - dm.n_mean);
        for (int t = 0; t < m.num_tets(); ++t) {
          const auto el = dm.element(t);
          CHECK(std::set<int>(el.begin(), el.end()).size() == el.size());
        }
      }
  }

  TEST_CASE("gradient of interpolated constants and linears") {
    const Mesh m = cube(2);
    for (Sequence s : {Sequence::linear, Sequence::quadratic}) {
      const DofMap dm = build_dofmap(m, s, Formulation::primal);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(dm.total), g = Eigen::VectorXd::Zero(dm.total);
      interpolate_u(m, dm, [](const Vec3&) { return Vec3(1.0, -2.0, 3.0); }, x);
      discrete_gradient(m, dm, x, g);
      CHECK(g.lpNorm<Eigen::Infinity>() < 1e-14);

      Mat3 a;
      a << 1, 2, 3, -1, 0.5, 2, 0, 1, -3;
      x.setZero();
      interpolate_u(m, dm, [&](const Vec3& p) { return Vec3(a * p); }, x);
      discrete_gradient(m, dm, x, g);
      Eigen::VectorXd pa = Eigen::VectorXd::Zero(dm.total);
      interpolate_p(m, dm, [&](const Vec3&) { return a; }, pa);
      CHECK((g - pa).lpNorm<Eigen::Infinity>() < 1e-13);
    }
  }

  TEST_CASE("curl and interpolation commute; the curl range is divergence free") {
    const Mesh m = cube(2);
    const TensorField P = [](const Vec3& x) {
      Mat3 r;
      for (int i = 0; i < 3; ++i) r.row(i) = cubic_row(x, i).transpose();
      return r;
    };
    const TensorField curlP = [](const Vec3& x) {
      Mat3 r;
      for (int i = 0; i < 3; ++i) r.row(i) = cubic_row_curl(x).transpose();
      return r;
    };
    for (Sequence s : {Sequence::linear, Sequence::quadratic}) {
      const DofMap dm = build_dofmap(m, s, Formulation::mixed);
      Eigen::VectorXd x = Eigen::VectorXd::Zero(dm.total), c = x, d = x, q = x;
      interpolate_p(m, dm, P, x);
      discrete_curl(m, dm, x, c);
      interpolate_d(m, dm, curlP, d);
      CHECK((c.segment(dm.off_d, dm.n_d) - d.segment(dm.off_d, dm.n_d)).lpNorm<Eigen::Infinity>() < 1e-10);
      discrete_divergence(m, dm, c, q);
      CHECK(q.segment(dm.off_q, dm.n_q).lpNorm<Eigen::Infinity>() < 1e-12);
    }
  }
}
