#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oversmooth/spectral.hpp"

using namespace oversmooth;

namespace {

Matrix random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  return Matrix(0.5 * (a + a.transpose()));
}

Graph random_graph(std::mt19937_64& rng) {
  const int n = 1 + static_cast<int>(rng() % 30);
  const double p = std::uniform_real_distribution<double>(0, 1)(rng);
  return erdos_renyi(n, p, rng());
}

}  // namespace

TEST_CASE("sym matrix construction") {
  Matrix m(2, 2);
  m << 1, 2, 2, 3;
  const SymMatrix s = SymMatrix::from_symmetric(m);
  CHECK(s(0, 1) == s(1, 0));

  Matrix bad(2, 2);
  bad << 1, 2, 2.5, 3;
  CHECK_THROWS_AS(SymMatrix::from_symmetric(bad), std::invalid_argument);
  const SymMatrix fixed = SymMatrix::symmetrize(bad);
  CHECK(fixed(0, 1) == doctest::Approx(2.25));
  CHECK(fixed(0, 1) == fixed(1, 0));
}

TEST_CASE("augmented laplacian examples") {
  SUBCASE("single node") {
    const SymMatrix d = augmented_laplacian(Graph(1, {}));
    CHECK(d(0, 0) == 0.0);
  }
  SUBCASE("single edge") {
    const SymMatrix d = augmented_laplacian(from_edge_list("0 1"));
    CHECK(d(0, 0) == doctest::Approx(0.5));
    CHECK(d(0, 1) == doctest::Approx(-0.5));
    CHECK(d(1, 1) == doctest::Approx(0.5));
  }
  SUBCASE("counterexample graph has rank-3 propagation") {
    const SymMatrix p = propagation_matrix(counterexample_graph());
    const Eigen::FullPivLU<Matrix> lu(p.mat());
    CHECK(lu.rank() == 3);
  }
}

TEST_CASE("propagation matrix entries") {
  const Graph g = from_edge_list("0 1");
  const SymMatrix p = propagation_matrix(g);
  CHECK(p(0, 0) == doctest::Approx(0.5));
  CHECK(p(0, 1) == doctest::Approx(0.5));

  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Graph h = random_graph(rng);
    const SymMatrix prop = propagation_matrix(h);
    CHECK(prop.mat().minCoeff() >= 0.0);
    const SymMatrix lap = augmented_laplacian(h);
    const Matrix sum = prop.mat() + lap.mat();
    CHECK((sum - Matrix::Identity(h.node_count(), h.node_count())).cwiseAbs().maxCoeff()
          <= 1e-14);
  }
}

TEST_CASE("eigen on fixed matrices") {
  SUBCASE("identity") {
    const Spectrum s = eigen(SymMatrix::from_symmetric(Matrix::Identity(3, 3)));
    for (int i = 0; i < 3; ++i) CHECK(s.eigenvalues(i) == doctest::Approx(1.0));
  }
  SUBCASE("diagonal sorts ascending") {
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 5.0, -1.0, 2.0;
    const Spectrum s = eigen(SymMatrix::from_symmetric(d));
    CHECK(s.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
    CHECK(s.eigenvalues(2) == doctest::Approx(5.0));
    // sign convention: first sizeable component positive
    for (int k = 0; k < 3; ++k) {
      int lead = 0;
      while (std::abs(s.eigenvectors(lead, k)) <= 1e-12) ++lead;
      CHECK(s.eigenvectors(lead, k) > 0.0);
    }
  }
}

TEST_CASE("eigen reconstructs random symmetric matrices") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + static_cast<int>(rng() % 20);
    const Matrix a = random_symmetric(n, rng);
    const Spectrum s = eigen(SymMatrix::from_symmetric(a));
    const Matrix rebuilt =
        s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    CHECK((rebuilt - a).norm() <= 1e-7 * a.norm());
    CHECK((s.eigenvectors.transpose() * s.eigenvectors - Matrix::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);
  }
}

TEST_CASE("laplacian eigenvalues live in [0, 2)") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 200; ++t) {
    const Graph g = random_graph(rng);
    const Spectrum s = eigen(augmented_laplacian(g));
    CHECK(s.eigenvalues(0) >= -1e-8);
    CHECK(s.eigenvalues(s.eigenvalues.size() - 1) < 2.0);
  }
}

TEST_CASE("invariant basis") {
  SUBCASE("single edge") {
    const SubspaceBasis b = invariant_basis(from_edge_list("0 1"));
    CHECK(b.m_count() == 1);
    CHECK(b.vectors(0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(b.vectors(1, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  }
  SUBCASE("empty graph gives the identity") {
    const SubspaceBasis b = invariant_basis(Graph(3, {}));
    CHECK(b.m_count() == 3);
    CHECK((b.vectors - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("two triangles: disjoint supports, entries 1/sqrt(3)") {
    const Graph g = from_edge_list("0 1\n1 2\n0 2\n3 4\n4 5\n3 5");
    const SubspaceBasis b = invariant_basis(g);
    REQUIRE(b.m_count() == 2);
    for (int i = 0; i < 3; ++i) {
      CHECK(b.vectors(i, 0) == doctest::Approx(1.0 / std::sqrt(3.0)));
      CHECK(b.vectors(i, 1) == 0.0);
      CHECK(b.vectors(i + 3, 0) == 0.0);
      CHECK(b.vectors(i + 3, 1) == doctest::Approx(1.0 / std::sqrt(3.0)));
    }
  }
  SUBCASE("P e = e for every basis column") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
      const Graph g = random_graph(rng);
      const SymMatrix p = propagation_matrix(g);
      const SubspaceBasis b = invariant_basis(g);
      CHECK((p.mat() * b.vectors - b.vectors).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("lambda rate") {
  CHECK(lambda_rate(from_edge_list("0 1")) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(lambda_rate(Graph(4, {})) == 0.0);

  // dense ER graphs mix faster than sparse ones
  const double lam_sparse = lambda_rate(erdos_renyi(1000, 0.1, 3));
  const double lam_dense = lambda_rate(erdos_renyi(1000, 0.5, 3));
  CHECK(lam_sparse > 0.14);
  CHECK(lam_sparse < 0.26);
  CHECK(lam_dense > 0.04);
  CHECK(lam_dense < 0.09);
  CHECK(lam_dense < lam_sparse);
}

TEST_CASE("lambda rate from a spectrum") {
  // eigenvalues of P ascending; top m_count dropped positionally
  Spectrum s;
  s.eigenvalues = Vector(4);
  s.eigenvalues << -0.3, 0.1, 0.6, 1.0;
  s.eigenvectors = Matrix::Identity(4, 4);
  CHECK(lambda_rate(s, 1) == doctest::Approx(0.6));
  CHECK(lambda_rate(s, 2) == doctest::Approx(0.3));
  CHECK(lambda_rate(s, 4) == 0.0);
}

TEST_CASE("assumption checks") {
  const Graph g = erdos_renyi(20, 0.3, 9);
  const SymMatrix p = propagation_matrix(g);
  const SubspaceBasis b = invariant_basis(g);
  CHECK(check_assumptions(p, b).all_ok());

  SUBCASE("negative entry fails non-negativity") {
    SubspaceBasis signflip;
    Matrix pm(2, 2);
    pm << 0.6899574, -0.2426827, -0.2426827, 0.8100426;
    signflip.vectors = Vector(2);
    signflip.vectors << 0.61637234, -0.78745485;
    // entries are rounded to 7 digits, so allow 1e-6 on the residual checks
    const auto rep =
        check_assumptions(SymMatrix::from_symmetric(pm, 1e-6), signflip, 1e-6);
    CHECK(!rep.nonnegative_ok);
    CHECK(rep.orthonormal_ok);
    CHECK(rep.invariant_ok);
  }
  SUBCASE("identity with e1 passes") {
    SubspaceBasis e1;
    e1.vectors = Matrix::Zero(2, 1);
    e1.vectors(0, 0) = 1.0;
    const auto rep =
        check_assumptions(SymMatrix::from_symmetric(Matrix::Identity(2, 2)), e1);
    CHECK(rep.all_ok());
  }
}

TEST_CASE("spectral histogram") {
  Spectrum s;
  s.eigenvalues = Vector(4);
  s.eigenvalues << 0.0, 0.5, 1.0, 2.0;
  s.eigenvectors = Matrix::Identity(4, 4);
  const Histogram h = spectral_histogram(s, 4);
  REQUIRE(h.counts.size() == 4);
  CHECK(h.bin_left[0] == 0.0);
  CHECK(h.bin_right[3] == 2.0);
  CHECK(h.counts == std::vector<int>{1, 1, 1, 1});  // value 2.0 lands in the last bin

  s.eigenvalues(0) = -0.1;
  CHECK_THROWS_AS(spectral_histogram(s, 4), std::domain_error);
}
