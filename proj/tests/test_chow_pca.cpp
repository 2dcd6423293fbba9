#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

#include "simlearn/chow_pca.hpp"
#include "simlearn/errors.hpp"
#include "simlearn/rng.hpp"

using namespace simlearn;

TEST_CASE("chow_matrix on zero labels is the zero matrix") {
  Batch batch;
  batch.x.setRandom(100, 4);
  batch.y = Vector::Zero(100);
  const UnfoldedMatrix m = chow_matrix(batch, 2, 1);
  CHECK(m.entries.norm() == 0.0);
  CHECK_THROWS_AS(top_left_singular(m), DegenerateInputError);

  Batch empty;
  empty.x.resize(0, 4);
  empty.y.resize(0);
  CHECK_THROWS_AS(chow_matrix(empty, 2, 1), ArgumentError);
  CHECK_THROWS_AS(chow_matrix(batch, 2, 0), ArgumentError);
}

TEST_CASE("realizable pure-he2 Chow matrix concentrates at w* w*^T") {
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance = make_instance(10, link, NoiseKind::kRealizable, 0, 0.0, 51);
  const Batch batch = sample_batch(instance, 100'000, 52);
  const UnfoldedMatrix m = chow_matrix(batch, 2, 1);

  Matrix target = instance.w_star * instance.w_star.transpose();
  CHECK((Matrix(m.entries) - target).norm() <= 0.15);
  const TopSingular top = top_left_singular(m);
  CHECK(top.sigma1 == doctest::Approx(1.0).epsilon(0.05));
  CHECK(std::fabs(top.v.dot(instance.w_star)) >= 0.98);
}

TEST_CASE("top_left_singular basics") {
  Rng rng(53);

  SUBCASE("rank-1 matrix") {
    Vector u(4), v(6);
    for (int i = 0; i < 4; ++i) u[i] = rng.gaussian();
    for (int i = 0; i < 6; ++i) v[i] = rng.gaussian();
    u.normalize();
    v.normalize();
    const Matrix m = -2.5 * u * v.transpose();
    const TopSingular top = top_left_singular(m);
    CHECK(top.sigma1 == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(top.sigma2 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(std::fabs(top.v.dot(u)) == doctest::Approx(1.0).epsilon(1e-10));
    // Sign convention: largest-magnitude coordinate positive.
    Eigen::Index argmax = 0;
    top.v.cwiseAbs().maxCoeff(&argmax);
    CHECK(top.v[argmax] > 0.0);
  }

  SUBCASE("diagonal matrix") {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 3.0;
    m(1, 1) = 1.0;
    const TopSingular top = top_left_singular(m);
    CHECK(top.v[0] == doctest::Approx(1.0));
    CHECK(top.sigma1 == doctest::Approx(3.0));
    CHECK(top.sigma2 == doctest::Approx(1.0));
  }

  SUBCASE("random matrix vs dense eigendecomposition of M M^T") {
    Matrix m(50, 200);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.gaussian();
    const TopSingular top = top_left_singular(m, SvdMethod::kFull);
    Eigen::SelfAdjointEigenSolver<Matrix> eigen(m * m.transpose());
    const double lambda1 = eigen.eigenvalues()(49);
    const Vector u1 = eigen.eigenvectors().col(49);
    CHECK(top.sigma1 == doctest::Approx(std::sqrt(lambda1)).epsilon(1e-8));
    CHECK(std::fabs(top.v.dot(u1)) == doctest::Approx(1.0).epsilon(1e-8));
  }

  SUBCASE("power iteration agrees with the full SVD") {
    Matrix m(30, 40);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.gaussian();
    const TopSingular full = top_left_singular(m, SvdMethod::kFull);
    const TopSingular power = top_left_singular(m, SvdMethod::kPowerIteration, 500);
    CHECK(power.sigma1 == doctest::Approx(full.sigma1).epsilon(1e-6));
    CHECK(power.sigma2 == doctest::Approx(full.sigma2).epsilon(1e-4));
    CHECK(std::fabs(power.v.dot(full.v)) >= 1.0 - 1e-6);
  }
}

TEST_CASE("init_sample_schedule arithmetic and caps") {
  // e^2 log^2(15/0.05) * 20 / eps0^2 + 1/eps at k=2, l=1.
  const double eps = 0.05, eps0 = 0.1, b4 = 15.0;
  const double expected =
      std::exp(2.0) * std::pow(std::log(b4 / eps), 2) * 20.0 / (eps0 * eps0) + 1.0 / eps;
  CHECK(static_cast<double>(init_sample_schedule(2, 1, 20, eps, eps0, b4, 1.0)) ==
        doctest::Approx(std::ceil(expected)));
  CHECK(init_sample_schedule(2, 1, 20, eps, eps0, b4, 2.0) ==
        static_cast<std::size_t>(std::ceil(2.0 * expected)));
  CHECK_THROWS_AS(init_sample_schedule(4, 2, 50, 1e-6, 1e-6, b4, 1.0), ResourceError);
  CHECK_THROWS_AS(init_sample_schedule(2, 1, 20, -1.0, eps0, b4, 1.0), ArgumentError);
}

TEST_CASE("warm start aligns on a small instance") {
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance = make_instance(8, link, NoiseKind::kRealizable, 0, 0.0, 54);
  InitConfig cfg;
  cfg.n_override = 20'000;
  cfg.seed = 55;
  const InitReport report = init_tensor_pca(instance, cfg);
  CHECK(std::fabs(report.w0.norm() - 1.0) <= 1e-10);
  CHECK(report.sigma1 >= report.sigma2);
  CHECK(report.sigma2 >= 0.0);
  CHECK(*report.alignment >= 0.5);
  CHECK(report.n_used >= 20'000);
  CHECK(report.v_hat.size() == 8);  // l = 1

  // Same seed, same answer.
  const InitReport again = init_tensor_pca(instance, cfg);
  CHECK(report.w0 == again.w0);
}

TEST_CASE("degree-1 link initializes through the empirical Chow vector") {
  const LinkSpec link = make_link("relu");
  const ProblemInstance instance = make_instance(20, link, NoiseKind::kRealizable, 0, 0.0, 56);
  InitConfig cfg;
  cfg.n_override = 100'000;
  cfg.seed = 57;
  const InitReport report = init_tensor_pca(instance, cfg);
  // Normalized E_n[y x] concentrates at c_1 w*; the sign probe keeps +w*
  // because relu has odd coefficients.
  CHECK(report.w0.dot(instance.w_star) >= 0.9);
  CHECK(report.v_hat.size() == 1);
  CHECK(report.sigma2 == 0.0);
}

TEST_CASE("pca_solve reaches the warm-start accuracy target on a clean instance") {
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance = make_instance(8, link, NoiseKind::kRealizable, 0, 0.0, 58);
  InitConfig cfg;
  cfg.n_override = 50'000;
  cfg.seed = 59;
  const InitReport report = pca_solve(instance, 0.05, cfg);
  CHECK(std::fabs(*report.alignment) >= 1.0 - 0.1);
}
