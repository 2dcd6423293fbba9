#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "simlearn/errors.hpp"
#include "simlearn/hermite.hpp"
#include "simlearn/rng.hpp"
#include "simlearn/synth.hpp"

using namespace simlearn;

namespace {

double noise_second_moment(const ProblemInstance& instance, std::size_t n, std::uint64_t seed) {
  const Batch batch = sample_batch(instance, n, seed);
  double acc = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Eigen::Map<const Vector> xi(batch.x.data() + i * static_cast<std::size_t>(instance.dim),
                                instance.dim);
    const double resid =
        batch.y[static_cast<Eigen::Index>(i)] - instance.link.eval(xi.dot(instance.w_star));
    acc += resid * resid;
  }
  return acc / static_cast<double>(batch.size());
}

}  // namespace

TEST_CASE("instance construction is deterministic and unit-norm") {
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance a = make_instance(12, link, NoiseKind::kOrthogonalHermite, 1, 0.04, 7);
  const ProblemInstance b = make_instance(12, link, NoiseKind::kOrthogonalHermite, 1, 0.04, 7);
  CHECK(a.w_star == b.w_star);
  CHECK(a.noise.direction == b.noise.direction);
  CHECK(std::fabs(a.w_star.norm() - 1.0) <= 1e-12);
  CHECK(std::fabs(a.noise.direction.norm() - 1.0) <= 1e-12);
  CHECK(std::fabs(a.noise.direction.dot(a.w_star)) <= 1e-10);
  CHECK(a.noise_level == 0.04);

  const ProblemInstance realizable = make_instance(12, link, NoiseKind::kRealizable, 0, 0.5, 7);
  CHECK(realizable.noise_level == 0.0);
  CHECK_THROWS_AS(make_instance(0, link, NoiseKind::kRealizable, 0, 0.0, 7), ArgumentError);
  CHECK_THROWS_AS(make_instance(12, link, NoiseKind::kOrthogonalHermite, 0, 0.04, 7),
                  ArgumentError);
}

TEST_CASE("sample_batch is reproducible and prefix-stable") {
  const LinkSpec link = make_link("relu");
  const ProblemInstance instance = make_instance(6, link, NoiseKind::kBoundedRandom, 0, 0.01, 9);

  const Batch a = sample_batch(instance, 9000, 100);
  const Batch b = sample_batch(instance, 9000, 100);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);

  // Chunked substreams: a shorter batch is a prefix of a longer one.
  const Batch prefix = sample_batch(instance, 5000, 100);
  for (Eigen::Index i = 0; i < prefix.y.size(); ++i) {
    CHECK(prefix.y[i] == a.y[i]);
    for (int j = 0; j < 6; ++j) CHECK(prefix.x(i, j) == a.x(i, j));
  }

  const Batch other_seed = sample_batch(instance, 5000, 101);
  CHECK(other_seed.y != prefix.y);
}

TEST_CASE("realizable pure-he2 labels have unit second moment") {
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance = make_instance(8, link, NoiseKind::kRealizable, 0, 0.0, 10);
  const Batch batch = sample_batch(instance, 200'000, 11);
  const double second = batch.y.squaredNorm() / static_cast<double>(batch.size());
  CHECK(std::fabs(second - 1.0) <= 0.02);
}

TEST_CASE("constructed noise levels match Q") {
  const LinkSpec link = make_link("pure-he2");

  const ProblemInstance oh =
      make_instance(8, link, NoiseKind::kOrthogonalHermite, 1, 0.04, 12);
  CHECK(noise_second_moment(oh, 200'000, 13) == doctest::Approx(0.04).epsilon(0.05));

  const ProblemInstance pt =
      make_instance(6, link, NoiseKind::kPartialTraceAdversary, 4, 0.04, 14);
  CHECK(noise_second_moment(pt, 400'000, 15) == doctest::Approx(0.04).epsilon(0.03));

  const ProblemInstance bounded =
      make_instance(8, link, NoiseKind::kBoundedRandom, 0, 0.04, 16);
  const Batch batch = sample_batch(bounded, 10'000, 17);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Eigen::Map<const Vector> xi(batch.x.data() + i * 8u, 8);
    const double resid =
        batch.y[static_cast<Eigen::Index>(i)] - link.eval(xi.dot(bounded.w_star));
    CHECK(std::fabs(std::fabs(resid) - 0.2) <= 1e-12);  // exactly +-sqrt(Q)
  }
}

TEST_CASE("degree-1 Chow moment vanishes for a k* = 2 link") {
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance = make_instance(10, link, NoiseKind::kRealizable, 0, 0.0, 18);
  const Batch batch = sample_batch(instance, 200'000, 19);
  Vector mean = Vector::Zero(10);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Eigen::Map<const Vector> xi(batch.x.data() + i * 10u, 10);
    mean += batch.y[static_cast<Eigen::Index>(i)] * xi;
  }
  mean /= static_cast<double>(batch.size());
  CHECK(mean.norm() <= 0.02);
}

TEST_CASE("truncate_labels clamps symmetrically") {
  CHECK(truncate_labels(0.3, 1.0) == 0.3);
  CHECK(truncate_labels(5.0, 1.0) == 1.0);
  CHECK(truncate_labels(-5.0, 1.0) == -1.0);
  CHECK_THROWS_AS(truncate_labels(0.0, 0.0), ArgumentError);

  const LinkSpec link = make_link("pure-he2");
  CHECK(default_label_cap(link, 0.01) ==
        doctest::Approx(std::sqrt(4.0 * link.B4 / 0.01)).epsilon(1e-12));

  ProblemInstance capped = make_instance(6, link, NoiseKind::kRealizable, 0, 0.0, 20, 0.5);
  const Batch batch = sample_batch(capped, 5000, 21);
  CHECK(batch.y.cwiseAbs().maxCoeff() <= 0.5);
}

TEST_CASE("noise_normalizer") {
  Rng rng(22);
  Vector v(10);
  for (int i = 0; i < 10; ++i) v[i] = rng.gaussian();
  v.normalize();
  CHECK(noise_normalizer(2, 10, v) == doctest::Approx(1.0).epsilon(1e-10));

  Vector v6 = v.head(6).normalized();
  const double z = noise_normalizer(4, 6, v6);
  CHECK(z <= std::pow(6.0, 0.5) + 1e-12);  // d^{(k-2)/4}
  CHECK(z > 1.0);
  CHECK_THROWS_AS(noise_normalizer(3, 6, v6), ArgumentError);
}

TEST_CASE("partial trace contraction closed form matches the dense route") {
  Rng rng(23);
  const int d = 5;
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.gaussian();
  v.normalize();
  for (int rep = 0; rep < 20; ++rep) {
    Vector x(d);
    for (int i = 0; i < d; ++i) x[i] = rng.gaussian();
    for (int k : {2, 4}) {
      // Dense route: build I^{x(k-2)/2} x v x v and contract with He_k(x).
      DenseTensor pad = zero_tensor(d, 0);
      pad.data[0] = 1.0;
      DenseTensor eye = zero_tensor(d, 2);
      for (int i = 0; i < d; ++i) {
        eye.data[static_cast<std::size_t>(i) * (static_cast<std::size_t>(d) + 1)] = 1.0;
      }
      DenseTensor acc = pad;
      for (int rep2 = 0; rep2 < (k - 2) / 2; ++rep2) {
        DenseTensor next = zero_tensor(d, acc.order + 2);
        for (std::size_t b = 0; b < eye.data.size(); ++b) {
          for (std::size_t a = 0; a < acc.data.size(); ++a) {
            next.data[a + b * acc.data.size()] = acc.data[a] * eye.data[b];
          }
        }
        acc = next;
      }
      DenseTensor padded = zero_tensor(d, k);
      const DenseTensor vv = outer({v, v});
      for (std::size_t b = 0; b < vv.data.size(); ++b) {
        for (std::size_t a = 0; a < acc.data.size(); ++a) {
          padded.data[a + b * acc.data.size()] = acc.data[a] * vv.data[b];
        }
      }
      const double dense = inner_scalar(padded, hermite_tensor_dense(x, k));
      CHECK(std::fabs(partial_trace_contraction(x, v, k) - dense) <= 1e-10);
    }
  }
}

TEST_CASE("batches are identical for any thread count") {
  const LinkSpec link = make_link("pure-he2");
  const ProblemInstance instance =
      make_instance(5, link, NoiseKind::kOrthogonalHermite, 2, 0.01, 24);
  const char* saved = std::getenv("SIMLEARN_THREADS");
  const std::string saved_value = saved ? saved : "";

  ::setenv("SIMLEARN_THREADS", "1", 1);
  const Batch one = sample_batch(instance, 12'000, 25);
  ::setenv("SIMLEARN_THREADS", "3", 1);
  const Batch three = sample_batch(instance, 12'000, 25);
  if (saved) {
    ::setenv("SIMLEARN_THREADS", saved_value.c_str(), 1);
  } else {
    ::unsetenv("SIMLEARN_THREADS");
  }
  CHECK(one.x == three.x);
  CHECK(one.y == three.y);
}

TEST_CASE("csv dump shape") {
  const LinkSpec link = make_link("pure-he1");
  const ProblemInstance instance = make_instance(3, link, NoiseKind::kRealizable, 0, 0.0, 26);
  const Batch batch = sample_batch(instance, 4, 27);
  std::ostringstream out;
  write_batch_csv(out, batch);
  const std::string text = out.str();
  CHECK(text.substr(0, 11) == "x0,x1,x2,y\n");
  std::size_t lines = 0;
  for (char c : text) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 5);  // header + 4 rows
}
