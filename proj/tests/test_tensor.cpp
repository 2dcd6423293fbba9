#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

#include "simlearn/errors.hpp"
#include "simlearn/rng.hpp"
#include "simlearn/tensor.hpp"

using namespace simlearn;

namespace {

Vector random_vector(Rng& rng, int d) {
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.gaussian();
  return v;
}

DenseTensor random_tensor(Rng& rng, int d, int k) {
  DenseTensor t = zero_tensor(d, k);
  for (double& v : t.data) v = rng.gaussian();
  return t;
}

}  // namespace

TEST_CASE("outer builds product tensors") {
  Vector e1 = Vector::Unit(3, 0);
  const DenseTensor single = outer({e1});
  CHECK(single.order == 1);
  CHECK(single.data[0] == 1.0);
  CHECK(single.data[1] == 0.0);

  Vector w(2);
  w << 1.0, 2.0;
  const DenseTensor rank1 = outer({w, w});
  CHECK(rank1.data[0] == 1.0);  // (0,0)
  CHECK(rank1.data[1] == 2.0);  // (1,0)
  CHECK(rank1.data[2] == 2.0);  // (0,1)
  CHECK(rank1.data[3] == 4.0);  // (1,1)

  Vector mismatched(3);
  CHECK_THROWS_AS(outer({w, mismatched}), ArgumentError);
}

TEST_CASE("<w^k, v^k> = (w.v)^k") {
  Rng rng(21);
  for (int k = 1; k <= 4; ++k) {
    const Vector w = random_vector(rng, 4);
    const Vector v = random_vector(rng, 4);
    const DenseTensor wk = outer(std::vector<Vector>(static_cast<std::size_t>(k), w));
    const DenseTensor vk = outer(std::vector<Vector>(static_cast<std::size_t>(k), v));
    CHECK(inner_scalar(wk, vk) == doctest::Approx(std::pow(w.dot(v), k)).epsilon(1e-12));
  }
}

TEST_CASE("sym: fixed points, matrices, contraction invariance") {
  Rng rng(22);

  const Vector w = random_vector(rng, 3);
  const DenseTensor symmetric_input = outer({w, w, w});
  const DenseTensor resym = sym(symmetric_input);
  for (std::size_t f = 0; f < resym.data.size(); ++f) {
    CHECK(resym.data[f] == doctest::Approx(symmetric_input.data[f]).epsilon(1e-14));
  }

  // Order 2 reduces to (T + T^t)/2.
  const DenseTensor t2 = random_tensor(rng, 4, 2);
  const DenseTensor s2 = sym(t2);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double expected =
          0.5 * (t2.data[static_cast<std::size_t>(i + 4 * j)] +
                 t2.data[static_cast<std::size_t>(j + 4 * i)]);
      CHECK(s2.data[static_cast<std::size_t>(i + 4 * j)] == doctest::Approx(expected));
    }
  }

  // Idempotent, and <w^k, sym T> = <w^k, T>.
  for (int rep = 0; rep < 50; ++rep) {
    const DenseTensor t = random_tensor(rng, 3, 3);
    const DenseTensor s = sym(t);
    const DenseTensor ss = sym(s);
    for (std::size_t f = 0; f < s.data.size(); ++f) CHECK(ss.data[f] == s.data[f]);
    const Vector u = random_vector(rng, 3);
    const DenseTensor uk = outer({u, u, u});
    CHECK(inner_scalar(uk, s) == doctest::Approx(inner_scalar(uk, t)).epsilon(1e-12));
  }

  CHECK_THROWS_AS(sym(zero_tensor(2, 9)), ArgumentError);
}

TEST_CASE("||sym T||_F <= ||T||_F") {
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const DenseTensor t = random_tensor(rng, 3, 3);
    CHECK(frobenius(sym(t)) <= frobenius(t) + 1e-12);
  }
}

TEST_CASE("inner contracts leading indices") {
  Rng rng(24);
  const DenseTensor t = random_tensor(rng, 3, 2);
  CHECK(inner(t, t).data[0] == doctest::Approx(frobenius(t) * frobenius(t)).epsilon(1e-12));

  // inner(e_1, e_1 x e_2) leaves e_2.
  Vector e1 = Vector::Unit(3, 0), e2 = Vector::Unit(3, 1);
  const DenseTensor result = inner(outer({e1}), outer({e1, e2}));
  CHECK(result.order == 1);
  CHECK(result.data[0] == 0.0);
  CHECK(result.data[1] == 1.0);
  CHECK(result.data[2] == 0.0);

  CHECK_THROWS_AS(inner(random_tensor(rng, 3, 3), random_tensor(rng, 3, 2)), ArgumentError);
  CHECK_THROWS_AS(inner(random_tensor(rng, 2, 1), random_tensor(rng, 3, 2)), ArgumentError);
}

TEST_CASE("matricize is the exact index map") {
  Rng rng(25);

  // k=2, l=1 is the identity reshape.
  const DenseTensor t2 = random_tensor(rng, 4, 2);
  const UnfoldedMatrix m2 = matricize(t2, 1);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      CHECK(m2.entries(r, c) == t2.data[static_cast<std::size_t>(r + 4 * c)]);
    }
  }

  // Random probes of the multi-index decode for higher orders.
  const DenseTensor t4 = random_tensor(rng, 3, 4);
  const UnfoldedMatrix m4 = matricize(t4, 2);
  CHECK(m4.entries.rows() == 9);
  CHECK(m4.entries.cols() == 9);
  for (int probe = 0; probe < 100; ++probe) {
    const std::size_t flat = rng.next_u64() % t4.data.size();
    const std::size_t r = flat % 9, c = flat / 9;
    CHECK(m4.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) ==
          t4.data[flat]);
  }
  CHECK_THROWS_AS(matricize(t4, 5), ArgumentError);
}

TEST_CASE("matricize of a rank-1 power has singular value |w|^k") {
  Rng rng(26);
  const Vector w = random_vector(rng, 3);
  const DenseTensor w4 = outer({w, w, w, w});
  const UnfoldedMatrix m = matricize(w4, 2);
  Eigen::BDCSVD<Matrix> svd(Matrix(m.entries));
  CHECK(svd.singularValues()(0) == doctest::Approx(std::pow(w.norm(), 4)).epsilon(1e-10));
  CHECK(svd.singularValues()(1) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("matricize of a power is the exact vectorized outer product") {
  // Power-of-two entries keep every product exact, so the rank-1 factored
  // form must agree bitwise with the unfolded tensor.
  Vector w(3);
  w << 0.5, -2.0, 4.0;
  for (int k = 2; k <= 4; ++k) {
    const int l = k / 2;
    const UnfoldedMatrix m =
        matricize(outer(std::vector<Vector>(static_cast<std::size_t>(k), w)), l);
    const Vector rows = vectorize_power(w, l);
    const Vector cols = vectorize_power(w, k - l);
    for (Eigen::Index r = 0; r < rows.size(); ++r) {
      for (Eigen::Index c = 0; c < cols.size(); ++c) {
        CHECK(m.entries(r, c) == rows[r] * cols[c]);
      }
    }
  }
}

TEST_CASE("vectorize/tensorize round trips are exact") {
  Rng rng(27);
  for (int d : {2, 4, 6}) {
    for (int l = 0; l <= 3; ++l) {
      const Vector w = random_vector(rng, d);
      const Vector vec = vectorize_power(w, l);
      CHECK(vec.size() == static_cast<Eigen::Index>(checked_pow(d, l)));
      const DenseTensor direct = l == 0
                                     ? [] {
                                         DenseTensor t = zero_tensor(1, 0);
                                         t.data[0] = 1.0;
                                         return t;
                                       }()
                                     : outer(std::vector<Vector>(static_cast<std::size_t>(l), w));
      if (l > 0) {
        const DenseTensor round = tensorize(vec, l, d);
        for (std::size_t f = 0; f < direct.data.size(); ++f) {
          CHECK(round.data[f] == direct.data[f]);  // bitwise
        }
      } else {
        CHECK(vec[0] == 1.0);
      }
      CHECK(vec.norm() == doctest::Approx(std::pow(w.norm(), l)).epsilon(1e-12));
    }
  }

  // Round trip on arbitrary data.
  Vector v(8);
  for (int i = 0; i < 8; ++i) v[i] = static_cast<double>(i) - 3.5;
  const DenseTensor t = tensorize(v, 3, 2);
  for (int i = 0; i < 8; ++i) CHECK(t.data[static_cast<std::size_t>(i)] == v[i]);
  CHECK_THROWS_AS(tensorize(v, 2, 2), ArgumentError);
}

TEST_CASE("unit directions vectorize to unit vectors") {
  Rng rng(28);
  Vector w = random_vector(rng, 5);
  w.normalize();
  CHECK(vectorize_power(w, 3).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fold_rows index map and norm preservation") {
  Rng rng(29);
  const Vector w = random_vector(rng, 4);

  // l = 1: a single column.
  const Matrix col = fold_rows(w, 4);
  CHECK(col.rows() == 4);
  CHECK(col.cols() == 1);
  for (int i = 0; i < 4; ++i) CHECK(col(i, 0) == w[i]);

  // l = 2: rank-1 w w^t.
  const Matrix rank1 = fold_rows(vectorize_power(w, 2), 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(rank1(i, j) == doctest::Approx(w[i] * w[j]));
  }

  // Frobenius norm equals the vector norm.
  Vector v(16);
  for (int i = 0; i < 16; ++i) v[i] = rng.gaussian();
  CHECK(fold_rows(v, 4).norm() == doctest::Approx(v.norm()).epsilon(1e-13));

  Vector bad(10);
  CHECK_THROWS_AS(fold_rows(bad, 4), ArgumentError);
}

TEST_CASE("frobenius basics") {
  CHECK(frobenius(zero_tensor(3, 2)) == 0.0);
  Rng rng(30);
  const Vector w = random_vector(rng, 3);
  const DenseTensor w3 = outer({w, w, w});
  CHECK(frobenius(w3) == doctest::Approx(std::pow(w.norm(), 3)).epsilon(1e-12));
  const DenseTensor t = random_tensor(rng, 3, 2);
  CHECK(frobenius(t) == doctest::Approx(std::sqrt(inner_scalar(t, t))).epsilon(1e-12));
}

TEST_CASE("quadratic form identity v' mat_l(T) r = <T, tnsr(v) x tnsr(r)>") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 3);
    const int k = 2 + static_cast<int>(rng.next_u64() % 3);
    const int l = k / 2;
    const DenseTensor t = sym(random_tensor(rng, d, k));
    const UnfoldedMatrix m = matricize(t, l);
    Vector v = random_vector(rng, static_cast<int>(checked_pow(d, l)));
    Vector r = random_vector(rng, static_cast<int>(checked_pow(d, k - l)));
    v.normalize();
    r.normalize();

    const DenseTensor tv = tensorize(v, l, d);
    const DenseTensor tr = tensorize(r, k - l, d);
    DenseTensor prod = zero_tensor(d, k);
    for (std::size_t c = 0; c < tr.data.size(); ++c) {
      for (std::size_t rr = 0; rr < tv.data.size(); ++rr) {
        prod.data[rr + c * tv.data.size()] = tv.data[rr] * tr.data[c];
      }
    }
    const double direct = v.transpose() * m.entries * r;
    CHECK(std::fabs(direct - inner_scalar(t, prod)) <= 1e-12);
  }
}

TEST_CASE("tensor product norms multiply") {
  Rng rng(32);
  const int d = 3;
  Vector v = random_vector(rng, 9);
  Vector r = random_vector(rng, 3);
  const DenseTensor tv = tensorize(v, 2, d);
  const DenseTensor tr = tensorize(r, 1, d);
  DenseTensor prod = zero_tensor(d, 3);
  for (std::size_t c = 0; c < tr.data.size(); ++c) {
    for (std::size_t rr = 0; rr < tv.data.size(); ++rr) {
      prod.data[rr + c * tv.data.size()] = tv.data[rr] * tr.data[c];
    }
  }
  CHECK(frobenius(prod) == doctest::Approx(v.norm() * r.norm()).epsilon(1e-12));
}

TEST_CASE("materialization cap") {
  const std::size_t saved = dense_entry_cap();
  set_dense_entry_cap(1000);
  CHECK_THROWS_AS(zero_tensor(10, 4), ResourceError);
  CHECK_NOTHROW(zero_tensor(10, 3));
  set_dense_entry_cap(saved);
}

TEST_CASE("binary dump round trip is bitwise") {
  Rng rng(33);
  const DenseTensor t = random_tensor(rng, 4, 3);
  std::stringstream buffer;
  save_tensor(buffer, t);
  const DenseTensor loaded = load_tensor(buffer);
  CHECK(loaded.dim == t.dim);
  CHECK(loaded.order == t.order);
  for (std::size_t f = 0; f < t.data.size(); ++f) CHECK(loaded.data[f] == t.data[f]);

  std::stringstream truncated(buffer.str().substr(0, 20));
  CHECK_THROWS_AS(load_tensor(truncated), ArgumentError);
}
