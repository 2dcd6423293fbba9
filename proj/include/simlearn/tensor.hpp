#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace simlearn {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Unfolded Chow matrices are accumulated row-wise; keep them row-major.
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense order-k tensor over R^d. Entries are stored flattened with the
/// little-endian index map
///     flat(i_1, ..., i_k) = i_1 + i_2*d + ... + i_k*d^(k-1),   0-based,
/// so the first index varies fastest. Every unfold/fold below is defined
/// against this one formula.
struct DenseTensor {
  int dim = 1;    // d >= 1
  int order = 0;  // k >= 0
  std::vector<double> data;  // length d^k

  double& at_flat(std::size_t flat) { return data[flat]; }
  double at_flat(std::size_t flat) const { return data[flat]; }
};

/// mat_(l,k-l)(T) together with its provenance (d, k, l).
struct UnfoldedMatrix {
  int dim = 1;
  int order = 0;
  int split = 0;  // l
  RowMajorMatrix entries;  // d^l x d^(k-l)
};

/// Dense tensors refuse to materialize beyond this many entries (default 1e7).
std::size_t dense_entry_cap();
void set_dense_entry_cap(std::size_t cap);

/// d^k as size_t; throws ResourceError past the cap, ArgumentError on k < 0.
std::size_t checked_pow(int d, int k);

DenseTensor zero_tensor(int dim, int order);

/// Product tensor: entry (i_1..i_k) = vs[0][i_1] * ... * vs[k-1][i_k].
DenseTensor outer(const std::vector<Vector>& vs);

/// Symmetrization by explicit permutation enumeration; order <= 8.
DenseTensor sym(const DenseTensor& t);

/// Contraction of A (order k) against the first k indices of B (order m >= k);
/// the result has order m - k. For k = m the result is the order-0 scalar.
DenseTensor inner(const DenseTensor& a, const DenseTensor& b);

/// Convenience: full contraction of two same-shape tensors.
double inner_scalar(const DenseTensor& a, const DenseTensor& b);

double frobenius(const DenseTensor& t);

/// mat_(l,k-l): entry (r, c) = T at flat index r + c*d^l, where
/// r = i_1 + ... + i_l*d^(l-1) and c = j_1 + ... + j_(k-l)*d^(k-l-1).
UnfoldedMatrix matricize(const DenseTensor& t, int split);

/// vec(w^{x l}): entry at flat(i_1..i_l) = w_{i_1} ... w_{i_l}.
Vector vectorize_power(const Vector& w, int l);

/// Inverse of flattening: an order-l tensor whose entries are v in flat order.
DenseTensor tensorize(const Vector& v, int l, int dim);

/// mat_(1,l-1): reshape v in R^{d^l} to d x d^(l-1); entry (i, j) = v[i + j*d].
Matrix fold_rows(const Vector& v, int dim);

/// Binary dump: d then k as 64-bit little-endian, then d^k doubles in
/// flattening order. Used by the test-oracle tooling only.
void save_tensor(std::ostream& out, const DenseTensor& t);
DenseTensor load_tensor(std::istream& in);

}  // namespace simlearn
