#include "simlearn/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "simlearn/errors.hpp"

namespace simlearn {

namespace {

std::atomic<std::size_t> g_entry_cap{10'000'000};

static_assert(std::endian::native == std::endian::little,
              "tensor dump format assumes a little-endian host");

void require_same_dim(const DenseTensor& a, const DenseTensor& b) {
  if (a.dim != b.dim) {
    throw ArgumentError("tensor dim mismatch: " + std::to_string(a.dim) + " vs " +
                        std::to_string(b.dim));
  }
}

}  // namespace

std::size_t dense_entry_cap() { return g_entry_cap.load(); }
void set_dense_entry_cap(std::size_t cap) { g_entry_cap.store(cap); }

std::size_t checked_pow(int d, int k) {
  if (d < 1) throw ArgumentError("tensor dim must be >= 1");
  if (k < 0) throw ArgumentError("tensor order must be >= 0");
  const std::size_t cap = dense_entry_cap();
  std::size_t result = 1;
  for (int i = 0; i < k; ++i) {
    if (result > cap / static_cast<std::size_t>(d)) {
      throw ResourceError("dense tensor of dim " + std::to_string(d) + ", order " +
                          std::to_string(k) + " exceeds the materialization cap of " +
                          std::to_string(cap) + " entries");
    }
    result *= static_cast<std::size_t>(d);
  }
  if (result > cap) {
    throw ResourceError("dense tensor exceeds the materialization cap");
  }
  return result;
}

DenseTensor zero_tensor(int dim, int order) {
  DenseTensor t;
  t.dim = dim;
  t.order = order;
  t.data.assign(checked_pow(dim, order), 0.0);
  return t;
}

DenseTensor outer(const std::vector<Vector>& vs) {
  if (vs.empty()) throw ArgumentError("outer: need at least one vector");
  const int d = static_cast<int>(vs.front().size());
  for (const auto& v : vs) {
    if (v.size() != d) throw ArgumentError("outer: vectors must share one dim");
  }
  const int k = static_cast<int>(vs.size());
  DenseTensor t = zero_tensor(d, k);
  // Grow one factor at a time; step m appends i_{m+1} as the new slowest
  // digit, so entry flat(i_1..i_k) ends up as the product vs[0][i_1]...vs[k-1][i_k].
  std::size_t filled = 1;
  t.data[0] = 1.0;
  std::vector<double> scratch;
  for (int m = 0; m < k; ++m) {
    scratch.assign(t.data.begin(), t.data.begin() + static_cast<std::ptrdiff_t>(filled));
    std::size_t out = 0;
    for (int i = 0; i < d; ++i) {
      const double factor = vs[static_cast<std::size_t>(m)][i];
      for (std::size_t j = 0; j < filled; ++j) t.data[out++] = scratch[j] * factor;
    }
    filled *= static_cast<std::size_t>(d);
  }
  return t;
}

DenseTensor sym(const DenseTensor& t) {
  const int k = t.order;
  if (k > 8) throw ArgumentError("sym: order > 8 not supported");
  if (k <= 1) return t;
  const int d = t.dim;
  const std::size_t total = t.data.size();
  DenseTensor out = zero_tensor(d, k);

  std::vector<std::vector<int>> perms;
  {
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  // Every index in one symmetry orbit sums the same source values in the
  // same order (the digits are sorted first), so the output is constant on
  // orbits; an all-equal orbit short-circuits to its common value. Together
  // these make sym(sym(T)) == sym(T) bitwise.
  std::vector<int> digits(static_cast<std::size_t>(k));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (int pos = 0; pos < k; ++pos) {
      digits[static_cast<std::size_t>(pos)] = static_cast<int>(rest % static_cast<std::size_t>(d));
      rest /= static_cast<std::size_t>(d);
    }
    std::sort(digits.begin(), digits.end());

    double acc = 0.0;
    bool all_equal = true;
    double first = 0.0;
    for (std::size_t p = 0; p < perms.size(); ++p) {
      std::size_t src = 0;
      std::size_t stride = 1;
      for (int pos = 0; pos < k; ++pos) {
        src += static_cast<std::size_t>(
                   digits[static_cast<std::size_t>(perms[p][static_cast<std::size_t>(pos)])]) *
               stride;
        stride *= static_cast<std::size_t>(d);
      }
      const double value = t.data[src];
      if (p == 0) {
        first = value;
      } else if (value != first) {
        all_equal = false;
      }
      acc += value;
    }
    out.data[flat] = all_equal ? first : acc / static_cast<double>(perms.size());
  }
  return out;
}

DenseTensor inner(const DenseTensor& a, const DenseTensor& b) {
  require_same_dim(a, b);
  if (a.order > b.order) throw ArgumentError("inner: first order must be <= second");
  const std::size_t block = a.data.size();          // d^k
  const std::size_t rest = b.data.size() / block;   // d^(m-k)
  DenseTensor out = zero_tensor(a.dim, b.order - a.order);
  for (std::size_t r = 0; r < rest; ++r) {
    const double* bp = b.data.data() + r * block;
    double acc = 0.0;
    for (std::size_t i = 0; i < block; ++i) acc += a.data[i] * bp[i];
    out.data[r] = acc;
  }
  return out;
}

double inner_scalar(const DenseTensor& a, const DenseTensor& b) {
  if (a.order != b.order) throw ArgumentError("inner_scalar: order mismatch");
  return inner(a, b).data[0];
}

double frobenius(const DenseTensor& t) {
  double acc = 0.0;
  for (double v : t.data) acc += v * v;
  return std::sqrt(acc);
}

UnfoldedMatrix matricize(const DenseTensor& t, int split) {
  if (split < 0 || split > t.order) throw ArgumentError("matricize: split out of range");
  const std::size_t rows = checked_pow(t.dim, split);
  const std::size_t cols = checked_pow(t.dim, t.order - split);
  UnfoldedMatrix m;
  m.dim = t.dim;
  m.order = t.order;
  m.split = split;
  m.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  // flat(i_1..i_k) = r + c*d^l with r the first-l block, c the rest.
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) {
      m.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          t.data[r + c * rows];
    }
  }
  return m;
}

Vector vectorize_power(const Vector& w, int l) {
  if (l < 0) throw ArgumentError("vectorize_power: l must be >= 0");
  const int d = static_cast<int>(w.size());
  const std::size_t total = checked_pow(d, l);
  Vector v(static_cast<Eigen::Index>(total));
  v[0] = 1.0;
  std::size_t filled = 1;
  for (int m = 0; m < l; ++m) {
    // Append the next index as the new slowest digit; descending i keeps the
    // source block [0, filled) intact until its own in-place pass.
    for (int i = d - 1; i >= 0; --i) {
      const double factor = w[i];
      double* dst = v.data() + static_cast<std::size_t>(i) * filled;
      const double* src = v.data();
      for (std::size_t j = 0; j < filled; ++j) dst[j] = src[j] * factor;
    }
    filled *= static_cast<std::size_t>(d);
  }
  return v;
}

DenseTensor tensorize(const Vector& v, int l, int dim) {
  const std::size_t expected = checked_pow(dim, l);
  if (static_cast<std::size_t>(v.size()) != expected) {
    throw ArgumentError("tensorize: length " + std::to_string(v.size()) + " != dim^l");
  }
  DenseTensor t;
  t.dim = dim;
  t.order = l;
  t.data.assign(v.data(), v.data() + v.size());
  return t;
}

Matrix fold_rows(const Vector& v, int dim) {
  const std::size_t len = static_cast<std::size_t>(v.size());
  if (dim < 1 || len % static_cast<std::size_t>(dim) != 0 || len == 0) {
    throw ArgumentError("fold_rows: length must be a positive multiple of dim");
  }
  const std::size_t cols = len / static_cast<std::size_t>(dim);
  Matrix m(dim, static_cast<Eigen::Index>(cols));
  for (std::size_t j = 0; j < cols; ++j) {
    for (int i = 0; i < dim; ++i) {
      m(i, static_cast<Eigen::Index>(j)) = v[static_cast<Eigen::Index>(
          static_cast<std::size_t>(i) + j * static_cast<std::size_t>(dim))];
    }
  }
  return m;
}

void save_tensor(std::ostream& out, const DenseTensor& t) {
  const std::uint64_t d = static_cast<std::uint64_t>(t.dim);
  const std::uint64_t k = static_cast<std::uint64_t>(t.order);
  out.write(reinterpret_cast<const char*>(&d), sizeof d);
  out.write(reinterpret_cast<const char*>(&k), sizeof k);
  out.write(reinterpret_cast<const char*>(t.data.data()),
            static_cast<std::streamsize>(t.data.size() * sizeof(double)));
}

DenseTensor load_tensor(std::istream& in) {
  std::uint64_t d = 0, k = 0;
  in.read(reinterpret_cast<char*>(&d), sizeof d);
  in.read(reinterpret_cast<char*>(&k), sizeof k);
  if (!in) throw ArgumentError("load_tensor: truncated header");
  DenseTensor t = zero_tensor(static_cast<int>(d), static_cast<int>(k));
  in.read(reinterpret_cast<char*>(t.data.data()),
          static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  if (!in) throw ArgumentError("load_tensor: truncated payload");
  return t;
}

}  // namespace simlearn
