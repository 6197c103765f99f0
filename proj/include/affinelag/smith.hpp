#pragma once

#include <affinelag/matrix.hpp>

#include <optional>
#include <utility>

namespace affinelag {

struct SparseEntry {
  std::size_t index;
  Integer value;
};

/// Sparse vector with strictly increasing indices and no stored zeros.
using SparseVector = std::vector<SparseEntry>;

/// Row-major sparse integer matrix.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  static SparseIntMatrix from_dense(const IntMatrix& m);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  /// Accumulates `value` into entry (r, c). Call normalize() before reading.
  void add(std::size_t r, std::size_t c, const Integer& value);
  void normalize();

  const SparseVector& row(std::size_t r) const { return rows_[r]; }
  SparseVector& row(std::size_t r) { return rows_[r]; }

  std::size_t nonzeros() const;
  IntMatrix to_dense() const;
  SparseIntMatrix transpose() const;

  /// Matrix-vector product over any exact ring.
  template <typename T>
  std::vector<T> multiply(std::span<const T> x) const {
    if (x.size() != cols_) throw std::invalid_argument("SparseIntMatrix: dimension mismatch");
    std::vector<T> out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& e : rows_[r]) out[r] += e.value * x[e.index];
    return out;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<SparseVector> rows_;
};

/// x += factor * y on sparse vectors.
void sparse_axpy(SparseVector& x, const Integer& factor, const SparseVector& y);

/// Product E_T ... E_1 of elementary row operations on Z^n, stored as an
/// operation log so that huge transforms stay cheap to build and apply.
class ElementaryTransform {
 public:
  enum class Kind { Swap, AddMultiple, Negate };

  struct Op {
    Kind kind;
    std::size_t i;
    std::size_t j;
    Integer factor;
  };

  explicit ElementaryTransform(std::size_t dimension = 0) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return ops_.size(); }
  const std::vector<Op>& ops() const { return ops_; }

  void swap(std::size_t i, std::size_t j) { ops_.push_back({Kind::Swap, i, j, 0}); }
  /// row_i += factor * row_j
  void add_multiple(std::size_t i, std::size_t j, const Integer& factor) {
    ops_.push_back({Kind::AddMultiple, i, j, factor});
  }
  void negate(std::size_t i) { ops_.push_back({Kind::Negate, i, i, 0}); }

  template <typename T>
  void apply(std::span<T> x) const {
    check(x.size());
    for (const auto& op : ops_) {
      switch (op.kind) {
        case Kind::Swap: std::swap(x[op.i], x[op.j]); break;
        case Kind::AddMultiple: x[op.i] += op.factor * x[op.j]; break;
        case Kind::Negate: x[op.i] = -x[op.i]; break;
      }
    }
  }

  template <typename T>
  void apply_inverse(std::span<T> x) const {
    check(x.size());
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
      switch (it->kind) {
        case Kind::Swap: std::swap(x[it->i], x[it->j]); break;
        case Kind::AddMultiple: x[it->i] -= it->factor * x[it->j]; break;
        case Kind::Negate: x[it->i] = -x[it->i]; break;
      }
    }
  }

  template <typename T>
  void apply_transpose(std::span<T> x) const {
    check(x.size());
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
      switch (it->kind) {
        case Kind::Swap: std::swap(x[it->i], x[it->j]); break;
        case Kind::AddMultiple: x[it->j] += it->factor * x[it->i]; break;
        case Kind::Negate: x[it->i] = -x[it->i]; break;
      }
    }
  }

  template <typename T>
  void apply_inverse_transpose(std::span<T> x) const {
    check(x.size());
    for (const auto& op : ops_) {
      switch (op.kind) {
        case Kind::Swap: std::swap(x[op.i], x[op.j]); break;
        case Kind::AddMultiple: x[op.j] -= op.factor * x[op.i]; break;
        case Kind::Negate: x[op.i] = -x[op.i]; break;
      }
    }
  }

  /// Replaces M by M * T^{-1}, where `columns` holds the columns of M.
  void apply_inverse_on_right(std::vector<SparseVector>& columns) const;

  IntMatrix to_dense() const;

 private:
  void check(std::size_t n) const {
    if (n != dimension_) throw std::invalid_argument("ElementaryTransform: dimension mismatch");
  }

  std::size_t dimension_;
  std::vector<Op> ops_;
};

/// Smith form U * A * V = S of a sparse matrix with U, V kept as operation logs.
/// V is stored through its transpose, which is again a product of row operations.
struct SparseSmithForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Nonzero invariant factors d_1 | d_2 | ... | d_r, all positive.
  std::vector<Integer> invariant_factors;
  ElementaryTransform left;
  ElementaryTransform right_transposed;

  std::size_t rank() const { return invariant_factors.size(); }

  /// x <- V x
  template <typename T>
  void apply_right(std::span<T> x) const { right_transposed.apply_transpose(x); }
  /// x <- V^{-1} x
  template <typename T>
  void apply_right_inverse(std::span<T> x) const { right_transposed.apply_inverse_transpose(x); }
};

struct SmithOptions {
  bool track_left = true;
  bool track_right = true;
};

SparseSmithForm sparse_smith_form(SparseIntMatrix a, SmithOptions options = {});

struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel_basis;
};

/// Integer solutions of A x = b: a particular solution plus a basis of the
/// integer kernel, or nullopt when b is not in the integer column span.
std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const IntVector& b);

struct RationalRankKernel {
  std::size_t rank = 0;
  std::vector<RationalVector> kernel_basis;
};

RationalRankKernel rank_and_kernel_rational(const RationalMatrix& a);

}  // namespace affinelag
