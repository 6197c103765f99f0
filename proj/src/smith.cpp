#include <affinelag/smith.hpp>

#include <algorithm>
#include <limits>

namespace affinelag {

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix& m) {
  SparseIntMatrix s(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) s.rows_[r].push_back({c, m(r, c)});
  return s;
}

void SparseIntMatrix::add(std::size_t r, std::size_t c, const Integer& value) {
  if (r >= rows_.size() || c >= cols_) throw std::out_of_range("SparseIntMatrix::add");
  if (value != 0) rows_[r].push_back({c, value});
}

void SparseIntMatrix::normalize() {
  for (auto& row : rows_) {
    std::stable_sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
    SparseVector merged;
    merged.reserve(row.size());
    for (auto& e : row) {
      if (!merged.empty() && merged.back().index == e.index)
        merged.back().value += e.value;
      else
        merged.push_back(std::move(e));
    }
    std::erase_if(merged, [](const SparseEntry& e) { return e.value == 0; });
    row = std::move(merged);
  }
}

std::size_t SparseIntMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.size();
  return n;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix m(rows_.size(), cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& e : rows_[r]) m(r, e.index) = e.value;
  return m;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& e : rows_[r]) t.rows_[e.index].push_back({r, e.value});
  return t;
}

void sparse_axpy(SparseVector& x, const Integer& factor, const SparseVector& y) {
  if (factor == 0 || y.empty()) return;
  SparseVector out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].index < y[j].index)) {
      out.push_back(std::move(x[i++]));
    } else if (i == x.size() || y[j].index < x[i].index) {
      out.push_back({y[j].index, factor * y[j].value});
      ++j;
    } else {
      Integer v = x[i].value + factor * y[j].value;
      if (v != 0) out.push_back({x[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  x = std::move(out);
}

void ElementaryTransform::apply_inverse_on_right(std::vector<SparseVector>& columns) const {
  check(columns.size());
  for (const auto& op : ops_) {
    switch (op.kind) {
      case Kind::Swap: std::swap(columns[op.i], columns[op.j]); break;
      case Kind::AddMultiple: {
        Integer f = -op.factor;
        sparse_axpy(columns[op.j], f, columns[op.i]);
        break;
      }
      case Kind::Negate:
        for (auto& e : columns[op.i]) e.value = -e.value;
        break;
    }
  }
}

IntMatrix ElementaryTransform::to_dense() const {
  const std::size_t n = dimension_;
  IntMatrix m(n, n);
  IntVector column(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::fill(column.begin(), column.end(), Integer(0));
    column[k] = 1;
    apply(std::span<Integer>(column));
    for (std::size_t r = 0; r < n; ++r) m(r, k) = column[r];
  }
  return m;
}

namespace {

// Sparse elimination towards Smith form. Pivots are cleared first down their
// column by row operations and then along their row by column operations;
// once the column holds only the pivot, a column operation touches the pivot
// row alone, so it only needs to be logged.
class SmithEngine {
 public:
  SmithEngine(SparseIntMatrix a, SmithOptions options)
      : options_(options),
        rows_count_(a.rows()),
        cols_count_(a.cols()),
        column_rows_(a.cols()),
        row_active_(a.rows(), 1) {
    result_.rows = a.rows();
    result_.cols = a.cols();
    result_.left = ElementaryTransform(a.rows());
    result_.right_transposed = ElementaryTransform(a.cols());
    rows_.reserve(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      rows_.push_back(std::move(a.row(r)));
      for (const auto& e : rows_.back()) column_rows_[e.index].push_back(r);
    }
  }

  SparseSmithForm run() {
    while (true) {
      auto start = choose_pivot();
      if (!start) break;
      reduce(start->first, start->second);
    }
    finish();
    return std::move(result_);
  }

 private:
  struct Pivot {
    std::size_t row;
    std::size_t col;
    Integer value;
  };

  const Integer* find(std::size_t r, std::size_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const SparseEntry& e, std::size_t v) { return e.index < v; });
    if (it == row.end() || it->index != c) return nullptr;
    return &it->value;
  }

  std::vector<std::size_t> rows_in_column(std::size_t c) {
    auto& list = column_rows_[c];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::erase_if(list, [&](std::size_t r) { return !row_active_[r] || find(r, c) == nullptr; });
    return list;
  }

  std::optional<std::pair<std::size_t, std::size_t>> choose_pivot() const {
    std::size_t best_row = rows_count_;
    std::size_t best_len = std::numeric_limits<std::size_t>::max();
    for (std::size_t r = 0; r < rows_count_; ++r) {
      if (!row_active_[r] || rows_[r].empty()) continue;
      if (rows_[r].size() < best_len) {
        best_len = rows_[r].size();
        best_row = r;
        if (best_len == 1) break;
      }
    }
    if (best_row == rows_count_) return std::nullopt;
    const SparseEntry* best = nullptr;
    for (const auto& e : rows_[best_row]) {
      if (!best) {
        best = &e;
        continue;
      }
      int cmp = mpz_cmpabs(e.value.get_mpz_t(), best->value.get_mpz_t());
      if (cmp < 0 || (cmp == 0 && column_rows_[e.index].size() < column_rows_[best->index].size())) best = &e;
    }
    return std::make_pair(best_row, best->index);
  }

  void row_add(std::size_t target, std::size_t source, const Integer& factor) {
    sparse_axpy(rows_[target], factor, rows_[source]);
    for (const auto& e : rows_[source]) column_rows_[e.index].push_back(target);
    if (options_.track_left) result_.left.add_multiple(target, source, factor);
  }

  void reduce(std::size_t r, std::size_t c) {
    while (true) {
      const Integer p = *find(r, c);
      bool moved = false;
      for (std::size_t i : rows_in_column(c)) {
        if (i == r) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), find(i, c)->get_mpz_t(), p.get_mpz_t());
        if (q != 0) row_add(i, r, -q);
        if (find(i, c) != nullptr) {
          r = i;
          moved = true;
          break;
        }
      }
      if (moved) continue;

      // Column c now holds only the pivot; clear row r by column operations.
      auto& row = rows_[r];
      SparseVector kept;
      std::optional<std::size_t> next_col;
      for (std::size_t k = 0; k < row.size(); ++k) {
        auto& e = row[k];
        if (e.index == c || next_col) {
          kept.push_back(std::move(e));
          continue;
        }
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), e.value.get_mpz_t(), p.get_mpz_t());
        if (q != 0 && options_.track_right) result_.right_transposed.add_multiple(e.index, c, -q);
        e.value -= q * p;
        if (e.value != 0) {
          next_col = e.index;
          kept.push_back(std::move(e));
        }
      }
      row = std::move(kept);
      if (next_col) {
        c = *next_col;
        continue;
      }
      pivots_.push_back({r, c, p});
      row_active_[r] = 0;
      return;
    }
  }

  void fix_pair(std::size_t i, std::size_t j) {
    auto& d = result_.invariant_factors;
    Integer m00 = d[i], m01 = d[j], m10 = 0, m11 = d[j];
    left_op_add(i, j, 1);
    while (m01 != 0) {
      Integer q;
      mpz_tdiv_q(q.get_mpz_t(), m00.get_mpz_t(), m01.get_mpz_t());
      if (q != 0) {
        right_op_add(i, j, -q);
        m00 -= q * m01;
        m10 -= q * m11;
      }
      right_op_swap(i, j);
      std::swap(m00, m01);
      std::swap(m10, m11);
    }
    Integer q = m10 / m00;
    if (q != 0) left_op_add(j, i, -q);
    if (m00 < 0) {
      left_op_negate(i);
      m00 = -m00;
    }
    if (m11 < 0) {
      left_op_negate(j);
      m11 = -m11;
    }
    d[i] = m00;
    d[j] = m11;
  }

  void left_op_add(std::size_t i, std::size_t j, const Integer& f) {
    if (options_.track_left) result_.left.add_multiple(i, j, f);
  }
  void left_op_negate(std::size_t i) {
    if (options_.track_left) result_.left.negate(i);
  }
  void right_op_add(std::size_t i, std::size_t j, const Integer& f) {
    if (options_.track_right) result_.right_transposed.add_multiple(i, j, f);
  }
  void right_op_swap(std::size_t i, std::size_t j) {
    if (options_.track_right) result_.right_transposed.swap(i, j);
  }

  void finish() {
    for (auto& pv : pivots_)
      if (pv.value < 0) {
        left_op_negate(pv.row);
        pv.value = -pv.value;
      }

    std::vector<std::size_t> row_at(rows_count_), row_pos(rows_count_);
    std::vector<std::size_t> col_at(cols_count_), col_pos(cols_count_);
    for (std::size_t i = 0; i < rows_count_; ++i) row_at[i] = row_pos[i] = i;
    for (std::size_t i = 0; i < cols_count_; ++i) col_at[i] = col_pos[i] = i;
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      std::size_t cur = row_pos[pivots_[k].row];
      if (cur != k) {
        if (options_.track_left) result_.left.swap(k, cur);
        std::swap(row_at[k], row_at[cur]);
        row_pos[row_at[k]] = k;
        row_pos[row_at[cur]] = cur;
      }
      cur = col_pos[pivots_[k].col];
      if (cur != k) {
        right_op_swap(k, cur);
        std::swap(col_at[k], col_at[cur]);
        col_pos[col_at[k]] = k;
        col_pos[col_at[cur]] = cur;
      }
    }

    auto& d = result_.invariant_factors;
    for (const auto& pv : pivots_) d.push_back(pv.value);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d[i] == 1) continue;
      for (std::size_t j = i + 1; j < d.size(); ++j)
        if (!mpz_divisible_p(d[j].get_mpz_t(), d[i].get_mpz_t())) fix_pair(i, j);
    }
  }

  SmithOptions options_;
  std::size_t rows_count_;
  std::size_t cols_count_;
  std::vector<SparseVector> rows_;
  std::vector<std::vector<std::size_t>> column_rows_;
  std::vector<char> row_active_;
  std::vector<Pivot> pivots_;
  SparseSmithForm result_;
};

}  // namespace

SparseSmithForm sparse_smith_form(SparseIntMatrix a, SmithOptions options) {
  a.normalize();
  return SmithEngine(std::move(a), options).run();
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  auto form = sparse_smith_form(SparseIntMatrix::from_dense(a));
  SmithDecomposition out;
  out.U = form.left.to_dense();
  out.V = form.right_transposed.to_dense().transpose();
  out.S = IntMatrix(a.rows(), a.cols());
  for (std::size_t k = 0; k < form.rank(); ++k) out.S(k, k) = form.invariant_factors[k];
  return out;
}

std::optional<IntegerSolution> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer: dimension mismatch");
  auto form = sparse_smith_form(SparseIntMatrix::from_dense(a));
  IntVector y = b;
  form.left.apply(std::span<Integer>(y));
  const std::size_t rank = form.rank();
  for (std::size_t i = rank; i < y.size(); ++i)
    if (y[i] != 0) return std::nullopt;
  IntVector z(a.cols());
  for (std::size_t i = 0; i < rank; ++i) {
    const Integer& d = form.invariant_factors[i];
    if (!mpz_divisible_p(y[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    z[i] = y[i] / d;
  }
  IntegerSolution solution;
  form.apply_right(std::span<Integer>(z));
  solution.particular = std::move(z);
  for (std::size_t k = rank; k < a.cols(); ++k) {
    IntVector e(a.cols());
    e[k] = 1;
    form.apply_right(std::span<Integer>(e));
    solution.kernel_basis.push_back(std::move(e));
  }
  return solution;
}

RationalRankKernel rank_and_kernel_rational(const RationalMatrix& a) {
  RationalMatrix m = a;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m(p, k), m(r, k));
    Rational inv = 1 / m(r, c);
    for (std::size_t k = 0; k < cols; ++k) m(r, k) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t k = 0; k < cols; ++k) m(i, k) -= f * m(r, k);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  RationalRankKernel out;
  out.rank = pivot_cols.size();
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector k(cols);
    k[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) k[pivot_cols[i]] = -m(i, free);
    out.kernel_basis.push_back(std::move(k));
  }
  return out;
}

}  // namespace affinelag
