#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ttp/scalars.hpp"

namespace ttp {

class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(Field f, std::size_t rows, std::size_t cols)
      : field_(std::move(f)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static ScalarMatrix identity(const Field& f, std::size_t n) {
    ScalarMatrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = f.one();
    return m;
  }

  // Entries may live in an extension of f; the matrix then lives there too.
  static ScalarMatrix from_rows(Field f, const std::vector<std::vector<Scalar>>& rows) {
    for (const auto& r : rows)
      for (const auto& s : r) f = join(f, s.field());
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    ScalarMatrix m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(ErrorCode::InvalidArgument, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.data_[i * c + j] = rows[i][j].lift(f);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Field& field() const { return field_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void set(std::size_t i, std::size_t j, const Scalar& s) {
    if (!field_.contains(s.field())) *this = lift(join(field_, s.field()));
    data_[i * cols_ + j] = s.lift(field_);
  }

  ScalarMatrix lift(const Field& f) const {
    ScalarMatrix m(f, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k].lift(f);
    return m;
  }

  ScalarMatrix transpose() const {
    ScalarMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
  }

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch in product");
    Field f = join(a.field_, b.field_);
    ScalarMatrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c.data_[i * b.cols_ + j] += x * b(k, j);
      }
    return c;
  }

  friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::InvalidArgument, "matrix shape mismatch in sum");
    Field f = join(a.field_, b.field_);
    ScalarMatrix c(f, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.data_.size(); ++k) c.data_[k] = a.data_[k] + b.data_[k];
    return c;
  }

  friend bool operator==(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (a.data_[k] != b.data_[k]) return false;
    return true;
  }

  std::vector<Scalar> column(std::size_t j) const {
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).to_string();
      s += "]";
    }
    return s + "]";
  }

 private:
  Field field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

namespace detail {

struct ModOps {
  using T = std::uint64_t;
  std::uint64_t p;
  Field field;
  T from(const Scalar& s) const { return s.residue(); }
  Scalar to(T x) const { return field.from_int(static_cast<long>(x)); }
  bool zero(T x) const { return x == 0; }
  T one() const { return 1; }
  T inv(T x) const { return invmod(x, p); }
  T mul(T a, T b) const { return mulmod(a, b, p); }
  // a - c*b
  T axpy(T a, T c, T b) const { return (a + p - mulmod(c, b, p)) % p; }
  T neg(T x) const { return x ? p - x : 0; }
};

struct QOps {
  using T = mpq_class;
  Field field;
  T from(const Scalar& s) const { return s.rational(); }
  Scalar to(const T& x) const { return field.from_rational(x); }
  bool zero(const T& x) const { return sgn(x) == 0; }
  T one() const { return 1; }
  T inv(const T& x) const { return 1 / x; }
  T mul(const T& a, const T& b) const { return a * b; }
  T axpy(const T& a, const T& c, const T& b) const { return a - c * b; }
  T neg(const T& x) const { return -x; }
};

struct GenOps {
  using T = Scalar;
  Field field;
  T from(const Scalar& s) const { return s.lift(field); }
  Scalar to(const T& x) const { return x; }
  bool zero(const T& x) const { return x.is_zero(); }
  T one() const { return field.one(); }
  T inv(const T& x) const { return x.inv(); }
  T mul(const T& a, const T& b) const { return a * b; }
  T axpy(const T& a, const T& c, const T& b) const { return a - c * b; }
  T neg(const T& x) const { return -x; }
};

template <class Fn>
decltype(auto) with_ops(const Field& f, Fn&& fn) {
  if (f.kind() == Field::Kind::Prime) return fn(ModOps{f.characteristic(), f});
  if (f.kind() == Field::Kind::Rationals) return fn(QOps{f});
  return fn(GenOps{f});
}

// In-place reduced row echelon form; pivots are searched in the first `cols`
// columns only. Returns pivot columns in row order.
template <class Ops>
std::vector<std::size_t> rref(std::vector<std::vector<typename Ops::T>>& a, std::size_t cols, const Ops& ops, bool reverse) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t step = 0; step < cols && r < a.size(); ++step) {
    std::size_t c = reverse ? cols - 1 - step : step;
    std::size_t piv = r;
    while (piv < a.size() && ops.zero(a[piv][c])) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    auto iv = ops.inv(a[r][c]);
    for (auto& x : a[r]) x = ops.mul(x, iv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || ops.zero(a[i][c])) continue;
      auto f = a[i][c];
      for (std::size_t j = 0; j < a[r].size(); ++j)
        if (!ops.zero(a[r][j])) a[i][j] = ops.axpy(a[i][j], f, a[r][j]);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Ops>
std::vector<std::vector<typename Ops::T>> to_rows(const ScalarMatrix& m, const Ops& ops) {
  std::vector<std::vector<typename Ops::T>> a(m.rows(), std::vector<typename Ops::T>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = ops.from(m(i, j));
  return a;
}

}  // namespace detail

enum class PivotOrder { Forward, Reverse };

struct RankKernel {
  std::size_t rank = 0;
  ScalarMatrix kernel;  // columns form a basis of {v : M v = 0}
};

inline RankKernel rank_kernel(const ScalarMatrix& m, PivotOrder order = PivotOrder::Forward) {
  return detail::with_ops(m.field(), [&](const auto& ops) {
    auto a = detail::to_rows(m, ops);
    auto piv = detail::rref(a, m.cols(), ops, order == PivotOrder::Reverse);
    std::vector<char> is_piv(m.cols(), 0);
    for (auto c : piv) is_piv[c] = 1;
    std::size_t nfree = m.cols() - piv.size();
    RankKernel out{piv.size(), ScalarMatrix(m.field(), m.cols(), nfree)};
    std::size_t k = 0;
    for (std::size_t f = 0; f < m.cols(); ++f) {
      if (is_piv[f]) continue;
      out.kernel.set(f, k, m.field().one());
      for (std::size_t r = 0; r < piv.size(); ++r)
        if (!ops.zero(a[r][f])) out.kernel.set(piv[r], k, ops.to(ops.neg(a[r][f])));
      ++k;
    }
    return out;
  });
}

inline std::size_t rank(const ScalarMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return detail::with_ops(m.field(), [&](const auto& ops) {
    auto a = detail::to_rows(m, ops);
    return detail::rref(a, m.cols(), ops, false).size();
  });
}

inline Scalar det(const ScalarMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  std::size_t n = m.rows();
  std::vector<std::vector<Scalar>> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i].push_back(m(i, j));
  Scalar d = m.field().one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c].is_zero()) ++p;
    if (p == n) return m.field().zero();
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    Scalar iv = a[c][c].inv();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      Scalar f = a[i][c] * iv;
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return d;
}

inline ScalarMatrix inverse(const ScalarMatrix& m) {
  std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::InvalidArgument, "inverse of a non-square matrix");
  ScalarMatrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m(i, j));
    aug.set(i, n + i, m.field().one());
  }
  detail::GenOps ops{m.field()};
  auto a = detail::to_rows(aug, ops);
  auto piv = detail::rref(a, n, ops, false);
  if (piv.size() < n) throw Error(ErrorCode::DivisionByZero, "singular matrix");
  ScalarMatrix out(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.set(i, j, a[i][n + j]);
  return out;
}

/// Incremental echelon basis: answers "is v in the span so far" and grows it.
class RowSpan {
 public:
  RowSpan(const Field& f, std::size_t cols) : cols_(cols) {
    if (f.kind() == Field::Kind::Prime) {
      impl_ = Impl<detail::ModOps>{detail::ModOps{f.characteristic(), f}, {}, {}};
    } else if (f.kind() == Field::Kind::Rationals) {
      impl_ = Impl<detail::QOps>{detail::QOps{f}, {}, {}};
    } else {
      impl_ = Impl<detail::GenOps>{detail::GenOps{f}, {}, {}};
    }
  }

  std::size_t dim() const {
    return std::visit([](const auto& im) { return im.rows.size(); }, impl_);
  }

  using Sparse = std::vector<std::pair<std::size_t, Scalar>>;

  // Adds v when independent; returns whether it was added.
  bool insert(const std::vector<Scalar>& v) { return insert(to_sparse(v)); }
  bool contains(const std::vector<Scalar>& v) { return contains(to_sparse(v)); }
  bool insert(const Sparse& v) {
    return std::visit([&](auto& im) { return im.insert(v, cols_, true); }, impl_);
  }
  bool contains(const Sparse& v) {
    return std::visit([&](auto& im) { return !im.insert(v, cols_, false); }, impl_);
  }

 private:
  static Sparse to_sparse(const std::vector<Scalar>& v) {
    Sparse s;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!v[j].is_zero()) s.emplace_back(j, v[j]);
    return s;
  }

  template <class Ops>
  struct Impl {
    Ops ops;
    // Rows kept sparse: (column, value) sorted by column, pivot first with value 1.
    std::vector<std::vector<std::pair<std::size_t, typename Ops::T>>> rows;
    std::vector<long> row_of_pivot;

    bool insert(const Sparse& v, std::size_t cols, bool keep) {
      if (row_of_pivot.size() != cols) row_of_pivot.assign(cols, -1);
      std::vector<typename Ops::T> w(cols);
      std::size_t lo = cols;
      for (const auto& [j, s] : v) {
        w[j] = ops.from(s);
        lo = std::min(lo, j);
      }
      // Pivots are eliminated in increasing column order; rows only touch
      // columns at or after their pivot.
      for (std::size_t j = lo; j < cols; ++j) {
        if (ops.zero(w[j])) continue;
        long r = row_of_pivot[j];
        if (r < 0) continue;
        auto c = w[j];
        for (const auto& [k, x] : rows[static_cast<std::size_t>(r)]) w[k] = ops.axpy(w[k], c, x);
      }
      std::size_t p = 0;
      while (p < cols && ops.zero(w[p])) ++p;
      if (p == cols) return false;
      if (keep) {
        auto iv = ops.inv(w[p]);
        std::vector<std::pair<std::size_t, typename Ops::T>> row;
        for (std::size_t k = p; k < cols; ++k)
          if (!ops.zero(w[k])) row.emplace_back(k, ops.mul(w[k], iv));
        row_of_pivot[p] = static_cast<long>(rows.size());
        rows.push_back(std::move(row));
      }
      return true;
    }
  };

  std::size_t cols_;
  std::variant<Impl<detail::ModOps>, Impl<detail::QOps>, Impl<detail::GenOps>> impl_;
};

}  // namespace ttp
