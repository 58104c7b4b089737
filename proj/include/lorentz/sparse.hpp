#pragma once

// Minimal complex sparse matrix (CSR) used for all truncated operators.

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "lorentz/types.hpp"

namespace lorentz {

struct Triplet {
  int r = 0;
  int c = 0;
  cplx v;
};

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), rp_(rows + 1, 0) {}

  static SparseMatrix from_triplets(int rows, int cols,
                                    std::vector<Triplet> trips) {
    std::sort(trips.begin(), trips.end(), [](const Triplet& a, const Triplet& b) {
      return a.r != b.r ? a.r < b.r : a.c < b.c;
    });
    SparseMatrix m(rows, cols);
    std::size_t i = 0;
    for (int r = 0; r < rows; ++r) {
      m.rp_[r] = static_cast<int>(m.ci_.size());
      while (i < trips.size() && trips[i].r == r) {
        cplx v = trips[i].v;
        const int c = trips[i].c;
        ++i;
        while (i < trips.size() && trips[i].r == r && trips[i].c == c) {
          v += trips[i].v;
          ++i;
        }
        if (v != 0.0) {
          m.ci_.push_back(c);
          m.v_.push_back(v);
        }
      }
    }
    m.rp_[rows] = static_cast<int>(m.ci_.size());
    return m;
  }

  static SparseMatrix identity(int n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return from_triplets(n, n, std::move(t));
  }

  static SparseMatrix diagonal(const Vec& d) {
    std::vector<Triplet> t;
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
      if (d[i] != 0.0) t.push_back({i, i, d[i]});
    return from_triplets(static_cast<int>(d.size()),
                         static_cast<int>(d.size()), std::move(t));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return v_.size(); }

  cplx at(int r, int c) const {
    for (int k = rp_[r]; k < rp_[r + 1]; ++k)
      if (ci_[k] == c) return v_[k];
    return 0.0;
  }

  Vec apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != cols_)
      throw std::invalid_argument("SparseMatrix::apply: size mismatch");
    Vec y(rows_, 0.0);
    for (int r = 0; r < rows_; ++r)
      for (int k = rp_[r]; k < rp_[r + 1]; ++k) y[r] += v_[k] * x[ci_[k]];
    return y;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("SparseMatrix::mul: shape mismatch");
    SparseMatrix m(a.rows_, b.cols_);
    std::vector<cplx> acc(b.cols_, 0.0);
    std::vector<int> touched;
    for (int r = 0; r < a.rows_; ++r) {
      m.rp_[r] = static_cast<int>(m.ci_.size());
      touched.clear();
      for (int ka = a.rp_[r]; ka < a.rp_[r + 1]; ++ka) {
        const int mid = a.ci_[ka];
        const cplx av = a.v_[ka];
        for (int kb = b.rp_[mid]; kb < b.rp_[mid + 1]; ++kb) {
          const int c = b.ci_[kb];
          if (acc[c] == 0.0) touched.push_back(c);
          acc[c] += av * b.v_[kb];
        }
      }
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        if (acc[c] != 0.0) {
          m.ci_.push_back(c);
          m.v_.push_back(acc[c]);
        }
        acc[c] = 0.0;
      }
    }
    m.rp_[a.rows_] = static_cast<int>(m.ci_.size());
    return m;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("SparseMatrix::add: shape mismatch");
    std::vector<Triplet> t;
    t.reserve(a.nnz() + b.nnz());
    a.append_triplets(t, 1.0);
    b.append_triplets(t, 1.0);
    return from_triplets(a.rows_, a.cols_, std::move(t));
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("SparseMatrix::sub: shape mismatch");
    std::vector<Triplet> t;
    t.reserve(a.nnz() + b.nnz());
    a.append_triplets(t, 1.0);
    b.append_triplets(t, -1.0);
    return from_triplets(a.rows_, a.cols_, std::move(t));
  }

  friend SparseMatrix operator*(cplx s, const SparseMatrix& a) {
    std::vector<Triplet> t;
    t.reserve(a.nnz());
    a.append_triplets(t, s);
    return from_triplets(a.rows_, a.cols_, std::move(t));
  }

  SparseMatrix adjoint() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (int r = 0; r < rows_; ++r)
      for (int k = rp_[r]; k < rp_[r + 1]; ++k)
        t.push_back({ci_[k], r, std::conj(v_[k])});
    return from_triplets(cols_, rows_, std::move(t));
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& z : v_) m = std::max(m, std::abs(z));
    return m;
  }

  // Largest |entry| among entries whose row AND column are kept by the mask.
  double max_abs_masked(const std::vector<bool>& keep) const {
    double m = 0.0;
    for (int r = 0; r < rows_; ++r) {
      if (!keep[r]) continue;
      for (int k = rp_[r]; k < rp_[r + 1]; ++k)
        if (keep[ci_[k]]) m = std::max(m, std::abs(v_[k]));
    }
    return m;
  }

  // Sub-matrix on the given (ordered) row/column index lists.
  SparseMatrix sub_block(const std::vector<int>& row_ids,
                         const std::vector<int>& col_ids) const {
    std::vector<int> col_pos(cols_, -1);
    for (int j = 0; j < static_cast<int>(col_ids.size()); ++j)
      col_pos[col_ids[j]] = j;
    std::vector<Triplet> t;
    for (int i = 0; i < static_cast<int>(row_ids.size()); ++i) {
      const int r = row_ids[i];
      for (int k = rp_[r]; k < rp_[r + 1]; ++k)
        if (col_pos[ci_[k]] >= 0) t.push_back({i, col_pos[ci_[k]], v_[k]});
    }
    return from_triplets(static_cast<int>(row_ids.size()),
                         static_cast<int>(col_ids.size()), std::move(t));
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    append_triplets(t, 1.0);
    return t;
  }

  // Coordinate CSV in the fixed enumeration order, 0-based indices.
  void write_csv(std::ostream& os) const {
    os << "row,col,re,im\n";
    char buf[80];
    for (int r = 0; r < rows_; ++r)
      for (int k = rp_[r]; k < rp_[r + 1]; ++k) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", r, ci_[k],
                      v_[k].real(), v_[k].imag());
        os << buf;
      }
  }

 private:
  void append_triplets(std::vector<Triplet>& t, cplx s) const {
    for (int r = 0; r < rows_; ++r)
      for (int k = rp_[r]; k < rp_[r + 1]; ++k)
        t.push_back({r, ci_[k], s * v_[k]});
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> rp_{0};
  std::vector<int> ci_;
  std::vector<cplx> v_;
};

inline double masked_norm2(const Vec& v, const std::vector<bool>& keep) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (keep[i]) s += std::norm(v[i]);
  return std::sqrt(s);
}

}  // namespace lorentz
