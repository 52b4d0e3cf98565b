#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "oreform/base_poly.hpp"
#include "oreform/errors.hpp"
#include "oreform/ore_poly.hpp"

namespace oreform {

/// Dense rows x cols matrix over R*. Row-major.
class OreMatrix {
 public:
  OreMatrix() = default;
  OreMatrix(AlgebraPtr alg, std::size_t rows, std::size_t cols)
      : alg_(std::move(alg)), rows_(rows), cols_(cols), e_(rows * cols, OrePoly(alg_)) {}

  static OreMatrix identity(AlgebraPtr alg, std::size_t n) {
    OreMatrix m(alg, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = OrePoly::one(alg);
    return m;
  }

  static OreMatrix from_rows(AlgebraPtr alg, const std::vector<std::vector<OrePoly>>& rows) {
    if (rows.empty() || rows.front().empty()) throw DomainError("matrix must have positive dimensions");
    OreMatrix m(alg, rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j].is_zero() ? OrePoly(alg) : rows[i][j];
    }
    return m;
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  OrePoly& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const OrePoly& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  std::vector<OrePoly> row(std::size_t i) const {
    return std::vector<OrePoly>(e_.begin() + static_cast<long>(i * cols_),
                                e_.begin() + static_cast<long>((i + 1) * cols_));
  }

  OreMatrix operator*(const OreMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix dimension mismatch in product");
    OreMatrix r(alg_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const OrePoly& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (!o(k, j).is_zero()) r(i, j) += a * o(k, j);
      }
    return r;
  }

  OreMatrix operator+(const OreMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix dimension mismatch in sum");
    OreMatrix r = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) r.e_[k] += o.e_[k];
    return r;
  }

  OreMatrix transposed() const {
    OreMatrix r(alg_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool operator==(const OreMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const OreMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& p : e_)
      if (!p.is_zero()) return false;
    return true;
  }

  /// Zero off the main diagonal.
  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  /// At most one nonzero entry in every row and every column (a diagonal
  /// matrix up to row and column permutations).
  bool is_generalized_diagonal() const {
    std::vector<int> col_count(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      int n = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) {
          ++n;
          ++col_count[j];
        }
      if (n > 1) return false;
    }
    for (int c : col_count)
      if (c > 1) return false;
    return true;
  }

  /// Largest d-degree over all entries (kMinusInfinity when zero).
  long max_degree() const {
    long d = kMinusInfinity;
    for (const auto& p : e_) d = std::max(d, p.degree());
    return d;
  }

  std::size_t max_terms() const {
    std::size_t t = 0;
    for (const auto& p : e_) t = std::max(t, p.size());
    return t;
  }

  std::size_t max_coeff_bits() const {
    std::size_t b = 0;
    for (const auto& p : e_) b = std::max(b, p.coeff_bits());
    return b;
  }

 private:
  AlgebraPtr alg_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<OrePoly> e_;
};

/// Left fraction den^-1 * num with a nonzero base-ring denominator.
struct LeftFraction {
  BasePoly den;
  OrePoly num;
};

/// Input matrix whose entries may carry base-polynomial denominators.
struct FractionMatrix {
  AlgebraPtr alg;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<LeftFraction> entries;

  static FractionMatrix from_polynomial(const OreMatrix& m) {
    FractionMatrix f{m.algebra(), m.rows(), m.cols(), {}};
    const BasePoly one = BasePoly::one(m.algebra()->field(), m.algebra()->nvars());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) f.entries.push_back({one, m(i, j)});
    return f;
  }

  const LeftFraction& at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  LeftFraction& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }

  bool is_polynomial() const {
    for (const auto& e : entries)
      if (!e.den.is_constant()) return false;
    return true;
  }
};

}  // namespace oreform
