#pragma once

#include <vector>

#include "kap/rational.hpp"

namespace kap {

/**
 * Dense exact matrix over Q with row-reduction utilities. Pivoting is by
 * earliest column, first nonzero row, so results are deterministic.
 */
class QMatrix {
 public:
  QMatrix(int rows, int cols) : cols_(cols), m_(static_cast<size_t>(rows), std::vector<Rat>(static_cast<size_t>(cols), Rat(0))) {}
  explicit QMatrix(std::vector<std::vector<Rat>> rows, int cols) : cols_(cols), m_(std::move(rows)) {}

  int rows() const { return static_cast<int>(m_.size()); }
  int cols() const { return cols_; }
  Rat& at(int r, int c) { return m_[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
  const Rat& at(int r, int c) const { return m_[static_cast<size_t>(r)][static_cast<size_t>(c)]; }
  void append_row(std::vector<Rat> row) {
    KAP_CHECK(static_cast<int>(row.size()) == cols_, "row width mismatch");
    m_.push_back(std::move(row));
  }

  /// In-place reduced row echelon form; returns the pivot columns.
  std::vector<int> rref();
  int rank() const;
  /// Basis of the right kernel, one vector per free column, deterministic.
  std::vector<std::vector<Rat>> kernel() const;

 private:
  int cols_;
  std::vector<std::vector<Rat>> m_;
};

/// Rank of the row span of `rows` stacked on top of `extra` (both may be empty).
int stacked_rank(const std::vector<std::vector<Rat>>& rows, int cols);

/// True iff span(sub) is contained in span(sup).
bool row_space_contained(const std::vector<std::vector<Rat>>& sub,
                         const std::vector<std::vector<Rat>>& sup, int cols);

inline bool row_spaces_equal(const std::vector<std::vector<Rat>>& x,
                             const std::vector<std::vector<Rat>>& y, int cols) {
  return row_space_contained(x, y, cols) && row_space_contained(y, x, cols);
}

}  // namespace kap
