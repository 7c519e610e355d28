#include "kap/linalg.hpp"

namespace kap {

std::vector<int> QMatrix::rref() {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < cols_ && row < rows(); ++col) {
    int pr = -1;
    for (int r = row; r < rows(); ++r)
      if (!at(r, col).is_zero()) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(m_[static_cast<size_t>(pr)], m_[static_cast<size_t>(row)]);
    Rat inv = at(row, col).inverse();
    for (int c = col; c < cols_; ++c) at(row, c) *= inv;
    for (int r = 0; r < rows(); ++r) {
      if (r == row || at(r, col).is_zero()) continue;
      Rat f = at(r, col);
      for (int c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int QMatrix::rank() const {
  QMatrix copy = *this;
  return static_cast<int>(copy.rref().size());
}

std::vector<std::vector<Rat>> QMatrix::kernel() const {
  QMatrix red = *this;
  std::vector<int> pivots = red.rref();
  std::vector<char> is_pivot_col(static_cast<size_t>(cols_), 0);
  for (int c : pivots) is_pivot_col[static_cast<size_t>(c)] = 1;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot_col[static_cast<size_t>(free)]) continue;
    std::vector<Rat> v(static_cast<size_t>(cols_), Rat(0));
    v[static_cast<size_t>(free)] = Rat(1);
    for (size_t p = 0; p < pivots.size(); ++p)
      v[static_cast<size_t>(pivots[p])] = -red.at(static_cast<int>(p), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

int stacked_rank(const std::vector<std::vector<Rat>>& rows, int cols) {
  QMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m.rank();
}

bool row_space_contained(const std::vector<std::vector<Rat>>& sub,
                         const std::vector<std::vector<Rat>>& sup, int cols) {
  int base = stacked_rank(sup, cols);
  for (const auto& r : sub) {
    QMatrix m(0, cols);
    for (const auto& s : sup) m.append_row(s);
    m.append_row(r);
    if (m.rank() != base) return false;
  }
  return true;
}

}  // namespace kap
