#include "lp.hpp"

#include <algorithm>

namespace helix::lp {

namespace {

class Tableau {
 public:
  Tableau(const RatMatrix& A, const RatVector& b) : rows_(A.size()), cols_(rows_ ? A[0].size() : 0) {
    width_ = cols_ + rows_;
    t_.assign(rows_, RatVector(width_ + 1));
    for (std::size_t i = 0; i < rows_; ++i) {
      bool flip = sgn(b[i]) < 0;
      for (std::size_t j = 0; j < cols_; ++j) t_[i][j] = flip ? Rational(-A[i][j]) : A[i][j];
      t_[i][cols_ + i] = 1;
      t_[i][width_] = flip ? Rational(-b[i]) : b[i];
      basis_.push_back(cols_ + i);
    }
    allowed_.assign(width_, true);
  }

  // Minimizes cost over the allowed columns. Returns false if unbounded.
  bool optimize(const RatVector& cost) {
    RatVector z(width_ + 1);
    for (std::size_t j = 0; j <= width_; ++j) {
      Rational acc = j < width_ ? cost[j] : Rational(0);
      for (std::size_t i = 0; i < t_.size(); ++i)
        if (sgn(cost[basis_[i]]) != 0) acc -= cost[basis_[i]] * t_[i][j];
      z[j] = acc;
    }
    while (true) {
      std::size_t enter = width_;
      for (std::size_t j = 0; j < width_; ++j)
        if (allowed_[j] && sgn(z[j]) < 0) {
          enter = j;
          break;
        }
      if (enter == width_) {
        value_ = -z[width_];
        return true;
      }
      std::size_t leave = t_.size();
      Rational best;
      for (std::size_t i = 0; i < t_.size(); ++i) {
        if (sgn(t_[i][enter]) <= 0) continue;
        Rational ratio = t_[i][width_] / t_[i][enter];
        if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter, z);
    }
  }

  void pivot(std::size_t r, std::size_t c, RatVector& z) {
    Rational inv = 1 / t_[r][c];
    for (auto& v : t_[r]) v *= inv;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (i == r || sgn(t_[i][c]) == 0) continue;
      Rational factor = t_[i][c];
      for (std::size_t j = 0; j <= width_; ++j)
        if (sgn(t_[r][j]) != 0) t_[i][j] -= factor * t_[r][j];
    }
    if (sgn(z[c]) != 0) {
      Rational factor = z[c];
      for (std::size_t j = 0; j <= width_; ++j)
        if (sgn(t_[r][j]) != 0) z[j] -= factor * t_[r][j];
    }
    basis_[r] = c;
  }

  // After phase I: pivots artificial columns out of the basis, dropping
  // redundant rows, and forbids them from re-entering.
  void remove_artificials() {
    RatVector dummy(width_ + 1);
    for (std::size_t i = 0; i < t_.size();) {
      if (basis_[i] < cols_) {
        ++i;
        continue;
      }
      std::size_t col = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn(t_[i][j]) != 0) {
          col = j;
          break;
        }
      if (col == cols_) {
        t_.erase(t_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
        continue;
      }
      pivot(i, col, dummy);
      ++i;
    }
    for (std::size_t j = cols_; j < width_; ++j) allowed_[j] = false;
  }

  std::size_t columns() const { return cols_; }
  std::size_t width() const { return width_; }
  const Rational& value() const { return value_; }
  const std::vector<std::size_t>& basis() const { return basis_; }

  RatVector solution() const {
    RatVector w(cols_);
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (basis_[i] < cols_) w[basis_[i]] = t_[i][width_];
    return w;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  RatMatrix t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> allowed_;
  Rational value_;
};

}  // namespace

StandardResult solve_standard(const RatMatrix& A, const RatVector& b, const RatVector& f) {
  StandardResult result;
  if (A.empty()) {
    // No constraints: w = 0 is optimal unless some cost is negative.
    bool unbounded = std::any_of(f.begin(), f.end(), [](const Rational& v) { return sgn(v) < 0; });
    result.status = unbounded ? Status::Unbounded : Status::Optimal;
    result.solution.assign(f.size(), Rational(0));
    return result;
  }
  Tableau tab(A, b);
  RatVector phase1(tab.width());
  for (std::size_t j = tab.columns(); j < tab.width(); ++j) phase1[j] = 1;
  tab.optimize(phase1);
  if (sgn(tab.value()) > 0) {
    result.status = Status::Infeasible;
    return result;
  }
  tab.remove_artificials();
  RatVector phase2(tab.width());
  for (std::size_t j = 0; j < tab.columns(); ++j) phase2[j] = f[j];
  if (!tab.optimize(phase2)) {
    result.status = Status::Unbounded;
    return result;
  }
  result.status = Status::Optimal;
  result.value = tab.value();
  result.solution = tab.solution();
  result.basis = tab.basis();
  return result;
}

MaxResult maximize(const RatMatrix& G, const RatVector& h, const RatVector& c) {
  std::size_t k = c.size();
  std::size_t rows = G.size();
  RatMatrix A(k, RatVector(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < k; ++j) A[j][i] = -G[i][j];
  MaxResult out;
  if (k == 0) {
    // No variables: feasible iff every constant is non-negative.
    bool ok = std::all_of(h.begin(), h.end(), [](const Rational& v) { return sgn(v) >= 0; });
    out.status = ok ? Status::Optimal : Status::Infeasible;
    return out;
  }
  StandardResult dual = solve_standard(A, c, h);
  switch (dual.status) {
    case Status::Optimal:
      out.status = Status::Optimal;
      out.value = dual.value;
      break;
    case Status::Infeasible:
      out.status = Status::Unbounded;
      break;
    case Status::Unbounded:
      out.status = Status::Infeasible;
      break;
  }
  return out;
}

bool feasible(const RatMatrix& G, const RatVector& h) {
  std::size_t k = G.empty() ? 0 : G[0].size();
  return maximize(G, h, RatVector(k)).status == Status::Optimal;
}

std::optional<RatVector> feasible_point(const RatMatrix& G, const RatVector& h) {
  std::size_t rows = G.size();
  std::size_t k = rows ? G[0].size() : 0;
  if (rows == 0) return RatVector(k);
  RatMatrix A(rows, RatVector(2 * k + rows));
  RatVector b(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      A[i][j] = G[i][j];
      A[i][k + j] = -G[i][j];
    }
    A[i][2 * k + i] = -1;
    b[i] = -h[i];
  }
  StandardResult r = solve_standard(A, b, RatVector(2 * k + rows));
  if (r.status != Status::Optimal) return std::nullopt;
  RatVector y(k);
  for (std::size_t j = 0; j < k; ++j) y[j] = r.solution[j] - r.solution[k + j];
  return y;
}

std::size_t rank(RatMatrix m) {
  std::size_t r = 0;
  std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rational factor = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace helix::lp
