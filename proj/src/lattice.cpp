#include "helix/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lp.hpp"

namespace helix {

namespace {

using lp::RatMatrix;
using lp::RatVector;

Integer evaluate(const LinearForm& f, const IntVector& x) {
  Integer v = f.constant;
  for (std::size_t i = 0; i < x.size(); ++i) v += f.coeffs[i] * x[i];
  return v;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer ceil_rat(const Rational& r) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Integer floor_rat(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// The integer points of the equalities and congruences, written as
// x = origin + sum_j y_j * basis[j] with y ranging over Z^k.
struct Lattice {
  IntVector origin;
  std::vector<IntVector> basis;
};

std::optional<Lattice> parametrize(const Polyhedron& poly) {
  const std::size_t n = poly.dimension;
  const std::size_t extra = poly.congruences.size();
  const std::size_t width = n + extra;
  std::vector<IntVector> a;
  IntVector rhs;
  for (const auto& e : poly.equalities) {
    IntVector row(width);
    for (std::size_t j = 0; j < n; ++j) row[j] = e.coeffs[j];
    a.push_back(std::move(row));
    rhs.push_back(-e.constant);
  }
  for (std::size_t c = 0; c < extra; ++c) {
    const auto& cg = poly.congruences[c];
    IntVector row(width);
    for (std::size_t j = 0; j < n; ++j) row[j] = cg.form.coeffs[j];
    row[n + c] = -cg.modulus;
    a.push_back(std::move(row));
    rhs.push_back(-cg.form.constant);
  }
  std::vector<IntVector> u(width, IntVector(width));
  for (std::size_t j = 0; j < width; ++j) u[j][j] = 1;

  auto column_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& row : a) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  auto column_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };

  // Column echelon form A U = H by Euclidean column operations.
  std::vector<std::ptrdiff_t> pivot_of_row(a.size(), -1);
  std::size_t col = 0;
  for (std::size_t i = 0; i < a.size() && col < width; ++i) {
    while (true) {
      std::size_t best = width;
      for (std::size_t j = col; j < width; ++j)
        if (sgn(a[i][j]) != 0 && (best == width || abs(a[i][j]) < abs(a[i][best]))) best = j;
      if (best == width) break;
      column_swap(col, best);
      bool done = true;
      for (std::size_t j = col + 1; j < width; ++j) {
        if (sgn(a[i][j]) == 0) continue;
        column_axpy(j, col, floor_div(a[i][j], a[i][col]));
        if (sgn(a[i][j]) != 0) done = false;
      }
      if (done) {
        pivot_of_row[i] = static_cast<std::ptrdiff_t>(col);
        ++col;
        break;
      }
    }
  }

  IntVector v(width);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer s = rhs[i];
    std::size_t limit = pivot_of_row[i] >= 0 ? static_cast<std::size_t>(pivot_of_row[i]) : col;
    for (std::size_t j = 0; j < limit; ++j) s -= a[i][j] * v[j];
    if (pivot_of_row[i] >= 0) {
      const Integer& p = a[i][limit];
      if (s % p != 0) return std::nullopt;
      v[limit] = s / p;
    } else if (sgn(s) != 0) {
      return std::nullopt;
    }
  }

  Lattice lat;
  lat.origin.assign(n, Integer(0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t j = 0; j < col; ++j) lat.origin[r] += u[r][j] * v[j];
  for (std::size_t j = col; j < width; ++j) {
    IntVector b(n);
    for (std::size_t r = 0; r < n; ++r) b[r] = u[r][j];
    lat.basis.push_back(std::move(b));
  }
  return lat;
}

// Inequality a.y + c >= 0 in lattice coordinates.
struct Row {
  IntVector a;
  Integer c;
};

// Rewrites the inequalities in lattice coordinates, divides by the content
// with rounding of the constant, and drops dominated parallel rows. Returns
// nullopt if some constant row is violated.
std::optional<std::vector<Row>> lattice_rows(const Polyhedron& poly, const Lattice& lat) {
  std::size_t k = lat.basis.size();
  std::map<IntVector, Integer> best;
  for (const auto& f : poly.inequalities) {
    Row row{IntVector(k), evaluate(f, lat.origin)};
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < poly.dimension; ++r) row.a[j] += f.coeffs[r] * lat.basis[j][r];
    Integer g = 0;
    for (const auto& v : row.a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0) {
      if (sgn(row.c) < 0) return std::nullopt;
      continue;
    }
    for (auto& v : row.a) v /= g;
    row.c = floor_div(row.c, g);
    auto it = best.find(row.a);
    if (it == best.end())
      best.emplace(row.a, row.c);
    else if (row.c < it->second)
      it->second = row.c;
  }
  std::vector<Row> rows;
  for (auto& [a, c] : best) rows.push_back({a, c});
  return rows;
}

RatMatrix to_matrix(const std::vector<Row>& rows, std::size_t from, std::size_t k) {
  RatMatrix g;
  for (const auto& r : rows) {
    RatVector v;
    for (std::size_t j = from; j < k; ++j) v.emplace_back(r.a[j]);
    g.push_back(std::move(v));
  }
  return g;
}

RatVector constants(const std::vector<Row>& rows) {
  RatVector h;
  for (const auto& r : rows) h.emplace_back(r.c);
  return h;
}

IntVector to_x(const Lattice& lat, const IntVector& y) {
  IntVector x = lat.origin;
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t r = 0; r < x.size(); ++r) x[r] += y[j] * lat.basis[j][r];
  return x;
}

IntVector integer_direction(const RatVector& d) {
  Integer l = 1;
  for (const auto& v : d) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntVector out;
  Integer g = 0;
  for (const auto& v : d) {
    Rational s = v * l;
    out.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1)
    for (auto& v : out) v /= g;
  return out;
}

bool satisfies(const std::vector<Row>& rows, const IntVector& y) {
  for (const auto& r : rows) {
    Integer v = r.c;
    for (std::size_t j = 0; j < y.size(); ++j) v += r.a[j] * y[j];
    if (sgn(v) < 0) return false;
  }
  return true;
}

class Search {
 public:
  Search(const std::vector<Row>& rows, std::size_t k, std::size_t cap) : rows_(rows), k_(k), cap_(cap) {}

  // Integer range of y_level given the already fixed prefix, or nullopt.
  std::optional<std::pair<Integer, Integer>> range(const std::vector<Row>& rows, std::size_t level) const {
    if (level + 1 == k_) {
      std::optional<Integer> lo, hi;
      for (const auto& r : rows) {
        const Integer& a = r.a[level];
        if (sgn(a) == 0) {
          if (sgn(r.c) < 0) return std::nullopt;
        } else if (sgn(a) > 0) {
          Integer b = ceil_rat(Rational(-r.c, a));
          if (!lo || b > *lo) lo = b;
        } else {
          Integer b = floor_rat(Rational(r.c, -a));
          if (!hi || b < *hi) hi = b;
        }
      }
      if (!lo || !hi) throw std::logic_error("enumeration of an unbounded polytope");
      if (*lo > *hi) return std::nullopt;
      return std::make_pair(*lo, *hi);
    }
    std::vector<Row> live;
    for (const auto& r : rows) {
      bool zero = true;
      for (std::size_t j = level; j < k_ && zero; ++j) zero = sgn(r.a[j]) == 0;
      if (!zero) {
        live.push_back(r);
      } else if (sgn(r.c) < 0) {
        return std::nullopt;
      }
    }
    RatMatrix g = to_matrix(live, level, k_);
    RatVector h = constants(live);
    RatVector c(k_ - level);
    c[0] = 1;
    auto up = lp::maximize(g, h, c);
    if (up.status != lp::Status::Optimal) return std::nullopt;
    c[0] = -1;
    auto down = lp::maximize(g, h, c);
    if (down.status != lp::Status::Optimal) return std::nullopt;
    Integer lo = ceil_rat(-down.value), hi = floor_rat(up.value);
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
  }

  static std::vector<Row> fix(const std::vector<Row>& rows, std::size_t level, const Integer& value) {
    std::vector<Row> out = rows;
    for (auto& r : out) r.c += r.a[level] * value;
    return out;
  }

  void run(const std::vector<Row>& rows, std::size_t level, IntVector& prefix) {
    if (stop_.load()) return;
    auto r = range(rows, level);
    if (!r) return;
    for (Integer v = r->first; v <= r->second; ++v) {
      if (stop_.load()) return;
      prefix[level] = v;
      if (level + 1 == k_) {
        record(prefix);
      } else {
        run(fix(rows, level, v), level + 1, prefix);
      }
    }
  }

  void record(const IntVector& y) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (found_.size() >= cap_) {
      stop_ = true;
      capped_ = true;
      return;
    }
    found_.push_back(y);
  }

  std::vector<IntVector> take() { return std::move(found_); }
  bool capped() const { return capped_; }

 private:
  const std::vector<Row>& rows_;
  std::size_t k_;
  std::size_t cap_;
  std::mutex mutex_;
  std::vector<IntVector> found_;
  std::atomic<bool> stop_{false};
  bool capped_ = false;

 public:
  void run_top(unsigned jobs) {
    IntVector prefix(k_);
    if (jobs <= 1 || k_ == 1) {
      run(rows_, 0, prefix);
      return;
    }
    auto r = range(rows_, 0);
    if (!r) return;
    std::vector<Integer> values;
    for (Integer v = r->first; v <= r->second; ++v) values.push_back(v);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      IntVector local(k_);
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= values.size() || stop_.load()) return;
        local[0] = values[i];
        run(fix(rows_, 0, values[i]), 1, local);
      }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
};

// Searches lattice points near base + t*ray for growing t.
std::optional<IntVector> find_witness(const std::vector<Row>& rows, const RatVector& base, const IntVector& ray) {
  std::size_t k = base.size();
  std::size_t free_bits = std::min<std::size_t>(k, 12);
  for (long t = 0; t <= (1L << 20); t = t == 0 ? 1 : 2 * t) {
    RatVector p(k);
    for (std::size_t j = 0; j < k; ++j) p[j] = base[j] + Rational(ray[j] * t);
    for (long delta = 0; delta <= 2; ++delta) {
      for (std::size_t mask = 0; mask < (std::size_t{1} << free_bits); ++mask) {
        IntVector y(k);
        for (std::size_t j = 0; j < k; ++j) {
          bool up = j < free_bits && ((mask >> j) & 1);
          y[j] = up ? Integer(ceil_rat(p[j]) + delta) : Integer(floor_rat(p[j]) - delta);
        }
        if (satisfies(rows, y)) return y;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool Polyhedron::contains(const IntVector& x) const {
  for (const auto& f : inequalities)
    if (sgn(evaluate(f, x)) < 0) return false;
  for (const auto& f : equalities)
    if (sgn(evaluate(f, x)) != 0) return false;
  for (const auto& c : congruences)
    if (evaluate(c.form, x) % c.modulus != 0) return false;
  return true;
}

BoundsResult variable_bounds(const Polyhedron& poly, std::size_t index) {
  const std::size_t n = poly.dimension;
  if (index >= n) throw std::out_of_range("variable_bounds: index out of range");
  // Rational reduced row echelon form of the equalities.
  RatMatrix m;
  for (const auto& e : poly.equalities) {
    RatVector row;
    for (std::size_t j = 0; j < n; ++j) row.emplace_back(e.coeffs[j]);
    row.emplace_back(-e.constant);
    m.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      Rational factor = m[i][c];
      for (std::size_t j = 0; j <= n; ++j) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  BoundsResult result;
  for (std::size_t i = r; i < m.size(); ++i)
    if (sgn(m[i][n]) != 0) return result;

  std::vector<std::size_t> free_vars;
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free_vars.push_back(c);
  std::size_t k = free_vars.size();
  RatVector origin(n);
  RatMatrix basis(n, RatVector(k));
  for (std::size_t j = 0; j < k; ++j) basis[free_vars[j]][j] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    origin[pivots[i]] = m[i][n];
    for (std::size_t j = 0; j < k; ++j) basis[pivots[i]][j] = -m[i][free_vars[j]];
  }

  RatMatrix g;
  RatVector h;
  for (const auto& f : poly.inequalities) {
    RatVector row(k);
    Rational c = f.constant;
    for (std::size_t t = 0; t < n; ++t) {
      c += f.coeffs[t] * origin[t];
      for (std::size_t j = 0; j < k; ++j) row[j] += f.coeffs[t] * basis[t][j];
    }
    g.push_back(std::move(row));
    h.push_back(c);
  }
  if (!lp::feasible(g, h)) return result;
  result.feasible = true;
  RatVector obj = basis[index];
  auto up = lp::maximize(g, h, obj);
  if (up.status == lp::Status::Optimal) result.interval.upper = origin[index] + up.value;
  for (auto& v : obj) v = -v;
  auto down = lp::maximize(g, h, obj);
  if (down.status == lp::Status::Optimal) result.interval.lower = origin[index] - down.value;
  return result;
}

EnumerationResult enumerate(const Polyhedron& poly, std::size_t cap, unsigned jobs) {
  if (cap < 1) throw std::invalid_argument("enumeration cap must be at least 1");
  EnumerationResult result;
  auto lat = parametrize(poly);
  if (!lat) return result;
  auto rows = lattice_rows(poly, *lat);
  if (!rows) return result;
  const std::size_t k = lat->basis.size();
  if (k == 0) {
    result.points.push_back(lat->origin);
    return result;
  }
  RatMatrix g = to_matrix(*rows, 0, k);
  RatVector h = constants(*rows);
  if (!lp::feasible(g, h)) return result;

  bool bounded = lp::rank(g) == k;
  for (std::size_t j = 0; j < k && bounded; ++j) {
    for (int s : {1, -1}) {
      RatVector c(k);
      c[j] = s;
      if (lp::maximize(g, h, c).status != lp::Status::Optimal) bounded = false;
    }
  }

  if (!bounded) {
    std::optional<RatVector> direction;
    for (std::size_t j = 0; j < k && !direction; ++j) {
      for (int s : {1, -1}) {
        RatMatrix cone = g;
        RatVector zero(g.size());
        RatVector e(k);
        e[j] = s;
        cone.push_back(e);
        zero.push_back(-1);
        direction = lp::feasible_point(cone, zero);
        if (direction) break;
      }
    }
    auto base = lp::feasible_point(g, h);
    if (!direction || !base) throw std::logic_error("unbounded relaxation without a recession direction");
    IntVector d = integer_direction(*direction);
    auto witness = find_witness(*rows, *base, d);
    if (!witness) {
      result.status = EnumerationResult::Status::Capped;
      return result;
    }
    result.status = EnumerationResult::Status::Infinite;
    result.witness = to_x(*lat, *witness);
    result.ray.assign(poly.dimension, Integer(0));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t r = 0; r < poly.dimension; ++r) result.ray[r] += d[j] * lat->basis[j][r];
    return result;
  }

  Search search(*rows, k, cap);
  search.run_top(std::max(1u, jobs));
  std::vector<IntVector> ys = search.take();
  if (search.capped()) result.status = EnumerationResult::Status::Capped;
  for (const auto& y : ys) {
    IntVector x = to_x(*lat, y);
    if (!poly.contains(x)) throw std::logic_error("enumerated point violates the system");
    result.points.push_back(std::move(x));
  }
  std::sort(result.points.begin(), result.points.end());
  return result;
}

std::vector<IntVector> oracle_enumerate(const Polyhedron& poly,
                                        const std::vector<std::pair<long long, long long>>& box) {
  std::vector<IntVector> out;
  if (box.size() != poly.dimension) throw std::invalid_argument("oracle box dimension mismatch");
  for (const auto& [lo, hi] : box)
    if (lo > hi) return out;
  std::vector<long long> cur;
  for (const auto& [lo, hi] : box) cur.push_back(lo);
  while (true) {
    IntVector x;
    for (long long v : cur) x.emplace_back(static_cast<long>(v));
    if (poly.contains(x)) out.push_back(std::move(x));
    std::size_t i = 0;
    while (i < cur.size() && cur[i] == box[i].second) {
      cur[i] = box[i].first;
      ++i;
    }
    if (i == cur.size()) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::string form_text(const LinearForm& f, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
    const Integer& c = f.coeffs[j];
    if (sgn(c) == 0) continue;
    std::string name = j < names.size() ? names[j] : "x" + std::to_string(j);
    if (!first) os << (sgn(c) > 0 ? " + " : " - ");
    else if (sgn(c) < 0) os << "-";
    first = false;
    Integer a = abs(c);
    if (a != 1) os << a.get_str() << "*";
    os << name;
  }
  if (sgn(f.constant) != 0 || first) {
    if (first) os << f.constant.get_str();
    else os << (sgn(f.constant) > 0 ? " + " : " - ") << Integer(abs(f.constant)).get_str();
  }
  return os.str();
}

}  // namespace

std::string dump_polyhedron(const Polyhedron& poly, const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "dimension " << poly.dimension << "\n";
  for (const auto& f : poly.equalities) os << form_text(f, names) << " = 0\n";
  for (const auto& c : poly.congruences) os << form_text(c.form, names) << " = 0 mod " << c.modulus.get_str() << "\n";
  for (const auto& f : poly.inequalities) os << form_text(f, names) << " >= 0\n";
  return os.str();
}

}  // namespace helix
