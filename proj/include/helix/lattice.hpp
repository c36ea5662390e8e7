#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helix/cyclo.hpp"

namespace helix {

using IntVector = std::vector<Integer>;

/// coeffs . x + constant
struct LinearForm {
  IntVector coeffs;
  Integer constant;
};

/// form(x) = 0 mod modulus
struct Congruence {
  LinearForm form;
  Integer modulus;
};

/// Integer points x with inequality forms >= 0, equality forms = 0 and all
/// congruences satisfied.
struct Polyhedron {
  std::size_t dimension = 0;
  std::vector<LinearForm> inequalities;
  std::vector<LinearForm> equalities;
  std::vector<Congruence> congruences;

  bool contains(const IntVector& x) const;
};

/// Closed interval with possibly infinite ends.
struct Interval {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

struct BoundsResult {
  bool feasible = false;
  Interval interval;
};

/// Exact range of coordinate index over the rational relaxation (equalities
/// kept, congruences ignored).
BoundsResult variable_bounds(const Polyhedron& poly, std::size_t index);

struct EnumerationResult {
  enum class Status { Finite, Infinite, Capped };
  Status status = Status::Finite;
  std::vector<IntVector> points;  // sorted; complete only for Finite
  IntVector ray;                  // Infinite: integer direction of the relaxation's recession cone
  IntVector witness;              // Infinite: a solution; witness + t*ray stays a solution
};

/// All integer solutions, sorted lexicographically. Returns Capped when more
/// than cap points exist or when an unbounded relaxation has no witness
/// solution within the search radius. jobs bounds worker threads.
EnumerationResult enumerate(const Polyhedron& poly, std::size_t cap, unsigned jobs = 1);

/// Brute force over an explicit box; sorted.
std::vector<IntVector> oracle_enumerate(const Polyhedron& poly,
                                        const std::vector<std::pair<long long, long long>>& box);

/// Human-readable dump, one row per line.
std::string dump_polyhedron(const Polyhedron& poly, const std::vector<std::string>& names = {});

}  // namespace helix
