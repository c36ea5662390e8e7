#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "helix/chartab.hpp"
#include "helix/lattice.hpp"

namespace helix {

enum class Requirement {
  NonnegDivisible,  // value >= 0 and modulus | value
  Equals,           // value = 0
  Congruent,        // value = 0 mod modulus
};

/// coeffs . eps + constant, with a requirement on its value.
struct ConstraintRow {
  IntVector coeffs;
  Integer constant;
  Requirement kind = Requirement::Equals;
  Integer modulus;
  std::string provenance;  // "chi121a k=3", "normalization", "wagner p=3 on 11a", ...
};

/// Unreduced n * mu(zeta^k, u, chi) as an affine form.
struct MuForm {
  std::string character;
  long k = 0;
  IntVector coeffs;
  Integer constant;
  Integer degree;
};

struct ConstraintSystem {
  long unit_order = 1;
  std::vector<std::string> variables;
  std::vector<ConstraintRow> rows;
  std::vector<MuForm> mu_forms;
  std::vector<std::string> warnings;

  Polyhedron polyhedron() const;
  /// Rows violated by the given partial augmentations (provenance strings).
  std::vector<std::string> violations(const IntVector& eps) const;
  /// Sum over k of n * mu equals n * chi(1), checked coefficient-wise.
  bool fourier_identity_holds() const;
  std::string dump() const;
};

/// Raised when a HeLP system cannot be built from the given data.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The HeLP system for units of order n whose proper powers have the
/// partial augmentations in chain (entries for every divisor 1 < m < n).
ConstraintSystem build_system(const CharacterTable& table, const std::vector<std::string>& chars, long n,
                              const PAChain& chain);

enum class SolveStatus { Complete, Infinite, Capped };

struct SolutionSet {
  long unit_order = 1;
  std::vector<PAChain> chains;  // sorted
  SolveStatus status = SolveStatus::Complete;
  std::vector<std::string> warnings;
  std::vector<std::string> characters;
  std::optional<PAChain> witness;  // Infinite: one member of an infinite family
};

struct SolveOptions {
  std::size_t cap = 1000000;
  unsigned jobs = 1;
  /// Called with every system built during the solve, possibly from several
  /// threads at once.
  std::function<void(const ConstraintSystem&)> on_system;
};

/// Cap from HELIX_PQ_CAP if set, else 10^6.
std::size_t default_cap();

/// Memo of solved orders for one table and character list.
class SolutionStore {
 public:
  bool contains(long n) const { return sets_.count(n) > 0; }
  const SolutionSet& at(long n) const { return sets_.at(n); }
  void put(const SolutionSet& s) { sets_[s.unit_order] = s; }
  /// Binds the store to one (table, characters) pair; throws on reuse with another.
  void bind(const std::string& key);

 private:
  std::string key_;
  std::map<long, SolutionSet> sets_;
};

SolutionSet solve_order(const CharacterTable& table, const std::vector<std::string>& chars, long n,
                        SolutionStore& store, const SolveOptions& options = {});

/// Units of order s*t where every character is constant on the classes of
/// order s: those classes are merged into one class "<s>*".
SolutionSet solve_s_constant(const CharacterTable& table, const std::vector<std::string>& chars, long s, long t,
                             SolutionStore& store, const SolveOptions& options = {});

/// The table with all classes of order s merged into "<s>*", keeping only the
/// given characters (which must be constant there).
CharacterTable collapse_order(const CharacterTable& table, const std::vector<std::string>& chars, long s);

struct VerifyReport {
  bool satisfied = true;
  std::vector<std::string> violations;
  std::vector<std::string> skipped;  // characters skipped at some level
};

VerifyReport verify_chain(const CharacterTable& table, const std::vector<std::string>& chars, long n,
                          const PAChain& chain);

enum class ChainClass { Trivial, Nontrivial };
ChainClass classify_chain(const PAChain& chain);

/// Sort key: entries by increasing divisor, classes in canonical order.
std::vector<long long> chain_key(const CharacterTable& table, const PAChain& chain);

/// Paper-style tuple, e.g. "(1, 1, 0, -2, 2, 1)", over admissible classes.
std::string render_chain(const CharacterTable& table, const PAChain& chain);

std::string to_string(SolveStatus status);

/// Object with unit_order, status, count, characters, warnings and chains
/// (divisor -> class -> value) each tagged trivial or nontrivial.
std::string render_solutions_json(const CharacterTable& table, const SolutionSet& set);
/// One tuple per line, paper notation.
std::string render_solutions_text(const CharacterTable& table, const SolutionSet& set);

/// Accepts {"unit_order": n, "entries": {"m": {"class": value}}}, or a flat
/// list of integers over the admissible classes of every divisor in
/// increasing order (the tuple printed by render_chain), with or without
/// brackets or parentheses. Throws DataError.
PAChain parse_chain(const CharacterTable& table, long n, const std::string& text);
std::string render_chain_json(const PAChain& chain);

}  // namespace helix
