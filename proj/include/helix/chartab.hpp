#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "helix/cyclo.hpp"

namespace helix {

/// Raised for malformed or inconsistent table data. The message names the
/// offending class or character.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConjClass {
  std::string name;
  long element_order = 1;
  std::optional<Integer> size;
  std::map<long, std::string> power_maps;  // prime -> class of p-th powers
};

struct Character {
  std::string name;
  long characteristic = 0;  // 0 for ordinary characters
  long degree = 1;
  std::vector<std::optional<CycValue>> values;  // aligned with the table's classes
};

enum class Completeness { Full, Partial };

/// Shortlex order on class names ("11z" < "11aa").
bool class_name_less(const std::string& a, const std::string& b);

class CharacterTable {
 public:
  CharacterTable() = default;
  /// Sorts classes canonically (element order, then name) and permutes the
  /// character values to match. Throws DataError on local inconsistencies.
  CharacterTable(std::string group_name, std::optional<Integer> order, std::vector<ConjClass> classes,
                 std::vector<Character> characters, Completeness completeness);

  const std::string& group_name() const { return group_name_; }
  const std::optional<Integer>& order() const { return order_; }
  const std::vector<ConjClass>& classes() const { return classes_; }
  const std::vector<Character>& characters() const { return characters_; }
  Completeness completeness() const { return completeness_; }

  std::optional<std::size_t> find_class(const std::string& name) const;
  std::size_t class_index(const std::string& name) const;  // throws DataError
  const ConjClass& conj_class(const std::string& name) const { return classes_[class_index(name)]; }
  const Character& character(const std::string& name) const;  // throws DataError
  std::optional<std::size_t> find_character(const std::string& name) const;

  /// Class of g^k for g in the named class, using prime power maps only.
  /// Throws DataError when a needed power map is absent.
  std::string power_class(const std::string& name, long k) const;

  /// Sorted distinct element orders.
  std::vector<long> element_orders() const;
  /// Class names with the given element order, in canonical order.
  std::vector<std::string> classes_of_order(long order) const;

 private:
  std::string group_name_;
  std::optional<Integer> order_;
  std::vector<ConjClass> classes_;
  std::vector<Character> characters_;
  Completeness completeness_ = Completeness::Partial;
};

/// Partial augmentations of one unit, keyed by class name. Contains every
/// admissible class (zeros included) so vectors compare position-wise.
using PAVector = std::map<std::string, long long>;

/// Entry m holds the partial augmentations of u^(n/m), an element of order m.
struct PAChain {
  long unit_order = 1;
  std::map<long, PAVector> entries;

  friend bool operator==(const PAChain&, const PAChain&) = default;
};

/// Divisors of n in increasing order.
std::vector<long> divisors(long n);

/// Classes of order dividing m other than 1a, in canonical order.
std::vector<std::string> admissible_classes(const CharacterTable& table, long m);

/// Chain of a group element of the named class.
PAChain trivial_chain(const CharacterTable& table, const std::string& class_name);

/// Sum of eps_C * chi(C). Throws DataError if chi is undefined on a class in
/// the support of pa.
CycValue unit_character_value(const Character& chi, const PAVector& pa, const CharacterTable& table);

struct ValidationReport {
  std::vector<std::string> checks;    // names of the checks that ran
  std::vector<std::string> failures;  // one line per violation
  bool ok() const { return failures.empty(); }
};

ValidationReport validate(const CharacterTable& table);

/// Table file format (JSON). Parsing validates local invariants.
CharacterTable parse_table(const std::string& text);
std::string render_table(const CharacterTable& table);

/// CycValue text encoding {"conductor": N, "terms": [[e, num, den], ...]}.
std::string render_cyc(const CycValue& v);
CycValue parse_cyc(const std::string& text);

}  // namespace helix
