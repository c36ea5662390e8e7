#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "helix/help.hpp"

namespace helix {

using PrimePair = std::pair<long, long>;  // p < q

struct PrimeGraph {
  std::vector<long> vertices;
  std::vector<PrimePair> edges;

  bool adjacent(long p, long q) const;
  std::vector<PrimePair> non_edges() const;
};

/// Reads element orders off the class list. A partial table needs
/// assume_coverage (the caller vouches that every element order is listed).
PrimeGraph prime_graph(const CharacterTable& table, bool assume_coverage = false);

struct PairPlan {
  std::vector<std::string> characters;  // empty: the default set
  std::optional<long> s_constant;       // merge the classes of this prime
};

struct PQOptions {
  std::vector<std::string> characters;  // default set; empty means every character
  std::map<PrimePair, PairPlan> plans;
  std::optional<std::vector<PrimePair>> only_pairs;
  SolveOptions solve;
  bool assume_coverage = false;
  std::size_t sample = 3;
};

enum class PairOutcome { RuledOut, Undecided, Infinite, Capped, Failed };

struct PairReport {
  PrimePair pair;
  PairOutcome outcome = PairOutcome::Failed;
  std::size_t count = 0;  // a lower bound when the solve was capped
  std::size_t nontrivial = 0;
  SolveStatus status = SolveStatus::Complete;
  std::vector<PAChain> sample;
  std::vector<std::string> characters;
  std::optional<long> s_constant;
  std::vector<std::string> warnings;
  std::string error;
};

enum class Verdict { Sufficient, Insufficient, Incomplete };

struct PQReport {
  std::string group_name;
  PrimeGraph graph;
  std::vector<PairReport> pairs;
  std::vector<PrimePair> untested;
  Verdict verdict = Verdict::Incomplete;
};

PQReport pq_check(const CharacterTable& table, const PQOptions& options = {});

std::string to_string(PairOutcome outcome);
std::string to_string(Verdict verdict);

std::string render_report_json(const CharacterTable& table, const PQReport& report);
std::string render_report_text(const CharacterTable& table, const PQReport& report);

}  // namespace helix
