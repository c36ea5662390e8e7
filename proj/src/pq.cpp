#include "helix/pq.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace helix {

using json = nlohmann::ordered_json;

bool PrimeGraph::adjacent(long p, long q) const {
  if (p > q) std::swap(p, q);
  return std::find(edges.begin(), edges.end(), PrimePair{p, q}) != edges.end();
}

std::vector<PrimePair> PrimeGraph::non_edges() const {
  std::vector<PrimePair> out;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (!adjacent(vertices[i], vertices[j])) out.emplace_back(vertices[i], vertices[j]);
  return out;
}

PrimeGraph prime_graph(const CharacterTable& table, bool assume_coverage) {
  if (table.completeness() != Completeness::Full && !assume_coverage)
    throw DataError("table of " + table.group_name() + " is partial; its element orders may be incomplete");
  std::set<long> vertices;
  std::set<PrimePair> edges;
  for (long o : table.element_orders()) {
    std::vector<long> primes;
    for (auto [p, a] : factorize(o)) primes.push_back(p);
    vertices.insert(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size(); ++i)
      for (std::size_t j = i + 1; j < primes.size(); ++j) edges.emplace(primes[i], primes[j]);
  }
  return {{vertices.begin(), vertices.end()}, {edges.begin(), edges.end()}};
}

std::string to_string(PairOutcome outcome) {
  switch (outcome) {
    case PairOutcome::RuledOut: return "ruled_out";
    case PairOutcome::Undecided: return "undecided";
    case PairOutcome::Infinite: return "infinite";
    case PairOutcome::Capped: return "capped";
    case PairOutcome::Failed: return "failed";
  }
  return "failed";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Sufficient: return "HeLP_sufficient";
    case Verdict::Insufficient: return "HeLP_insufficient";
    case Verdict::Incomplete: return "incomplete";
  }
  return "incomplete";
}

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : ",") + p;
  return out;
}

PairReport check_pair(const CharacterTable& table, PrimePair pair, const PQOptions& options,
                      std::map<std::string, SolutionStore>& stores) {
  PairReport report;
  report.pair = pair;
  std::vector<std::string> chars = options.characters;
  auto plan = options.plans.find(pair);
  if (plan != options.plans.end()) {
    if (!plan->second.characters.empty()) chars = plan->second.characters;
    report.s_constant = plan->second.s_constant;
  }
  if (chars.empty())
    for (const auto& c : table.characters()) chars.push_back(c.name);
  report.characters = chars;
  long n = pair.first * pair.second;
  try {
    SolutionStore& store = stores[join(chars)];
    SolutionSet set;
    if (report.s_constant) {
      long s = *report.s_constant;
      if (s != pair.first && s != pair.second)
        throw EngineError("s-constant prime " + std::to_string(s) + " is not in the pair");
      set = solve_s_constant(table, chars, s, n / s, store, options.solve);
    } else {
      set = solve_order(table, chars, n, store, options.solve);
    }
    report.status = set.status;
    report.count = set.chains.size();
    report.warnings = set.warnings;
    for (const auto& c : set.chains)
      if (classify_chain(c) == ChainClass::Nontrivial) ++report.nontrivial;
    std::vector<PAChain> sample;
    for (const auto& c : set.chains)
      if (sample.size() < options.sample && classify_chain(c) == ChainClass::Nontrivial) sample.push_back(c);
    report.sample = std::move(sample);
    if (set.status == SolveStatus::Infinite)
      report.outcome = PairOutcome::Infinite;
    else if (report.count > 0)
      report.outcome = PairOutcome::Undecided;
    else if (set.status == SolveStatus::Capped)
      report.outcome = PairOutcome::Capped;
    else
      report.outcome = PairOutcome::RuledOut;
  } catch (const std::exception& e) {
    report.outcome = PairOutcome::Failed;
    report.error = e.what();
  }
  return report;
}

}  // namespace

PQReport pq_check(const CharacterTable& table, const PQOptions& options) {
  PQReport report;
  report.group_name = table.group_name();
  report.graph = prime_graph(table, options.assume_coverage);
  std::map<std::string, SolutionStore> stores;
  for (const auto& pair : report.graph.non_edges()) {
    if (options.only_pairs &&
        std::find(options.only_pairs->begin(), options.only_pairs->end(), pair) == options.only_pairs->end()) {
      report.untested.push_back(pair);
      continue;
    }
    report.pairs.push_back(check_pair(table, pair, options, stores));
  }
  bool all_ruled_out = report.untested.empty();
  bool witness = false;
  for (const auto& r : report.pairs) {
    if (r.outcome != PairOutcome::RuledOut) all_ruled_out = false;
    if (r.outcome == PairOutcome::Undecided || r.outcome == PairOutcome::Infinite) witness = true;
  }
  report.verdict = all_ruled_out ? Verdict::Sufficient : witness ? Verdict::Insufficient : Verdict::Incomplete;
  return report;
}

std::string render_report_json(const CharacterTable& table, const PQReport& report) {
  json j;
  j["group_name"] = report.group_name;
  j["prime_graph"] = {{"vertices", report.graph.vertices}, {"edges", json::array()}};
  for (const auto& [p, q] : report.graph.edges) j["prime_graph"]["edges"].push_back({p, q});
  json pairs = json::array();
  for (const auto& r : report.pairs) {
    json pj;
    pj["pair"] = {r.pair.first, r.pair.second};
    pj["order"] = r.pair.first * r.pair.second;
    pj["outcome"] = to_string(r.outcome);
    pj["count"] = r.count;
    pj["count_is_lower_bound"] = r.status == SolveStatus::Capped;
    pj["nontrivial"] = r.nontrivial;
    pj["characters"] = r.characters;
    if (r.s_constant) pj["s_constant"] = *r.s_constant;
    json sample = json::array();
    for (const auto& c : r.sample) sample.push_back(render_chain(table, c));
    pj["sample"] = sample;
    pj["warnings"] = r.warnings;
    if (!r.error.empty()) pj["error"] = r.error;
    pairs.push_back(pj);
  }
  j["pairs"] = pairs;
  json untested = json::array();
  for (const auto& [p, q] : report.untested) untested.push_back({p, q});
  j["untested"] = untested;
  j["verdict"] = to_string(report.verdict);
  json insufficient = json::array();
  for (const auto& r : report.pairs)
    if (r.outcome != PairOutcome::RuledOut) insufficient.push_back(r.pair.first * r.pair.second);
  j["not_ruled_out"] = insufficient;
  return j.dump(2) + "\n";
}

std::string render_report_text(const CharacterTable& table, const PQReport& report) {
  std::ostringstream os;
  os << report.group_name << '\n';
  os << "primes:";
  for (long p : report.graph.vertices) os << ' ' << p;
  os << "\nedges:";
  if (report.graph.edges.empty()) os << " none";
  for (const auto& [p, q] : report.graph.edges) os << ' ' << p << '-' << q;
  os << '\n';
  for (const auto& r : report.pairs) {
    os << "order " << r.pair.first * r.pair.second << ": " << to_string(r.outcome);
    if (r.outcome != PairOutcome::RuledOut && r.outcome != PairOutcome::Failed) {
      os << ", " << r.count << (r.status == SolveStatus::Capped ? "+" : "") << " chains";
      os << " (" << r.nontrivial << " nontrivial)";
    }
    if (r.s_constant) os << ", s-constant " << *r.s_constant;
    os << '\n';
    os << "  characters: " << join(r.characters) << '\n';
    for (const auto& c : r.sample) os << "  " << render_chain(table, c) << '\n';
    for (const auto& w : r.warnings) os << "  warning: " << w << '\n';
    if (!r.error.empty()) os << "  error: " << r.error << '\n';
  }
  for (const auto& [p, q] : report.untested) os << "order " << p * q << ": not tested\n";
  os << "verdict: " << to_string(report.verdict);
  if (report.verdict != Verdict::Sufficient) {
    std::vector<std::string> orders;
    for (const auto& r : report.pairs)
      if (r.outcome != PairOutcome::RuledOut) orders.push_back(std::to_string(r.pair.first * r.pair.second));
    if (!orders.empty()) os << " (" << join(orders) << ")";
  }
  os << '\n';
  return os.str();
}

}  // namespace helix
