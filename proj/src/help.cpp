#include "helix/help.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

namespace helix {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (auto [p, a] : factorize(n)) out.push_back(p);
  return out;
}

// Tr_{Q(zeta_field)/Q}(v * zeta_field^shift); v must lie in Q(zeta_field).
Integer shifted_trace(const CycValue& v, long field, long shift, const std::string& what) {
  long N = v.conductor();
  if (field % N != 0) throw EngineError(what + ": value " + v.to_string() + " does not lie in Q(E(" + std::to_string(field) + "))");
  Rational acc;
  for (const auto& [e, c] : v.terms()) acc += c * root_trace(field, mod(e * (field / N) + shift, field), field);
  acc.canonicalize();
  if (acc.get_den() != 1) throw EngineError(what + ": non-integral trace " + acc.get_str());
  return acc.get_num();
}

PAVector normalized(const CharacterTable& table, long m, const PAVector& v, std::vector<std::string>* problems) {
  PAVector out;
  for (const auto& c : admissible_classes(table, m)) out[c] = 0;
  for (const auto& [name, eps] : v) {
    auto it = out.find(name);
    if (it == out.end()) {
      if (eps != 0 && problems) problems->push_back("class " + name + " is not admissible for order " + std::to_string(m));
      continue;
    }
    it->second = eps;
  }
  return out;
}

const Character& checked_character(const CharacterTable& table, const std::string& name, long n) {
  const Character& chi = table.character(name);
  if (chi.characteristic != 0 && n % chi.characteristic == 0)
    throw EngineError("character " + name + " is a " + std::to_string(chi.characteristic) +
                      "-Brauer character and cannot be used for units of order " + std::to_string(n));
  return chi;
}

bool same_row(const ConstraintRow& a, const ConstraintRow& b) {
  return a.kind == b.kind && a.modulus == b.modulus && a.constant == b.constant && a.coeffs == b.coeffs;
}

void push_unique(std::vector<ConstraintRow>& rows, ConstraintRow row) {
  for (const auto& r : rows)
    if (same_row(r, row)) return;
  rows.push_back(std::move(row));
}

void add_wagner_rows(const CharacterTable& table, long n, const PAChain& chain, ConstraintSystem& sys) {
  const auto& vars = sys.variables;
  bool missing = false;
  for (long p : prime_divisors(n)) {
    long m = n / p;
    for (const auto& c : table.classes()) {
      if (m % c.element_order != 0) continue;
      long long rhs = 0;
      if (c.name == "1a") {
        rhs = m == 1 ? 1 : 0;
      } else {
        const auto& entry = chain.entries.at(m);
        auto it = entry.find(c.name);
        rhs = it == entry.end() ? 0 : it->second;
      }
      ConstraintRow row;
      row.coeffs.assign(vars.size(), Integer(0));
      bool buildable = true;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        long o = table.conj_class(vars[i]).element_order;
        if (o / gcd(o, p) != c.element_order) continue;
        try {
          if (table.power_class(vars[i], p) == c.name) row.coeffs[i] = 1;
        } catch (const DataError&) {
          buildable = false;
          break;
        }
      }
      if (!buildable) {
        missing = true;
        continue;
      }
      row.constant = -static_cast<long>(rhs);
      row.kind = Requirement::Congruent;
      row.modulus = p;
      row.provenance = "wagner p=" + std::to_string(p) + " on " + c.name;
      push_unique(sys.rows, std::move(row));
    }
  }
  if (!missing) return;

  auto primes = factorize(n);
  bool pq = primes.size() == 2 && primes[0].second == 1 && primes[1].second == 1;
  if (!pq || !table.classes_of_order(n).empty()) {
    sys.warnings.push_back("order " + std::to_string(n) + ": power maps missing, some Wagner congruences omitted");
    return;
  }
  sys.warnings.push_back("order " + std::to_string(n) + ": power maps missing, using aggregated Wagner congruences");
  long p = primes[0].first;
  long q = primes[1].first;
  for (auto [a, b] : {std::pair{p, q}, std::pair{q, p}}) {
    ConstraintRow row;
    row.coeffs.assign(vars.size(), Integer(0));
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (table.conj_class(vars[i]).element_order == a) row.coeffs[i] = 1;
    row.kind = Requirement::Congruent;
    row.modulus = a;
    row.constant = 0;
    row.provenance = "wagner aggregated order " + std::to_string(a) + " mod " + std::to_string(a);
    push_unique(sys.rows, row);
    row.modulus = b;
    row.constant = -1;
    row.provenance = "wagner aggregated order " + std::to_string(a) + " mod " + std::to_string(b);
    push_unique(sys.rows, row);
  }
}

Integer evaluate(const IntVector& coeffs, const Integer& constant, const IntVector& x) {
  Integer v = constant;
  for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * x[i];
  return v;
}

// Characters usable for units of order m: Brauer characters whose
// characteristic divides m are left out.
std::vector<std::string> usable_characters(const CharacterTable& table, const std::vector<std::string>& chars,
                                           long m, std::vector<std::string>* skipped) {
  std::vector<std::string> out;
  for (const auto& name : chars) {
    const Character& chi = table.character(name);
    if (chi.characteristic != 0 && m % chi.characteristic == 0) {
      if (skipped) skipped->push_back(name + " at order " + std::to_string(m));
    } else {
      out.push_back(name);
    }
  }
  return out;
}

std::string store_key(const CharacterTable& table, const std::vector<std::string>& chars) {
  return table.group_name() + "|" + std::to_string(table.classes().size()) + "|" + join(chars, ",");
}

}  // namespace

Polyhedron ConstraintSystem::polyhedron() const {
  Polyhedron poly;
  poly.dimension = variables.size();
  std::set<std::pair<IntVector, Integer>> seen;  // reduced congruence (form, modulus)
  auto add_congruence = [&](const IntVector& coeffs, const Integer& constant, const Integer& m) {
    Congruence c;
    c.modulus = m;
    bool trivial = true;
    for (const auto& a : coeffs) {
      Integer r = a % m;
      if (r < 0) r += m;
      if (r != 0) trivial = false;
      c.form.coeffs.push_back(r);
    }
    Integer r = constant % m;
    if (r < 0) r += m;
    c.form.constant = r;
    if (trivial) {
      if (r != 0) poly.equalities.push_back({IntVector(coeffs.size(), Integer(0)), Integer(1)});
      return;
    }
    IntVector key = c.form.coeffs;
    key.push_back(r);
    if (seen.emplace(key, m).second) poly.congruences.push_back(std::move(c));
  };
  for (const auto& row : rows) {
    switch (row.kind) {
      case Requirement::Equals:
        poly.equalities.push_back({row.coeffs, row.constant});
        break;
      case Requirement::NonnegDivisible:
        poly.inequalities.push_back({row.coeffs, row.constant});
        add_congruence(row.coeffs, row.constant, row.modulus);
        break;
      case Requirement::Congruent:
        add_congruence(row.coeffs, row.constant, row.modulus);
        break;
    }
  }
  return poly;
}

std::vector<std::string> ConstraintSystem::violations(const IntVector& eps) const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    Integer v = evaluate(row.coeffs, row.constant, eps);
    bool ok = true;
    switch (row.kind) {
      case Requirement::Equals:
        ok = v == 0;
        break;
      case Requirement::NonnegDivisible:
        ok = v >= 0 && v % row.modulus == 0;
        break;
      case Requirement::Congruent:
        ok = v % row.modulus == 0;
        break;
    }
    if (!ok) out.push_back(row.provenance + " (value " + v.get_str() + ")");
  }
  return out;
}

bool ConstraintSystem::fourier_identity_holds() const {
  std::map<std::string, std::pair<IntVector, Integer>> sums;
  std::map<std::string, Integer> degrees;
  for (const auto& f : mu_forms) {
    auto& [coeffs, constant] = sums[f.character];
    if (coeffs.empty()) coeffs.assign(f.coeffs.size(), Integer(0));
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) coeffs[i] += f.coeffs[i];
    constant += f.constant;
    degrees[f.character] = f.degree;
  }
  for (const auto& [name, sum] : sums) {
    for (const auto& c : sum.first)
      if (c != 0) return false;
    if (sum.second != degrees[name] * unit_order) return false;
  }
  return true;
}

std::string ConstraintSystem::dump() const {
  std::ostringstream os;
  os << "order " << unit_order << ", variables";
  for (const auto& v : variables) os << ' ' << v;
  os << '\n';
  for (const auto& row : rows) {
    std::ostringstream form;
    bool first = true;
    for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
      const Integer& c = row.coeffs[i];
      if (c == 0) continue;
      if (!first) form << (c < 0 ? " - " : " + ");
      else if (c < 0) form << '-';
      Integer a = abs(c);
      if (a != 1) form << a << '*';
      form << 'e' << variables[i];
      first = false;
    }
    if (row.constant != 0 || first) {
      if (first) form << row.constant;
      else form << (row.constant < 0 ? " - " : " + ") << abs(row.constant);
    }
    os << form.str();
    switch (row.kind) {
      case Requirement::Equals:
        os << " = 0";
        break;
      case Requirement::NonnegDivisible:
        os << " >= 0, divisible by " << row.modulus;
        break;
      case Requirement::Congruent:
        os << " = 0 mod " << row.modulus;
        break;
    }
    os << "   [" << row.provenance << "]\n";
  }
  for (const auto& w : warnings) os << "warning: " << w << '\n';
  return os.str();
}

ConstraintSystem build_system(const CharacterTable& table, const std::vector<std::string>& chars, long n,
                              const PAChain& chain) {
  if (n < 1) throw EngineError("unit order must be positive");
  ConstraintSystem sys;
  sys.unit_order = n;
  sys.variables = admissible_classes(table, n);
  const auto& vars = sys.variables;
  std::vector<long> divs = divisors(n);
  for (long m : divs)
    if (m > 1 && m < n && !chain.entries.count(m))
      throw EngineError("chain has no entry for order " + std::to_string(m));

  ConstraintRow norm;
  norm.coeffs.assign(vars.size(), Integer(1));
  norm.constant = -1;
  norm.kind = Requirement::Equals;
  norm.provenance = "normalization";
  sys.rows.push_back(norm);

  for (const auto& name : chars) {
    const Character& chi = checked_character(table, name, n);
    std::vector<const CycValue*> values;
    for (const auto& v : vars) {
      const auto& val = chi.values[table.class_index(v)];
      if (!val) throw EngineError("character " + name + " is undefined on class " + v);
      values.push_back(&*val);
    }
    // chi(u^d) for every divisor d > 1, taken from the chain entry of order n/d.
    std::vector<std::pair<long, CycValue>> powers;
    for (long d : divs) {
      if (d == 1) continue;
      if (d == n) {
        powers.emplace_back(d, CycValue(chi.degree));
        continue;
      }
      try {
        powers.emplace_back(d, unit_character_value(chi, chain.entries.at(n / d), table));
      } catch (const DataError& e) {
        throw EngineError(e.what());
      }
    }
    for (long k = 0; k < n; ++k) {
      std::string what = name + " k=" + std::to_string(k);
      MuForm f;
      f.character = name;
      f.k = k;
      f.degree = chi.degree;
      for (const auto& [d, val] : powers) f.constant += shifted_trace(val, n / d, -k, what);
      for (const CycValue* v : values) f.coeffs.push_back(shifted_trace(*v, n, -k, what));
      ConstraintRow row;
      row.coeffs = f.coeffs;
      row.constant = f.constant;
      row.kind = Requirement::NonnegDivisible;
      row.modulus = n;
      row.provenance = what;
      sys.mu_forms.push_back(std::move(f));
      push_unique(sys.rows, std::move(row));
    }
  }
  add_wagner_rows(table, n, chain, sys);
  return sys;
}

std::size_t default_cap() {
  if (const char* env = std::getenv("HELIX_PQ_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

void SolutionStore::bind(const std::string& key) {
  if (key_.empty()) {
    key_ = key;
    return;
  }
  if (key_ != key) throw EngineError("solution store already holds results for " + key_);
}

std::vector<long long> chain_key(const CharacterTable& table, const PAChain& chain) {
  std::vector<long long> key;
  for (const auto& [m, entry] : chain.entries)
    for (const auto& c : admissible_classes(table, m)) {
      auto it = entry.find(c);
      key.push_back(it == entry.end() ? 0 : it->second);
    }
  return key;
}

std::string render_chain(const CharacterTable& table, const PAChain& chain) {
  std::vector<std::string> parts;
  for (const auto& v : chain_key(table, chain)) parts.push_back(std::to_string(v));
  return "(" + join(parts, ", ") + ")";
}

ChainClass classify_chain(const PAChain& chain) {
  for (const auto& [m, entry] : chain.entries)
    for (const auto& [c, v] : entry)
      if (v < 0) return ChainClass::Nontrivial;
  return ChainClass::Trivial;
}

namespace {

struct ComboResult {
  std::vector<PAChain> chains;
  EnumerationResult::Status status = EnumerationResult::Status::Finite;
  std::optional<PAChain> witness;
  std::vector<std::string> warnings;
};

ComboResult solve_combo(const CharacterTable& table, const std::vector<std::string>& chars, long n,
                        const PAChain& lower, const SolveOptions& options, unsigned jobs) {
  ComboResult out;
  ConstraintSystem sys = build_system(table, chars, n, lower);
  if (options.on_system) options.on_system(sys);
  out.warnings = sys.warnings;
  EnumerationResult r = enumerate(sys.polyhedron(), options.cap, jobs);
  out.status = r.status;
  auto to_chain = [&](const IntVector& x) {
    PAChain c = lower;
    c.unit_order = n;
    PAVector v;
    for (std::size_t i = 0; i < x.size(); ++i) v[sys.variables[i]] = x[i].get_si();
    c.entries[n] = std::move(v);
    return c;
  };
  for (const auto& x : r.points) out.chains.push_back(to_chain(x));
  if (r.status == EnumerationResult::Status::Infinite) out.witness = to_chain(r.witness);
  return out;
}

// All consistent merges of solutions at the maximal proper divisors of n.
std::vector<PAChain> lower_chains(const CharacterTable& table, const std::vector<std::string>& chars, long n,
                                  SolutionStore& store, const SolveOptions& options, SolutionSet& result) {
  std::vector<PAChain> combos{PAChain{n, {}}};
  for (long p : prime_divisors(n)) {
    long m = n / p;
    if (m == 1) continue;
    SolutionSet sub = solve_order(table, chars, m, store, options);
    for (const auto& w : sub.warnings)
      if (std::find(result.warnings.begin(), result.warnings.end(), w) == result.warnings.end())
        result.warnings.push_back(w);
    if (sub.status != SolveStatus::Complete) {
      result.status = SolveStatus::Capped;
      result.warnings.push_back("order " + std::to_string(m) + " solutions are not finite or were capped");
    }
    std::vector<PAChain> next;
    for (const auto& base : combos) {
      for (const auto& s : sub.chains) {
        PAChain merged = base;
        bool ok = true;
        for (const auto& [d, entry] : s.entries) {
          auto [it, inserted] = merged.entries.emplace(d, entry);
          if (!inserted && it->second != entry) {
            ok = false;
            break;
          }
        }
        if (ok) next.push_back(std::move(merged));
      }
    }
    combos = std::move(next);
  }
  return combos;
}

}  // namespace

SolutionSet solve_order(const CharacterTable& table, const std::vector<std::string>& chars, long n,
                        SolutionStore& store, const SolveOptions& options) {
  if (n < 2) throw EngineError("unit order must be at least 2");
  store.bind(store_key(table, chars));
  if (store.contains(n)) return store.at(n);
  std::vector<std::string> skipped;
  std::vector<std::string> level_chars = usable_characters(table, chars, n, &skipped);

  SolutionSet result;
  result.unit_order = n;
  result.characters = level_chars;
  for (const auto& s : skipped) result.warnings.push_back("skipped " + s);
  std::vector<PAChain> combos = lower_chains(table, chars, n, store, options, result);

  std::vector<ComboResult> results(combos.size());
  unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || combos.size() < 2) {
    for (std::size_t i = 0; i < combos.size(); ++i)
      results[i] = solve_combo(table, level_chars, n, combos[i], options, jobs);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w)
      workers.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < combos.size(); i = next++)
            results[i] = solve_combo(table, level_chars, n, combos[i], options, 1);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : workers) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (auto& r : results) {
    for (auto& w : r.warnings)
      if (std::find(result.warnings.begin(), result.warnings.end(), w) == result.warnings.end())
        result.warnings.push_back(w);
    for (auto& c : r.chains) result.chains.push_back(std::move(c));
    if (r.status == EnumerationResult::Status::Infinite) {
      result.status = SolveStatus::Infinite;
      if (!result.witness) result.witness = r.witness;
    } else if (r.status == EnumerationResult::Status::Capped && result.status == SolveStatus::Complete) {
      result.status = SolveStatus::Capped;
    }
  }
  std::sort(result.chains.begin(), result.chains.end(), [&](const PAChain& a, const PAChain& b) {
    return chain_key(table, a) < chain_key(table, b);
  });
  if (result.chains.size() > options.cap) {
    result.chains.resize(options.cap);
    if (result.status == SolveStatus::Complete) result.status = SolveStatus::Capped;
  }
  store.put(result);
  return result;
}

CharacterTable collapse_order(const CharacterTable& table, const std::vector<std::string>& chars, long s) {
  std::vector<std::string> merged = table.classes_of_order(s);
  if (merged.empty()) throw EngineError("table has no classes of order " + std::to_string(s));
  std::string agg = std::to_string(s) + "*";
  std::set<std::string> merged_set(merged.begin(), merged.end());
  auto rename = [&](const std::string& c) { return merged_set.count(c) ? agg : c; };

  std::vector<ConjClass> classes;
  ConjClass aggregate{agg, s, Integer(0), {}};
  for (const auto& c : table.classes()) {
    if (!merged_set.count(c.name)) {
      ConjClass copy = c;
      for (auto& [p, t] : copy.power_maps) t = rename(t);
      classes.push_back(std::move(copy));
      continue;
    }
    if (aggregate.size && c.size) *aggregate.size += *c.size;
    else aggregate.size.reset();
    for (const auto& [p, t] : c.power_maps) {
      std::string target = rename(t);
      auto [it, inserted] = aggregate.power_maps.emplace(p, target);
      if (!inserted && it->second != target)
        throw EngineError("classes of order " + std::to_string(s) + " disagree on their " + std::to_string(p) +
                          "-power maps");
    }
  }
  classes.push_back(aggregate);

  std::vector<Character> characters;
  for (const auto& name : chars) {
    const Character& chi = table.character(name);
    std::optional<CycValue> common;
    for (const auto& c : merged) {
      const auto& v = chi.values[table.class_index(c)];
      if (!v) throw EngineError("character " + name + " is undefined on class " + c);
      if (common && *common != *v)
        throw EngineError("character " + name + " is not constant on the classes of order " + std::to_string(s));
      common = v;
    }
    Character out{chi.name, chi.characteristic, chi.degree, {}};
    for (std::size_t i = 0; i < table.classes().size(); ++i)
      if (!merged_set.count(table.classes()[i].name)) out.values.push_back(chi.values[i]);
    out.values.push_back(common);
    characters.push_back(std::move(out));
  }
  return CharacterTable(table.group_name() + " [" + agg + "]", table.order(), std::move(classes),
                        std::move(characters), Completeness::Partial);
}

SolutionSet solve_s_constant(const CharacterTable& table, const std::vector<std::string>& chars, long s, long t,
                             SolutionStore& store, const SolveOptions& options) {
  if (!is_prime(s) || !is_prime(t) || s == t) throw EngineError("s and t must be distinct primes");
  CharacterTable collapsed = collapse_order(table, chars, s);
  store.bind(store_key(table, chars));
  SolutionStore local;
  local.bind(store_key(collapsed, chars));
  if (!store.contains(t)) store.put(solve_order(table, chars, t, store, options));
  local.put(store.at(t));
  SolutionSet result = solve_order(collapsed, chars, s * t, local, options);
  result.warnings.push_back("classes of order " + std::to_string(s) + " merged into " + std::to_string(s) + "*");
  return result;
}

VerifyReport verify_chain(const CharacterTable& table, const std::vector<std::string>& chars, long n,
                          const PAChain& chain) {
  VerifyReport report;
  PAChain clean;
  clean.unit_order = n;
  for (long m : divisors(n)) {
    if (m == 1) continue;
    auto it = chain.entries.find(m);
    if (it == chain.entries.end()) {
      report.violations.push_back("chain has no entry for order " + std::to_string(m));
      continue;
    }
    clean.entries[m] = normalized(table, m, it->second, &report.violations);
  }
  for (const auto& [m, entry] : chain.entries)
    if (m < 2 || n % m != 0) report.violations.push_back("entry for order " + std::to_string(m) + " does not divide " + std::to_string(n));
  if (!report.violations.empty()) {
    report.satisfied = false;
    return report;
  }

  for (long m : divisors(n)) {
    if (m == 1) continue;
    std::vector<std::string> usable = usable_characters(table, chars, m, &report.skipped);
    PAChain sub;
    sub.unit_order = m;
    for (long d : divisors(m))
      if (d > 1 && d < m) sub.entries[d] = clean.entries.at(d);
    ConstraintSystem sys = build_system(table, usable, m, sub);
    IntVector x;
    for (const auto& v : sys.variables) x.emplace_back(static_cast<long>(clean.entries.at(m).at(v)));
    for (const auto& v : sys.violations(x)) report.violations.push_back("order " + std::to_string(m) + ": " + v);
  }
  report.satisfied = report.violations.empty();
  return report;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Complete: return "complete";
    case SolveStatus::Infinite: return "infinite";
    case SolveStatus::Capped: return "capped";
  }
  return "capped";
}

namespace {

nlohmann::ordered_json chain_json(const PAChain& chain) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::object();
  for (const auto& [m, entry] : chain.entries) {
    nlohmann::ordered_json e = nlohmann::ordered_json::object();
    for (const auto& [c, v] : entry) e[c] = v;
    entries[std::to_string(m)] = e;
  }
  return entries;
}

}  // namespace

std::string render_chain_json(const PAChain& chain) {
  nlohmann::ordered_json j;
  j["unit_order"] = chain.unit_order;
  j["entries"] = chain_json(chain);
  return j.dump(2) + "\n";
}

std::string render_solutions_json(const CharacterTable& table, const SolutionSet& set) {
  nlohmann::ordered_json j;
  j["group_name"] = table.group_name();
  j["unit_order"] = set.unit_order;
  j["status"] = to_string(set.status);
  j["count"] = set.chains.size();
  j["characters"] = set.characters;
  j["warnings"] = set.warnings;
  nlohmann::ordered_json chains = nlohmann::ordered_json::array();
  for (const auto& c : set.chains) {
    nlohmann::ordered_json cj;
    cj["tuple"] = render_chain(table, c);
    cj["classification"] = classify_chain(c) == ChainClass::Trivial ? "trivial" : "nontrivial";
    cj["entries"] = chain_json(c);
    chains.push_back(cj);
  }
  j["chains"] = chains;
  if (set.witness) j["witness"] = chain_json(*set.witness);
  return j.dump(2) + "\n";
}

std::string render_solutions_text(const CharacterTable& table, const SolutionSet& set) {
  std::ostringstream os;
  os << "Number of solutions for elements of order " << set.unit_order << ": " << set.chains.size();
  if (set.status != SolveStatus::Complete) os << " (" << to_string(set.status) << ")";
  os << '\n';
  std::vector<std::string> header;
  for (long m : divisors(set.unit_order)) {
    if (m == 1) continue;
    for (const auto& c : admissible_classes(table, m))
      header.push_back("e" + c + "(u^" + std::to_string(set.unit_order / m) + ")");
  }
  os << "tuple: (" << join(header, ", ") << ")\n";
  os << "characters: " << join(set.characters, ",") << '\n';
  for (const auto& w : set.warnings) os << "warning: " << w << '\n';
  for (const auto& c : set.chains)
    os << render_chain(table, c) << (classify_chain(c) == ChainClass::Trivial ? "" : "  nontrivial") << '\n';
  if (set.witness) os << "infinite family through " << render_chain(table, *set.witness) << '\n';
  return os.str();
}

PAChain parse_chain(const CharacterTable& table, long n, const std::string& text) {
  PAChain chain;
  chain.unit_order = n;
  nlohmann::json j;
  std::string body = text;
  for (char& ch : body)
    if (ch == '(') ch = '[';
    else if (ch == ')') ch = ']';
  auto first = body.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && body[first] != '[' && body[first] != '{') body = "[" + body + "]";
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("cannot parse chain: ") + e.what());
  }
  try {
    if (j.is_object()) {
      if (j.contains("unit_order") && j["unit_order"].get<long>() != n)
        throw DataError("chain is for order " + std::to_string(j["unit_order"].get<long>()) + ", not " +
                        std::to_string(n));
      for (const auto& [m, entry] : j.at("entries").items()) {
        PAVector v;
        for (const auto& [c, value] : entry.items()) {
          table.class_index(c);
          v[c] = value.get<long long>();
        }
        chain.entries[std::stol(m)] = std::move(v);
      }
      return chain;
    }
    std::vector<long long> flat;
    // Nested lists (one per divisor) are flattened in order.
    std::function<void(const nlohmann::json&)> walk = [&](const nlohmann::json& x) {
      if (x.is_array())
        for (const auto& y : x) walk(y);
      else
        flat.push_back(x.get<long long>());
    };
    walk(j);
    std::size_t pos = 0;
    for (long m : divisors(n)) {
      if (m == 1) continue;
      PAVector v;
      for (const auto& c : admissible_classes(table, m)) {
        if (pos >= flat.size()) throw DataError("chain tuple is too short for order " + std::to_string(n));
        v[c] = flat[pos++];
      }
      chain.entries[m] = std::move(v);
    }
    if (pos != flat.size()) throw DataError("chain tuple is too long for order " + std::to_string(n));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed chain: ") + e.what());
  }
  return chain;
}

}  // namespace helix
