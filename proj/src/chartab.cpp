#include "helix/chartab.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <json.hpp>

namespace helix {

using nlohmann::json;

bool class_name_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

bool class_less(const ConjClass& a, const ConjClass& b) {
  if (a.element_order != b.element_order) return a.element_order < b.element_order;
  return class_name_less(a.name, b.name);
}

long value_conductor(const Character& chi) {
  long n = 1;
  for (const auto& v : chi.values)
    if (v) n = lcm(n, v->conductor());
  return n;
}

}  // namespace

CharacterTable::CharacterTable(std::string group_name, std::optional<Integer> order,
                               std::vector<ConjClass> classes, std::vector<Character> characters,
                               Completeness completeness)
    : group_name_(std::move(group_name)),
      order_(std::move(order)),
      completeness_(completeness) {
  std::vector<std::size_t> perm(classes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return class_less(classes[a], classes[b]); });

  std::set<std::string> names;
  for (std::size_t i : perm) {
    const ConjClass& c = classes[i];
    if (c.name.empty()) throw DataError("class with empty name");
    if (c.element_order < 1) throw DataError("class " + c.name + ": element order must be positive");
    if (c.size && *c.size <= 0) throw DataError("class " + c.name + ": size must be positive");
    if (!names.insert(c.name).second) throw DataError("duplicate class name " + c.name);
    classes_.push_back(c);
  }
  auto one = find_class("1a");
  if (!one) throw DataError("table has no class 1a");
  if (classes_[*one].element_order != 1) throw DataError("class 1a must have element order 1");

  for (const auto& c : classes_) {
    for (const auto& [p, target] : c.power_maps) {
      if (!is_prime(p)) throw DataError("class " + c.name + ": power map key " + std::to_string(p) + " is not prime");
      auto t = find_class(target);
      if (!t) throw DataError("class " + c.name + ": power map target " + target + " is missing");
      long expected = c.element_order % p == 0 ? c.element_order / p : c.element_order;
      if (classes_[*t].element_order != expected)
        throw DataError("class " + c.name + ": " + std::to_string(p) + "-th power " + target +
                        " has element order " + std::to_string(classes_[*t].element_order) + ", expected " +
                        std::to_string(expected));
    }
  }

  std::set<std::string> char_names;
  for (auto& chi : characters) {
    if (!char_names.insert(chi.name).second) throw DataError("duplicate character name " + chi.name);
    if (chi.values.size() != classes.size())
      throw DataError("character " + chi.name + ": value count does not match class count");
    if (chi.characteristic != 0 && !is_prime(chi.characteristic))
      throw DataError("character " + chi.name + ": characteristic must be 0 or a prime");
    Character sorted{chi.name, chi.characteristic, chi.degree, {}};
    for (std::size_t i : perm) sorted.values.push_back(std::move(chi.values[i]));
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      if (!sorted.values[i]) continue;
      if (sorted.characteristic != 0 && classes_[i].element_order % sorted.characteristic == 0)
        throw DataError("character " + chi.name + ": Brauer value on " + std::to_string(sorted.characteristic) +
                        "-singular class " + classes_[i].name);
    }
    const auto& at_one = sorted.values[*one];
    if (!at_one || *at_one != CycValue(sorted.degree))
      throw DataError("character " + chi.name + ": value at 1a differs from degree " +
                      std::to_string(sorted.degree));
    characters_.push_back(std::move(sorted));
  }
}

std::optional<std::size_t> CharacterTable::find_class(const std::string& name) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i].name == name) return i;
  return std::nullopt;
}

std::size_t CharacterTable::class_index(const std::string& name) const {
  auto i = find_class(name);
  if (!i) throw DataError("unknown class " + name + " in table " + group_name_);
  return *i;
}

std::optional<std::size_t> CharacterTable::find_character(const std::string& name) const {
  for (std::size_t i = 0; i < characters_.size(); ++i)
    if (characters_[i].name == name) return i;
  return std::nullopt;
}

const Character& CharacterTable::character(const std::string& name) const {
  auto i = find_character(name);
  if (!i) throw DataError("unknown character " + name + " in table " + group_name_);
  return characters_[*i];
}

std::string CharacterTable::power_class(const std::string& name, long k) const {
  const ConjClass* c = &conj_class(name);
  long r = mod(k, c->element_order);
  if (r == 0) return "1a";
  for (auto [p, a] : factorize(r)) {
    for (int i = 0; i < a; ++i) {
      auto it = c->power_maps.find(p);
      if (it == c->power_maps.end())
        throw DataError("class " + c->name + " has no " + std::to_string(p) + "-power map");
      c = &conj_class(it->second);
    }
  }
  return c->name;
}

std::vector<long> CharacterTable::element_orders() const {
  std::set<long> orders;
  for (const auto& c : classes_) orders.insert(c.element_order);
  return {orders.begin(), orders.end()};
}

std::vector<std::string> CharacterTable::classes_of_order(long order) const {
  std::vector<std::string> out;
  for (const auto& c : classes_)
    if (c.element_order == order) out.push_back(c.name);
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

std::vector<std::string> admissible_classes(const CharacterTable& table, long m) {
  std::vector<std::string> out;
  for (const auto& c : table.classes())
    if (c.element_order > 1 && m % c.element_order == 0) out.push_back(c.name);
  return out;
}

PAChain trivial_chain(const CharacterTable& table, const std::string& class_name) {
  long n = table.conj_class(class_name).element_order;
  PAChain chain;
  chain.unit_order = n;
  for (long m : divisors(n)) {
    if (m == 1) continue;
    std::string target = table.power_class(class_name, n / m);
    PAVector v;
    for (const auto& c : admissible_classes(table, m)) v[c] = c == target ? 1 : 0;
    chain.entries[m] = std::move(v);
  }
  return chain;
}

CycValue unit_character_value(const Character& chi, const PAVector& pa, const CharacterTable& table) {
  CycAccumulator acc(value_conductor(chi));
  for (const auto& [name, eps] : pa) {
    if (eps == 0) continue;
    const auto& v = chi.values[table.class_index(name)];
    if (!v) throw DataError("character " + chi.name + " is undefined on class " + name);
    acc.add(*v, Rational(static_cast<long>(eps)));
  }
  return acc.value();
}

namespace {

void check_power_maps(const CharacterTable& table, ValidationReport& report) {
  report.checks.push_back("power-map composition");
  const auto& classes = table.classes();
  for (const auto& c : classes) {
    for (const auto& [r, tr] : c.power_maps) {
      for (const auto& [s, ts] : c.power_maps) {
        if (r >= s) continue;
        const auto& rc = table.conj_class(tr);
        const auto& sc = table.conj_class(ts);
        auto a = rc.power_maps.find(s);
        auto b = sc.power_maps.find(r);
        if (a == rc.power_maps.end() || b == sc.power_maps.end()) continue;
        if (a->second != b->second)
          report.failures.push_back("class " + c.name + ": power maps " + std::to_string(r) + " and " +
                                    std::to_string(s) + " do not commute");
      }
    }
  }
  report.checks.push_back("Galois action on power classes");
  for (const auto& chi : table.characters()) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      const auto& c = classes[i];
      if (!chi.values[i]) continue;
      for (const auto& [r, target] : c.power_maps) {
        if (c.element_order % r == 0) continue;
        const auto& w = chi.values[table.class_index(target)];
        if (!w) continue;
        if (*w != chi.values[i]->galois(r))
          report.failures.push_back("character " + chi.name + ": value on " + target + " is not the image of " +
                                    c.name + " under E(n) -> E(n)^" + std::to_string(r));
      }
    }
  }
}

void check_integrality(const CharacterTable& table, ValidationReport& report) {
  report.checks.push_back("algebraic integrality");
  for (const auto& chi : table.characters())
    for (std::size_t i = 0; i < chi.values.size(); ++i)
      if (chi.values[i] && !chi.values[i]->is_integral())
        report.failures.push_back("character " + chi.name + ": value on " + table.classes()[i].name +
                                  " is not an algebraic integer");
}

void check_full(const CharacterTable& table, ValidationReport& report) {
  const auto& classes = table.classes();
  std::vector<const Character*> ordinary;
  for (const auto& chi : table.characters())
    if (chi.characteristic == 0) ordinary.push_back(&chi);
  if (!table.order()) {
    report.failures.push_back("full table without group order");
    return;
  }
  const Integer& order = *table.order();

  report.checks.push_back("class sizes");
  Integer size_sum = 0;
  bool sizes = true;
  for (const auto& c : classes) {
    if (!c.size) {
      report.failures.push_back("class " + c.name + " has no size");
      sizes = false;
      continue;
    }
    size_sum += *c.size;
  }
  if (sizes && size_sum != order)
    report.failures.push_back("class sizes sum to " + size_sum.get_str() + ", group order is " + order.get_str());

  report.checks.push_back("character count");
  if (ordinary.size() != classes.size())
    report.failures.push_back(std::to_string(ordinary.size()) + " ordinary characters for " +
                              std::to_string(classes.size()) + " classes");

  report.checks.push_back("degree squares");
  Integer deg_sum = 0;
  for (const auto* chi : ordinary) deg_sum += Integer(chi->degree) * chi->degree;
  if (deg_sum != order)
    report.failures.push_back("squared degrees sum to " + deg_sum.get_str() + ", group order is " + order.get_str());

  for (const auto* chi : ordinary)
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (!chi->values[i]) {
        report.failures.push_back("character " + chi->name + " has no value on " + classes[i].name);
        return;
      }
  if (!sizes) return;

  std::vector<long> cond;
  std::vector<std::vector<CycValue>> conj;
  for (const auto* chi : ordinary) {
    cond.push_back(value_conductor(*chi));
    std::vector<CycValue> row;
    for (const auto& v : chi->values) row.push_back(v->conj());
    conj.push_back(std::move(row));
  }

  report.checks.push_back("row orthogonality");
  for (std::size_t a = 0; a < ordinary.size(); ++a) {
    for (std::size_t b = a; b < ordinary.size(); ++b) {
      CycAccumulator acc(lcm(cond[a], cond[b]));
      for (std::size_t i = 0; i < classes.size(); ++i)
        acc.add_product(*ordinary[a]->values[i], conj[b][i], Rational(*classes[i].size));
      CycValue expected = a == b ? CycValue(Rational(order)) : CycValue();
      if (acc.value() != expected)
        report.failures.push_back("row orthogonality fails for " + ordinary[a]->name + ", " + ordinary[b]->name);
    }
  }

  report.checks.push_back("column orthogonality");
  long all = 1;
  for (long c : cond) all = lcm(all, c);
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i; j < classes.size(); ++j) {
      CycAccumulator acc(all);
      for (std::size_t a = 0; a < ordinary.size(); ++a) acc.add_product(*ordinary[a]->values[i], conj[a][j]);
      CycValue expected = i == j ? CycValue(Rational(order, *classes[i].size)) : CycValue();
      if (acc.value() != expected)
        report.failures.push_back("column orthogonality fails for " + classes[i].name + ", " + classes[j].name);
    }
  }
}

}  // namespace

ValidationReport validate(const CharacterTable& table) {
  ValidationReport report;
  report.checks.push_back("local invariants");
  check_integrality(table, report);
  check_power_maps(table, report);
  if (table.completeness() == Completeness::Full) check_full(table, report);
  return report;
}

namespace {

json cyc_to_json(const CycValue& v) {
  json terms = json::array();
  for (const auto& [e, c] : v.terms()) {
    json num = c.get_num().fits_slong_p() ? json(c.get_num().get_si()) : json(c.get_num().get_str());
    json den = c.get_den().fits_slong_p() ? json(c.get_den().get_si()) : json(c.get_den().get_str());
    terms.push_back(json::array({e, num, den}));
  }
  return json{{"conductor", v.conductor()}, {"terms", terms}};
}

Integer json_integer(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw DataError(what + ": malformed integer");
    return z;
  }
  throw DataError(what + ": expected an integer");
}

CycValue cyc_from_json(const json& j, const std::string& what) {
  if (j.is_number_integer()) return CycValue(Rational(json_integer(j, what)));
  if (!j.is_object() || !j.contains("conductor") || !j.contains("terms"))
    throw DataError(what + ": expected {\"conductor\", \"terms\"}");
  long n = j.at("conductor").get<long>();
  if (n < 1) throw DataError(what + ": conductor must be positive");
  std::vector<CycValue::Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 3) throw DataError(what + ": each term is [e, num, den]");
    Integer den = json_integer(t[2], what);
    if (den == 0) throw DataError(what + ": zero denominator");
    Rational c(json_integer(t[1], what), den);
    c.canonicalize();
    terms.emplace_back(t[0].get<long>(), c);
  }
  return CycValue::from_terms(n, terms);
}

json integer_to_json(const Integer& z) {
  return z.fits_slong_p() ? json(z.get_si()) : json(z.get_str());
}

}  // namespace

std::string render_cyc(const CycValue& v) { return cyc_to_json(v).dump(); }

CycValue parse_cyc(const std::string& text) {
  try {
    return cyc_from_json(json::parse(text), "cyclotomic value");
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed cyclotomic value: ") + e.what());
  }
}

CharacterTable parse_table(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed table file: ") + e.what());
  }
  try {
    std::string group = j.value("group_name", std::string("unnamed"));
    std::optional<Integer> order;
    if (j.contains("order") && !j["order"].is_null()) order = json_integer(j["order"], "group order");
    std::string comp = j.value("completeness", std::string("partial"));
    if (comp != "full" && comp != "partial") throw DataError("completeness must be full or partial");

    std::vector<ConjClass> classes;
    for (const auto& c : j.at("classes")) {
      ConjClass cc;
      cc.name = c.at("name").get<std::string>();
      cc.element_order = c.at("element_order").get<long>();
      if (c.contains("size") && !c["size"].is_null()) cc.size = json_integer(c["size"], "class " + cc.name + " size");
      if (c.contains("power_maps"))
        for (const auto& [p, target] : c["power_maps"].items())
          cc.power_maps[std::stol(p)] = target.get<std::string>();
      classes.push_back(std::move(cc));
    }
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i].name] = i;

    std::vector<Character> characters;
    for (const auto& c : j.at("characters")) {
      Character chi;
      chi.name = c.at("name").get<std::string>();
      chi.characteristic = c.value("characteristic", 0L);
      chi.degree = c.at("degree").get<long>();
      chi.values.resize(classes.size());
      for (const auto& [cls, v] : c.at("values").items()) {
        auto it = index.find(cls);
        if (it == index.end()) throw DataError("character " + chi.name + ": unknown class " + cls);
        if (v.is_null()) continue;
        chi.values[it->second] = cyc_from_json(v, "character " + chi.name + " on " + cls);
      }
      characters.push_back(std::move(chi));
    }
    return CharacterTable(group, order, std::move(classes), std::move(characters),
                          comp == "full" ? Completeness::Full : Completeness::Partial);
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed table file: ") + e.what());
  }
}

std::string render_table(const CharacterTable& table) {
  json j;
  j["group_name"] = table.group_name();
  if (table.order()) j["order"] = integer_to_json(*table.order());
  j["completeness"] = table.completeness() == Completeness::Full ? "full" : "partial";
  json classes = json::array();
  for (const auto& c : table.classes()) {
    json cj{{"name", c.name}, {"element_order", c.element_order}};
    if (c.size) cj["size"] = integer_to_json(*c.size);
    if (!c.power_maps.empty()) {
      json pm = json::object();
      for (const auto& [p, t] : c.power_maps) pm[std::to_string(p)] = t;
      cj["power_maps"] = pm;
    }
    classes.push_back(cj);
  }
  j["classes"] = classes;
  json chars = json::array();
  for (const auto& chi : table.characters()) {
    json values = json::object();
    for (std::size_t i = 0; i < chi.values.size(); ++i)
      if (chi.values[i]) values[table.classes()[i].name] = cyc_to_json(*chi.values[i]);
    chars.push_back(json{{"name", chi.name}, {"characteristic", chi.characteristic}, {"degree", chi.degree},
                         {"values", values}});
  }
  j["characters"] = chars;
  return j.dump(1) + "\n";
}

}  // namespace helix
