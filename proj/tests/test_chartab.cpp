#include <algorithm>

#include <gtest/gtest.h>
#include <json.hpp>

#include "helix/chartab.hpp"
#include "helix/datasets.hpp"
#include "helix/psl2gen.hpp"

using namespace helix;

namespace {

const char* kPsp47Rows = R"json({
  "group_name": "PSp(4,7)",
  "completeness": "partial",
  "classes": [
    {"name": "1a", "element_order": 1},
    {"name": "2a", "element_order": 2, "power_maps": {"2": "1a"}},
    {"name": "2b", "element_order": 2, "power_maps": {"2": "1a"}},
    {"name": "5a", "element_order": 5, "power_maps": {"5": "1a"}}
  ],
  "characters": [
    {"name": "chi", "characteristic": 0, "degree": 175,
     "values": {"1a": 175, "2a": 31, "2b": 7, "5a": 0}},
    {"name": "phi", "characteristic": 7, "degree": 5,
     "values": {"1a": 5, "2a": -3, "2b": 1, "5a": 0}}
  ]
})json";

CycValue zeta(long n, long e = 1) { return CycValue::root_of_unity(n, e); }

bool has_failure(const ValidationReport& r, const std::string& needle) {
  return std::any_of(r.failures.begin(), r.failures.end(),
                     [&](const std::string& f) { return f.find(needle) != std::string::npos; });
}

}  // namespace

TEST(CycText, RoundTrip) {
  std::vector<CycValue> values{0, 7, Rational(-3, 4), zeta(3), zeta(11, 2) + zeta(11, 9),
                               CycValue(1) + 3 * zeta(3), zeta(8) * Rational(5, 2) - zeta(5, 3)};
  for (const auto& v : values) EXPECT_EQ(parse_cyc(render_cyc(v)), v) << v;
}

TEST(CycText, NonCanonicalInputIsNormalized) {
  // 1 + zeta_3 + zeta_3^2 = 0 and zeta_4^2 = -1 given at a redundant conductor.
  EXPECT_EQ(parse_cyc(R"({"conductor": 3, "terms": [[0, 1, 1], [1, 1, 1], [2, 1, 1]]})"), CycValue(0));
  EXPECT_EQ(parse_cyc(R"({"conductor": 8, "terms": [[4, 2, 4]]})"), CycValue(Rational(-1, 2)));
  EXPECT_EQ(parse_cyc("12"), CycValue(12));
  EXPECT_THROW(parse_cyc(R"({"conductor": 3, "terms": [[1, 1, 0]]})"), DataError);
  EXPECT_THROW(parse_cyc(R"({"terms": []})"), DataError);
}

TEST(ParseTable, PartialRows) {
  CharacterTable t = parse_table(kPsp47Rows);
  EXPECT_EQ(t.completeness(), Completeness::Partial);
  EXPECT_EQ(t.classes().size(), 4u);
  EXPECT_EQ(t.characters().size(), 2u);
  EXPECT_EQ(t.character("phi").characteristic, 7);
  EXPECT_EQ(*t.character("chi").values[t.class_index("2a")], CycValue(31));
  EXPECT_TRUE(validate(t).ok());
}

TEST(ParseTable, TrivialGroup) {
  CharacterTable t = parse_table(R"({"group_name": "1", "order": 1, "completeness": "full",
    "classes": [{"name": "1a", "element_order": 1, "size": 1}],
    "characters": [{"name": "1", "characteristic": 0, "degree": 1, "values": {"1a": 1}}]})");
  EXPECT_EQ(t.completeness(), Completeness::Full);
  ValidationReport r = validate(t);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(std::find(r.checks.begin(), r.checks.end(), "column orthogonality") != r.checks.end());
}

TEST(ParseTable, Errors) {
  auto with = [](const std::string& from, const std::string& to) {
    std::string text = kPsp47Rows;
    auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos);
    return text.replace(pos, from.size(), to);
  };
  EXPECT_THROW(parse_table(with(R"("1a": 175)", R"("1a": 174)")), DataError);
  EXPECT_THROW(parse_table(with(R"({"name": "2b")", R"({"name": "2a")")), DataError);
  EXPECT_THROW(parse_table(with(R"("5a": 0}}
  ])", R"("5a": 0, "7a": 1}}
  ])")), DataError);
  EXPECT_THROW(parse_table(with(R"({"5": "1a"})", R"({"5": "5b"})")), DataError);
  EXPECT_THROW(parse_table(with(R"({"5": "1a"})", R"({"5": "2a"})")), DataError);
  EXPECT_THROW(parse_table("{"), DataError);

  // A 7-Brauer value on a class of order 7.
  nlohmann::json j = nlohmann::json::parse(kPsp47Rows);
  j["classes"].push_back({{"name", "7a"}, {"element_order", 7}});
  j["characters"][1]["values"]["7a"] = 1;
  EXPECT_THROW(parse_table(j.dump()), DataError);
  try {
    parse_table(j.dump());
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("phi"), std::string::npos);
  }
}

TEST(ParseTable, CanonicalClassOrder) {
  EXPECT_TRUE(class_name_less("11z", "11aa"));
  nlohmann::json j = nlohmann::json::parse(kPsp47Rows);
  std::reverse(j["classes"].begin(), j["classes"].end());
  CharacterTable t = parse_table(j.dump());
  std::vector<std::string> names;
  for (const auto& c : t.classes()) names.push_back(c.name);
  EXPECT_EQ(names, (std::vector<std::string>{"1a", "2a", "2b", "5a"}));
  EXPECT_EQ(*t.character("chi").values[1], CycValue(31));
}

TEST(ParseTable, RenderRoundTrip) {
  CharacterTable t = gen_table(psl2_params(27, Psl2Variant::Psl), false);
  CharacterTable back = parse_table(render_table(t));
  EXPECT_EQ(render_table(back), render_table(t));
  EXPECT_TRUE(validate(back).ok());
}

TEST(Validate, GeneratedPsl7) {
  CharacterTable t = gen_table(psl2_params(7, Psl2Variant::Psl));
  ValidationReport r = validate(t);
  EXPECT_TRUE(r.ok());
  for (const char* check : {"row orthogonality", "column orthogonality", "degree squares", "class sizes"})
    EXPECT_TRUE(std::find(r.checks.begin(), r.checks.end(), check) != r.checks.end()) << check;
}

TEST(Validate, PerturbedValue) {
  nlohmann::json j = nlohmann::json::parse(render_table(gen_table(psl2_params(7, Psl2Variant::Psl))));
  auto& values = j["characters"][1]["values"];
  values["3a"] = parse_cyc(values["3a"].dump()) == CycValue(1) ? 2 : 1;
  ValidationReport r = validate(parse_table(j.dump()));
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(has_failure(r, "column orthogonality"));
}

TEST(Validate, PartialRunsLocalChecksOnly) {
  ValidationReport r = validate(parse_table(kPsp47Rows));
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(std::find(r.checks.begin(), r.checks.end(), "row orthogonality") == r.checks.end());
}

TEST(Validate, EmbeddedDatasets) {
  EXPECT_EQ(embedded_dataset_names().size(), 7u);
  for (const auto& name : embedded_dataset_names()) {
    CharacterTable t = load_embedded(name);
    ValidationReport r = validate(t);
    EXPECT_TRUE(r.ok()) << name << ": " << (r.failures.empty() ? "" : r.failures.front());
  }
  EXPECT_THROW(load_embedded("no_such_table"), DataError);
}

TEST(UnitValue, TableSixRows) {
  CharacterTable t = load_embedded("pgl2_243_rows");
  EXPECT_EQ(unit_character_value(t.character("chi"), {{"3a", 12}, {"11c", -11}}, t), CycValue(-12));
  EXPECT_EQ(unit_character_value(t.character("psi1"), {{"11a", 1}}, t), zeta(11) + zeta(11, -1));
}

TEST(UnitValue, TrivialVectorAndLinearity) {
  CharacterTable t = gen_table(psl2_params(27, Psl2Variant::Psl));
  for (const auto& chi : t.characters()) {
    for (std::size_t i = 0; i < t.classes().size(); ++i) {
      const auto& c = t.classes()[i];
      EXPECT_EQ(unit_character_value(chi, {{c.name, 1}}, t), *chi.values[i]);
    }
    PAVector a{{"2a", 3}, {"3a", -2}}, b{{"3a", 5}, {"13c", 1}}, sum{{"2a", 3}, {"3a", 3}, {"13c", 1}};
    EXPECT_EQ(unit_character_value(chi, sum, t),
              unit_character_value(chi, a, t) + unit_character_value(chi, b, t));
  }
}

TEST(UnitValue, UndefinedBrauerValue) {
  CharacterTable t = load_embedded("l3_17_aut_partial");
  EXPECT_THROW(unit_character_value(t.character("chi9216"), {{"307x", 1}}, t), DataError);
  EXPECT_NO_THROW(unit_character_value(t.character("chi9216"), {{"3a", 1}, {"307x", 0}}, t));
}

TEST(Chains, TrivialChainInvariants) {
  CharacterTable t = gen_table(psl2_params(27, Psl2Variant::Psl));
  for (const auto& c : t.classes()) {
    if (c.element_order == 1) continue;
    PAChain chain = trivial_chain(t, c.name);
    EXPECT_EQ(chain.unit_order, c.element_order);
    for (long m : divisors(c.element_order)) {
      if (m == 1) continue;
      ASSERT_TRUE(chain.entries.count(m));
      const PAVector& v = chain.entries.at(m);
      long long total = 0;
      for (const auto& [name, e] : v) {
        total += e;
        EXPECT_NE(name, "1a");
        EXPECT_EQ(m % t.conj_class(name).element_order, 0);
      }
      EXPECT_EQ(total, 1);
      EXPECT_EQ(v.size(), admissible_classes(t, m).size());
      EXPECT_EQ(v.at(t.power_class(c.name, c.element_order / m)), 1);
    }
  }
}

TEST(Chains, PowerClass) {
  CharacterTable t = load_embedded("psl2_3f_eta");
  EXPECT_EQ(t.power_class("3a", 2), "3b");
  EXPECT_EQ(t.power_class("3a", 4), "3a");
  EXPECT_EQ(t.power_class("3a", 3), "1a");
  EXPECT_EQ(t.classes_of_order(3), (std::vector<std::string>{"3a", "3b"}));
  CharacterTable partial = load_embedded("l3_17_aut_partial");
  EXPECT_THROW(partial.power_class("307x", 2), DataError);
}
