#include <gtest/gtest.h>

#include "helix/datasets.hpp"
#include "helix/pq.hpp"
#include "helix/psl2gen.hpp"

using namespace helix;

namespace {

CharacterTable psl(long q, bool brauer3 = false) { return gen_table(psl2_params(q, Psl2Variant::Psl), brauer3); }
CharacterTable pgl(long q, bool brauer3 = false) { return gen_table(psl2_params(q, Psl2Variant::Pgl), brauer3); }

const PairReport& pair_report(const PQReport& r, long p, long q) {
  for (const auto& pr : r.pairs)
    if (pr.pair == PrimePair{p, q}) return pr;
  throw std::runtime_error("pair not tested");
}

}  // namespace

TEST(PrimeGraph, GeneratedTables) {
  PrimeGraph g7 = prime_graph(psl(7));
  EXPECT_EQ(g7.vertices, (std::vector<long>{2, 3, 7}));
  EXPECT_TRUE(g7.edges.empty());
  EXPECT_EQ(g7.non_edges().size(), 3u);

  PrimeGraph g9 = prime_graph(pgl(9));
  EXPECT_EQ(g9.vertices, (std::vector<long>{2, 3, 5}));
  EXPECT_EQ(g9.edges, (std::vector<PrimePair>{{2, 5}}));
  EXPECT_TRUE(g9.adjacent(5, 2));
  EXPECT_EQ(g9.non_edges(), (std::vector<PrimePair>{{2, 3}, {3, 5}}));

  PrimeGraph g16 = prime_graph(psl(16));
  EXPECT_EQ(g16.edges, (std::vector<PrimePair>{{3, 5}}));
}

TEST(PrimeGraph, TrivialGroup) {
  CharacterTable t = parse_table(R"({"group_name": "1", "order": 1, "completeness": "full",
    "classes": [{"name": "1a", "element_order": 1, "size": 1}],
    "characters": [{"name": "1", "characteristic": 0, "degree": 1, "values": {"1a": 1}}]})");
  PrimeGraph g = prime_graph(t);
  EXPECT_TRUE(g.vertices.empty());
  EXPECT_TRUE(g.non_edges().empty());
  EXPECT_EQ(pq_check(t).verdict, Verdict::Sufficient);
}

TEST(PrimeGraph, PartialTableNeedsCoverage) {
  CharacterTable t = load_embedded("psp4_7_aut_partial");
  EXPECT_THROW(prime_graph(t), DataError);
  PrimeGraph g = prime_graph(t, true);
  EXPECT_EQ(g.vertices, (std::vector<long>{3, 5}));
}

TEST(PQCheck, Psl25IsSufficient) {
  PQReport r = pq_check(psl(5));
  EXPECT_EQ(r.verdict, Verdict::Sufficient);
  ASSERT_EQ(r.pairs.size(), 3u);
  for (const auto& p : r.pairs) EXPECT_EQ(p.outcome, PairOutcome::RuledOut);
}

TEST(PQCheck, Psl216OrderSixUndecided) {
  PQOptions options;
  options.only_pairs = std::vector<PrimePair>{{2, 3}};
  PQReport r = pq_check(psl(16), options);
  const PairReport& p = pair_report(r, 2, 3);
  EXPECT_EQ(p.outcome, PairOutcome::Undecided);
  EXPECT_GE(p.nontrivial, 1u);
  EXPECT_FALSE(p.sample.empty());
  EXPECT_EQ(r.verdict, Verdict::Insufficient);
  EXPECT_EQ(r.untested.size(), 4u);
}

TEST(PQCheck, UntestedPairsMakeTheVerdictIncomplete) {
  PQOptions options;
  options.only_pairs = std::vector<PrimePair>{{2, 3}};
  PQReport r = pq_check(psl(5), options);
  EXPECT_EQ(r.verdict, Verdict::Incomplete);
  EXPECT_EQ(pair_report(r, 2, 3).outcome, PairOutcome::RuledOut);
}

TEST(PQCheck, PlansOverrideCharacters) {
  CharacterTable t = psl(32);
  PQOptions options;
  options.only_pairs = std::vector<PrimePair>{{2, 31}, {2, 11}};
  options.plans[{2, 31}] = PairPlan{{"chi32"}, 31};
  options.plans[{2, 11}] = PairPlan{{"chi32"}, 11};
  PQReport r = pq_check(t, options);
  for (auto [p, q] : {PrimePair{2, 11}, PrimePair{2, 31}}) {
    const PairReport& pr = pair_report(r, p, q);
    EXPECT_EQ(pr.outcome, PairOutcome::RuledOut) << q;
    EXPECT_EQ(pr.characters, std::vector<std::string>{"chi32"});
    EXPECT_EQ(pr.s_constant, q);
  }
  options.plans[{2, 11}] = PairPlan{{"chi32"}, 3};
  EXPECT_EQ(pair_report(pq_check(t, options), 2, 11).outcome, PairOutcome::Failed);
}

TEST(PQCheck, MoreCharactersNeverWeaken) {
  for (const auto& t : {psl(7), psl(8), psl(11), pgl(9)}) {
    std::vector<std::string> all;
    for (const auto& c : t.characters()) all.push_back(c.name);
    std::vector<std::string> half(all.begin(), all.begin() + static_cast<long>(all.size() / 2));
    PQOptions small, large;
    small.characters = half;
    small.solve.cap = 20000;
    large.characters = all;
    PQReport a = pq_check(t, small), b = pq_check(t, large);
    ASSERT_EQ(a.pairs.size(), b.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
      const auto& x = a.pairs[i];
      const auto& y = b.pairs[i];
      if (x.outcome == PairOutcome::RuledOut) EXPECT_EQ(y.outcome, PairOutcome::RuledOut) << t.group_name();
      if (x.status == SolveStatus::Complete && y.status == SolveStatus::Complete)
        EXPECT_LE(y.count, x.count) << t.group_name();
    }
    if (a.verdict == Verdict::Sufficient) EXPECT_EQ(b.verdict, Verdict::Sufficient);
  }
}

TEST(PQCheck, EdgesCarryGroupElements) {
  for (const auto& t : {pgl(9), psl(11), psl(16)}) {
    std::vector<std::string> all;
    for (const auto& c : t.characters()) all.push_back(c.name);
    for (auto [p, q] : prime_graph(t).edges) {
      auto cls = t.classes_of_order(p * q);
      ASSERT_FALSE(cls.empty()) << t.group_name();
      EXPECT_TRUE(verify_chain(t, all, p * q, trivial_chain(t, cls.front())).satisfied);
    }
  }
}

TEST(PQCheck, Rendering) {
  CharacterTable t = psl(16);
  PQOptions options;
  options.only_pairs = std::vector<PrimePair>{{2, 3}, {2, 5}};
  PQReport r = pq_check(t, options);
  std::string text = render_report_text(t, r);
  EXPECT_NE(text.find("order 6: undecided"), std::string::npos);
  EXPECT_NE(text.find("order 10: ruled_out"), std::string::npos);
  EXPECT_NE(text.find("order 34: not tested"), std::string::npos);
  EXPECT_NE(text.find("verdict: HeLP_insufficient (6)"), std::string::npos);
  std::string json = render_report_json(t, r);
  EXPECT_NE(json.find("\"verdict\": \"HeLP_insufficient\""), std::string::npos);
  EXPECT_EQ(json, render_report_json(t, pq_check(t, options)));
}
