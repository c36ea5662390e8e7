#include <complex>
#include <random>

#include <gtest/gtest.h>

#include "helix/cyclo.hpp"

using helix::CycValue;
using helix::Rational;

namespace {

std::complex<double> evaluate(const CycValue& v) {
  std::complex<double> sum = 0;
  const double two_pi = 6.283185307179586;
  for (const auto& [e, c] : v.terms()) {
    double angle = two_pi * static_cast<double>(e) / static_cast<double>(v.conductor());
    sum += c.get_d() * std::polar(1.0, angle);
  }
  return sum;
}

// Independent trace: sum of all Galois conjugates.
Rational orbit_trace(const CycValue& v, long field) {
  CycValue sum;
  for (long k = 1; k <= field; ++k)
    if (helix::gcd(k, field) == 1) sum += v.galois(k);
  auto r = sum.rational();
  EXPECT_TRUE(r.has_value());
  return r.value_or(0);
}

CycValue zeta(long n, long e = 1) { return CycValue::root_of_unity(n, e); }

CycValue random_value(std::mt19937& rng, long conductor) {
  std::uniform_int_distribution<long> exp(0, conductor - 1);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> count(0, 4);
  std::vector<CycValue::Term> terms;
  int n = count(rng);
  for (int i = 0; i < n; ++i) terms.emplace_back(exp(rng), Rational(coef(rng), 1 + (i % 2)));
  return CycValue::from_terms(conductor, terms);
}

}  // namespace

TEST(Cyclo, RootOfUnityBasics) {
  EXPECT_EQ(zeta(1, 0), CycValue(1));
  EXPECT_EQ(zeta(4, 2), CycValue(-1));
  EXPECT_EQ(zeta(4, 2).rational(), Rational(-1));
  CycValue z6 = zeta(6);
  EXPECT_EQ(z6, zeta(3) + CycValue(1));
  EXPECT_EQ(z6.conductor(), 3);
  auto diff = evaluate(z6) - std::polar(1.0, 6.283185307179586 / 6);
  EXPECT_LT(std::abs(diff), 1e-12);
}

TEST(Cyclo, Arithmetic) {
  CycValue s = zeta(5, 1) + zeta(5, 2) + zeta(5, 3) + zeta(5, 4);
  EXPECT_EQ(s, CycValue(-1));
  EXPECT_EQ(zeta(3) * zeta(3, 2), CycValue(1));
  CycValue w = zeta(11, 1) + zeta(11, 10);
  EXPECT_EQ(w * w, zeta(11, 2) + zeta(11, 9) + CycValue(2));
  EXPECT_EQ(w - w, CycValue());
  EXPECT_TRUE((w - w).is_zero());
}

TEST(Cyclo, Lowering) {
  // i*i = -1 and sqrt(-3) = 2*zeta3 + 1 stays at conductor 3.
  EXPECT_TRUE((zeta(4) * zeta(4)).is_rational());
  CycValue r = CycValue(2) * zeta(3) + CycValue(1);
  EXPECT_EQ(r.conductor(), 3);
  EXPECT_EQ((r * r), CycValue(-3));
  // zeta_12^3 = i has conductor 4, zeta_20^4 = zeta_5.
  EXPECT_EQ(zeta(12, 3).conductor(), 4);
  EXPECT_EQ(zeta(20, 4), zeta(5));
  EXPECT_EQ(zeta(30, 25), -zeta(3));
  EXPECT_EQ(zeta(30, 10), zeta(3));
}

TEST(Cyclo, NumericConsistency) {
  std::mt19937 rng(7);
  for (long n : {1L, 2L, 3L, 4L, 6L, 8L, 9L, 12L, 15L, 16L, 18L, 20L, 24L, 30L, 36L, 45L, 60L}) {
    for (int i = 0; i < 20; ++i) {
      std::uniform_int_distribution<long> exp(0, 3 * n);
      std::vector<CycValue::Term> terms;
      std::complex<double> expected = 0;
      for (int j = 0; j < 4; ++j) {
        long e = exp(rng) - n;
        int c = static_cast<int>(rng() % 7) - 3;
        terms.emplace_back(e, Rational(c));
        expected += static_cast<double>(c) * std::polar(1.0, 6.283185307179586 * e / n);
      }
      CycValue v = CycValue::from_terms(n, terms);
      EXPECT_LT(std::abs(evaluate(v) - expected), 1e-9) << v.to_string();
    }
  }
}

TEST(Cyclo, Galois) {
  EXPECT_EQ(zeta(5).galois(2), zeta(5, 2));
  EXPECT_EQ((zeta(5) + zeta(5, 4)).galois(2), zeta(5, 2) + zeta(5, 3));
  EXPECT_EQ(CycValue(7).galois(3), CycValue(7));
  EXPECT_THROW(zeta(6).galois(3), std::invalid_argument);
  EXPECT_EQ(zeta(7).conj(), zeta(7, 6));
}

TEST(Cyclo, TraceExamples) {
  EXPECT_EQ(CycValue(1).trace(12), 4);
  EXPECT_EQ(zeta(7).trace(), -1);
  EXPECT_EQ(zeta(12).trace(), 0);
  EXPECT_EQ(orbit_trace(zeta(12), 12), 0);
  EXPECT_EQ(CycValue(Rational(3, 2)).trace(10), 6);
  EXPECT_THROW(zeta(5).trace(10 * 3 + 1), std::invalid_argument);
}

TEST(Cyclo, TraceIsMoebius) {
  for (long n = 1; n <= 200; ++n) {
    CycValue z = zeta(n);
    EXPECT_EQ(z.trace(n), helix::moebius(n)) << n;
    EXPECT_EQ(orbit_trace(z, n), helix::moebius(n)) << n;
  }
}

TEST(Cyclo, TraceMatchesOrbitSum) {
  std::mt19937 rng(11);
  for (long n : {5L, 8L, 12L, 14L, 21L, 24L, 33L, 40L}) {
    for (int i = 0; i < 10; ++i) {
      CycValue v = random_value(rng, n);
      EXPECT_EQ(v.trace(n), orbit_trace(v, n)) << v.to_string() << " in " << n;
    }
  }
}

TEST(Cyclo, RandomLinearityAndGaloisComposition) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> cond(1, 60);
  for (int i = 0; i < 1000; ++i) {
    long n = cond(rng);
    CycValue a = random_value(rng, n);
    CycValue b = random_value(rng, n);
    ASSERT_EQ((a + b).trace(n), a.trace(n) + b.trace(n));
    ASSERT_EQ((a - b) + b, a);
    ASSERT_EQ(a * b, b * a);
    std::vector<long> units;
    for (long k = 1; k < n || k == 1; ++k)
      if (helix::gcd(k, n) == 1) units.push_back(k);
    long k1 = units[rng() % units.size()];
    long k2 = units[rng() % units.size()];
    ASSERT_EQ(a.galois(k1).galois(k2), a.galois(k1 * k2));
    ASSERT_EQ((a * b).galois(k1), a.galois(k1) * b.galois(k1));
  }
}

TEST(Cyclo, Integrality) {
  EXPECT_TRUE((zeta(9, 2) + CycValue(3) * zeta(9, 7)).is_integral());
  EXPECT_FALSE(CycValue(Rational(1, 2)).is_integral());
  EXPECT_TRUE((CycValue(Rational(1, 2)) * (zeta(4) + CycValue(-1)) * CycValue(2)).is_integral());
  // (1 + sqrt(-3))/2 = -zeta3^2 is integral, (1 + sqrt(5))/2 too.
  CycValue s3 = CycValue(2) * zeta(3) + CycValue(1);
  EXPECT_TRUE((CycValue(Rational(1, 2)) * (CycValue(1) + s3)).is_integral());
  CycValue s5 = CycValue(2) * (zeta(5) + zeta(5, 4)) + CycValue(1);
  EXPECT_EQ(s5 * s5, CycValue(5));
  EXPECT_TRUE((CycValue(Rational(1, 2)) * (CycValue(1) + s5)).is_integral());
  EXPECT_FALSE((CycValue(Rational(1, 2)) * s5).is_integral());
}

TEST(Cyclo, Render) {
  EXPECT_EQ(CycValue(0).to_string(), "0");
  EXPECT_EQ(CycValue(Rational(-3, 4)).to_string(), "-3/4");
  EXPECT_EQ(zeta(5).to_string(), "E(5)");
  EXPECT_EQ((CycValue(1) + CycValue(3) * zeta(3)).to_string(), "2*E(3)-E(3)^2");
}
