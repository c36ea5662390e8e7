#include "helix/cyclo.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace helix {

long gcd(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long r = a % b;
    a = b;
    b = r;
  }
  return a;
}

long lcm(long a, long b) { return a / gcd(a, b) * b; }

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

std::vector<std::pair<long, int>> factorize(long n) {
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    out.emplace_back(p, a);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

long euler_phi(long n) {
  long r = n;
  for (auto [p, a] : factorize(n)) r = r / p * (p - 1);
  return r;
}

int moebius(long n) {
  int r = 1;
  for (auto [p, a] : factorize(n)) {
    if (a > 1) return 0;
    r = -r;
  }
  return r;
}

namespace {

long inverse_mod(long a, long m) {
  long g = m, x = 0, x1 = 1, b = mod(a, m);
  while (b != 0) {
    long q = g / b;
    std::tie(g, b) = std::make_pair(b, g - q * b);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::logic_error("inverse_mod: not invertible");
  return mod(x, m);
}

// One prime-power factor p^a of a conductor N. The exponent e of zeta_N splits
// as e = sum over parts of cofactor * t, where t is taken mod p^a.
struct PrimePart {
  long p;
  int a;
  long pa;
  long cofactor;      // N / p^a
  long cofactor_inv;  // inverse of cofactor mod p^a
};

struct FieldInfo {
  long n;
  std::vector<PrimePart> parts;
};

const FieldInfo& field_info(long n) {
  static std::mutex mutex;
  static std::unordered_map<long, std::unique_ptr<FieldInfo>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto info = std::make_unique<FieldInfo>();
  info->n = n;
  for (auto [p, a] : factorize(n)) {
    long pa = 1;
    for (int i = 0; i < a; ++i) pa *= p;
    long cof = n / pa;
    info->parts.push_back({p, a, pa, cof, inverse_mod(cof, pa)});
  }
  return *cache.emplace(n, std::move(info)).first->second;
}

long component(const PrimePart& part, long e) {
  return mod(mod(e, part.pa) * part.cofactor_inv, part.pa);
}

// Adds coef * zeta_N^e, rewritten in the Zumbroich basis, into out.
void reduce_root(const FieldInfo& info, long e, const Rational& coef,
                 std::map<long, Rational>& out) {
  struct Partial {
    long exponent;
    int sign;
  };
  Partial first{0, 1};
  std::vector<Partial> current{first};
  std::vector<Partial> next;
  for (const auto& part : info.parts) {
    long t = component(part, e);
    next.clear();
    if (part.p == 2) {
      long half = part.pa / 2;
      long tt = t < half ? t : t - half;
      int s = t < half ? 1 : -1;
      for (auto c : current) next.push_back({c.exponent + part.cofactor * tt, c.sign * s});
    } else {
      long step = part.pa / part.p;
      if (t / step >= 1) {
        for (auto c : current) next.push_back({c.exponent + part.cofactor * t, c.sign});
      } else {
        for (auto c : current)
          for (long k = 1; k < part.p; ++k)
            next.push_back({c.exponent + part.cofactor * (t + k * step), -c.sign});
      }
    }
    current.swap(next);
  }
  for (auto c : current) {
    auto& slot = out[mod(c.exponent, info.n)];
    if (c.sign > 0)
      slot += coef;
    else
      slot -= coef;
  }
}

long compose(const FieldInfo& info, const std::map<long, long>& t_by_prime) {
  long e = 0;
  for (const auto& part : info.parts) e += part.cofactor * t_by_prime.at(part.p);
  return mod(e, info.n);
}

std::map<long, long> decompose(const FieldInfo& info, long e) {
  std::map<long, long> t;
  for (const auto& part : info.parts) t[part.p] = component(part, e);
  return t;
}

using Terms = std::vector<CycValue::Term>;

// Tries to move a canonical value at conductor n into Q(zeta_{n/p}) for some
// prime p. Returns false when no proper subfield of this shape contains it.
bool lower_once(long& n, Terms& terms) {
  const FieldInfo& info = field_info(n);
  for (const auto& part : info.parts) {
    long m = n / part.p;
    const FieldInfo& sub = field_info(m);
    if (part.p == 2 && part.a == 1) {
      Terms out;
      for (const auto& [e, c] : terms) {
        auto t = decompose(info, e);
        t.erase(2);
        out.emplace_back(compose(sub, t), c);
      }
      std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
      n = m;
      terms = std::move(out);
      return true;
    }
    if (part.a >= 2) {
      bool ok = std::all_of(terms.begin(), terms.end(), [&](const auto& term) {
        return component(part, term.first) % part.p == 0;
      });
      if (!ok) continue;
      Terms out;
      for (const auto& [e, c] : terms) {
        auto t = decompose(info, e);
        t[part.p] /= part.p;
        out.emplace_back(compose(sub, t), c);
      }
      std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
      n = m;
      terms = std::move(out);
      return true;
    }
    // p odd, p || n: need, for each fixed remaining component, the same
    // coefficient on all p-1 values of the p-component.
    std::map<long, std::vector<const Rational*>> groups;
    for (const auto& [e, c] : terms) {
      long t = component(part, e);
      groups[mod(e - part.cofactor * t, n)].push_back(&c);
    }
    bool ok = true;
    for (const auto& [rest, coefs] : groups) {
      if (static_cast<long>(coefs.size()) != part.p - 1) {
        ok = false;
        break;
      }
      for (const Rational* c : coefs)
        if (*c != *coefs.front()) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (!ok) continue;
    Terms out;
    for (const auto& [rest, coefs] : groups) {
      auto t = decompose(info, rest);
      t.erase(part.p);
      out.emplace_back(compose(sub, t), -*coefs.front());
    }
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
    n = m;
    terms = std::move(out);
    return true;
  }
  return false;
}

Terms to_terms(std::map<long, Rational>& acc) {
  Terms terms;
  terms.reserve(acc.size());
  for (auto& [e, c] : acc)
    if (sgn(c) != 0) terms.emplace_back(e, std::move(c));
  return terms;
}

}  // namespace

CycValue::CycValue(long value) : CycValue(Rational(value)) {}

CycValue::CycValue(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (sgn(v) != 0) terms_.emplace_back(0, std::move(v));
}

CycValue CycValue::root_of_unity(long n, long e) {
  if (n < 1) throw std::invalid_argument("root_of_unity: n must be positive");
  return from_terms(n, {{e, Rational(1)}});
}

CycValue CycValue::from_terms(long n, const std::vector<Term>& terms) {
  if (n < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
  const FieldInfo& info = field_info(n);
  std::map<long, Rational> acc;
  for (const auto& [e, c] : terms) {
    Rational coef = c;
    coef.canonicalize();
    if (sgn(coef) != 0) reduce_root(info, e, coef, acc);
  }
  Terms out = to_terms(acc);
  long cond = n;
  if (out.empty()) return CycValue();
  while (cond > 1 && lower_once(cond, out)) {
  }
  return CycValue(cond, std::move(out));
}

std::optional<Rational> CycValue::rational() const {
  if (conductor_ != 1) return std::nullopt;
  if (terms_.empty()) return Rational(0);
  return terms_.front().second;
}

bool CycValue::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.second.get_den() == 1; });
}

CycValue CycValue::operator-() const {
  CycValue r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

CycValue& CycValue::operator+=(const CycValue& rhs) {
  if (rhs.is_zero()) return *this;
  CycAccumulator acc(lcm(conductor_, rhs.conductor_));
  acc.add(*this);
  acc.add(rhs);
  return *this = acc.value();
}

CycValue& CycValue::operator-=(const CycValue& rhs) {
  if (rhs.is_zero()) return *this;
  CycAccumulator acc(lcm(conductor_, rhs.conductor_));
  acc.add(*this);
  acc.add(rhs, Rational(-1));
  return *this = acc.value();
}

CycValue& CycValue::operator*=(const CycValue& rhs) {
  if (is_zero()) return *this;
  if (rhs.is_zero()) return *this = CycValue();
  CycAccumulator acc(lcm(conductor_, rhs.conductor_));
  acc.add_product(*this, rhs);
  return *this = acc.value();
}

CycValue CycValue::galois(long k) const {
  if (gcd(k, conductor_) != 1)
    throw std::invalid_argument("galois: exponent " + std::to_string(k) +
                                " is not coprime to conductor " + std::to_string(conductor_));
  if (conductor_ == 1) return *this;
  Terms terms;
  for (const auto& [e, c] : terms_) terms.emplace_back(mod(e * mod(k, conductor_), conductor_), c);
  return from_terms(conductor_, terms);
}

CycValue CycValue::times_root(long n, long e) const {
  if (is_zero()) return *this;
  CycAccumulator acc(lcm(conductor_, n));
  long shift = mod(e, n) * (acc.conductor() / n);
  long scale = acc.conductor() / conductor_;
  for (const auto& [f, c] : terms_) acc.add_root(acc.conductor(), f * scale + shift, c);
  return acc.value();
}

long root_trace(long n, long e, long field) {
  long g = gcd(mod(e, n), n);
  long order = n / g;
  bool inside = field % order == 0 || (order % 4 == 2 && field % (order / 2) == 0);
  if (!inside)
    throw std::invalid_argument("root of unity of order " + std::to_string(order) +
                                " is not in Q(zeta_" + std::to_string(field) + ")");
  return moebius(order) * (euler_phi(field) / euler_phi(order));
}

Rational CycValue::trace(long field) const {
  if (field < 1 || field % conductor_ != 0)
    throw std::invalid_argument("trace: value of conductor " + std::to_string(conductor_) +
                                " does not lie in Q(zeta_" + std::to_string(field) + ")");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) sum += c * root_trace(conductor_, e, field);
  return sum;
}

std::string CycValue::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Rational a = abs(c);
    bool neg = sgn(c) < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? "-" : "+");
    }
    first = false;
    if (conductor_ == 1 || e == 0) {
      os << a.get_str();
      continue;
    }
    if (a != 1) os << a.get_str() << "*";
    os << "E(" << conductor_ << ")";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycValue& v) { return os << v.to_string(); }

CycAccumulator::CycAccumulator(long conductor) : conductor_(conductor), dense_(conductor) {
  if (conductor < 1) throw std::invalid_argument("accumulator conductor must be positive");
}

void CycAccumulator::add_root(long n, long e, const Rational& coef) {
  if (conductor_ % n != 0) throw std::invalid_argument("accumulator: conductor mismatch");
  dense_[mod(e, n) * (conductor_ / n)] += coef;
}

void CycAccumulator::add(const CycValue& v, const Rational& coef) {
  if (conductor_ % v.conductor_ != 0) throw std::invalid_argument("accumulator: conductor mismatch");
  long scale = conductor_ / v.conductor_;
  for (const auto& [e, c] : v.terms_) dense_[e * scale] += c * coef;
}

void CycAccumulator::add_product(const CycValue& a, const CycValue& b, const Rational& coef) {
  if (conductor_ % a.conductor_ != 0 || conductor_ % b.conductor_ != 0)
    throw std::invalid_argument("accumulator: conductor mismatch");
  long sa = conductor_ / a.conductor_;
  long sb = conductor_ / b.conductor_;
  Rational tmp;
  for (const auto& [ea, ca] : a.terms_) {
    tmp = ca * coef;
    for (const auto& [eb, cb] : b.terms_) dense_[(ea * sa + eb * sb) % conductor_] += tmp * cb;
  }
}

CycValue CycAccumulator::value() const {
  const FieldInfo& info = field_info(conductor_);
  std::map<long, Rational> acc;
  for (long e = 0; e < conductor_; ++e)
    if (sgn(dense_[e]) != 0) reduce_root(info, e, dense_[e], acc);
  Terms out = to_terms(acc);
  if (out.empty()) return CycValue();
  long cond = conductor_;
  while (cond > 1 && lower_once(cond, out)) {
  }
  return CycValue(cond, std::move(out));
}

}  // namespace helix
