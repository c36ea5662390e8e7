#include "helix/psl2gen.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace helix {

PSL2Params psl2_params(long q, Psl2Variant variant) {
  if (q < 4) throw std::invalid_argument("q must be at least 4, got " + std::to_string(q));
  auto fac = factorize(q);
  if (fac.size() != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
  PSL2Params params;
  params.p = fac[0].first;
  params.f = fac[0].second;
  params.q = q;
  params.d = params.p == 2 ? 1 : 2;
  params.variant = variant;
  return params;
}

namespace {

enum class Kind { Identity, Unipotent, Split, Nonsplit };

struct ClassParam {
  Kind kind;
  long param;  // unipotent index 0/1, or torus exponent
  long order;
  Integer size;
  std::string name;
};

std::string letters(std::size_t index) {
  std::string s;
  std::size_t n = index + 1;
  while (n > 0) {
    --n;
    s.insert(s.begin(), static_cast<char>('a' + n % 26));
    n /= 26;
  }
  return s;
}

long power_mod(long b, long e, long m) {
  long r = 1;
  b = mod(b, m);
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// Parameterization of the classes of PSL(2,q) / PGL(2,q).
struct Layout {
  PSL2Params params;
  bool small;       // the psl variant with odd q
  long split_n;     // order of the split torus
  long nonsplit_n;  // order of the nonsplit torus
  std::vector<ClassParam> classes;
  std::map<std::pair<Kind, long>, std::size_t> index;

  explicit Layout(const PSL2Params& pp) : params(pp) {
    long q = pp.q;
    small = pp.variant == Psl2Variant::Psl && pp.p != 2;
    split_n = small ? (q - 1) / 2 : q - 1;
    nonsplit_n = small ? (q + 1) / 2 : q + 1;
    Integer qq = q;
    classes.push_back({Kind::Identity, 0, 1, 1, ""});
    if (small) {
      classes.push_back({Kind::Unipotent, 0, pp.p, (qq * qq - 1) / 2, ""});
      classes.push_back({Kind::Unipotent, 1, pp.p, (qq * qq - 1) / 2, ""});
    } else {
      classes.push_back({Kind::Unipotent, 0, pp.p, qq * qq - 1, ""});
    }
    for (long i = 1; 2 * i <= split_n; ++i) {
      if (2 * i == split_n && split_n > 0)
        classes.push_back({Kind::Split, i, 2, qq * (qq + 1) / 2, ""});
      else
        classes.push_back({Kind::Split, i, split_n / gcd(i, split_n), qq * (qq + 1), ""});
    }
    for (long j = 1; 2 * j <= nonsplit_n; ++j) {
      if (2 * j == nonsplit_n)
        classes.push_back({Kind::Nonsplit, j, 2, qq * (qq - 1) / 2, ""});
      else
        classes.push_back({Kind::Nonsplit, j, nonsplit_n / gcd(j, nonsplit_n), qq * (qq - 1), ""});
    }
    name_classes();
    for (std::size_t k = 0; k < classes.size(); ++k) index[{classes[k].kind, classes[k].param}] = k;
  }

  // Within one element order, unipotent classes come first, then torus
  // classes by exponent. For involutions in PGL(2,q), q odd, the class lying
  // in PSL(2,q) comes first.
  void name_classes() {
    Kind psl_involution = params.q % 4 == 1 ? Kind::Split : Kind::Nonsplit;
    auto rank = [&](const ClassParam& c) {
      int r = c.kind == Kind::Identity ? 0 : c.kind == Kind::Unipotent ? 1 : 2;
      if (c.order == 2 && c.kind != Kind::Unipotent) r = c.kind == psl_involution ? 2 : 3;
      return std::make_tuple(c.order, r, c.param);
    };
    std::vector<std::size_t> perm(classes.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return rank(classes[a]) < rank(classes[b]); });
    std::map<long, std::size_t> used;
    for (auto k : perm) {
      auto& c = classes[k];
      c.name = std::to_string(c.order) + letters(used[c.order]++);
    }
  }

  const ClassParam& torus_class(Kind kind, long e) const {
    long n = kind == Kind::Split ? split_n : nonsplit_n;
    e = mod(e, n);
    if (e == 0) return classes[0];
    e = std::min(e, n - e);
    return classes[index.at({kind, e})];
  }

  bool is_square_mod(long r) const {
    if (params.f % 2 == 0) return true;
    return power_mod(r, (params.p - 1) / 2, params.p) == 1;
  }

  std::string power(const ClassParam& c, long r) const {
    switch (c.kind) {
      case Kind::Identity:
        return classes[0].name;
      case Kind::Unipotent:
        if (r % params.p == 0) return classes[0].name;
        if (!small || is_square_mod(r)) return c.name;
        return classes[index.at({Kind::Unipotent, 1 - c.param})].name;
      case Kind::Split:
      case Kind::Nonsplit:
        return torus_class(c.kind, c.param * r).name;
    }
    return {};
  }
};

// z^k + z^-k for z = E(n).
CycValue cos_sum(long n, long k) {
  return CycValue::from_terms(n, {{mod(k, n), Rational(1)}, {mod(-k, n), Rational(1)}});
}

// sqrt(q) if q = 1 mod 4, sqrt(-q) if q = 3 mod 4.
CycValue sqrt_signed_q(const PSL2Params& pp) {
  long scale = 1;
  if (pp.f % 2 == 0) {
    for (int i = 0; i < pp.f / 2; ++i) scale *= pp.p;
    return CycValue(scale);
  }
  for (int i = 0; i < (pp.f - 1) / 2; ++i) scale *= pp.p;
  std::vector<CycValue::Term> terms;
  for (long x = 1; x < pp.p; ++x) {
    long legendre = power_mod(x, (pp.p - 1) / 2, pp.p) == 1 ? 1 : -1;
    terms.emplace_back(x, Rational(legendre * scale));
  }
  return CycValue::from_terms(pp.p, terms);
}

struct Row {
  long degree;
  std::vector<std::optional<CycValue>> values;
};

template <typename F>
Row make_row(const Layout& layout, long degree, F value) {
  Row row{degree, {}};
  for (const auto& c : layout.classes) row.values.emplace_back(value(c));
  return row;
}

std::vector<Row> ordinary_rows(const Layout& L) {
  const PSL2Params& pp = L.params;
  long q = pp.q;
  std::vector<Row> rows;
  auto sign = [](long e) { return e % 2 == 0 ? 1L : -1L; };

  rows.push_back(make_row(L, 1, [](const ClassParam&) { return CycValue(1); }));
  bool pgl_odd = pp.variant == Psl2Variant::Pgl && pp.p != 2;
  if (pgl_odd) {
    rows.push_back(make_row(L, 1, [&](const ClassParam& c) {
      return CycValue(c.kind == Kind::Split || c.kind == Kind::Nonsplit ? sign(c.param) : 1L);
    }));
  }
  auto steinberg = [&](const ClassParam& c) -> CycValue {
    switch (c.kind) {
      case Kind::Identity: return CycValue(q);
      case Kind::Unipotent: return CycValue(0);
      case Kind::Split: return CycValue(1);
      case Kind::Nonsplit: return CycValue(-1);
    }
    return {};
  };
  rows.push_back(make_row(L, q, steinberg));
  if (pgl_odd) {
    rows.push_back(make_row(L, q, [&](const ClassParam& c) {
      CycValue v = steinberg(c);
      return c.kind == Kind::Split || c.kind == Kind::Nonsplit ? v * CycValue(sign(c.param)) : v;
    }));
  }
  if (L.small) {
    CycValue root = sqrt_signed_q(pp);
    bool one_mod_four = q % 4 == 1;
    long degree = one_mod_four ? (q + 1) / 2 : (q - 1) / 2;
    for (int s : {1, -1}) {
      rows.push_back(make_row(L, degree, [&](const ClassParam& c) -> CycValue {
        switch (c.kind) {
          case Kind::Identity: return CycValue(degree);
          case Kind::Unipotent: {
            int t = c.param == 0 ? s : -s;
            CycValue base = one_mod_four ? CycValue(1) : CycValue(-1);
            return (base + CycValue(t) * root) * CycValue(Rational(1, 2));
          }
          case Kind::Split: return one_mod_four ? CycValue(sign(c.param)) : CycValue(0);
          case Kind::Nonsplit: return one_mod_four ? CycValue(0) : CycValue(-sign(c.param));
        }
        return {};
      }));
    }
  }
  for (long m = 1; 2 * m < L.split_n; ++m) {
    rows.push_back(make_row(L, q + 1, [&](const ClassParam& c) -> CycValue {
      switch (c.kind) {
        case Kind::Identity: return CycValue(q + 1);
        case Kind::Unipotent: return CycValue(1);
        case Kind::Split: return cos_sum(L.split_n, m * c.param);
        case Kind::Nonsplit: return CycValue(0);
      }
      return {};
    }));
  }
  for (long m = 1; 2 * m < L.nonsplit_n; ++m) {
    rows.push_back(make_row(L, q - 1, [&](const ClassParam& c) -> CycValue {
      switch (c.kind) {
        case Kind::Identity: return CycValue(q - 1);
        case Kind::Unipotent: return CycValue(-1);
        case Kind::Split: return CycValue(0);
        case Kind::Nonsplit: return -cos_sum(L.nonsplit_n, m * c.param);
      }
      return {};
    }));
  }
  return rows;
}

Row brauer3_row(const Layout& L) {
  if (L.small) throw std::invalid_argument("the degree-3 Brauer character lives on PGL(2,q) for odd q");
  return make_row(L, 3, [&](const ClassParam& c) -> std::optional<CycValue> {
    switch (c.kind) {
      case Kind::Identity: return CycValue(3);
      case Kind::Unipotent: return std::nullopt;
      case Kind::Split: return CycValue(1) + cos_sum(L.split_n, c.param);
      case Kind::Nonsplit: return CycValue(1) + cos_sum(L.nonsplit_n, c.param);
    }
    return std::nullopt;
  });
}

std::vector<std::string> degree_names(const std::vector<Row>& rows) {
  std::map<long, std::size_t> count, used;
  for (const auto& r : rows) ++count[r.degree];
  std::vector<std::string> names;
  for (const auto& r : rows) {
    std::string name = "chi" + std::to_string(r.degree);
    if (count[r.degree] > 1) name += letters(used[r.degree]++);
    names.push_back(name);
  }
  return names;
}

}  // namespace

Character gen_brauer3(const PSL2Params& params) {
  Layout layout(params);
  Row row = brauer3_row(layout);
  return Character{"phi3", params.p, 3, std::move(row.values)};
}

CharacterTable gen_table(const PSL2Params& params, bool with_brauer3) {
  Layout layout(params);
  std::vector<long> primes;
  for (long n : {params.p, params.q - 1, params.q + 1})
    for (auto [r, a] : factorize(n))
      if (std::find(primes.begin(), primes.end(), r) == primes.end()) primes.push_back(r);

  std::vector<ConjClass> classes;
  for (const auto& c : layout.classes) {
    ConjClass cc{c.name, c.order, c.size, {}};
    for (long r : primes) cc.power_maps[r] = layout.power(c, r);
    classes.push_back(std::move(cc));
  }
  std::vector<Row> rows = ordinary_rows(layout);
  std::vector<std::string> names = degree_names(rows);
  std::vector<Character> chars;
  for (std::size_t k = 0; k < rows.size(); ++k)
    chars.push_back(Character{names[k], 0, rows[k].degree, std::move(rows[k].values)});
  if (with_brauer3) chars.push_back(gen_brauer3(params));

  Integer q = params.q;
  Integer order = q * (q * q - 1) / (params.variant == Psl2Variant::Psl ? params.d : 1);
  bool pgl = params.variant == Psl2Variant::Pgl && params.p != 2;
  std::string group = std::string(pgl ? "PGL" : "PSL") + "(2," + std::to_string(params.q) + ")";
  return CharacterTable(group, order, std::move(classes), std::move(chars), Completeness::Full);
}

}  // namespace helix
