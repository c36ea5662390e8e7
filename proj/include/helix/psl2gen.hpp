#pragma once

#include "helix/chartab.hpp"

namespace helix {

enum class Psl2Variant { Psl, Pgl };

struct PSL2Params {
  long p = 2;
  int f = 2;
  long q = 4;
  long d = 1;  // gcd(2, p-1)
  Psl2Variant variant = Psl2Variant::Psl;
};

/// Throws std::invalid_argument if q < 4 or q is not a prime power.
PSL2Params psl2_params(long q, Psl2Variant variant);

/// Full ordinary character table of PSL(2,q) or PGL(2,q). For even q both
/// variants give the same table. With with_brauer3 the degree-3 p-modular
/// character "phi3" is appended (see gen_brauer3).
CharacterTable gen_table(const PSL2Params& params, bool with_brauer3 = false);

/// The degree-3 Brauer character in characteristic p, aligned with the
/// classes of gen_table(params). Throws std::invalid_argument for PSL(2,q)
/// with odd q.
Character gen_brauer3(const PSL2Params& params);

}  // namespace helix
