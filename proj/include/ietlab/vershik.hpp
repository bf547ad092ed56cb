#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ietlab/lattice.hpp"
#include "ietlab/spectral.hpp"
#include "ietlab/substitution.hpp"

namespace ietlab {

struct SubstitutionInfo {
  IntMatrix incidence;
  bool primitive = false;
  RealAlgebraic beta;    // Perron root of the incidence matrix
  int fixed_letter = -1;  // unique j with sigma(j) starting with j, or -1
};
// Throws PreconditionError for a non-primitive substitution.
SubstitutionInfo analyze_substitution(const Substitution& s);

// Proper prefix of sigma(rule) of length len (len = 0 is epsilon_rule).
struct Prefix {
  int rule = 0;
  int len = 0;
  bool operator==(const Prefix& o) const { return rule == o.rule && len == o.len; }
  bool operator!=(const Prefix& o) const { return !(*this == o); }
};
// Symbol following the prefix.
inline int next_symbol(const Substitution& s, const Prefix& p) { return s[p.rule][p.len]; }

// Admissibility graph on prefixes: mu -> nu iff rule(mu) == next_symbol(nu).
struct PrefixGraph {
  std::vector<Prefix> states;
  IntMatrix adjacency;
  RealAlgebraic spectral_radius;

  int index_of(const Prefix& p) const;
  // Admissible sequences of t prefixes.
  Integer paths(int t) const;
  // Closed admissible sequences of length T (trace of A^T).
  Integer cycles(int T) const;
};
// Checks primitivity and charpoly(A) = x^{P-N} charpoly(M) (CheckFailure otherwise).
PrefixGraph prefix_graph(const Substitution& s);

// Eventually periodic code: prefixes[0..t) is the transient, prefixes[t..t+T) the period.
// Undetermined codes carry T = 0 and the prefixes read so far.
struct VershikCode {
  std::vector<Prefix> prefixes;
  int t = 0;
  int T = 0;
  bool determined() const { return T > 0; }
  // "(t;T;r:l,r:l,...)" with 1-based rules.
  std::string to_string() const;
  static VershikCode parse(const std::string& s);
  bool operator==(const VershikCode& o) const {
    return t == o.t && T == o.T && prefixes == o.prefixes;
  }
};

struct Tile {
  std::vector<Prefix> code;
  FieldElement left, length;
};

struct PartitionCheck {
  int depth = 0;
  long tiles = 0;
  Integer expected;  // sum_i |sigma^depth(i)|
  bool ok = false;
};

// Recursive tiling of a self-similar IET: the tile of mu is g_mu(Omega_rule) with
// g_mu(x) = rho x + window + tau_mu.
class Vershik {
 public:
  // The model must carry rho, window, sigma and R.
  explicit Vershik(const LatticeModel& m);

  const LatticeModel& model() const { return m_; }
  const Substitution& sigma() const { return *m_.sigma; }
  const std::vector<Prefix>& prefixes() const { return graph_.states; }
  const PrefixGraph& graph() const { return graph_; }
  // window + tau_mu
  const FieldElement& offset(const Prefix& p) const;
  // g_mu(x)
  FieldElement apply(const Prefix& p, const FieldElement& x) const;
  // Tile of the first level containing x.
  Prefix locate(const FieldElement& x) const;

  // rule(mu_k) == next_symbol(mu_{k+1}) along the sequence.
  bool consistent(const std::vector<Prefix>& code) const;
  VershikCode encode(const FieldElement& x, int depth = 512) const;
  // Throws PreconditionError for an inconsistent or invalid code, CheckFailure
  // if T is not a multiple of the order of the periodic point's layer.
  FieldElement decode(const VershikCode& code) const;
  // Fixed point of g_{mu_1} ... g_{mu_T}.
  FieldElement periodic_point(const std::vector<Prefix>& period) const;

  // Tiles of the given depth in increasing order (small depths only).
  std::vector<Tile> tiles(int depth) const;
  // Streams the tiles in order and checks exact adjacency; memory O(depth).
  PartitionCheck check_partition(int depth) const;

 private:
  LatticeModel m_;
  PrefixGraph graph_;
  std::vector<FieldElement> offsets_;
  std::vector<int> level1_;                // state indices sorted by tile position
  std::vector<FieldElement> level1_left_;  // matching left endpoints
  std::vector<std::vector<int>> children_;  // per atom, sorted states with next_symbol == atom
  FieldElement beta_;
};

// |det(I - R^T)|; throws PreconditionError if singular.
Integer d_T(const IntMatrix& R, int T);
// prod |1 - z^T| over the eigenvalues, and prod (z^T - 1)^2 / z^T over the
// eigenvalues of modulus > 1 when the spectrum is closed under z -> 1/z.
struct DTCrossCheck {
  long double direct = 0;
  long double reciprocal_form = 0;
  bool reciprocal = false;
};
DTCrossCheck d_T_numeric(const IntMatrix& R, int T);

struct ExponentReport {
  RealAlgebraic beta;            // sr(M_sigma)
  long double beta2 = 0;         // second largest modulus
  int beta2_multiplicity = 0;
  long double sr_R_lo = 0, sr_R_hi = 0;
  long double v = 0, v_lo = 0, v_hi = 0;  // log sr(R) / log sr(M)
  long double discrepancy_exponent = 0;   // log |beta2| / log beta
  bool power_identity = false;                      // sr(R)^{n-1} == sr(M) exactly
};
ExponentReport exponent_report(const IntMatrix& R, const IntMatrix& M, bool decide_power_identity = true);

// Exact decision of sr(R)^e == beta.
bool spectral_power_equals(const IntMatrix& R, int e, const RealAlgebraic& beta);

struct EscapeBound {
  Rational norm;      // sup norm of the coordinates of the decoded point
  Rational constant;  // C
  Rational bound;     // C ||R||^{t+T}
  double ratio = 0;
  bool pass = false;
};
EscapeBound escape_bound_check(const Vershik& v, const VershikCode& code);

// u_{k+1} = a u_k + b: closed form a^k (u0 - l) + l with l = (I - a)^{-1} b.
std::vector<Rational> arith_geom_closed(const RatMatrix& a, const std::vector<Rational>& b,
                                        const std::vector<Rational>& u0, unsigned k);
// sum_{j=0}^k u_j = (I - a)^{-1} (I - a^{k+1}) (u0 - l) + (k + 1) l
std::vector<Rational> arith_geom_sum(const RatMatrix& a, const std::vector<Rational>& b,
                                     const std::vector<Rational>& u0, unsigned k);

}  // namespace ietlab
