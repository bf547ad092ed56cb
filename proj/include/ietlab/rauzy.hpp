#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ietlab/iet.hpp"

namespace ietlab {

// Successor of pi along the edge labelled type.
Permutation rauzy_successor(const Permutation& pi, int type);
// A_type(pi): old lengths = A * new lengths.
IntMatrix rauzy_matrix(const Permutation& pi, int type);

struct RauzyStep {
  int type = 0;
  Permutation next;
  std::vector<FieldElement> lengths;
  IntMatrix A;
};

// Type 0 when the last atom is longer than the atom landing last; equal lengths throw.
RauzyStep rauzy_step(const Permutation& pi, const std::vector<FieldElement>& lengths);

struct RauzyClass {
  std::vector<Permutation> vertices;  // sorted
  std::vector<std::array<int, 2>> succ;  // successor indices by label
  int index_of(const Permutation& p) const;
};

// Classes of irreducible permutations on n symbols, 2 <= n <= 7, ordered by
// size and then by smallest member.
std::vector<RauzyClass> rauzy_graph(int n);

struct RauzyCycle {
  Permutation base;
  std::string labels;                // '0'/'1' per edge
  std::vector<Permutation> path;     // base, then successive permutations (length = labels.size())
  IntMatrix product;                 // A_1 A_2 ... A_L; its inverse is the renormalization matrix B
  IntPoly charpoly;                  // det(xI - product)
};

// Closed walks of length 1..lmax, one per rotation class; the representative
// is the lexicographically smallest rotation of its (vertex, label) sequence.
// Sinks receive cycles in a deterministic order.
void enumerate_cycles(const RauzyClass& cls, int lmax, const std::function<void(const RauzyCycle&)>& sink,
                      int threads = 1);

struct CensusRow {
  int length = 0;
  long cycles = 0;
  long polys = 0;
  std::vector<IntPoly> polynomials;  // distinct, sorted by coefficient list
};

// Cycles with primitive product and irreducible characteristic polynomial of degree N.
std::vector<CensusRow> survey(const RauzyClass& cls, int lmax, int threads = 1);

struct SelfSimilarIET {
  IET iet;
  FieldElement rho;  // B Lambda = rho Lambda, 0 < rho < 1
};

SelfSimilarIET self_similar_from_cycle(const RauzyCycle& c);

struct RauzyLoop {
  long preperiod = 0;   // steps before the loop starts
  RauzyCycle cycle;     // based at the permutation reached after preperiod steps
  std::vector<FieldElement> lengths;  // lengths at the loop start
  FieldElement rho;     // lengths after one loop = rho * lengths
};

// Runs Rauzy induction until the normalized lengths and permutation repeat.
RauzyLoop rauzy_loop(const IET& e, long max_steps = 100000);

}  // namespace ietlab
