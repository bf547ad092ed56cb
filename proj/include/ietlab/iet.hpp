#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ietlab/number_field.hpp"
#include "ietlab/substitution.hpp"

namespace ietlab {

// Atoms are numbered 0..N-1 internally and printed 1..N.
class Permutation {
 public:
  Permutation() = default;
  // images[i] = position of atom i in the image (0-based).
  explicit Permutation(std::vector<int> images);
  // "4213", "(5462731)" or "5 4 6 2 7 3 1" (1-based).
  static Permutation parse(const std::string& s);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(img_.size()); }
  int operator[](int i) const { return img_[i]; }
  const std::vector<int>& images() const { return img_; }
  Permutation inverse() const;
  bool is_irreducible() const;

  std::string to_string() const;
  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

 private:
  std::vector<int> img_;
};

std::vector<FieldElement> translations_from(const Permutation& pi, const std::vector<FieldElement>& lengths);

class IET {
 public:
  IET() = default;
  IET(Permutation pi, std::vector<FieldElement> lengths);

  int size() const { return pi_.size(); }
  const Permutation& permutation() const { return pi_; }
  const std::vector<FieldElement>& lengths() const { return len_; }
  const std::vector<FieldElement>& translations() const { return tau_; }
  const std::vector<FieldElement>& left_endpoints() const { return left_; }
  const FieldElement& total() const { return total_; }
  const FieldPtr& field() const { return total_.field(); }

  // Atom containing x; throws PreconditionError unless 0 <= x < total.
  int atom_of(const FieldElement& x) const;
  FieldElement apply(const FieldElement& x) const;
  IET inverse() const;

  // Atom of x decided from a double value with error bound err; -1 if uncertain.
  int atom_of_approx(double x, double err) const;
  const std::vector<double>& left_approx() const { return left_d_; }

 private:
  Permutation pi_;
  std::vector<FieldElement> len_, tau_, left_;
  FieldElement total_;
  std::vector<double> left_d_;
};

// Recovers the permutation from image positions; the images must tile [0, total).
IET iet_from_translations(const std::vector<FieldElement>& lengths, const std::vector<FieldElement>& t);

using Word = std::vector<int>;
std::string word_to_string(const Word& w);

struct Orbit {
  Word word;
  FieldElement end;
};
Orbit orbit(const IET& e, const FieldElement& x, long k);

struct Staircase {
  std::vector<long> s;
  std::vector<FieldElement> discrepancy;  // s_i - k lambda_i
};
Staircase staircase_discrepancy(const IET& e, const FieldElement& x, long k);

struct InducedMap {
  FieldElement a, b;      // window [a, b)
  IET induced;            // coordinates relative to a
  std::vector<Word> return_words;
};

constexpr long kDefaultReturnCap = 1000000;

// First-return map on [a, b), 0 <= a < b <= total.
InducedMap induce(const IET& e, const FieldElement& a, const FieldElement& b, long cap = kDefaultReturnCap);

struct SelfSimilarity {
  bool ok = false;
  Substitution sigma;
  std::string reason;
};

// Checks that the first return to [a, a + rho total) is E conjugated by x -> rho x + a.
SelfSimilarity check_self_similar(const IET& e, const FieldElement& rho, const FieldElement& a,
                                  long cap = kDefaultReturnCap);

// First collision E^m(l_i) = l_j, m >= 1, among interior left endpoints within the horizon.
struct KeaneResult {
  bool ok = true;
  int from = -1, to = -1;
  long steps = 0;
};
KeaneResult keane_check(const IET& e, long horizon);

// Text format: "iet-format 1", minpoly, root interval, permutation, one length per line.
void write_iet(std::ostream& os, const IET& e);
IET read_iet(std::istream& is);
std::string iet_to_string(const IET& e);
IET iet_from_string(const std::string& s);

}  // namespace ietlab
