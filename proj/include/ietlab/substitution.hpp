#pragma once

#include <string>
#include <vector>

#include "ietlab/matrix.hpp"

namespace ietlab {

// Rules over the alphabet 0..N-1; printed 1-based as "i -> word".
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::vector<std::vector<int>> rules);
  // One rule per line, "1 -> 143"; blank lines and '#' comments ignored.
  static Substitution parse(const std::string& text);

  int size() const { return static_cast<int>(rules_.size()); }
  const std::vector<int>& operator[](int i) const { return rules_[i]; }
  const std::vector<std::vector<int>>& rules() const { return rules_; }

  // (M)_{i,j} = number of occurrences of i in sigma(j).
  IntMatrix incidence() const;
  std::vector<int> apply(const std::vector<int>& w) const;
  // sigma^k(j)
  std::vector<int> iterate(int j, int k) const;
  std::string to_string() const;
  bool operator==(const Substitution& o) const { return rules_ == o.rules_; }

 private:
  std::vector<std::vector<int>> rules_;
};

}  // namespace ietlab
