#include "ietlab/substitution.hpp"

#include <cctype>
#include <sstream>

namespace ietlab {

namespace {

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> w;
  bool spaced = s.find_first_of(" \t,") != std::string::npos;
  if (spaced) {
    std::string t = s;
    for (auto& c : t)
      if (c == ',') c = ' ';
    std::istringstream is(t);
    int v;
    while (is >> v) w.push_back(v - 1);
  } else {
    for (char c : s) {
      require(std::isdigit(static_cast<unsigned char>(c)), "Substitution: bad symbol");
      w.push_back(c - '1');
    }
  }
  return w;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Substitution::Substitution(std::vector<std::vector<int>> rules) : rules_(std::move(rules)) {
  const int n = size();
  require(n > 0, "Substitution: no rules");
  for (const auto& r : rules_) {
    require(!r.empty(), "Substitution: empty rule");
    for (int c : r) require(c >= 0 && c < n, "Substitution: symbol out of range");
  }
}

Substitution Substitution::parse(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<int, std::vector<int>>> found;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto arrow = line.find("->");
    require(arrow != std::string::npos, "Substitution::parse: expected 'i -> word'");
    int lhs = std::stoi(trim(line.substr(0, arrow)));
    found.emplace_back(lhs - 1, parse_word(trim(line.substr(arrow + 2))));
  }
  std::vector<std::vector<int>> rules(found.size());
  for (auto& [i, w] : found) {
    require(i >= 0 && i < static_cast<int>(found.size()) && rules[i].empty(),
            "Substitution::parse: rules must cover 1..N once");
    rules[i] = std::move(w);
  }
  return Substitution(std::move(rules));
}

IntMatrix Substitution::incidence() const {
  const int n = size();
  IntMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int c : rules_[j]) m(c, j) += 1;
  return m;
}

std::vector<int> Substitution::apply(const std::vector<int>& w) const {
  std::vector<int> out;
  for (int c : w) out.insert(out.end(), rules_[c].begin(), rules_[c].end());
  return out;
}

std::vector<int> Substitution::iterate(int j, int k) const {
  std::vector<int> w{j};
  for (int i = 0; i < k; ++i) w = apply(w);
  return w;
}

std::string Substitution::to_string() const {
  std::ostringstream os;
  const bool spaced = size() > 9;
  for (int i = 0; i < size(); ++i) {
    os << i + 1 << " ->";
    if (!spaced) os << ' ';
    for (int c : rules_[i]) {
      if (spaced) os << ' ';
      os << c + 1;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace ietlab
