#include "ietlab/iet.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace ietlab {

// ---- Permutation ----

Permutation::Permutation(std::vector<int> images) : img_(std::move(images)) {
  const int n = size();
  require(n > 0, "Permutation: empty");
  std::vector<char> seen(n, 0);
  for (int v : img_) {
    require(v >= 0 && v < n && !seen[v], "Permutation: not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::parse(const std::string& s) {
  std::vector<int> v;
  bool spaced = s.find_first_of(" ,") != std::string::npos;
  if (spaced) {
    std::string t;
    for (char c : s) t += (c == ',' || c == '(' || c == ')') ? ' ' : c;
    std::istringstream is(t);
    int x;
    while (is >> x) v.push_back(x - 1);
  } else {
    for (char c : s) {
      if (c == '(' || c == ')') continue;
      require(std::isdigit(static_cast<unsigned char>(c)) && c != '0', "Permutation::parse: bad digit");
      v.push_back(c - '1');
    }
  }
  return Permutation(std::move(v));
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(size());
  for (int i = 0; i < size(); ++i) inv[img_[i]] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_irreducible() const {
  int mx = -1;
  for (int k = 0; k + 1 < size(); ++k) {
    mx = std::max(mx, img_[k]);
    if (mx == k) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < size(); ++i) {
    if (size() > 9 && i) os << ' ';
    os << img_[i] + 1;
  }
  return os.str();
}

// ---- IET ----

std::vector<FieldElement> translations_from(const Permutation& pi, const std::vector<FieldElement>& lengths) {
  const int n = pi.size();
  require(static_cast<int>(lengths.size()) == n, "translations_from: size mismatch");
  require(pi.is_irreducible(), "translations_from: reducible permutation");
  for (const auto& l : lengths) require(l.sign() > 0, "translations_from: non-positive length");
  std::vector<FieldElement> tau;
  tau.reserve(n);
  for (int i = 0; i < n; ++i) {
    FieldElement t(lengths[0].field(), Rational(0));
    for (int j = 0; j < n; ++j) {
      if (pi[j] < pi[i]) t += lengths[j];
      if (j < i) t -= lengths[j];
    }
    tau.push_back(std::move(t));
  }
  return tau;
}

IET::IET(Permutation pi, std::vector<FieldElement> lengths) : pi_(std::move(pi)), len_(std::move(lengths)) {
  tau_ = translations_from(pi_, len_);
  total_ = FieldElement(len_[0].field(), Rational(0));
  for (const auto& l : len_) {
    left_.push_back(total_);
    left_d_.push_back(total_.to_double());
    total_ += l;
  }
}

int IET::atom_of(const FieldElement& x) const {
  require(x.sign() >= 0 && x < total_, "IET: point outside [0, total)");
  // Last atom whose left endpoint is <= x.
  int lo = 0, hi = size() - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (compare(left_[mid], x) <= 0)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

int IET::atom_of_approx(double x, double err) const {
  auto it = std::upper_bound(left_d_.begin(), left_d_.end(), x);
  int i = static_cast<int>(it - left_d_.begin()) - 1;
  const double slack = err + 1e-15;
  if (i < 0) return -1;
  if (x - left_d_[i] <= slack) return -1;
  if (i + 1 < size() && left_d_[i + 1] - x <= slack) return -1;
  return i;
}

FieldElement IET::apply(const FieldElement& x) const { return x + tau_[atom_of(x)]; }

IET IET::inverse() const {
  Permutation inv = pi_.inverse();
  std::vector<FieldElement> l;
  for (int p = 0; p < size(); ++p) l.push_back(len_[inv[p]]);
  return IET(inv, std::move(l));
}

IET iet_from_translations(const std::vector<FieldElement>& lengths, const std::vector<FieldElement>& t) {
  const int n = static_cast<int>(lengths.size());
  require(n > 0 && static_cast<int>(t.size()) == n, "iet_from_translations: size mismatch");
  for (const auto& l : lengths) require(l.sign() > 0, "iet_from_translations: non-positive length");
  std::vector<FieldElement> left;
  FieldElement acc(lengths[0].field(), Rational(0));
  for (const auto& l : lengths) {
    left.push_back(acc);
    acc += l;
  }
  std::vector<FieldElement> img;
  for (int i = 0; i < n; ++i) img.push_back(left[i] + t[i]);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return compare(img[a], img[b]) < 0; });
  FieldElement pos(lengths[0].field(), Rational(0));
  std::vector<int> pi(n);
  for (int p = 0; p < n; ++p) {
    int i = order[p];
    if (img[i] != pos) throw PreconditionError("iet_from_translations: images overlap or leave a gap");
    pi[i] = p;
    pos += lengths[i];
  }
  Permutation perm(pi);
  require(perm.is_irreducible(), "iet_from_translations: reducible permutation");
  IET e(perm, lengths);
  for (int i = 0; i < n; ++i) require(e.translations()[i] == t[i], "iet_from_translations: inconsistent translations");
  return e;
}

std::string word_to_string(const Word& w) {
  std::ostringstream os;
  bool spaced = std::any_of(w.begin(), w.end(), [](int c) { return c >= 9; });
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (spaced && i) os << ' ';
    os << w[i] + 1;
  }
  return os.str();
}

Orbit orbit(const IET& e, const FieldElement& x, long k) {
  require(k >= 0, "orbit: negative length");
  Orbit o{{}, x};
  o.word.reserve(k);
  for (long j = 0; j < k; ++j) {
    int i = e.atom_of(o.end);
    o.word.push_back(i);
    o.end += e.translations()[i];
  }
  if (k == 0) e.atom_of(x);
  return o;
}

Staircase staircase_discrepancy(const IET& e, const FieldElement& x, long k) {
  Orbit o = orbit(e, x, k);
  Staircase st;
  st.s.assign(e.size(), 0);
  for (int c : o.word) ++st.s[c];
  for (int i = 0; i < e.size(); ++i)
    st.discrepancy.push_back(FieldElement(e.field(), Rational(st.s[i])) - e.lengths()[i] * Rational(k));
  return st;
}

// ---- induced maps ----

namespace {

bool in_window(const FieldElement& x, const FieldElement& a, const FieldElement& b) {
  return compare(x, a) >= 0 && compare(x, b) < 0;
}

struct ByValue {
  bool operator()(const FieldElement& x, const FieldElement& y) const { return compare(x, y) < 0; }
};

}  // namespace

InducedMap induce(const IET& e, const FieldElement& a, const FieldElement& b, long cap) {
  require(a.sign() >= 0 && compare(a, b) < 0 && compare(b, e.total()) <= 0, "induce: bad window");
  const IET inv = e.inverse();
  std::vector<FieldElement> cuts{a};
  auto back_to_window = [&](FieldElement y) {
    for (long s = 0;; ++s) {
      if (in_window(y, a, b)) {
        cuts.push_back(y);
        return;
      }
      if (s >= cap) throw LimitError("induce: return-time cap exceeded");
      y = inv.apply(y);
    }
  };
  for (int i = 1; i < e.size(); ++i) back_to_window(e.left_endpoints()[i]);
  if (a.sign() > 0) back_to_window(inv.apply(a));
  if (compare(b, e.total()) < 0) back_to_window(inv.apply(b));
  std::sort(cuts.begin(), cuts.end(), ByValue());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Return itinerary of every piece, merging neighbours with equal words.
  std::vector<FieldElement> starts;
  std::vector<Word> words;
  std::vector<FieldElement> shifts;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    Word w;
    FieldElement y = cuts[c];
    long s = 0;
    do {
      if (++s > cap) throw LimitError("induce: return-time cap exceeded");
      int i = e.atom_of(y);
      w.push_back(i);
      y += e.translations()[i];
    } while (!in_window(y, a, b));
    if (!words.empty() && words.back() == w) continue;
    starts.push_back(cuts[c]);
    words.push_back(std::move(w));
    shifts.push_back(y - cuts[c]);
  }
  std::vector<FieldElement> lens;
  for (std::size_t i = 0; i < starts.size(); ++i)
    lens.push_back((i + 1 < starts.size() ? starts[i + 1] : b) - starts[i]);
  InducedMap m{a, b, iet_from_translations(lens, shifts), std::move(words)};
  return m;
}

SelfSimilarity check_self_similar(const IET& e, const FieldElement& rho, const FieldElement& a, long cap) {
  SelfSimilarity r;
  const FieldElement b = a + rho * e.total();
  if (compare(b, e.total()) > 0 || a.sign() < 0) {
    r.reason = "window outside the interval";
    return r;
  }
  InducedMap m = induce(e, a, b, cap);
  r.sigma = Substitution(m.return_words);
  if (m.induced.size() != e.size() || m.induced.permutation() != e.permutation()) {
    r.reason = "permutation mismatch";
    return r;
  }
  for (int i = 0; i < e.size(); ++i)
    if (m.induced.lengths()[i] != rho * e.lengths()[i]) {
      r.reason = "length mismatch";
      return r;
    }
  // E^{|sigma(i)|}(h x) = h(E x) on one sample per atom, h(x) = rho x + a.
  for (int i = 0; i < e.size(); ++i) {
    FieldElement x = e.left_endpoints()[i] + e.lengths()[i] * Rational(1, 2);
    FieldElement hx = rho * x + a;
    Orbit o = orbit(e, hx, static_cast<long>(r.sigma[i].size()));
    if (o.end != rho * e.apply(x) + a || o.word != r.sigma[i]) {
      r.reason = "scale-conjugacy identity fails";
      return r;
    }
  }
  r.ok = true;
  return r;
}

KeaneResult keane_check(const IET& e, long horizon) {
  std::unordered_map<FieldElement, int, FieldElementHash> ends;
  for (int i = 1; i < e.size(); ++i) ends.emplace(e.left_endpoints()[i], i);
  KeaneResult r;
  for (int i = 1; i < e.size(); ++i) {
    FieldElement y = e.left_endpoints()[i];
    for (long m = 1; m <= horizon; ++m) {
      y = e.apply(y);
      auto it = ends.find(y);
      if (it != ends.end()) {
        r.ok = false;
        r.from = i;
        r.to = it->second;
        r.steps = m;
        return r;
      }
    }
  }
  r.steps = horizon;
  return r;
}

// ---- serialization ----

namespace {

std::string rat_tuple(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s + ")";
}

std::vector<Rational> parse_tuple(const std::string& s) {
  std::string t;
  for (char c : s) t += (c == '(' || c == ')' || c == ',') ? ' ' : c;
  std::istringstream is(t);
  std::vector<Rational> v;
  std::string tok;
  while (is >> tok) v.push_back(parse_rational(tok));
  return v;
}

std::string next_line(std::istream& is, const char* key) {
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::string k = line.substr(0, line.find(' '));
    if (k != key) throw PreconditionError(std::string("read_iet: expected '") + key + "', got '" + line + "'");
    return line.size() > k.size() ? line.substr(k.size() + 1) : "";
  }
  throw PreconditionError(std::string("read_iet: missing '") + key + "'");
}

}  // namespace

void write_iet(std::ostream& os, const IET& e) {
  const RealAlgebraic& g = e.field()->generator();
  os << "iet-format 1\n";
  os << "minpoly " << g.minpoly().to_list() << '\n';
  os << "root " << rat_tuple({g.lo(), g.hi()}) << '\n';
  os << "permutation " << e.permutation().to_string() << '\n';
  for (const auto& l : e.lengths()) os << "length " << rat_tuple(l.coords()) << '\n';
}

IET read_iet(std::istream& is) {
  require(next_line(is, "iet-format") == "1", "read_iet: unsupported version");
  IntPoly p = IntPoly::parse_list(next_line(is, "minpoly"));
  auto iv = parse_tuple(next_line(is, "root"));
  require(iv.size() == 2, "read_iet: root needs two endpoints");
  RealAlgebraic g = p.degree() == 1 ? RealAlgebraic(iv[0]) : RealAlgebraic(p, iv[0], iv[1]);
  FieldPtr k = NumberField::create(g);
  std::string perm = next_line(is, "permutation");
  Permutation pi = Permutation::parse(perm);
  std::vector<FieldElement> lens;
  for (int i = 0; i < pi.size(); ++i) lens.emplace_back(k, parse_tuple(next_line(is, "length")));
  return IET(pi, std::move(lens));
}

std::string iet_to_string(const IET& e) {
  std::ostringstream os;
  write_iet(os, e);
  return os.str();
}

IET iet_from_string(const std::string& s) {
  std::istringstream is(s);
  return read_iet(is);
}

}  // namespace ietlab
