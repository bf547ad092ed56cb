#include "ietlab/vershik.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <unordered_map>

namespace ietlab {

SubstitutionInfo analyze_substitution(const Substitution& s) {
  require(s.size() > 0, "analyze_substitution: empty substitution");
  SubstitutionInfo info;
  info.incidence = s.incidence();
  info.primitive = is_primitive(info.incidence);
  if (!info.primitive) throw PreconditionError("analyze_substitution: substitution is not primitive");
  info.beta = largest_real_eigenvalue(info.incidence);
  int found = 0;
  for (int j = 0; j < s.size(); ++j)
    if (s[j][0] == j) {
      info.fixed_letter = j;
      ++found;
    }
  if (found != 1) info.fixed_letter = -1;
  return info;
}

int PrefixGraph::index_of(const Prefix& p) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == p) return static_cast<int>(i);
  return -1;
}

Integer PrefixGraph::paths(int t) const {
  require(t >= 0, "PrefixGraph::paths: negative length");
  if (t == 0) return 1;
  const std::size_t P = states.size();
  std::vector<Integer> v(P, 1);
  for (int k = 1; k < t; ++k) v = adjacency * v;
  Integer s = 0;
  for (const auto& x : v) s += x;
  return s;
}

Integer PrefixGraph::cycles(int T) const {
  require(T >= 1, "PrefixGraph::cycles: T >= 1 required");
  IntMatrix p = power(adjacency, static_cast<unsigned>(T));
  Integer s = 0;
  for (std::size_t i = 0; i < p.rows(); ++i) s += p(i, i);
  return s;
}

PrefixGraph prefix_graph(const Substitution& s) {
  PrefixGraph g;
  for (int r = 0; r < s.size(); ++r)
    for (int l = 0; l < static_cast<int>(s[r].size()); ++l) g.states.push_back({r, l});
  const std::size_t P = g.states.size();
  g.adjacency = IntMatrix(P, P);
  for (std::size_t a = 0; a < P; ++a)
    for (std::size_t b = 0; b < P; ++b)
      if (g.states[a].rule == next_symbol(s, g.states[b])) g.adjacency(a, b) = 1;
  if (!is_primitive(g.adjacency)) throw CheckFailure("prefix_graph: admissibility matrix is not primitive");
  const IntMatrix M = s.incidence();
  IntPoly expect = charpoly(M) * IntPoly::monomial(1, static_cast<int>(P) - s.size());
  if (charpoly(g.adjacency) != expect) throw CheckFailure("prefix_graph: charpoly mismatch with the incidence matrix");
  g.spectral_radius = largest_real_eigenvalue(M);
  return g;
}

std::string VershikCode::to_string() const {
  std::ostringstream os;
  os << '(' << t << ';' << T << ';';
  for (std::size_t i = 0; i < prefixes.size(); ++i)
    os << (i ? "," : "") << prefixes[i].rule + 1 << ':' << prefixes[i].len;
  os << ')';
  return os.str();
}

VershikCode VershikCode::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw PreconditionError("VershikCode::parse: expected (t;T;...)");
  s = s.substr(1, s.size() - 2);
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) parts.push_back(part);
  if (parts.size() == 2) parts.emplace_back();
  if (parts.size() != 3) throw PreconditionError("VershikCode::parse: expected three fields");
  VershikCode c;
  try {
    c.t = std::stoi(parts[0]);
    c.T = std::stoi(parts[1]);
    std::stringstream ps(parts[2]);
    std::string item;
    while (std::getline(ps, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos) throw PreconditionError("VershikCode::parse: prefix needs rule:len");
      c.prefixes.push_back({std::stoi(item.substr(0, colon)) - 1, std::stoi(item.substr(colon + 1))});
    }
  } catch (const std::logic_error&) {
    throw PreconditionError("VershikCode::parse: malformed number in '" + text + "'");
  }
  if (c.t < 0 || c.T < 0) throw PreconditionError("VershikCode::parse: negative t or T");
  if (c.T > 0 && static_cast<int>(c.prefixes.size()) != c.t + c.T)
    throw PreconditionError("VershikCode::parse: expected t + T prefixes");
  return c;
}

Vershik::Vershik(const LatticeModel& m) : m_(m) {
  require(m.rho && m.window && m.sigma && m.R, "Vershik: model without self-similar data");
  const IET& e = m_.iet;
  const Substitution& s = *m_.sigma;
  graph_ = prefix_graph(s);
  beta_ = m_.rho->inverse();
  for (const auto& p : graph_.states) {
    FieldElement off = *m_.window;
    for (int q = 0; q < p.len; ++q) off += e.translations()[s[p.rule][q]];
    offsets_.push_back(off);
  }
  const std::size_t P = graph_.states.size();
  std::vector<FieldElement> lefts;
  for (std::size_t i = 0; i < P; ++i) lefts.push_back(apply(graph_.states[i], e.left_endpoints()[graph_.states[i].rule]));
  level1_.resize(P);
  for (std::size_t i = 0; i < P; ++i) level1_[i] = static_cast<int>(i);
  std::sort(level1_.begin(), level1_.end(), [&](int a, int b) { return lefts[a] < lefts[b]; });
  children_.assign(e.size(), {});
  FieldElement at(e.field(), Rational(0));
  for (int i : level1_) {
    const Prefix& p = graph_.states[i];
    if (lefts[i] != at) throw CheckFailure("Vershik: first-level tiles do not tile the interval");
    FieldElement right = lefts[i] + *m_.rho * e.lengths()[p.rule];
    int a = next_symbol(s, p);
    if (lefts[i] < e.left_endpoints()[a] || right > e.left_endpoints()[a] + e.lengths()[a])
      throw CheckFailure("Vershik: tile not inside its atom");
    level1_left_.push_back(lefts[i]);
    children_[a].push_back(i);
    at = right;
  }
  if (at != e.total()) throw CheckFailure("Vershik: first-level tiles do not cover the interval");
}

const FieldElement& Vershik::offset(const Prefix& p) const {
  int i = graph_.index_of(p);
  require(i >= 0, "Vershik::offset: unknown prefix");
  return offsets_[i];
}

FieldElement Vershik::apply(const Prefix& p, const FieldElement& x) const { return *m_.rho * x + offset(p); }

Prefix Vershik::locate(const FieldElement& x) const {
  require(x.sign() >= 0 && x < m_.iet.total(), "Vershik::locate: point outside the interval");
  auto it = std::upper_bound(level1_left_.begin(), level1_left_.end(), x,
                             [](const FieldElement& a, const FieldElement& b) { return a < b; });
  return graph_.states[level1_[(it - level1_left_.begin()) - 1]];
}

bool Vershik::consistent(const std::vector<Prefix>& code) const {
  const Substitution& s = *m_.sigma;
  for (const auto& p : code)
    if (p.rule < 0 || p.rule >= s.size() || p.len < 0 || p.len >= static_cast<int>(s[p.rule].size())) return false;
  for (std::size_t k = 0; k + 1 < code.size(); ++k)
    if (code[k].rule != next_symbol(s, code[k + 1])) return false;
  return true;
}

VershikCode Vershik::encode(const FieldElement& x, int depth) const {
  require(x.sign() >= 0 && x < m_.iet.total(), "Vershik::encode: point outside the interval");
  VershikCode c;
  std::unordered_map<FieldElement, int, FieldElementHash> seen;
  FieldElement cur = x;
  seen.emplace(cur, 0);
  for (int k = 0; k < depth; ++k) {
    Prefix p = locate(cur);
    c.prefixes.push_back(p);
    cur = (cur - offset(p)) * beta_;
    auto it = seen.find(cur);
    if (it != seen.end()) {
      c.t = it->second;
      c.T = k + 1 - it->second;
      return c;
    }
    seen.emplace(cur, k + 1);
  }
  c.t = depth;
  c.T = 0;
  return c;
}

FieldElement Vershik::periodic_point(const std::vector<Prefix>& period) const {
  require(!period.empty(), "Vershik::periodic_point: empty period");
  const FieldPtr& K = m_.iet.field();
  FieldElement sum(K, Rational(0)), rk(K, Rational(1));
  for (const auto& p : period) {
    sum += rk * offset(p);
    rk = rk * *m_.rho;
  }
  return sum / (FieldElement(K, Rational(1)) - rk);
}

FieldElement Vershik::decode(const VershikCode& code) const {
  if (!code.determined()) throw PreconditionError("Vershik::decode: code is not eventually periodic");
  const int t = code.t, T = code.T;
  if (static_cast<int>(code.prefixes.size()) != t + T) throw PreconditionError("Vershik::decode: expected t + T prefixes");
  std::vector<Prefix> closed = code.prefixes;
  closed.push_back(code.prefixes[t]);
  if (!consistent(closed)) throw PreconditionError("Vershik::decode: inconsistent code");
  std::vector<Prefix> period(code.prefixes.begin() + t, code.prefixes.end());
  FieldElement y = periodic_point(period);
  FieldElement cur = y;
  for (int j = 0; j < T; ++j) {
    if (cur.sign() < 0 || cur >= m_.iet.total() || locate(cur) != period[j])
      throw PreconditionError("Vershik::decode: invalid code " + code.to_string());
    cur = (cur - offset(period[j])) * beta_;
  }
  FieldElement x = y;
  for (int j = t - 1; j >= 0; --j) x = apply(code.prefixes[j], x);
  cur = x;
  for (int j = 0; j < t; ++j) {
    if (cur.sign() < 0 || cur >= m_.iet.total() || locate(cur) != code.prefixes[j])
      throw PreconditionError("Vershik::decode: invalid code " + code.to_string());
    cur = (cur - offset(code.prefixes[j])) * beta_;
  }
  LatticePoint lp = layer_of(m_.basis, y);
  long ord = order_of(*m_.R, lp.xi);
  if (T % ord != 0) throw CheckFailure("Vershik::decode: period is not a multiple of the layer order");
  return x;
}

namespace {

struct TileWalker {
  const Vershik& v;
  const std::vector<int>& level1;
  const std::vector<std::vector<int>>& children;
  int depth;
  std::function<void(const std::vector<Prefix>&, const FieldElement&, const FieldElement&)> leaf;
  std::vector<Prefix> path;

  void run(const FieldElement& scale, const FieldElement& shift, const std::vector<int>& kids) {
    const LatticeModel& m = v.model();
    for (int i : kids) {
      const Prefix& p = v.prefixes()[i];
      path.push_back(p);
      FieldElement sh = shift + scale * v.offset(p);
      FieldElement sc = scale * *m.rho;
      if (static_cast<int>(path.size()) == depth) {
        leaf(path, sh + sc * m.iet.left_endpoints()[p.rule], sc * m.iet.lengths()[p.rule]);
      } else {
        run(sc, sh, children[p.rule]);
      }
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<Tile> Vershik::tiles(int depth) const {
  require(depth >= 1, "Vershik::tiles: depth >= 1 required");
  std::vector<Tile> out;
  const FieldPtr& K = m_.iet.field();
  TileWalker w{*this, level1_, children_, depth,
               [&](const std::vector<Prefix>& c, const FieldElement& l, const FieldElement& len) {
                 out.push_back({c, l, len});
               },
               {}};
  w.run(FieldElement(K, Rational(1)), FieldElement(K, Rational(0)), level1_);
  return out;
}

PartitionCheck Vershik::check_partition(int depth) const {
  require(depth >= 1, "Vershik::check_partition: depth >= 1 required");
  PartitionCheck r;
  r.depth = depth;
  // Endpoints lie in the module and rho maps it into itself, so the walk runs on
  // integer coordinates: scale rho^k is R^k.
  const int n = m_.n;
  auto ic = [&](const FieldElement& x) {
    auto z = m_.basis.integer_coords(x);
    if (!z) throw PreconditionError("Vershik::check_partition: endpoint outside the module");
    std::vector<std::int64_t> v;
    for (const auto& c : *z) v.push_back(to_i64(c));
    return v;
  };
  std::vector<std::vector<std::int64_t>> off, left, len;
  for (const auto& o : offsets_) off.push_back(ic(o));
  for (int i = 0; i < m_.iet.size(); ++i) {
    left.push_back(ic(m_.iet.left_endpoints()[i]));
    len.push_back(ic(m_.iet.lengths()[i]));
  }
  std::vector<std::vector<std::int64_t>> Rk(depth + 1);  // row-major n x n
  Rk[0].assign(n * n, 0);
  for (int i = 0; i < n; ++i) Rk[0][i * n + i] = 1;
  auto mul = [&](std::int64_t a, std::int64_t b) {
    std::int64_t c;
    if (__builtin_mul_overflow(a, b, &c)) throw LimitError("Vershik::check_partition: coordinate overflow");
    return c;
  };
  auto add = [&](std::int64_t a, std::int64_t b) {
    std::int64_t c;
    if (__builtin_add_overflow(a, b, &c)) throw LimitError("Vershik::check_partition: coordinate overflow");
    return c;
  };
  for (int k = 1; k <= depth; ++k) {
    Rk[k].assign(n * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) Rk[k][i * n + j] = add(Rk[k][i * n + j], mul(Rk[k - 1][i * n + l], to_i64((*m_.R)(l, j))));
  }
  auto apply_m = [&](const std::vector<std::int64_t>& M, const std::vector<std::int64_t>& v, std::vector<std::int64_t>& out) {
    for (int i = 0; i < n; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s = add(s, mul(M[i * n + j], v[j]));
      out[i] = s;
    }
  };
  std::vector<std::int64_t> at(n, 0), tmp(n), tmp2(n);
  std::vector<std::vector<std::int64_t>> shift(depth + 1, std::vector<std::int64_t>(n, 0));
  bool ok = true;
  std::function<void(int, const std::vector<int>&)> walk = [&](int k, const std::vector<int>& kids) {
    for (int i : kids) {
      const Prefix& p = graph_.states[i];
      apply_m(Rk[k], off[i], tmp);
      for (int c = 0; c < n; ++c) shift[k + 1][c] = add(shift[k][c], tmp[c]);
      if (k + 1 == depth) {
        ++r.tiles;
        if (!ok) continue;
        apply_m(Rk[depth], left[p.rule], tmp);
        apply_m(Rk[depth], len[p.rule], tmp2);
        for (int c = 0; c < n; ++c) {
          if (add(shift[depth][c], tmp[c]) != at[c]) ok = false;
          at[c] = add(add(shift[depth][c], tmp[c]), tmp2[c]);
        }
      } else {
        walk(k + 1, children_[p.rule]);
      }
    }
  };
  walk(0, level1_);
  IntMatrix Mk = power(m_.sigma->incidence(), static_cast<unsigned>(depth));
  r.expected = 0;
  for (std::size_t i = 0; i < Mk.rows(); ++i)
    for (std::size_t j = 0; j < Mk.cols(); ++j) r.expected += Mk(i, j);
  r.ok = ok && at == ic(m_.iet.total()) && r.expected == r.tiles;
  return r;
}

Integer d_T(const IntMatrix& R, int T) {
  require(T >= 1, "d_T: T >= 1 required");
  IntMatrix A = IntMatrix::identity(R.rows()) - power(R, static_cast<unsigned>(T));
  Integer d = abs(Integer(det(A)));
  if (d == 0) throw PreconditionError("d_T: I - R^T is singular");
  return d;
}

DTCrossCheck d_T_numeric(const IntMatrix& R, int T) {
  auto roots = complex_roots(charpoly(R));
  DTCrossCheck c;
  long double lg = 0;
  for (const auto& z : roots) lg += std::log(std::abs(1.0L - std::pow(z, static_cast<long double>(T))));
  c.direct = std::exp(lg);
  c.reciprocal = true;
  for (const auto& z : roots) {
    bool partner = false;
    for (const auto& w : roots)
      if (std::abs(z * w - 1.0L) < 1e-8L) partner = true;
    if (!partner) c.reciprocal = false;
  }
  if (c.reciprocal) {
    std::complex<long double> prod = 1;
    for (const auto& z : roots)
      if (std::abs(z) > 1) {
        auto zt = std::pow(z, static_cast<long double>(T));
        prod *= (zt - 1.0L) * (zt - 1.0L) / zt;
      }
    c.reciprocal_form = std::abs(prod);
  }
  return c;
}

bool spectral_power_equals(const IntMatrix& R, int e, const RealAlgebraic& beta) {
  require(e >= 1, "spectral_power_equals: exponent >= 1 required");
  auto mods = root_moduli(charpoly(R));
  const ModulusInfo& top = mods[0];
  if (mods.size() > 1 && mods[1].lo <= top.hi && mods[1].factor != top.factor)
    throw LimitError("spectral_power_equals: spectral radius shared by two factors");
  const IntPoly& f = top.factor;
  FieldPtr Kb = NumberField::create(beta, "Q(beta)");
  FieldElement b = FieldElement::generator(Kb);
  if (top.real) {
    // s = |r| for the real root r of largest modulus.
    RealAlgebraic r;
    bool found = false;
    for (const auto& x : isolate_real_roots(f)) {
      long double a = std::fabs(x.approx_ld());
      if (a >= top.lo && a <= top.hi) {
        r = x;
        found = true;
      }
    }
    if (!found) throw LimitError("spectral_power_equals: real root not located");
    FieldPtr K = NumberField::create(r, "Q(s)");
    FieldElement sv = FieldElement::generator(K);
    if (r.sign() < 0) sv = -sv;
    return compare(to_real_algebraic(sv.pow(e)), beta) == 0;
  }
  // Complex pair of a cubic factor: |z|^2 = |f0 / f3| / r with r the real root.
  if (f.degree() != 3) throw LimitError("spectral_power_equals: complex spectral radius needs a cubic factor");
  auto reals = isolate_real_roots(f);
  if (reals.size() != 1) throw LimitError("spectral_power_equals: expected one real root");
  FieldPtr K = NumberField::create(reals[0], "Q(r)");
  Rational n(f.coeff(0), f.coeff(3));
  n.canonicalize();
  FieldElement u = FieldElement(K, abs_q(n)) / FieldElement::generator(K);
  if (u.sign() < 0) u = -u;
  return compare(to_real_algebraic(u.pow(e)), to_real_algebraic(b * b)) == 0;
}

ExponentReport exponent_report(const IntMatrix& R, const IntMatrix& M, bool decide_power_identity) {
  ExponentReport r;
  if (!is_primitive(M)) throw PreconditionError("exponent_report: incidence matrix is not primitive");
  r.beta = largest_real_eigenvalue(M);
  auto mm = root_moduli(charpoly(M));
  if (mm.size() > 1) {
    r.beta2 = mm[1].value;
    r.beta2_multiplicity = mm[1].multiplicity;
  }
  auto rm = root_moduli(charpoly(R));
  r.sr_R_lo = rm[0].lo;
  r.sr_R_hi = rm[0].hi;
  RealAlgebraic b = r.beta.refined_to(Rational(1) / Rational(Integer(1) << 90));
  long double blo = b.lo().get_d(), bhi = b.hi().get_d();
  blo = std::nextafter(blo * (1 - 1e-15L), 0.0L);
  bhi = bhi * (1 + 1e-15L);
  r.v = std::log(rm[0].value) / std::log(r.beta.approx_ld());
  r.v_lo = std::log(r.sr_R_lo) / std::log(bhi);
  r.v_hi = std::log(r.sr_R_hi) / std::log(blo);
  r.discrepancy_exponent = r.beta2 > 0 ? std::log(r.beta2) / std::log(r.beta.approx_ld()) : 0;
  if (decide_power_identity) r.power_identity = spectral_power_equals(R, static_cast<int>(R.rows()) - 1, r.beta);
  return r;
}

EscapeBound escape_bound_check(const Vershik& v, const VershikCode& code) {
  const LatticeModel& m = v.model();
  FieldElement x = v.decode(code);
  EscapeBound e;
  e.norm = max_norm(m.basis.coords(x));
  Rational V = 0;
  for (const auto& p : code.prefixes) V = std::max(V, max_norm(m.basis.coords(v.offset(p))));
  RatMatrix Rq = to_rat(*m.R);
  Rational rn = inf_norm(Rq);
  require(rn > 1, "escape_bound_check: ||R|| must exceed 1");
  IntMatrix IR = IntMatrix::identity(m.R->rows()) - power(*m.R, static_cast<unsigned>(code.T));
  Rational kappa = inf_norm(inverse(to_rat(IR)));
  e.constant = V * (kappa + 1) / (rn - 1);
  Rational p = 1;
  for (int i = 0; i < code.t + code.T; ++i) p *= rn;
  e.bound = e.constant * p;
  e.pass = e.norm <= e.bound;
  e.ratio = e.bound == 0 ? 0.0 : Rational(e.norm / e.bound).get_d();
  return e;
}

namespace {

RatMatrix rat_power(const RatMatrix& a, unsigned k) {
  RatMatrix r = RatMatrix::identity(a.rows()), b = a;
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

std::vector<Rational> sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

}  // namespace

std::vector<Rational> arith_geom_closed(const RatMatrix& a, const std::vector<Rational>& b,
                                        const std::vector<Rational>& u0, unsigned k) {
  RatMatrix I = RatMatrix::identity(a.rows());
  std::vector<Rational> l = solve(I - a, b);
  std::vector<Rational> u = rat_power(a, k) * sub(u0, l);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += l[i];
  return u;
}

std::vector<Rational> arith_geom_sum(const RatMatrix& a, const std::vector<Rational>& b,
                                     const std::vector<Rational>& u0, unsigned k) {
  RatMatrix I = RatMatrix::identity(a.rows());
  std::vector<Rational> l = solve(I - a, b);
  std::vector<Rational> s = inverse(I - a) * ((I - rat_power(a, k + 1)) * sub(u0, l));
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += Rational(k + 1) * l[i];
  return s;
}

}  // namespace ietlab
