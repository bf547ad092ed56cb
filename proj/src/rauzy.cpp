#include "ietlab/rauzy.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <thread>
#include <unordered_map>

#include "ietlab/factor.hpp"
#include "ietlab/spectral.hpp"

namespace ietlab {

Permutation rauzy_successor(const Permutation& pi, int type) {
  const int n = pi.size();
  const int last = n - 1;
  const int pn = pi[last];
  const int m = pi.inverse()[last];
  std::vector<int> out(n);
  if (type == 0) {
    for (int j = 0; j < n; ++j) {
      int p = pi[j];
      out[j] = p <= pn ? p : (p < last ? p + 1 : pn + 1);
    }
  } else {
    for (int j = 0; j < n; ++j) out[j] = j <= m ? pi[j] : (j == m + 1 ? pn : pi[j - 1]);
  }
  return Permutation(std::move(out));
}

IntMatrix rauzy_matrix(const Permutation& pi, int type) {
  const int n = pi.size();
  const int m = pi.inverse()[n - 1];
  IntMatrix a(n, n);
  if (type == 0) {
    a = IntMatrix::identity(n);
    a(n - 1, m) += 1;
  } else {
    for (int j = 0; j < m; ++j) a(j, j) = 1;
    a(m, m) = 1;
    a(m, m + 1) = 1;
    for (int j = m + 1; j < n - 1; ++j) a(j, j + 1) = 1;
    a(n - 1, m + 1) = 1;
  }
  return a;
}

RauzyStep rauzy_step(const Permutation& pi, const std::vector<FieldElement>& lengths) {
  require(pi.is_irreducible(), "rauzy_step: reducible permutation");
  const int n = pi.size();
  require(static_cast<int>(lengths.size()) == n, "rauzy_step: size mismatch");
  const int m = pi.inverse()[n - 1];
  int c = compare(lengths[n - 1], lengths[m]);
  if (c == 0) throw PreconditionError("rauzy_step: |I0| = |I1| (Keane property fails)");
  RauzyStep s;
  s.type = c > 0 ? 0 : 1;
  s.next = rauzy_successor(pi, s.type);
  s.A = rauzy_matrix(pi, s.type);
  s.lengths = lengths;
  if (s.type == 0) {
    s.lengths[n - 1] = lengths[n - 1] - lengths[m];
  } else {
    s.lengths[m] = lengths[m] - lengths[n - 1];
    s.lengths[m + 1] = lengths[n - 1];
    for (int j = m + 2; j < n; ++j) s.lengths[j] = lengths[j - 1];
  }
  return s;
}

// ---- graph ----

int RauzyClass::index_of(const Permutation& p) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), p);
  return (it != vertices.end() && *it == p) ? static_cast<int>(it - vertices.begin()) : -1;
}

std::vector<RauzyClass> rauzy_graph(int n) {
  require(n >= 2 && n <= 7, "rauzy_graph: 2 <= N <= 7");
  std::vector<Permutation> all;
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  do {
    Permutation p(v);
    if (p.is_irreducible()) all.push_back(p);
  } while (std::next_permutation(v.begin(), v.end()));
  auto idx = [&](const Permutation& p) {
    return static_cast<int>(std::lower_bound(all.begin(), all.end(), p) - all.begin());
  };
  std::vector<int> parent(all.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t i = 0; i < all.size(); ++i)
    for (int t = 0; t < 2; ++t) {
      int a = find(static_cast<int>(i)), b = find(idx(rauzy_successor(all[i], t)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<int, RauzyClass> groups;
  for (std::size_t i = 0; i < all.size(); ++i) groups[find(static_cast<int>(i))].vertices.push_back(all[i]);
  std::vector<RauzyClass> out;
  for (auto& [root, c] : groups) {
    for (const auto& p : c.vertices)
      c.succ.push_back({0, 0});
    for (std::size_t i = 0; i < c.vertices.size(); ++i)
      for (int t = 0; t < 2; ++t) c.succ[i][t] = c.index_of(rauzy_successor(c.vertices[i], t));
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const RauzyClass& a, const RauzyClass& b) {
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices.front() < b.vertices.front();
  });
  return out;
}

// ---- cycles ----

namespace {

using Mat64 = std::vector<std::int64_t>;

Mat64 to64(const IntMatrix& m) {
  Mat64 r(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i * m.cols() + j] = to_i64(m(i, j));
  return r;
}

Mat64 mul64(const Mat64& a, const Mat64& b, int n) {
  Mat64 c(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      std::int64_t x = a[i * n + k];
      if (!x) continue;
      for (int j = 0; j < n; ++j) {
        std::int64_t t;
        if (__builtin_mul_overflow(x, b[k * n + j], &t) || __builtin_add_overflow(c[i * n + j], t, &c[i * n + j]))
          throw LimitError("enumerate_cycles: product entries overflow 64 bits");
      }
    }
  return c;
}

IntMatrix from64(const Mat64& a, int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Integer(std::to_string(a[i * n + j]));
  return m;
}

// Smallest rotation check on (vertex, label) pairs.
bool is_min_rotation(const std::vector<int>& key) {
  const std::size_t l = key.size() / 2;
  for (std::size_t r = 1; r < l; ++r) {
    for (std::size_t i = 0; i < l; ++i) {
      std::size_t a = 2 * i, b = 2 * ((i + r) % l);
      if (key[b] != key[a]) {
        if (key[b] < key[a]) return false;
        goto next;
      }
      if (key[b + 1] != key[a + 1]) {
        if (key[b + 1] < key[a + 1]) return false;
        goto next;
      }
    }
  next:;
  }
  return true;
}

struct Walker {
  const RauzyClass& cls;
  int n, lmax;
  std::vector<std::array<Mat64, 2>> step;  // A_t(pi) per vertex

  explicit Walker(const RauzyClass& c, int lmax_) : cls(c), n(c.vertices.front().size()), lmax(lmax_) {
    for (const auto& p : cls.vertices) step.push_back({to64(rauzy_matrix(p, 0)), to64(rauzy_matrix(p, 1))});
  }

  // Canonical closed walks starting at s, in DFS order (label 0 first).
  template <class F>
  void from(int s, F&& emit) const {
    std::vector<int> key;
    std::vector<Mat64> prod{Mat64()};
    Mat64 id(n * n, 0);
    for (int i = 0; i < n; ++i) id[i * n + i] = 1;
    prod[0] = id;
    std::string labels;
    std::function<void(int)> dfs = [&](int v) {
      const int depth = static_cast<int>(labels.size());
      if (depth == lmax) return;
      for (int t = 0; t < 2; ++t) {
        int w = cls.succ[v][t];
        if (w < s) continue;
        key.push_back(v);
        key.push_back(t);
        labels.push_back(static_cast<char>('0' + t));
        prod.push_back(mul64(prod.back(), step[v][t], n));
        if (w == s && is_min_rotation(key)) emit(labels, key, prod.back());
        dfs(w);
        prod.pop_back();
        labels.pop_back();
        key.pop_back();
        key.pop_back();
      }
    };
    dfs(s);
  }

  RauzyCycle make(const std::string& labels, const std::vector<int>& key, const Mat64& p) const {
    RauzyCycle c;
    c.base = cls.vertices[key[0]];
    c.labels = labels;
    for (std::size_t i = 0; i < key.size(); i += 2) c.path.push_back(cls.vertices[key[i]]);
    c.product = from64(p, n);
    c.charpoly = charpoly(c.product);
    return c;
  }
};

template <class Job>
void run_parallel(int jobs, int threads, Job&& job) {
  threads = std::max(1, std::min(threads, jobs));
  if (threads == 1) {
    for (int j = 0; j < jobs; ++j) job(j);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int j = t; j < jobs; j += threads) job(j);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

void enumerate_cycles(const RauzyClass& cls, int lmax, const std::function<void(const RauzyCycle&)>& sink,
                      int threads) {
  require(lmax >= 1, "enumerate_cycles: lmax >= 1");
  Walker w(cls, lmax);
  const int nv = static_cast<int>(cls.vertices.size());
  std::vector<std::vector<RauzyCycle>> found(nv);
  run_parallel(nv, threads, [&](int s) {
    w.from(s, [&](const std::string& l, const std::vector<int>& k, const Mat64& p) { found[s].push_back(w.make(l, k, p)); });
  });
  for (auto& list : found)
    for (auto& c : list) sink(c);
}

std::vector<CensusRow> survey(const RauzyClass& cls, int lmax, int threads) {
  require(lmax >= 1, "survey: lmax >= 1");
  Walker w(cls, lmax);
  const int n = w.n;
  const int nv = static_cast<int>(cls.vertices.size());
  struct Partial {
    std::vector<long> count;
    std::vector<std::set<std::vector<Integer>>> polys;
  };
  std::vector<Partial> part(nv);
  run_parallel(nv, threads, [&](int s) {
    Partial& pt = part[s];
    pt.count.assign(lmax + 1, 0);
    pt.polys.resize(lmax + 1);
    w.from(s, [&](const std::string& l, const std::vector<int>&, const Mat64& p) {
      IntMatrix m = from64(p, n);
      if (!is_primitive(m)) return;
      IntPoly cp = charpoly(m);
      if (cp.degree() != n || !is_irreducible(cp)) return;
      pt.count[l.size()] += 1;
      pt.polys[l.size()].insert(cp.coeffs());
    });
  });
  std::vector<CensusRow> rows;
  for (int l = 1; l <= lmax; ++l) {
    CensusRow r;
    r.length = l;
    std::set<std::vector<Integer>> all;
    for (const auto& pt : part) {
      r.cycles += pt.count[l];
      all.insert(pt.polys[l].begin(), pt.polys[l].end());
    }
    r.polys = static_cast<long>(all.size());
    for (const auto& c : all) r.polynomials.push_back(IntPoly(c));
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---- self-similar maps ----

namespace {

// Field Q(rho) with rho = 1/beta, and the map Q(beta) -> Q(rho).
struct Reciprocal {
  FieldPtr field;
  FieldElement rho;
  FieldElement convert(const FieldElement& x) const {
    // x = sum c_i beta^i with beta = 1/rho.
    FieldElement inv = rho.inverse();
    FieldElement acc(field, Rational(0));
    const auto& c = x.coords();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * inv + FieldElement(field, c[i]);
    return acc;
  }
};

Reciprocal reciprocal_field(const FieldElement& beta) {
  FieldElement r = beta.inverse();
  FieldPtr K = NumberField::create(to_real_algebraic(r), "Q(rho)");
  return {K, FieldElement::generator(K)};
}

}  // namespace

SelfSimilarIET self_similar_from_cycle(const RauzyCycle& c) {
  require(is_primitive(c.product), "self_similar_from_cycle: product not primitive");
  PerronPair pp = perron_pair(c.product);
  FieldElement beta = FieldElement::generator(pp.field);
  Reciprocal rc = reciprocal_field(beta);
  std::vector<FieldElement> lam;
  for (const auto& v : pp.vector) lam.push_back(rc.convert(v));
  SelfSimilarIET out{IET(c.base, lam), rc.rho};
  // product * Lambda = Lambda / rho.
  const int n = c.base.size();
  for (int i = 0; i < n; ++i) {
    FieldElement s(rc.field, Rational(0));
    for (int j = 0; j < n; ++j) s += lam[j] * Rational(c.product(i, j));
    if (s * rc.rho != lam[i]) throw CheckFailure("self_similar_from_cycle: eigenvector check failed");
  }
  return out;
}

namespace {

struct LoopKey {
  int perm;
  std::vector<FieldElement> normalized;
  bool operator==(const LoopKey& o) const { return perm == o.perm && normalized == o.normalized; }
};
struct LoopKeyHash {
  std::size_t operator()(const LoopKey& k) const {
    std::size_t h = static_cast<std::size_t>(k.perm);
    FieldElementHash fh;
    for (const auto& x : k.normalized) h = h * 1000003u ^ fh(x);
    return h;
  }
};

}  // namespace

RauzyLoop rauzy_loop(const IET& e, long max_steps) {
  std::map<Permutation, int> perm_ids;
  std::unordered_map<LoopKey, long, LoopKeyHash> seen;
  std::vector<Permutation> perms{e.permutation()};
  std::vector<std::vector<FieldElement>> lens{e.lengths()};
  std::string labels;
  auto key_of = [&](const Permutation& p, const std::vector<FieldElement>& l) {
    auto [it, ins] = perm_ids.emplace(p, static_cast<int>(perm_ids.size()));
    FieldElement inv = sum(l).inverse();
    LoopKey k{it->second, {}};
    for (const auto& x : l) k.normalized.push_back(x * inv);
    return k;
  };
  seen.emplace(key_of(perms[0], lens[0]), 0);
  for (long s = 1; s <= max_steps; ++s) {
    RauzyStep st = rauzy_step(perms.back(), lens.back());
    labels.push_back(static_cast<char>('0' + st.type));
    perms.push_back(st.next);
    lens.push_back(st.lengths);
    auto [it, ins] = seen.emplace(key_of(st.next, st.lengths), s);
    if (ins) continue;
    const long start = it->second;
    RauzyLoop loop;
    loop.preperiod = start;
    loop.lengths = lens[start];
    loop.rho = lens[s][0] / lens[start][0];
    RauzyCycle& c = loop.cycle;
    c.base = perms[start];
    c.labels = labels.substr(start);
    const int n = e.size();
    c.product = IntMatrix::identity(n);
    for (long j = start; j < s; ++j) {
      c.path.push_back(perms[j]);
      c.product = c.product * rauzy_matrix(perms[j], labels[j] - '0');
    }
    c.charpoly = charpoly(c.product);
    return loop;
  }
  throw LimitError("rauzy_loop: no repetition within the step cap");
}

}  // namespace ietlab
