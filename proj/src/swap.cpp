#include "toprec/swap.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "toprec/partial_fractions.hpp"

namespace toprec {

namespace {

Sym bar_var(int i) { return intern("_bar" + std::to_string(i)); }
Sym leg_var(int i) { return intern("_leg" + std::to_string(i)); }
Sym eps_var() {
  static const Sym s = intern("_eps");
  return s;
}

// Coefficients c_0..c_K of S(x) and of 1/S(x).
std::vector<Rational> s_coeffs(int K) { return s_series(std::max(K, 16)); }

std::vector<Rational> inv_s_coeffs(int K) {
  const auto s = s_coeffs(K);
  std::vector<Rational> b(K + 1, Rational(0));
  b[0] = 1;
  for (int n = 1; n <= K; ++n) {
    Rational acc = 0;
    for (int i = 1; i <= n; ++i) acc += s[i] * b[n - i];
    b[n] = -acc;
  }
  return b;
}

MRat mu(const Curve& c, Chart ch, Side s, Sym v) {
  if (ch == Chart::Simple) return c.dfn_at(s, v);
  return -(c.dfn_at(s, v) / c.fn_at(s, v));
}

// d/d(fn) in variable v: simple chart d/dx, log chart d/dX = -x d/dx.
MRat dop(const Curve& c, Chart ch, Side s, const MRat& f, Sym v) {
  MRat d = f.diff(v);
  if (d.is_zero()) return d;
  return d / mu(c, ch, s, v);
}

MRat dop_n(const Curve& c, Chart ch, Side s, MRat f, Sym v, int k) {
  for (int i = 0; i < k && !f.is_zero(); ++i) f = dop(c, ch, s, f, v);
  return f;
}

// x'(a) x'(b) / (x(a) - x(b))^2 for the given side
MRat pullback_bergman(const Curve& c, Side s, Sym a, Sym b) {
  MRat d = c.fn_at(s, a) - c.fn_at(s, b);
  return c.dfn_at(s, a) * c.dfn_at(s, b) / (d * d);
}

// Restriction with a limit fallback for removable diagonal factors.
MRat restrict_map(const MRat& f, const std::vector<std::pair<Sym, Sym>>& map) {
  std::map<Sym, MRat> b;
  for (auto& [from, to] : map)
    if (from != to) b[from] = MRat::var(to);
  try {
    return f.subs(b);
  } catch (const std::domain_error&) {
  }
  MRat g = f;
  for (auto& [from, to] : map) {
    if (from == to) continue;
    try {
      g = g.subs(from, MRat::var(to));
      continue;
    } catch (const std::domain_error&) {
    }
    g = g.subs(from, MRat::var(to) + MRat::var(eps_var()));
    g = g.subs(eps_var(), MRat(0));
  }
  return g;
}

// All non-increasing tuples of length k with sum <= maxsum.
void nonincreasing_tuples(int k, int maxsum, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> a(k, 0);
  std::function<void(int, int, int)> rec = [&](int i, int cap, int left) {
    if (i == k) {
      fn(a);
      return;
    }
    for (int v = 0; v <= std::min(cap, left); ++v) {
      a[i] = v;
      rec(i + 1, v, left - v);
    }
    a[i] = 0;
  };
  rec(0, maxsum, maxsum);
}

// All tuples of length k with sum <= maxsum.
void all_tuples(int k, int maxsum, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> a(k, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == k) {
      fn(a);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a[i] = v;
      rec(i + 1, left - v);
    }
    a[i] = 0;
  };
  rec(0, maxsum);
}

// Memoized mixed derivatives of F: orders[i] applications of the chart operator in vars[i].
class DerivCache {
 public:
  DerivCache(const Curve& c, Chart ch, std::vector<Side> sides, std::vector<Sym> vars, MRat f)
      : c_(c), ch_(ch), sides_(std::move(sides)), vars_(std::move(vars)) {
    memo_[std::vector<int>(vars_.size(), 0)] = std::move(f);
  }
  const MRat& get(const std::vector<int>& orders) {
    auto it = memo_.find(orders);
    if (it != memo_.end()) return it->second;
    // peel one derivative from the last nonzero slot
    std::size_t i = orders.size();
    while (i > 0 && orders[i - 1] == 0) --i;
    std::vector<int> prev = orders;
    --prev[i - 1];
    MRat d = dop(c_, ch_, sides_[i - 1], get(prev), vars_[i - 1]);
    return memo_.emplace(orders, std::move(d)).first->second;
  }

 private:
  const Curve& c_;
  Chart ch_;
  std::vector<Side> sides_;
  std::vector<Sym> vars_;
  std::map<std::vector<int>, MRat> memo_;
};

long factorial_ll(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational inv_factorial(int n) { return Rational(Integer(1), Integer(factorial(n))); }

// Set partitions of {0..k-1} as lists of blocks.
void set_partitions(int k, const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  std::vector<int> rgs(k, 0);
  std::function<void(int, int)> rec = [&](int i, int nblocks) {
    if (i == k) {
      std::vector<std::vector<int>> blocks(nblocks);
      for (int j = 0; j < k; ++j) blocks[rgs[j]].push_back(j);
      fn(blocks);
      return;
    }
    for (int b = 0; b <= nblocks; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(nblocks, b + 1));
    }
  };
  if (k == 0) {
    fn({});
    return;
  }
  rec(0, 0);
}

std::vector<Sym> zrange(int from, int count) {
  std::vector<Sym> v;
  for (int i = 0; i < count; ++i) v.push_back(zvar(from + i));
  return v;
}

}  // namespace

MRat restrict_diagonal(const MRat& f, const std::vector<Sym>& from, Sym to) {
  std::vector<std::pair<Sym, Sym>> map;
  for (Sym s : from) map.emplace_back(s, to);
  return restrict_map(f, map);
}

std::size_t count_set_partitions(int k) {
  std::size_t n = 0;
  set_partitions(k, [&](const std::vector<std::vector<int>>&) { ++n; });
  return n;
}

WPoly t_cal_k(const OmegaTable& t, Chart chart, const std::vector<Sym>& I, Sym z, const std::vector<Sym>& J, int k,
              int G, int omit_genus) {
  const Curve& c = t.curve();
  WPoly out(1, 2 * G);
  if (2 * (k - 1) > 2 * G) return out;
  const auto s = s_coeffs(2 * G + 2);
  std::vector<Sym> bars;
  for (int i = 1; i <= k; ++i) bars.push_back(bar_var(i));
  const int mm = static_cast<int>(I.size()) + k, nn = static_cast<int>(J.size());
  MRat denom(1);
  for (Sym v : I) denom *= mu(c, chart, Side::X, v);
  for (Sym v : bars) denom *= mu(c, chart, Side::X, v);
  for (Sym v : J) denom *= mu(c, chart, Side::Y, v);
  MRat inv_denom = denom.inverse();
  for (int gp = 0; 2 * (k - 1) + 2 * gp <= 2 * G; ++gp) {
    if (k == 1 && gp == omit_genus) continue;
    std::vector<Sym> vars = I;
    vars.insert(vars.end(), bars.begin(), bars.end());
    vars.insert(vars.end(), J.begin(), J.end());
    MRat body = place_body(t.get(gp, mm, nn), vars);
    if (gp == 0 && I.empty() && k == 2 && J.empty()) body -= pullback_bergman(c, Side::X, bars[0], bars[1]);
    MRat F = body * inv_denom;
    if (F.is_zero()) continue;
    const int A = G - (k - 1) - gp;
    DerivCache dc(c, chart, std::vector<Side>(k, Side::X), bars, F);
    nonincreasing_tuples(k, A, [&](const std::vector<int>& a) {
      Rational coef = Rational(1);
      int sum = 0;
      for (int ai : a) {
        coef *= s[2 * ai];
        sum += ai;
      }
      // multiplicity of the sorted tuple divided by k!
      std::map<int, int> mult;
      for (int ai : a) ++mult[ai];
      for (auto& [v, cnt] : mult) coef /= Rational(factorial_ll(cnt));
      if (coef == 0) return;
      std::vector<int> orders;
      for (int ai : a) orders.push_back(2 * ai);
      const MRat& d = dc.get(orders);
      if (d.is_zero()) return;
      MRat r = restrict_diagonal(d, bars, z);
      out.add(PKey{2 * (k - 1) + 2 * gp + 2 * sum, {k + 2 * sum}}, r * coef);
    });
  }
  return out;
}

WPoly t_cal(const OmegaTable& t, Chart chart, const std::vector<Sym>& I, Sym z, const std::vector<Sym>& J, int G,
            int omit_genus) {
  WPoly out(1, 2 * G);
  for (int k = 1; k <= G + 1; ++k) out = out + t_cal_k(t, chart, I, z, J, k, G, omit_genus);
  return out;
}

WPoly w_cal_reduced(const OmegaTable& t, Chart chart, int m, int n, int G, int omit_genus) {
  const Sym z = zvar(m + 1);
  std::vector<Sym> items = zrange(1, m);
  auto N = zrange(m + 2, n);
  items.insert(items.end(), N.begin(), N.end());
  WPoly t10 = t_cal(t, chart, {}, z, {}, G, m + n == 0 ? omit_genus : -1);
  WPoly tp(1, 2 * G);
  for (auto& [k, v] : t10.terms())
    if (k.h > 0) tp.add(k, v);
  WPoly e = tp.exp();
  WPoly sum(1, 2 * G);
  std::map<std::vector<int>, WPoly> memo;
  const int total = m + n;
  set_partitions(total, [&](const std::vector<std::vector<int>>& blocks) {
    WPoly prod = WPoly::constant(1, 2 * G, MRat(1));
    for (auto& b : blocks) {
      auto it = memo.find(b);
      if (it == memo.end()) {
        std::vector<Sym> I, J;
        for (int i : b) (i < m ? I : J).push_back(items[i]);
        int og = static_cast<int>(b.size()) == total ? omit_genus : -1;
        it = memo.emplace(b, t_cal(t, chart, I, z, J, G, og)).first;
      }
      prod = prod * it->second;
      if (prod.is_zero()) break;
    }
    sum = sum + prod;
  });
  WPoly res = e * sum * WPoly::monomial(1, 2 * G, PKey{0, {-1}}, MRat(1));
  if (chart == Chart::Log) {
    auto b = inv_s_coeffs(2 * G);
    WPoly inv(1, 2 * G);
    for (int j = 0; 2 * j <= 2 * G; ++j) inv.add(PKey{2 * j, {2 * j}}, MRat(b[2 * j]));
    res = res * inv;
  }
  return res;
}

MRat w_cal_coeff(const OmegaTable& t, int g, int m, int n, int a) {
  const Curve& c = t.curve();
  WPoly r = w_cal_reduced(t, Chart::Simple, m, n, g).hbar_slice(2 * g);
  // W = e^{-w y} * reduced
  MRat my = -c.fn_at(Side::Y, zvar(m + 1));
  MRat out;
  for (auto& [k, v] : r.terms()) {
    int b = a - k.w[0];
    if (b < 0) continue;
    out += v * my.pow(b) * inv_factorial(b);
  }
  return out;
}

namespace {

// omega^(g)_{m,n+1} body via the simple step on table t (x -> y).
MRat step_simple_xy(const OmegaTable& t, int g, int m, int n, int omit_genus = -1) {
  if (g == 0 && m == 0 && n == 0 && omit_genus < 0) return unstable_body(t.curve(), 0, 1);
  const Curve& c = t.curve();
  const Sym z = zvar(m + 1);
  WPoly r = w_cal_reduced(t, Chart::Simple, m, n, g, omit_genus).hbar_slice(2 * g);
  MRat ratio = c.dfn_at(Side::X, z) / c.dfn_at(Side::Y, z);
  MRat res;
  for (auto& [k, v] : r.terms()) {
    int deg = k.w[0];
    if (deg < 0) continue;
    res -= dop_n(c, Chart::Simple, Side::Y, ratio * v, z, deg);
  }
  MRat f(1);
  for (int i = 1; i <= m; ++i) f *= c.dfn_at(Side::X, zvar(i));
  for (int i = m + 1; i <= m + n + 1; ++i) f *= c.dfn_at(Side::Y, zvar(i));
  return res * f;
}

struct LCache {
  std::mutex mu;
  std::map<std::pair<int, int>, PSeries> map;
};
LCache& lcache() {
  static LCache c;
  return c;
}

MRat step_standard_xy(const OmegaTable& t, int g, int m, int n) {
  const Curve& c = t.curve();
  const Sym z = zvar(m + 1);
  MRat X = c.fn_at(Side::X, z), Y = c.fn_at(Side::Y, z);
  MRat theta = X * Y;
  MRat dY = mu(c, Chart::Log, Side::Y, z);
  MRat ratio = mu(c, Chart::Log, Side::X, z) / dY;  // dX/dY
  WPoly r = w_cal_reduced(t, Chart::Log, m, n, g);
  int rmax = 0;
  for (auto& [k, v] : r.terms()) rmax = std::max(rmax, k.w[0]);
  std::map<Sym, MRat> th{{theta_symbol(), theta}};
  PSeries e(1, 2 * g);
  for (int rr = 0; rr <= rmax; ++rr) {
    PSeries a(1, 2 * g);
    for (auto& [k, v] : r.terms())
      if (k.w[0] == rr) a.add(PKey{k.h, {0}}, v * ratio);
    if (a.is_zero()) continue;
    PSeries L = l_series(rr, g).map_coeffs([&](const MRat& q) { return q.subs(th); });
    e = e - L * a;
  }
  if (m + n == 0) {
    PSeries L0 = l_series(0, g).map_coeffs([&](const MRat& q) { return q.subs(th); });
    MRat dtheta = theta.diff(z) / dY;
    e = e + L0 * PSeries::monomial(1, 2 * g, PKey{0, {-1}}, dtheta);
    if (g == 0) e.add(PKey{0, {0}}, theta);
  }
  MRat res;
  PSeries slice = e.hbar_slice(2 * g);
  for (auto& [k, v] : slice.terms()) {
    int j = k.w[0];
    if (j < 0) continue;
    res += dop_n(c, Chart::Log, Side::Y, v, z, j);
  }
  MRat f(1);
  for (int i = 1; i <= m; ++i) f *= mu(c, Chart::Log, Side::X, zvar(i));
  for (int i = m + 1; i <= m + n + 1; ++i) f *= mu(c, Chart::Log, Side::Y, zvar(i));
  return res * f;
}

}  // namespace

Sym theta_symbol() {
  static const Sym s = intern("_theta");
  return s;
}

PSeries l_series(int r, int G) {
  auto& lc = lcache();
  {
    std::lock_guard lk(lc.mu);
    auto it = lc.map.find({r, G});
    if (it != lc.map.end()) return it->second;
  }
  PSeries out;
  if (r == 0) {
    const auto s = s_coeffs(2 * G + 2);
    auto b = inv_s_coeffs(2 * G + 2);
    MRat th = MRat::var(theta_symbol());
    PSeries expo(1, 2 * G);
    for (int k = 1; k <= G; ++k) {
      // v q_k(v) d^{2k} log(theta), q_k(v) = sum_{i+j=k} s_{2i} v^{2i} b_{2j}
      MRat dlog = th.pow(-2 * k) * Rational(-factorial_ll(2 * k - 1));
      for (int i = 0; i <= k; ++i) {
        Rational q = s[2 * i] * b[2 * (k - i)];
        if (q != 0) expo.add(PKey{2 * k, {2 * i + 1}}, dlog * q);
      }
    }
    out = expo.exp();
  } else {
    PSeries prev = l_series(r - 1, G);
    out = PSeries(1, 2 * G);
    MRat inv_th = MRat::var(theta_symbol()).inverse();
    for (auto& [k, v] : prev.terms()) {
      out.add(k, v.diff(theta_symbol()));
      out.add(PKey{k.h, {k.w[0] + 1}}, v * inv_th);
    }
  }
  std::lock_guard lk(lc.mu);
  lc.map.emplace(std::make_pair(r, G), out);
  return out;
}

CorrDiff step_simple(const OmegaTable& t, Direction d, int g, int m, int n) {
  if (g == 0 && m == 0 && n == 0) {
    if (d == Direction::XtoY) return {0, 0, 1, unstable_body(t.curve(), 0, 1)};
    return {0, 1, 0, unstable_body(t.curve(), 1, 0)};
  }
  if (d == Direction::XtoY) return {g, m, n + 1, step_simple_xy(t, g, m, n)};
  MRat b = step_simple_xy(t.swapped(), g, n, m);
  return {g, m + 1, n, transpose_body(b, n, m + 1)};
}

CorrDiff step_standard(const OmegaTable& t, Direction d, int g, int m, int n) {
  if (d == Direction::XtoY) return {g, m, n + 1, step_standard_xy(t, g, m, n)};
  MRat b = step_standard_xy(t.swapped(), g, n, m);
  return {g, m + 1, n, transpose_body(b, n, m + 1)};
}

// ---------------------------------------------------------------- graphs

std::vector<Graph> enumerate_graphs(int n_vertices, int m_leaves, int max_betti) {
  const int T = n_vertices + m_leaves;
  std::vector<Graph> out;
  if (T == 0) return out;
  const int wmax = max_betti + T - 1;
  // candidate edges: sorted multisets of size >= 2, leaves at most once
  std::vector<std::vector<int>> cand;
  std::vector<int> cur;
  std::function<void(int)> gen = [&](int start) {
    if (cur.size() >= 2) cand.push_back(cur);
    if (static_cast<int>(cur.size()) >= wmax + 1) return;
    for (int tg = start; tg < T; ++tg) {
      if (tg < m_leaves && !cur.empty() && cur.back() == tg) continue;
      cur.push_back(tg);
      gen(tg);
      cur.pop_back();
    }
  };
  gen(0);
  std::vector<int> chosen;
  std::vector<int> leaf_count(m_leaves, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t idx, int weight) {
    // record current selection
    bool leaves_ok = std::all_of(leaf_count.begin(), leaf_count.end(), [](int c) { return c == 1; });
    if (leaves_ok && weight >= T - 1) {
      std::vector<int> parent(T);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
      for (int ci : chosen)
        for (int tg : cand[ci]) parent[find(tg)] = find(cand[ci][0]);
      bool conn = true;
      for (int i = 1; i < T; ++i) conn = conn && find(i) == find(0);
      int betti = weight - T + 1;
      if (conn && betti <= max_betti) {
        Graph gr;
        gr.n_vertices = n_vertices;
        gr.m_leaves = m_leaves;
        for (int ci : chosen) gr.edges.push_back(cand[ci]);
        gr.betti = betti;
        long aut = 1;
        for (std::size_t i = 0; i < chosen.size();) {
          std::size_t j = i;
          while (j < chosen.size() && chosen[j] == chosen[i]) ++j;
          aut *= factorial_ll(static_cast<int>(j - i));
          i = j;
        }
        for (auto& e : gr.edges)
          for (std::size_t i = 0; i < e.size();) {
            std::size_t j = i;
            while (j < e.size() && e[j] == e[i]) ++j;
            aut *= factorial_ll(static_cast<int>(j - i));
            i = j;
          }
        gr.aut_order = aut;
        out.push_back(std::move(gr));
      }
    }
    if (T == 1 && m_leaves == 0 && chosen.empty()) {
      // the single vertex without edges was recorded above (weight 0 = T - 1)
    }
    for (std::size_t ci = idx; ci < cand.size(); ++ci) {
      int w = static_cast<int>(cand[ci].size()) - 1;
      if (weight + w > wmax) continue;
      bool ok = true;
      for (int tg : cand[ci])
        if (tg < m_leaves && leaf_count[tg] >= 1) ok = false;
      if (!ok) continue;
      for (int tg : cand[ci])
        if (tg < m_leaves) ++leaf_count[tg];
      chosen.push_back(static_cast<int>(ci));
      rec(ci, weight + w);
      chosen.pop_back();
      for (int tg : cand[ci])
        if (tg < m_leaves) --leaf_count[tg];
    }
  };
  rec(0, 0);
  return out;
}

namespace {

// (1/w_p) exp(V) for a regular vertex in variable zv; n params, cutoff H.
PSeries vertex_factor(const OmegaTable& t, Sym zv, int p, int np, int H) {
  const Curve& c = t.curve();
  const auto s = s_coeffs(H + 2);
  PSeries V(np, H);
  auto key = [&](int h, int e) {
    PKey k{h, std::vector<int>(np, 0)};
    k.w[p] = e;
    return k;
  };
  MRat xp = c.dfn_at(Side::X, zv);
  for (int gt = 0; 2 * gt <= H; ++gt) {
    MRat f = gt == 0 ? -c.fn_at(Side::Y, zv) : place_body(t.get(gt, 1, 0), {zv}) / xp;
    MRat d = f;
    for (int a = 0; 2 * gt + 2 * a <= H; ++a) {
      if (a > 0) d = dop_n(c, Chart::Simple, Side::X, d, zv, 2);
      if (gt == 0 && a == 0) continue;
      if (!d.is_zero()) V.add(key(2 * gt + 2 * a, 2 * a + 1), d * s[2 * a]);
    }
  }
  PSeries r = V.exp() * PSeries::monomial(np, H, key(0, -1), MRat(1));
  return r;
}

// Edge factor: legs on targets (target index i <-> variable z_{i+1}).
PSeries edge_factor(const OmegaTable& t, const std::vector<int>& targets, int m_leaves, int np, int H) {
  const Curve& c = t.curve();
  const auto s = s_coeffs(H + 2);
  const int k = static_cast<int>(targets.size());
  std::vector<Sym> legs;
  for (int j = 1; j <= k; ++j) legs.push_back(leg_var(j));
  std::vector<int> dressed;  // leg indices on regular vertices
  for (int j = 0; j < k; ++j)
    if (targets[j] >= m_leaves) dressed.push_back(j);
  MRat inv_den(1);
  for (Sym l : legs) inv_den *= c.dfn_at(Side::X, l);
  inv_den = inv_den.inverse();
  std::vector<std::pair<Sym, Sym>> restrict;
  for (int j = 0; j < k; ++j) restrict.emplace_back(legs[j], zvar(targets[j] + 1));
  PSeries out(np, H);
  for (int gt = 0; 2 * gt <= H; ++gt) {
    MRat body = place_body(t.get(gt, k, 0), legs);
    if (gt == 0 && k == 2 && targets[0] == targets[1]) body -= pullback_bergman(c, Side::X, legs[0], legs[1]);
    MRat F = body * inv_den;
    if (F.is_zero()) continue;
    std::vector<Sym> dvars;
    for (int j : dressed) dvars.push_back(legs[j]);
    DerivCache dc(c, Chart::Simple, std::vector<Side>(dvars.size(), Side::X), dvars, F);
    all_tuples(static_cast<int>(dressed.size()), (H - 2 * gt) / 2, [&](const std::vector<int>& a) {
      Rational coef = 1;
      int sum = 0;
      std::vector<int> orders;
      PKey key{2 * gt, std::vector<int>(np, 0)};
      for (std::size_t i = 0; i < a.size(); ++i) {
        coef *= s[2 * a[i]];
        sum += a[i];
        orders.push_back(2 * a[i]);
        key.w[targets[dressed[i]] - m_leaves] += 2 * a[i] + 1;
      }
      if (coef == 0) return;
      key.h += 2 * sum;
      const MRat& d = dc.get(orders);
      if (d.is_zero()) return;
      out.add(key, restrict_map(d, restrict) * coef);
    });
  }
  return out;
}

}  // namespace

CorrDiff graph_sum_mixed(const OmegaTable& t, int g, int m, int n) {
  const Curve& c = t.curve();
  MRat total;
  for (const Graph& gr : enumerate_graphs(n, m, g)) {
    const int H = 2 * (g - gr.betti);
    PSeries prod = PSeries::constant(n, H, MRat(Rational(Integer(1), Integer(gr.aut_order))));
    for (int i = 0; i < n; ++i) prod = prod * vertex_factor(t, zvar(m + i + 1), i, n, H);
    for (auto& e : gr.edges) {
      if (prod.is_zero()) break;
      prod = prod * edge_factor(t, e, m, n, H);
    }
    PSeries slice = prod.hbar_slice(H);
    for (auto& [k, v] : slice.terms()) {
      if (std::any_of(k.w.begin(), k.w.end(), [](int e) { return e < 0; })) continue;
      MRat f = v;
      for (int i = 0; i < n; ++i) {
        Sym zi = zvar(m + i + 1);
        f *= c.dfn_at(Side::X, zi) / c.dfn_at(Side::Y, zi);
      }
      for (int i = 0; i < n; ++i) f = dop_n(c, Chart::Simple, Side::Y, f, zvar(m + i + 1), k.w[i]);
      total += f;
    }
  }
  if (n % 2 == 1) total = -total;
  if (g == 0 && m == 0 && n == 1) total -= c.fn_at(Side::X, zvar(1));
  MRat f(1);
  for (int i = 1; i <= m; ++i) f *= c.dfn_at(Side::X, zvar(i));
  for (int i = m + 1; i <= m + n; ++i) f *= c.dfn_at(Side::Y, zvar(i));
  return {g, m, n, total * f};
}

CorrDiff graph_sum_swap(const OmegaTable& t, int g, int n) { return graph_sum_mixed(t, g, 0, n); }

// ---------------------------------------------------------------- pole splitting

MRat split_rhs(const OmegaTable& t, int g, int m, int n) { return step_simple_xy(t, g, m, n, g); }

SplitResult split_poles(const MRat& rhs, const Curve& c, int m, int n) {
  SplitResult r;
  if (rhs.is_zero()) return r;
  const Sym z = zvar(m + 1);
  std::set<Rational> xr, yr;
  for (auto& rp : c.ramification_points(Side::X)) xr.insert(rp.location);
  if (c.dual_side_valid())
    for (auto& rp : c.ramification_points(Side::Y)) yr.insert(rp.location);
  for (const MPoly& loc : pole_locations(rhs, z)) {
    bool first;
    if (loc.is_constant()) {
      Rational a = loc.constant_term();
      if (xr.count(a)) first = true;
      else if (yr.count(a)) first = false;
      else throw std::domain_error("split_poles: pole at z=" + to_string(a) + " is neither a zero of dx nor of dy");
    } else {
      auto vs = loc.vars();
      if (vs.size() != 1 || loc != MPoly::var(vs[0]))
        throw std::domain_error("split_poles: pole at " + loc.str() + " is not a variable");
      int idx = -1;
      for (int i = 1; i <= m + n + 1; ++i)
        if (zvar(i) == vs[0]) idx = i;
      if (idx < 1 || idx == m + 1) throw std::domain_error("split_poles: unexpected pole at " + loc.str());
      first = idx > m + 1;
    }
    MRat pp = principal_part(rhs, z, loc);
    (first ? r.first : r.second) += pp;
  }
  if (r.first + r.second != rhs) throw std::domain_error("split_poles: nonzero polynomial part");
  return r;
}

// ---------------------------------------------------------------- duality and loop equations

WPoly w_y_reduced_slice(const OmegaTable& t, int g, int m, int n) {
  OmegaTable v = t.swapped();
  WPoly r = w_cal_reduced(v, Chart::Simple, n, m, g).hbar_slice(2 * g);
  std::vector<std::pair<Sym, Sym>> ren;
  for (int i = 1; i <= n; ++i) ren.emplace_back(zvar(i), zvar(m + 1 + i));
  ren.emplace_back(zvar(n + 1), zvar(m + 1));
  for (int j = 1; j <= m; ++j) ren.emplace_back(zvar(n + 1 + j), zvar(j));
  return r.map_coeffs([&](const MRat& q) { return q.rename(ren); });
}

Check check_parametric_duality(const Curve& c, const WPoly& rx, const WPoly& ry, int m, int /*n*/, int w_max,
                               int wt_max) {
  const Sym z = zvar(m + 1);
  MRat x = c.fn_at(Side::X, z), y = c.fn_at(Side::Y, z);
  MRat xp = c.dfn_at(Side::X, z), yp = c.dfn_at(Side::Y, z);
  auto coeff = [](const WPoly& p, int a) {
    MRat r;
    for (auto& [k, v] : p.terms())
      if (k.w[0] == a) r += v;
    return r;
  };
  auto full_coeff = [&](const WPoly& red, const MRat& cval, int a) {
    // [w^a] e^{c w} red
    MRat r;
    for (auto& [k, v] : red.terms()) {
      int b = a - k.w[0];
      if (b >= 0) r += v * cval.pow(b) * inv_factorial(b);
    }
    return r;
  };
  auto maxdeg = [](const WPoly& p) {
    int d = 0;
    for (auto& [k, v] : p.terms()) d = std::max(d, k.w[0]);
    return d;
  };
  // W^y(w~) = -sum_r d_y^r (e^{-w~ x} [w^r] (dx/dy) e^{wy} W^x)
  for (int a = 0; a <= wt_max; ++a) {
    MRat lhs = full_coeff(ry, -x, a);
    MRat rhs;
    MRat pre = (-x).pow(a) * inv_factorial(a);
    for (int r = 0; r <= maxdeg(rx); ++r) {
      MRat cr = coeff(rx, r);
      if (cr.is_zero()) continue;
      rhs -= dop_n(c, Chart::Simple, Side::Y, pre * xp / yp * cr, z, r);
    }
    if (lhs != rhs) return Check::fail("parametric identity for W^y fails at w~^" + std::to_string(a));
  }
  for (int a = 0; a <= w_max; ++a) {
    MRat lhs = full_coeff(rx, -y, a);
    MRat rhs;
    MRat pre = (-y).pow(a) * inv_factorial(a);
    for (int r = 0; r <= maxdeg(ry); ++r) {
      MRat cr = coeff(ry, r);
      if (cr.is_zero()) continue;
      rhs -= dop_n(c, Chart::Simple, Side::X, pre * yp / xp * cr, z, r);
    }
    if (lhs != rhs) return Check::fail("parametric identity for W^x fails at w^" + std::to_string(a));
  }
  return Check::pass();
}

Check check_parametric_duality(const OmegaTable& t, int g, int m, int n, int w_max, int wt_max) {
  WPoly rx = w_cal_reduced(t, Chart::Simple, m, n, g).hbar_slice(2 * g);
  WPoly ry = w_y_reduced_slice(t, g, m, n);
  auto r = check_parametric_duality(t.curve(), rx, ry, m, n, w_max, wt_max);
  if (!r) r.detail += " for " + Triple{g, m, n}.str() + " at hbar^" + std::to_string(2 * g);
  return r;
}

Check check_loop_equations(const OmegaTable& t, Side side, int g, int m, int n, int r, std::uint64_t seed) {
  // the y side is the x side of the swapped view with blocks exchanged
  OmegaTable v = side == Side::X ? t : t.swapped();
  int mm = side == Side::X ? m : n, nn = side == Side::X ? n : m;
  MRat coeff = w_cal_coeff(v, g, mm, nn, r - 1);
  const Curve& c = v.curve();
  for (auto& rp : c.ramification_points(Side::X)) {
    auto res = check_r_loop(c, coeff, zvar(mm + 1), r, rp, seed);
    if (!res) {
      res.detail = std::string(side == Side::X ? "x" : "y") + "-side " + Triple{g, m, n}.str() + ": " + res.detail;
      return res;
    }
  }
  return Check::pass();
}

Check check_block_symmetry(const OmegaTable& t, int g, int m, int n) {
  const MRat& b = t.get(g, m, n);
  auto swap_check = [&](int i, int j) { return b.rename({{zvar(i), zvar(j)}, {zvar(j), zvar(i)}}) == b; };
  for (int i = 1; i < m; ++i)
    if (!swap_check(i, i + 1)) return Check::fail("not symmetric in z" + std::to_string(i) + ", z" + std::to_string(i + 1));
  for (int i = m + 1; i < m + n; ++i)
    if (!swap_check(i, i + 1)) return Check::fail("not symmetric in z" + std::to_string(i) + ", z" + std::to_string(i + 1));
  return Check::pass();
}

Check check_diagonal_regularity(const OmegaTable& t, int g, int m, int n) {
  const Curve& c = t.curve();
  MRat b = t.get(g, m, n);
  if (!is_stable(g, m, n)) {
    if (g == 0 && m == 2 && n == 0) b -= pullback_bergman(c, Side::X, zvar(1), zvar(2));
    else if (g == 0 && m == 0 && n == 2) b -= pullback_bergman(c, Side::Y, zvar(1), zvar(2));
    else return Check::pass();
  }
  auto pair_ok = [&](int i, int j) -> Check {
    // denominator scan
    for (auto& [id, e] : b.den_factors()) {
      const auto& fi = factor_info(id);
      if (fi.linear && fi.vars.size() == 2 &&
          ((fi.vars[0] == zvar(i) && fi.vars[1] == zvar(j)) || (fi.vars[0] == zvar(j) && fi.vars[1] == zvar(i)))) {
        MPoly d = MPoly::var(zvar(i)) - MPoly::var(zvar(j));
        if (fi.poly == d || fi.poly == -d)
          return Check::fail("pole on the diagonal z" + std::to_string(i) + " = z" + std::to_string(j));
      }
    }
    // Laurent window: restriction is finite
    try {
      restrict_diagonal(b, {zvar(j)}, zvar(i));
    } catch (const std::domain_error&) {
      return Check::fail("singular restriction to z" + std::to_string(i) + " = z" + std::to_string(j));
    }
    return Check::pass();
  };
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j)
      if (auto r = pair_ok(i, j); !r) return r;
  for (int i = m + 1; i <= m + n; ++i)
    for (int j = i + 1; j <= m + n; ++j)
      if (auto r = pair_ok(i, j); !r) return r;
  return Check::pass();
}

Check check_pole_classification(const OmegaTable& t, int g, int m, int n) {
  if (!is_stable(g, m, n)) return Check::pass();
  const Curve& c = t.curve();
  const MRat& b = t.get(g, m, n);
  std::set<Rational> xr, yr;
  for (auto& rp : c.ramification_points(Side::X)) xr.insert(rp.location);
  if (c.dual_side_valid())
    for (auto& rp : c.ramification_points(Side::Y)) yr.insert(rp.location);
  for (int i = 1; i <= m + n; ++i) {
    bool xblock = i <= m;
    std::vector<MPoly> locs;
    try {
      locs = pole_locations(b, zvar(i));
    } catch (const std::domain_error& e) {
      return Check::fail(std::string("pole locus in z") + std::to_string(i) + " is not linear: " + e.what());
    }
    for (auto& loc : locs) {
      if (loc.is_constant()) {
        Rational a = loc.constant_term();
        if (xblock ? !xr.count(a) : !yr.count(a))
          return Check::fail("z" + std::to_string(i) + " has a pole at " + to_string(a) + ", not a zero of d" +
                             (xblock ? "x" : "y"));
      } else {
        auto vs = loc.vars();
        int j = 0;
        for (int k = 1; k <= m + n; ++k)
          if (vs.size() == 1 && vs[0] == zvar(k) && loc == MPoly::var(vs[0])) j = k;
        if (j == 0 || (j <= m) == xblock)
          return Check::fail("z" + std::to_string(i) + " has a pole at " + loc.str());
      }
    }
  }
  return Check::pass();
}

Check check_exactness(const OmegaTable& t, int g, int m, int n, std::uint64_t seed) {
  const Curve& c = t.curve();
  MRat sum = t.get(g, m + 1, n) + t.get(g, m, n + 1);
  // both layouts put the shared variable at z_{m+1}
  std::vector<Sym> spect;
  for (int i = 1; i <= m + n + 1; ++i)
    if (i != m + 1) spect.push_back(zvar(i));
  std::vector<Rational> avoid{Rational(0)};
  for (auto& rp : c.ramification_points(Side::X)) avoid.push_back(rp.location);
  if (c.dual_side_valid())
    for (auto& rp : c.ramification_points(Side::Y)) avoid.push_back(rp.location);
  for (int k = 0; k < kProbeSets; ++k) {
    auto ps = make_probes(seed + 7919ull * k, spect, avoid);
    MRat f = spect.empty() ? sum : sum.subs_values(ps.values);
    if (!exactness_check(f, zvar(m + 1)))
      return Check::fail("sum " + Triple{g, m + 1, n}.str() + " + " + Triple{g, m, n + 1}.str() + " has a residue");
  }
  return Check::pass();
}

// ---------------------------------------------------------------- table hook

namespace detail {
MRat compute_entry(const OmegaTable& t, int g, int m, int n) {
  if (n == 0) {
    if (t.source() == ColumnSource::SplitPoles) {
      MRat rhs = split_rhs(t, g, m - 1, 0);
      return split_poles(rhs, t.curve(), m - 1, 0).first;
    }
    return tr_entry(t, g, m);
  }
  return step_simple_xy(t, g, m, n - 1);
}
}  // namespace detail

}  // namespace toprec
