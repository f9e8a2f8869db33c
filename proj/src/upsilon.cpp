#include "schubert/upsilon.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace schubert {

const char* to_string(Formula f) {
  switch (f) {
    case Formula::Descent: return "descent";
    case Formula::Transition: return "transition";
    case Formula::Cotransition: return "cotransition";
  }
  return "?";
}

const char* to_string(EvalMode m) { return m == EvalMode::Bfs ? "bfs" : "dfs"; }

Formula parse_formula(const std::string& s) {
  if (s == "descent") return Formula::Descent;
  if (s == "transition") return Formula::Transition;
  if (s == "cotransition") return Formula::Cotransition;
  throw std::invalid_argument("unknown formula '" + s + "'");
}

EvalMode parse_mode(const std::string& s) {
  if (s == "bfs") return EvalMode::Bfs;
  if (s == "dfs") return EvalMode::Dfs;
  throw std::invalid_argument("unknown mode '" + s + "'");
}

namespace {

struct U128Overflow {};

void add_to(u128& a, const u128& b) {
  u128 s = a + b;
  if (s < a) throw U128Overflow{};
  a = s;
}
void add_to(mpz_class& a, const mpz_class& b) { a += b; }
void add_to(double& a, double b) { a += b; }

struct KeyHash {
  std::size_t operator()(std::uint64_t x) const noexcept {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
  std::size_t operator()(u128 x) const noexcept { return U128Hash{}(x); }
};

template <class Codec>
using KeyOf = std::remove_cv_t<decltype(Codec::kMask)>;

using Buf = std::array<std::uint8_t, kMaxN>;

// 0-based pivot (r, s); false when dominant.
bool pivot0(const std::uint8_t* e, int n, int& r_out, int& s_out) {
  std::array<int, kMaxN + 1> pmin{};
  pmin[0] = n + 1;
  for (int k = 0; k < n; ++k) pmin[k + 1] = std::min(pmin[k], static_cast<int>(e[k]));
  for (int r = n - 2; r >= 1; --r) {
    int lo = pmin[r];
    if (lo > e[r]) continue;
    int best = -1;
    for (int t = n - 1; t > r; --t)
      if (e[t] > lo && e[t] < e[r]) {
        best = t;
        break;
      }
    if (best >= 0) {
      r_out = r;
      s_out = best;
      return true;
    }
  }
  return false;
}

int coindex0(const std::uint8_t* e, int n) {
  for (int p = 0; p < n; ++p)
    if (p + 1 + e[p] <= n) return p;
  return -1;
}

// Covers of e that move position p.
template <class Codec, class Out>
void cotransition_covers(KeyOf<Codec> key, const std::uint8_t* e, int n, int p, Out&& out) {
  int lo = e[p], min_above = n + 1;
  for (int b = p + 1; b < n; ++b)
    if (e[b] > lo && e[b] < min_above) {
      out(Codec::swap(key, p, b));
      min_above = e[b];
    }
  int hi = e[p], max_below = 0;
  for (int a = p - 1; a >= 0; --a)
    if (e[a] < hi && e[a] > max_below) {
      out(Codec::swap(key, a, p));
      max_below = e[a];
    }
}

void check_frontier(std::size_t size, const EvalOptions& opt) {
  if (size > opt.frontier_cap)
    throw ResourceCapExceeded("frontier of " + std::to_string(size) + " entries exceeds cap " +
                              std::to_string(opt.frontier_cap));
}

// ---- descent ----

// Each term is (i / l) * coefficient, as the recurrence is written.
void mul_add(double& acc, double v, int i, int l) { acc += (static_cast<double>(i) / l) * v; }
void mul_add(Rational128& acc, const Rational128& v, int i, int l) { acc += v * Rational128(i, l); }
void mul_add(mpq_class& acc, const mpq_class& v, int i, int l) {
  mpq_class q(i, l);
  q.canonicalize();
  acc += v * q;
}

template <class Codec, class V>
V descent_bfs(const Perm& w, const EvalOptions& opt) {
  using Key = KeyOf<Codec>;
  const int n = w.size();
  struct Child {
    Key key;
    std::uint32_t parent;
    std::uint8_t weight;
  };
  std::vector<Key> keys{Codec::pack(w.entries())};
  std::vector<V> vals{V(1)};
  Buf e{};
  for (int level = length(w); level > 0; --level) {
    std::vector<Child> ch;
    for (std::uint32_t idx = 0; idx < keys.size(); ++idx) {
      Codec::unpack(keys[idx], n, e.data());
      for (int p = 0; p + 1 < n; ++p)
        if (e[p] > e[p + 1]) ch.push_back({Codec::swap(keys[idx], p, p + 1), idx, static_cast<std::uint8_t>(p + 1)});
    }
    check_frontier(ch.size(), opt);
    std::sort(ch.begin(), ch.end(), [](const Child& a, const Child& b) {
      return a.key != b.key ? a.key < b.key : a.parent < b.parent;
    });
    std::vector<Key> nkeys;
    std::vector<V> nvals;
    for (std::size_t k = 0; k < ch.size();) {
      V acc(0);
      std::size_t j = k;
      for (; j < ch.size() && ch[j].key == ch[k].key; ++j) mul_add(acc, vals[ch[j].parent], ch[j].weight, level);
      nkeys.push_back(ch[k].key);
      nvals.push_back(std::move(acc));
      k = j;
    }
    keys = std::move(nkeys);
    vals = std::move(nvals);
  }
  return vals.at(0);
}

// ---- transition ----

template <class Codec, class V>
V transition_dfs(const Perm& w, const EvalOptions& opt) {
  using Key = KeyOf<Codec>;
  const int n = w.size();
  MemoTable<Key, V, KeyHash> memo(opt.memo_cap);
  Buf e{};
  auto expand = [&](Key k, std::vector<Key>& out) {
    Codec::unpack(k, n, e.data());
    int r, s;
    if (!pivot0(e.data(), n, r, s)) return false;
    Key v = Codec::swap(k, r, s);
    std::swap(e[r], e[s]);
    out.push_back(v);
    for (int i = 0; i < r; ++i)
      if (is_cover_0(std::span<const std::uint8_t>(e.data(), n), i, r)) out.push_back(Codec::swap(v, i, r));
    return true;
  };
  struct Frame {
    Key key;
    std::vector<Key> children;
    std::size_t next = 0;
    V acc{};
  };
  std::vector<Frame> stack;
  {
    Key root = Codec::pack(w.entries());
    std::vector<Key> ch;
    if (!expand(root, ch)) return V(1);
    stack.push_back({root, std::move(ch), 0, V(0)});
  }
  while (true) {
    Frame& f = stack.back();
    if (f.next == f.children.size()) {
      V val = std::move(f.acc);
      memo.insert(f.key, val);
      stack.pop_back();
      if (stack.empty()) return val;
      add_to(stack.back().acc, val);
      ++stack.back().next;
      continue;
    }
    Key c = f.children[f.next];
    if (const V* m = memo.find(c)) {
      add_to(f.acc, *m);
      ++f.next;
      continue;
    }
    std::vector<Key> cc;
    if (!expand(c, cc)) {
      add_to(f.acc, V(1));
      ++f.next;
      continue;
    }
    stack.push_back({c, std::move(cc), 0, V(0)});
  }
}

// ---- cotransition ----

template <class Codec, class V>
V cotransition_bfs(const Perm& w, const EvalOptions& opt) {
  using Key = KeyOf<Codec>;
  const int n = w.size();
  const int top = n * (n - 1) / 2;
  std::vector<Key> keys{Codec::pack(w.entries())};
  std::vector<V> vals{V(1)};
  std::vector<std::pair<Key, std::uint32_t>> ch;
  Buf e{};
  for (int level = length(w); level < top; ++level) {
    ch.clear();
    for (std::uint32_t idx = 0; idx < keys.size(); ++idx) {
      Codec::unpack(keys[idx], n, e.data());
      int p = coindex0(e.data(), n);
      cotransition_covers<Codec>(keys[idx], e.data(), n, p, [&](Key c) { ch.emplace_back(c, idx); });
    }
    check_frontier(ch.size(), opt);
    std::sort(ch.begin(), ch.end());
    std::vector<Key> nkeys;
    std::vector<V> nvals;
    for (std::size_t k = 0; k < ch.size();) {
      V acc(vals[ch[k].second]);
      std::size_t j = k + 1;
      for (; j < ch.size() && ch[j].first == ch[k].first; ++j) add_to(acc, vals[ch[j].second]);
      nkeys.push_back(ch[k].first);
      nvals.push_back(std::move(acc));
      k = j;
    }
    keys = std::move(nkeys);
    vals = std::move(nvals);
  }
  return vals.at(0);
}

template <class Codec, class V>
V cotransition_dfs(const Perm& w, const EvalOptions& opt) {
  using Key = KeyOf<Codec>;
  const int n = w.size();
  const Key top = Codec::pack(Perm::longest(n).entries());
  MemoTable<Key, V, KeyHash> memo(opt.memo_cap);
  Buf e{};
  auto expand = [&](Key k, std::vector<Key>& out) {
    if (k == top) return false;
    Codec::unpack(k, n, e.data());
    cotransition_covers<Codec>(k, e.data(), n, coindex0(e.data(), n), [&](Key c) { out.push_back(c); });
    return true;
  };
  struct Frame {
    Key key;
    std::vector<Key> children;
    std::size_t next = 0;
    V acc{};
  };
  std::vector<Frame> stack;
  {
    Key root = Codec::pack(w.entries());
    std::vector<Key> ch;
    if (!expand(root, ch)) return V(1);
    stack.push_back({root, std::move(ch), 0, V(0)});
  }
  while (true) {
    Frame& f = stack.back();
    if (f.next == f.children.size()) {
      V val = std::move(f.acc);
      memo.insert(f.key, val);
      stack.pop_back();
      if (stack.empty()) return val;
      add_to(stack.back().acc, val);
      ++stack.back().next;
      continue;
    }
    Key c = f.children[f.next];
    if (const V* m = memo.find(c)) {
      add_to(f.acc, *m);
      ++f.next;
      continue;
    }
    std::vector<Key> cc;
    if (!expand(c, cc)) {
      add_to(f.acc, V(1));
      ++f.next;
      continue;
    }
    stack.push_back({c, std::move(cc), 0, V(0)});
  }
}

template <template <class, class> class Algo, class V>
V by_codec(const Perm& w, const EvalOptions& opt) {
  if (w.size() <= Codec64::kMaxN) return Algo<Codec64, V>::run(w, opt);
  return Algo<Codec128, V>::run(w, opt);
}

template <class C, class V>
struct DescentAlgo {
  static V run(const Perm& w, const EvalOptions& o) { return descent_bfs<C, V>(w, o); }
};
template <class C, class V>
struct TransitionAlgo {
  static V run(const Perm& w, const EvalOptions& o) { return transition_dfs<C, V>(w, o); }
};
template <class C, class V>
struct CotransitionBfsAlgo {
  static V run(const Perm& w, const EvalOptions& o) { return cotransition_bfs<C, V>(w, o); }
};
template <class C, class V>
struct CotransitionDfsAlgo {
  static V run(const Perm& w, const EvalOptions& o) { return cotransition_dfs<C, V>(w, o); }
};

// Exact sums: 128-bit first, arbitrary precision if that overflows.
template <template <class, class> class Algo>
EvalValue exact_sum(const Perm& w, const EvalOptions& opt) {
  try {
    return EvalValue(to_mpz(by_codec<Algo, u128>(w, opt)));
  } catch (const U128Overflow&) {
    return EvalValue(by_codec<Algo, mpz_class>(w, opt));
  }
}

Perm prepare(const Perm& w, const EvalOptions& opt) {
  Perm p = opt.strip ? strip_trailing_fixed_points(w) : w;
  if (p.size() > kMaxN) throw std::invalid_argument("evaluators support n <= 25 after stripping fixed points");
  return p;
}

}  // namespace

std::optional<TransitionPivot> transition_pivot(const Perm& w) {
  int r, s;
  if (!pivot0(w.entries().data(), w.size(), r, s)) return std::nullopt;
  return TransitionPivot{r + 1, s + 1};
}

int cotransition_index(const Perm& w) {
  int p = coindex0(w.entries().data(), w.size());
  if (p < 0) throw std::domain_error("cotransition index undefined at the longest permutation");
  return p + 1;
}

EvalValue upsilon_descent(const Perm& w_in, Arith arith, const EvalOptions& opt) {
  Perm w = prepare(opt.descent_use_inverse ? w_in.inverse() : w_in, opt);
  switch (arith) {
    case Arith::Float: return EvalValue(by_codec<DescentAlgo, double>(w, opt));
    case Arith::Rational: return EvalValue(by_codec<DescentAlgo, Rational128>(w, opt));
    case Arith::Exact: {
      mpq_class q = by_codec<DescentAlgo, mpq_class>(w, opt);
      if (q.get_den() != 1) throw std::logic_error("descent recursion produced a non-integer");
      return EvalValue(mpz_class(q.get_num()));
    }
  }
  throw std::invalid_argument("bad arithmetic");
}

EvalValue upsilon_transition(const Perm& w_in, Arith arith, const EvalOptions& opt) {
  Perm w = prepare(w_in, opt);
  if (arith == Arith::Float) return EvalValue(by_codec<TransitionAlgo, double>(w, opt));
  return exact_sum<TransitionAlgo>(w, opt);
}

EvalValue upsilon_cotransition(const Perm& w_in, Arith arith, EvalMode mode, const EvalOptions& opt) {
  Perm w = prepare(w_in, opt);
  if (mode == EvalMode::Bfs) {
    if (arith == Arith::Float) return EvalValue(by_codec<CotransitionBfsAlgo, double>(w, opt));
    return exact_sum<CotransitionBfsAlgo>(w, opt);
  }
  if (arith == Arith::Float) return EvalValue(by_codec<CotransitionDfsAlgo, double>(w, opt));
  return exact_sum<CotransitionDfsAlgo>(w, opt);
}

EvalValue upsilon(const Perm& w, Formula f, Arith arith, EvalMode mode, const EvalOptions& opt) {
  switch (f) {
    case Formula::Descent: return upsilon_descent(w, arith, opt);
    case Formula::Transition: return upsilon_transition(w, arith, opt);
    case Formula::Cotransition: return upsilon_cotransition(w, arith, mode, opt);
  }
  throw std::invalid_argument("bad formula");
}

mpz_class upsilon_exact(const Perm& w) { return upsilon_cotransition(w, Arith::Exact).to_mpz(); }

}  // namespace schubert
