#include "schubert/moves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace schubert {

namespace {

bool has(Tile t, std::uint8_t e) { return edges_of(t) & e; }

int code_of(const Window& w) {
  return static_cast<int>(w[0]) + 6 * (static_cast<int>(w[1]) + 6 * (static_cast<int>(w[2]) + 6 * static_cast<int>(w[3])));
}

Window window_of(int code) {
  Window w;
  for (auto& t : w) {
    t = static_cast<Tile>(code % 6);
    code /= 6;
  }
  return w;
}

struct Table {
  std::vector<FlipPair> pairs;
  std::array<int, 1296> partner;  // -1 when no flip
};

Table build_table() {
  Table t;
  t.partner.fill(-1);
  std::map<int, std::vector<int>> groups;
  for (int code = 0; code < 1296; ++code) {
    Window w = window_of(code);
    if (has(w[0], edge::E) != has(w[1], edge::W) || has(w[2], edge::E) != has(w[3], edge::W) ||
        has(w[0], edge::S) != has(w[2], edge::N) || has(w[1], edge::S) != has(w[3], edge::N))
      continue;
    int sig = 0;
    for (bool bit : {has(w[0], edge::N), has(w[1], edge::N), has(w[0], edge::W), has(w[2], edge::W),
                     has(w[1], edge::E), has(w[3], edge::E), has(w[2], edge::S), has(w[3], edge::S)})
      sig = sig * 2 + bit;
    groups[sig].push_back(code);
  }
  for (auto& [sig, codes] : groups) {
    int low = -1, high = -1;
    for (int c : codes) {
      int& slot = has(window_of(c)[0], edge::S) ? high : low;
      if (slot != -1) throw std::logic_error("flip table: ambiguous window class");
      slot = c;
    }
    if (low < 0 || high < 0) continue;
    Window lw = window_of(low), hw = window_of(high);
    auto crosses = [](const Window& w) { return std::count(w.begin(), w.end(), Tile::Cross); };
    long cl = crosses(lw), ch = crosses(hw);
    char kind = cl == 0 && ch == 0 ? 'a' : cl != ch ? 'b' : 'c';
    t.pairs.push_back({lw, hw, kind});
    t.partner[low] = high;
    t.partner[high] = low;
  }
  return t;
}

const Table& table() {
  static const Table t = build_table();
  return t;
}

char kind_of(const Window& a, const Window& b) {
  auto crosses = [](const Window& w) { return std::count(w.begin(), w.end(), Tile::Cross); };
  long ca = crosses(a), cb = crosses(b);
  return ca == 0 && cb == 0 ? 'a' : ca != cb ? 'b' : 'c';
}

}  // namespace

const std::vector<FlipPair>& flip_table() { return table().pairs; }

std::optional<FlipMove> flip_available(const Bpd& b, int i, int j, FlipDir dir) {
  const int n = b.n();
  if (i < 1 || j < 1 || i > n - 1 || j > n - 1) throw std::out_of_range("flip vertex must be interior");
  Window w{b.at(i - 1, j - 1), b.at(i - 1, j), b.at(i, j - 1), b.at(i, j)};
  const bool is_low = !has(w[0], edge::S);
  if (is_low != (dir == FlipDir::Up)) return std::nullopt;
  int p = table().partner[code_of(w)];
  if (p < 0) return std::nullopt;
  Window after = window_of(p);
  return FlipMove{i, j, dir, kind_of(w, after), w, after};
}

void apply_flip(Bpd& b, const FlipMove& m) {
  std::array<Tile, 4> block = m.after;
  b.replace_block(m.i - 1, m.j - 1, 2, 2, block.data());
}

bool flip_preserves_reducedness(Bpd& b, const FlipMove& m) {
  apply_flip(b, m);
  bool ok = b.is_reduced();
  std::array<Tile, 4> block = m.before;
  b.replace_block(m.i - 1, m.j - 1, 2, 2, block.data());
  return ok;
}

bool try_reduced_flip(Bpd& b, int i, int j, FlipDir dir) {
  auto m = flip_available(b, i, j, dir);
  if (!m) return false;
  apply_flip(b, *m);
  if (b.is_reduced()) return true;
  std::array<Tile, 4> block = m->before;
  b.replace_block(i - 1, j - 1, 2, 2, block.data());
  return false;
}

namespace {

bool map_tile(Tile in, std::initializer_list<std::pair<Tile, Tile>> rules, Tile& out) {
  for (auto [from, to] : rules)
    if (in == from) {
      out = to;
      return true;
    }
  return false;
}

}  // namespace

std::optional<std::vector<Tile>> droop_result(const Bpd& b, const DroopRect& r) {
  const int n = b.n();
  if (r.i1 < 1 || r.j1 < 1 || r.i2 > n || r.j2 > n || r.i1 >= r.i2 || r.j1 >= r.j2) return std::nullopt;
  const int h = r.i2 - r.i1 + 1, w = r.j2 - r.j1 + 1;
  std::vector<Tile> out(h * w);
  using T = Tile;
  // Corners: NW, NE, SW, SE.
  const T nw = r.undroop ? T::Empty : T::RElbow;
  const T se = r.undroop ? T::JElbow : T::Empty;
  const T ne = r.undroop ? T::RElbow : T::Horizontal;
  const T sw = r.undroop ? T::RElbow : T::Vertical;
  if (b.at(r.i1 - 1, r.j1 - 1) != nw || b.at(r.i2 - 1, r.j2 - 1) != se || b.at(r.i1 - 1, r.j2 - 1) != ne ||
      b.at(r.i2 - 1, r.j1 - 1) != sw)
    return std::nullopt;
  out[0] = r.undroop ? T::RElbow : T::Empty;
  out[h * w - 1] = r.undroop ? T::Empty : T::JElbow;
  out[w - 1] = r.undroop ? T::Horizontal : T::RElbow;
  out[(h - 1) * w] = r.undroop ? T::Vertical : T::RElbow;
  for (int a = 0; a < h; ++a)
    for (int c = 0; c < w; ++c) {
      const bool corner = (a == 0 || a == h - 1) && (c == 0 || c == w - 1);
      if (corner) continue;
      Tile in = b.at(r.i1 - 1 + a, r.j1 - 1 + c);
      if (is_elbow(in)) return std::nullopt;
      Tile& o = out[a * w + c];
      bool ok = true;
      if (a == 0) {
        ok = r.undroop ? map_tile(in, {{T::Empty, T::Horizontal}, {T::Vertical, T::Cross}}, o)
                       : map_tile(in, {{T::Horizontal, T::Empty}, {T::Cross, T::Vertical}}, o);
      } else if (c == 0) {
        ok = r.undroop ? map_tile(in, {{T::Empty, T::Vertical}, {T::Horizontal, T::Cross}}, o)
                       : map_tile(in, {{T::Vertical, T::Empty}, {T::Cross, T::Horizontal}}, o);
      } else if (a == h - 1) {
        ok = r.undroop ? map_tile(in, {{T::Horizontal, T::Empty}, {T::Cross, T::Vertical}}, o)
                       : map_tile(in, {{T::Empty, T::Horizontal}, {T::Vertical, T::Cross}}, o);
      } else if (c == w - 1) {
        ok = r.undroop ? map_tile(in, {{T::Vertical, T::Empty}, {T::Cross, T::Horizontal}}, o)
                       : map_tile(in, {{T::Empty, T::Vertical}, {T::Horizontal, T::Cross}}, o);
      } else {
        o = in;
      }
      if (!ok) return std::nullopt;
    }
  return out;
}

namespace {

std::vector<DroopRect> rects_of(const Bpd& b, bool undroop) {
  std::vector<DroopRect> out;
  const int n = b.n();
  for (int i1 = 1; i1 <= n; ++i1)
    for (int j1 = 1; j1 <= n; ++j1) {
      if (b.at(i1 - 1, j1 - 1) != (undroop ? Tile::Empty : Tile::RElbow)) continue;
      for (int i2 = i1 + 1; i2 <= n; ++i2)
        for (int j2 = j1 + 1; j2 <= n; ++j2) {
          DroopRect r{i1, i2, j1, j2, undroop};
          if (droop_result(b, r)) out.push_back(r);
        }
    }
  return out;
}

void apply_rect(Bpd& b, DroopRect r) {
  auto tiles = droop_result(b, r);
  if (!tiles) throw std::invalid_argument(r.undroop ? "rectangle is not undroopable" : "rectangle is not droopable");
  b.replace_block(r.i1 - 1, r.j1 - 1, r.i2 - r.i1 + 1, r.j2 - r.j1 + 1, tiles->data());
}

}  // namespace

std::vector<DroopRect> droopable_rects(const Bpd& b) { return rects_of(b, false); }
std::vector<DroopRect> undroopable_rects(const Bpd& b) { return rects_of(b, true); }

void apply_droop(Bpd& b, DroopRect r) {
  r.undroop = false;
  apply_rect(b, r);
}

void apply_undroop(Bpd& b, DroopRect r) {
  r.undroop = true;
  apply_rect(b, r);
}

bool try_rect_move(Bpd& b, int i1, int i2, int j1, int j2) {
  DroopRect r{i1, i2, j1, j2, false};
  auto tiles = droop_result(b, r);
  if (!tiles) {
    r.undroop = true;
    tiles = droop_result(b, r);
  }
  if (!tiles) return false;
  b.replace_block(i1 - 1, j1 - 1, i2 - i1 + 1, j2 - j1 + 1, tiles->data());
  return true;
}

bool is_stuck(Bpd& b) {
  if (b.is_reduced() && b.boundary_perm().is_identity()) return false;
  const int n = b.n();
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      auto m = flip_available(b, i, j, FlipDir::Up);
      if (m && flip_preserves_reducedness(b, *m)) return false;
    }
  return true;
}

FlipMove rothe_reducing_flip(const Perm& w) {
  if (w.is_identity()) throw std::invalid_argument("the identity has no reducing flip");
  Bpd b = rothe_bpd(w);
  const int n = b.n();
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r)
      if (b.at(r, c) == Tile::Cross) {
        auto m = flip_available(b, r, c, FlipDir::Up);
        if (!m) throw std::logic_error("Rothe BPD lacks the expected flip");
        return *m;
      }
  throw std::logic_error("non-identity Rothe BPD without crosses");
}

namespace {

struct Graph {
  std::vector<Bpd> states;
  std::map<std::vector<Tile>, std::size_t> index;
};

Graph graph_of(int n) {
  Graph g;
  g.states = enumerate_rbpds(n);
  for (std::size_t k = 0; k < g.states.size(); ++k) g.index.emplace(g.states[k].tiles(), k);
  return g;
}

ConnectivityReport components(Graph& g, bool with_droops) {
  const std::size_t m = g.states.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  ConnectivityReport rep;
  rep.states = m;
  auto link = [&](std::size_t a, const Bpd& nb) {
    auto it = g.index.find(nb.tiles());
    if (it == g.index.end()) throw std::logic_error("move left the RBPD set");
    ++rep.edges;
    parent[find(a)] = find(it->second);
  };
  const int n = g.states.empty() ? 0 : g.states[0].n();
  for (std::size_t k = 0; k < m; ++k) {
    Bpd b = g.states[k];
    for (int i = 1; i < n; ++i)
      for (int j = 1; j < n; ++j)
        if (auto mv = flip_available(b, i, j, FlipDir::Up)) {
          Bpd c = b;
          apply_flip(c, *mv);
          if (c.is_reduced()) link(k, c);
        }
    if (with_droops)
      for (const auto& r : droopable_rects(b)) {
        Bpd c = b;
        apply_droop(c, r);
        link(k, c);
      }
  }
  for (std::size_t k = 0; k < m; ++k) rep.components += find(k) == k;
  return rep;
}

}  // namespace

ConnectivityReport flip_connectivity(int n) {
  Graph g = graph_of(n);
  return components(g, false);
}

ConnectivityReport flip_droop_connectivity(int n) {
  Graph g = graph_of(n);
  return components(g, true);
}

std::size_t droop_reachable_count(const Perm& w) {
  std::map<std::vector<Tile>, bool> seen;
  std::queue<Bpd> q;
  Bpd start = rothe_bpd(w);
  seen[start.tiles()] = true;
  q.push(start);
  while (!q.empty()) {
    Bpd b = q.front();
    q.pop();
    for (const auto& r : droopable_rects(b)) {
      Bpd c = b;
      apply_droop(c, r);
      if (seen.emplace(c.tiles(), true).second) q.push(c);
    }
  }
  return seen.size();
}

}  // namespace schubert
