#include "schubert/bpd.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace schubert {

bool tile_from_edges(std::uint8_t e, Tile& out) {
  for (int k = 0; k < kTileKinds; ++k)
    if (edges_of(static_cast<Tile>(k)) == e) {
      out = static_cast<Tile>(k);
      return true;
    }
  return false;
}

char tile_char(Tile t) {
  static constexpr char chars[] = {'.', '+', '-', '|', 'r', 'j'};
  return chars[static_cast<int>(t)];
}

Tile tile_from_char(char c) {
  switch (c) {
    case '.': return Tile::Empty;
    case '+': return Tile::Cross;
    case '-': return Tile::Horizontal;
    case '|': return Tile::Vertical;
    case 'r': return Tile::RElbow;
    case 'j': return Tile::JElbow;
  }
  throw std::invalid_argument(std::string("unknown tile character '") + c + "'");
}

namespace {

bool has(Tile t, std::uint8_t e) { return edges_of(t) & e; }

// Edge compatibility of a full grid, including the domain-wall boundary.
void check_grid(int n, const std::vector<Tile>& t) {
  if (n < 1 || n > kMaxPermN) throw std::invalid_argument("BPD size out of range");
  if (static_cast<int>(t.size()) != n * n) throw std::invalid_argument("BPD needs n*n tiles");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      Tile x = t[r * n + c];
      bool north = r == 0 ? false : has(t[(r - 1) * n + c], edge::S);
      bool west = c == 0 ? false : has(t[r * n + c - 1], edge::E);
      if (has(x, edge::N) != north || has(x, edge::W) != west)
        throw std::invalid_argument("incompatible tile edges at (" + std::to_string(r + 1) + "," +
                                    std::to_string(c + 1) + ")");
      if (r == n - 1 && !has(x, edge::S)) throw std::invalid_argument("south boundary edge unoccupied");
      if (c == n - 1 && !has(x, edge::E)) throw std::invalid_argument("east boundary edge unoccupied");
    }
}

int inversions_of_rows(const std::vector<int>& row) {
  int inv = 0;
  const int n = static_cast<int>(row.size());
  for (int c = 0; c < n; ++c)
    for (int d = c + 1; d < n; ++d) inv += row[c] > row[d];
  return inv;
}

Perm perm_from_exit_rows(const std::vector<int>& row) {
  std::vector<std::uint8_t> e(row.size());
  for (std::size_t c = 0; c < row.size(); ++c) e[row[c]] = static_cast<std::uint8_t>(c + 1);
  return Perm(std::move(e));
}

}  // namespace

Bpd::Bpd(int n, std::vector<Tile> tiles) : n_(n), tiles_(std::move(tiles)) {
  check_grid(n_, tiles_);
  trace_all();
}

void Bpd::trace_all() {
  ncol_.assign(n_ * n_, kNoColor);
  ecol_.assign(n_ * n_, kNoColor);
  exit_row_.assign(n_, -1);
  for (int c = 0; c < n_; ++c)
    exit_row_[c] = trace_from(n_ - 1, c, true, static_cast<std::uint8_t>(c), 0, 0, n_, n_);
  crosses_ = static_cast<int>(std::count(tiles_.begin(), tiles_.end(), Tile::Cross));
  inversions_ = inversions_of_rows(exit_row_);
  perm_ = perm_from_exit_rows(exit_row_);
}

namespace {
thread_local std::vector<std::uint8_t> g_saved_n, g_saved_e;
}

int Bpd::trace_from(int r, int c, bool from_south, std::uint8_t color, int r0, int c0, int h, int w) {
  auto inside = [&](int rr, int cc) { return rr >= r0 && rr < r0 + h && cc >= c0 && cc < c0 + w; };
  const bool full = h == n_ && w == n_;
  while (true) {
    const int idx = r * n_ + c;
    const Tile t = tiles_[idx];
    bool go_north;
    if (from_south) {
      if (t == Tile::Vertical || t == Tile::Cross) go_north = true;
      else if (t == Tile::RElbow) go_north = false;
      else throw std::logic_error("pipe enters a tile without a south edge");
    } else {
      if (t == Tile::Horizontal || t == Tile::Cross) go_north = false;
      else if (t == Tile::JElbow) go_north = true;
      else throw std::logic_error("pipe enters a tile without a west edge");
    }
    const bool in = inside(r, c);
    const int nr = go_north ? r - 1 : r, nc = go_north ? c : c + 1;
    const bool internal = in && nr >= 0 && nc < n_ && inside(nr, nc);
    auto& slot = go_north ? ncol_[idx] : ecol_[idx];
    if (!full && !internal) {
      std::uint8_t old = slot;
      if (in) {
        int k = (r - r0) * w + (c - c0);
        old = go_north ? g_saved_n[k] : g_saved_e[k];
      }
      if (old == color) {
        slot = color;
        return -1;
      }
    }
    slot = color;
    if (nc >= n_) return r;
    if (nr < 0) throw std::logic_error("pipe exits through the north boundary");
    r = nr;
    c = nc;
    from_south = go_north;
  }
}

void Bpd::replace_block(int r0, int c0, int h, int w, const Tile* block) {
  if (r0 < 0 || c0 < 0 || h < 1 || w < 1 || r0 + h > n_ || c0 + w > n_)
    throw std::invalid_argument("block outside the grid");
  auto blk = [&](int r, int c) { return block[(r - r0) * w + (c - c0)]; };
  for (int r = r0; r < r0 + h; ++r)
    for (int c = c0; c < c0 + w; ++c) {
      Tile nt = blk(r, c), ot = at(r, c);
      bool north = r == r0 ? has(ot, edge::N) : has(blk(r - 1, c), edge::S);
      bool west = c == c0 ? has(ot, edge::W) : has(blk(r, c - 1), edge::E);
      if (has(nt, edge::N) != north || has(nt, edge::W) != west)
        throw std::invalid_argument("replacement block is not edge compatible");
      if (r == r0 + h - 1 && has(nt, edge::S) != has(ot, edge::S))
        throw std::invalid_argument("replacement block changes its south boundary");
      if (c == c0 + w - 1 && has(nt, edge::E) != has(ot, edge::E))
        throw std::invalid_argument("replacement block changes its east boundary");
    }

  g_saved_n.resize(h * w);
  g_saved_e.resize(h * w);
  int cross_delta = 0;
  for (int r = r0; r < r0 + h; ++r)
    for (int c = c0; c < c0 + w; ++c) {
      int k = (r - r0) * w + (c - c0), idx = r * n_ + c;
      g_saved_n[k] = ncol_[idx];
      g_saved_e[k] = ecol_[idx];
      ncol_[idx] = ecol_[idx] = kNoColor;
      cross_delta += (blk(r, c) == Tile::Cross) - (tiles_[idx] == Tile::Cross);
      tiles_[idx] = blk(r, c);
    }

  std::array<int, kMaxPermN> changed_color{};
  std::array<int, kMaxPermN> old_row{};
  int nchanged = 0;
  auto retrace = [&](int r, int c, bool from_south, std::uint8_t color) {
    int before = exit_row_[color];
    int row = trace_from(r, c, from_south, color, r0, c0, h, w);
    if (row >= 0 && row != before) {
      changed_color[nchanged] = color;
      old_row[nchanged++] = before;
      exit_row_[color] = row;
    }
  };
  const int rb = r0 + h - 1;
  for (int c = c0; c < c0 + w; ++c)
    if (has(tiles_[rb * n_ + c], edge::S))
      retrace(rb, c, true, rb == n_ - 1 ? static_cast<std::uint8_t>(c) : ncol_[(rb + 1) * n_ + c]);
  if (c0 > 0)
    for (int r = r0; r < r0 + h; ++r)
      if (has(tiles_[r * n_ + c0], edge::W)) retrace(r, c0, false, ecol_[r * n_ + c0 - 1]);

  crosses_ += cross_delta;
  if (nchanged == 0) return;
  std::array<bool, kMaxPermN> is_changed{};
  for (int k = 0; k < nchanged; ++k) is_changed[changed_color[k]] = true;
  auto old_of = [&](int color) {
    for (int k = 0; k < nchanged; ++k)
      if (changed_color[k] == color) return old_row[k];
    return exit_row_[color];
  };
  int delta = 0;
  for (int k = 0; k < nchanged; ++k) {
    const int c = changed_color[k];
    for (int d = 0; d < n_; ++d) {
      if (d == c || (is_changed[d] && d < c)) continue;
      int lo = std::min(c, d), hi = std::max(c, d);
      delta += (exit_row_[lo] > exit_row_[hi]) - (old_of(lo) > old_of(hi));
    }
  }
  inversions_ += delta;
  perm_ = perm_from_exit_rows(exit_row_);
}

std::string Bpd::to_text() const {
  std::string s;
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) s += tile_char(at(r, c));
    s += '\n';
  }
  return s;
}

Bpd parse_bpd(std::string_view text) {
  std::vector<std::string> rows;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      if (!cur.empty()) rows.push_back(cur);
      cur.clear();
    } else if (ch != '\r' && ch != ' ' && ch != '\t') {
      cur += ch;
    }
  }
  if (!cur.empty()) rows.push_back(cur);
  const int n = static_cast<int>(rows.size());
  std::vector<Tile> t;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("BPD text must be square");
    for (char ch : row) t.push_back(tile_from_char(ch));
  }
  return Bpd(n, std::move(t));
}

Perm trace_boundary(const Bpd& b) {
  const int n = b.n();
  std::vector<int> row(n);
  for (int col = 0; col < n; ++col) {
    int r = n - 1, c = col;
    bool from_south = true;
    while (true) {
      Tile t = b.at(r, c);
      bool north;
      if (from_south && (t == Tile::Vertical || t == Tile::Cross)) north = true;
      else if (from_south && t == Tile::RElbow) north = false;
      else if (!from_south && (t == Tile::Horizontal || t == Tile::Cross)) north = false;
      else if (!from_south && t == Tile::JElbow) north = true;
      else throw std::invalid_argument("dangling pipe");
      if (north) {
        if (--r < 0) throw std::invalid_argument("pipe exits north");
      } else if (++c == n) {
        break;
      }
      from_south = north;
    }
    row[col] = r;
  }
  return perm_from_exit_rows(row);
}

bool is_reduced(const Bpd& b) {
  return static_cast<int>(std::count(b.tiles().begin(), b.tiles().end(), Tile::Cross)) ==
         length(trace_boundary(b));
}

Bpd rothe_bpd(const Perm& w) {
  Asm a{w.size(), std::vector<std::int8_t>(w.size() * w.size(), 0)};
  for (int i = 1; i <= w.size(); ++i) a.a[(i - 1) * w.size() + w(i) - 1] = 1;
  return bpd_from_asm(a);
}

HeightGrid height(const Bpd& b) {
  const int n = b.n();
  HeightGrid g{n, std::vector<int>((n + 1) * (n + 1), 0)};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) g.at(i, j) = g.at(i, j - 1) + has(b.at(i - 1, j - 1), edge::S);
  return g;
}

Asm asm_of(const HeightGrid& g) {
  const int n = g.n;
  Asm a{n, std::vector<std::int8_t>(n * n)};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      a.a[(i - 1) * n + j - 1] =
          static_cast<std::int8_t>(g.at(i, j) - g.at(i - 1, j) - g.at(i, j - 1) + g.at(i - 1, j - 1));
  return a;
}

Asm asm_of(const Bpd& b) { return asm_of(height(b)); }

HeightGrid height_of(const Asm& a) {
  const int n = a.n;
  HeightGrid g{n, std::vector<int>((n + 1) * (n + 1), 0)};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) g.at(i, j) = a.at(i, j) + g.at(i - 1, j) + g.at(i, j - 1) - g.at(i - 1, j - 1);
  return g;
}

void validate_asm(const Asm& a) {
  const int n = a.n;
  if (n < 1 || static_cast<int>(a.a.size()) != n * n) throw std::invalid_argument("ASM has wrong size");
  for (int i = 1; i <= n; ++i) {
    int rs = 0, cs = 0;
    for (int j = 1; j <= n; ++j) {
      rs += a.at(i, j);
      cs += a.at(j, i);
      if (a.at(i, j) < -1 || a.at(i, j) > 1) throw std::invalid_argument("ASM entry outside {-1,0,1}");
      if (rs < 0 || rs > 1 || cs < 0 || cs > 1) throw std::invalid_argument("ASM partial sum outside {0,1}");
    }
    if (rs != 1 || cs != 1) throw std::invalid_argument("ASM line sum differs from 1");
  }
}

void validate_height(const HeightGrid& g) {
  const int n = g.n;
  if (n < 1 || static_cast<int>(g.h.size()) != (n + 1) * (n + 1)) throw std::invalid_argument("height grid has wrong size");
  for (int k = 0; k <= n; ++k)
    if (g.at(0, k) != 0 || g.at(k, 0) != 0 || g.at(k, n) != k || g.at(n, k) != k)
      throw std::invalid_argument("height grid violates the domain-wall boundary");
  validate_asm(asm_of(g));
}

Bpd bpd_from_asm(const Asm& a) {
  validate_asm(a);
  const int n = a.n;
  std::vector<Tile> t(n * n);
  std::vector<int> col(n, 0);
  for (int i = 1; i <= n; ++i) {
    int row = 0;
    for (int j = 1; j <= n; ++j) {
      std::uint8_t e = 0;
      if (col[j - 1]) e |= edge::N;
      if (row) e |= edge::W;
      col[j - 1] += a.at(i, j);
      row += a.at(i, j);
      if (col[j - 1]) e |= edge::S;
      if (row) e |= edge::E;
      if (!tile_from_edges(e, t[(i - 1) * n + j - 1])) throw std::logic_error("ASM produced an impossible tile");
    }
  }
  return Bpd(n, std::move(t));
}

Bpd bpd_from_height(const HeightGrid& g) {
  validate_height(g);
  return bpd_from_asm(asm_of(g));
}

bool leq(const HeightGrid& a, const HeightGrid& b) {
  if (a.n != b.n) throw std::invalid_argument("height grids differ in size");
  for (std::size_t k = 0; k < a.h.size(); ++k)
    if (a.h[k] > b.h[k]) return false;
  return true;
}

bool leq(const Bpd& a, const Bpd& b) { return leq(height(a), height(b)); }

namespace {
Bpd combine(const Bpd& a, const Bpd& b, const int& (*pick)(const int&, const int&)) {
  HeightGrid ha = height(a), hb = height(b);
  if (ha.n != hb.n) throw std::invalid_argument("BPDs differ in size");
  for (std::size_t k = 0; k < ha.h.size(); ++k) ha.h[k] = pick(ha.h[k], hb.h[k]);
  return bpd_from_height(ha);
}
}  // namespace

Bpd meet(const Bpd& a, const Bpd& b) { return combine(a, b, &std::min<int>); }
Bpd join(const Bpd& a, const Bpd& b) { return combine(a, b, &std::max<int>); }

namespace {

void enumerate_rec(int n, int k, std::vector<Tile>& t, const std::function<void(const std::vector<Tile>&)>& emit) {
  if (k == n * n) {
    emit(t);
    return;
  }
  const int r = k / n, c = k % n;
  const bool north = r > 0 && has(t[k - n], edge::S);
  const bool west = c > 0 && has(t[k - 1], edge::E);
  for (int kind = 0; kind < kTileKinds; ++kind) {
    Tile x = static_cast<Tile>(kind);
    if (has(x, edge::N) != north || has(x, edge::W) != west) continue;
    if (r == n - 1 && !has(x, edge::S)) continue;
    if (c == n - 1 && !has(x, edge::E)) continue;
    t[k] = x;
    enumerate_rec(n, k + 1, t, emit);
  }
}

}  // namespace

void for_each_bpd_grid(int n, const std::function<void(const std::vector<Tile>&)>& emit) {
  std::vector<Tile> t(n * n);
  enumerate_rec(n, 0, t, emit);
}

std::vector<Bpd> enumerate_asms(int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("enumeration supports 1 <= n <= 7");
  std::vector<Bpd> out;
  for_each_bpd_grid(n, [&](const std::vector<Tile>& t) { out.emplace_back(n, t); });
  return out;
}

std::vector<Bpd> enumerate_rbpds(int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("enumeration supports 1 <= n <= 7");
  std::vector<Bpd> out;
  for_each_bpd_grid(n, [&](const std::vector<Tile>& t) {
    Bpd b(n, t);
    if (b.is_reduced()) out.push_back(std::move(b));
  });
  return out;
}

std::string height_csv(const HeightGrid& g) {
  std::ostringstream os;
  for (int j = 0; j <= g.n; ++j) os << (j ? "," : "") << j;
  os << '\n';
  for (int i = 0; i <= g.n; ++i) {
    for (int j = 0; j <= g.n; ++j) os << (j ? "," : "") << g.at(i, j);
    os << '\n';
  }
  return os.str();
}

std::string asm_csv(const Asm& a) {
  std::ostringstream os;
  for (int j = 1; j <= a.n; ++j) os << (j > 1 ? "," : "") << j;
  os << '\n';
  for (int i = 1; i <= a.n; ++i) {
    for (int j = 1; j <= a.n; ++j) os << (j > 1 ? "," : "") << a.at(i, j);
    os << '\n';
  }
  return os.str();
}

}  // namespace schubert
