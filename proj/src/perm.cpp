#include "schubert/perm.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace schubert {

namespace {

void check_bijection(std::span<const std::uint8_t> e) {
  const int n = static_cast<int>(e.size());
  if (n < 1 || n > kMaxPermN)
    throw std::invalid_argument("permutation size must be in 1.." + std::to_string(kMaxPermN));
  std::vector<bool> seen(n + 1, false);
  for (auto v : e) {
    if (v < 1 || v > n)
      throw std::invalid_argument("permutation entry " + std::to_string(v) + " out of range 1.." +
                                  std::to_string(n));
    if (seen[v]) throw std::invalid_argument("not a bijection: repeated entry " + std::to_string(v));
    seen[v] = true;
  }
}

}  // namespace

Perm::Perm(std::vector<std::uint8_t> entries) : entries_(std::move(entries)) { check_bijection(entries_); }

Perm::Perm(std::initializer_list<int> entries) {
  entries_.reserve(entries.size());
  for (int v : entries) {
    if (v < 1 || v > 255) throw std::invalid_argument("permutation entry out of range");
    entries_.push_back(static_cast<std::uint8_t>(v));
  }
  check_bijection(entries_);
}

Perm Perm::identity(int n) {
  std::vector<std::uint8_t> e(n);
  for (int i = 0; i < n; ++i) e[i] = static_cast<std::uint8_t>(i + 1);
  return Perm(std::move(e));
}

Perm Perm::longest(int n) {
  std::vector<std::uint8_t> e(n);
  for (int i = 0; i < n; ++i) e[i] = static_cast<std::uint8_t>(n - i);
  return Perm(std::move(e));
}

Perm Perm::inverse() const {
  std::vector<std::uint8_t> inv(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) inv[entries_[i] - 1] = static_cast<std::uint8_t>(i + 1);
  return Perm(std::move(inv));
}

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i] != i + 1) return false;
  return true;
}

int length(std::span<const std::uint8_t> w) {
  int inv = 0;
  const int n = static_cast<int>(w.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) inv += w[i] > w[j];
  return inv;
}

int length(const Perm& w) { return length(w.entries()); }

std::vector<int> descents(const Perm& w) {
  std::vector<int> d;
  for (int i = 1; i < w.size(); ++i)
    if (w(i) > w(i + 1)) d.push_back(i);
  return d;
}

int maj(const Perm& w) {
  int s = 0;
  for (int i : descents(w)) s += i;
  return s;
}

Perm apply_transposition(const Perm& w, int a, int b) {
  if (a < 1 || b > w.size() || a >= b)
    throw std::out_of_range("transposition positions must satisfy 1 <= a < b <= n");
  std::vector<std::uint8_t> e(w.entries().begin(), w.entries().end());
  std::swap(e[a - 1], e[b - 1]);
  return Perm(std::move(e));
}

std::vector<std::pair<int, int>> bruhat_covers(const Perm& w) {
  std::vector<std::pair<int, int>> out;
  auto e = w.entries();
  for (int a = 0; a < w.size(); ++a)
    for (int b = a + 1; b < w.size(); ++b)
      if (is_cover_0(e, a, b)) out.emplace_back(a + 1, b + 1);
  return out;
}

int LayeredSpec::n() const {
  int s = 0;
  for (int b : blocks) s += b;
  return s;
}

void LayeredSpec::validate() const {
  if (blocks.empty()) throw std::invalid_argument("layered spec needs at least one block");
  for (int b : blocks)
    if (b < 1) throw std::invalid_argument("layered blocks must be positive");
  if (n() > kMaxPermN) throw std::invalid_argument("layered permutation too large");
}

std::string LayeredSpec::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(blocks[i]);
  }
  return s + ")";
}

Perm layered(const LayeredSpec& spec) {
  spec.validate();
  std::vector<std::uint8_t> e;
  int start = 0;
  for (int b : spec.blocks) {
    for (int k = b; k >= 1; --k) e.push_back(static_cast<std::uint8_t>(start + k));
    start += b;
  }
  return Perm(std::move(e));
}

long layered_length(const LayeredSpec& spec) {
  long s = 0;
  for (long b : spec.blocks) s += b * (b - 1) / 2;
  return s;
}

namespace {

void compositions_rec(int rest, std::vector<int>& cur, std::vector<LayeredSpec>& out) {
  if (rest == 0) {
    out.push_back(LayeredSpec{cur});
    return;
  }
  for (int b = 1; b <= rest; ++b) {
    cur.push_back(b);
    compositions_rec(rest - b, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<LayeredSpec> compositions(int n) {
  std::vector<LayeredSpec> out;
  std::vector<int> cur;
  compositions_rec(n, cur, out);
  return out;
}

std::vector<std::pair<int, int>> rothe_diagram(const Perm& w) {
  Perm inv = w.inverse();
  std::vector<std::pair<int, int>> cells;
  for (int i = 1; i <= w.size(); ++i)
    for (int j = 1; j <= w.size(); ++j)
      if (w(i) > j && inv(j) > i) cells.emplace_back(i, j);
  return cells;
}

Perm strip_trailing_fixed_points(const Perm& w) {
  int m = w.size();
  while (m > 0 && w(m) == m) --m;
  if (m == 0) return Perm::identity(1);
  return Perm(std::vector<std::uint8_t>(w.entries().begin(), w.entries().begin() + m));
}

bool is_dominant(const Perm& w) {
  const int n = w.size();
  int prefix_min = n + 1;
  for (int r = 1; r <= n; ++r) {
    if (prefix_min < w(r))
      for (int s = r + 1; s <= n; ++s)
        if (w(s) > prefix_min && w(s) < w(r)) return false;
    prefix_min = std::min(prefix_min, w(r));
  }
  return true;
}

Perm parse_perm(std::string_view text) {
  std::vector<std::uint8_t> e;
  std::string token;
  auto flush = [&](bool required) {
    if (token.empty()) {
      if (required) throw std::invalid_argument("empty entry in permutation text");
      return;
    }
    int v = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || p != token.data() + token.size())
      throw std::invalid_argument("bad permutation entry '" + token + "'");
    if (v < 1 || v > kMaxPermN) throw std::invalid_argument("permutation entry " + token + " out of range");
    e.push_back(static_cast<std::uint8_t>(v));
    token.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == ',') {
      flush(true);
      continue;
    }
    token.push_back(c);
  }
  flush(!e.empty());
  return Perm(std::move(e));
}

std::string to_string(const Perm& w) {
  std::string s;
  for (int i = 1; i <= w.size(); ++i) {
    if (i > 1) s += ',';
    s += std::to_string(w(i));
  }
  return s;
}

PackedPerm pack(const Perm& w) {
  if (w.size() > kMaxN) throw std::invalid_argument("packing supports n <= 25");
  return {Codec128::pack(w.entries()), w.size()};
}

Perm unpack(const PackedPerm& p) {
  std::vector<std::uint8_t> e(p.width);
  Codec128::unpack(p.code, p.width, e.data());
  return Perm(std::move(e));
}

PackedPerm64 pack_compact(const Perm& w) {
  if (w.size() > Codec64::kMaxN) throw std::invalid_argument("compact packing supports n <= 16");
  return {Codec64::pack(w.entries()), w.size()};
}

Perm unpack(const PackedPerm64& p) {
  std::vector<std::uint8_t> e(p.width);
  Codec64::unpack(p.code, p.width, e.data());
  return Perm(std::move(e));
}

std::string u128_to_string(u128 x) {
  if (x == 0) return "0";
  std::string s;
  while (x) {
    s.push_back(static_cast<char>('0' + static_cast<int>(x % 10)));
    x /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace schubert
