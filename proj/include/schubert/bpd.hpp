#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "schubert/perm.hpp"

namespace schubert {

// Order matters: enumeration is lexicographic in this order.
enum class Tile : std::uint8_t { Empty, Cross, Horizontal, Vertical, RElbow, JElbow };
inline constexpr int kTileKinds = 6;

namespace edge {
inline constexpr std::uint8_t N = 1, E = 2, S = 4, W = 8;
}

constexpr std::uint8_t edges_of(Tile t) {
  switch (t) {
    case Tile::Empty: return 0;
    case Tile::Cross: return edge::N | edge::E | edge::S | edge::W;
    case Tile::Horizontal: return edge::E | edge::W;
    case Tile::Vertical: return edge::N | edge::S;
    case Tile::RElbow: return edge::S | edge::E;
    case Tile::JElbow: return edge::N | edge::W;
  }
  return 0;
}

// Tile with exactly this occupied-edge set; false if none exists.
bool tile_from_edges(std::uint8_t edges, Tile& out);

char tile_char(Tile t);
Tile tile_from_char(char c);

inline bool is_elbow(Tile t) { return t == Tile::RElbow || t == Tile::JElbow; }

// (n+1) x (n+1) heights, vertex (i,j) with 0 <= i,j <= n from the NW corner.
struct HeightGrid {
  int n = 0;
  std::vector<int> h;

  int at(int i, int j) const { return h[i * (n + 1) + j]; }
  int& at(int i, int j) { return h[i * (n + 1) + j]; }
  friend bool operator==(const HeightGrid&, const HeightGrid&) = default;
};

// n x n entries in {-1,0,1}; (i,j) 1-based through at().
struct Asm {
  int n = 0;
  std::vector<std::int8_t> a;

  int at(int i, int j) const { return a[(i - 1) * n + (j - 1)]; }
  friend bool operator==(const Asm&, const Asm&) = default;
};

// Bumpless pipe dream on an n x n grid. Cells are 0-based (row, col) from
// the NW corner inside the class; the color of a pipe is its south entry
// column (0-based). boundary_perm()(i) is the entry column of the pipe that
// exits east in row i.
class Bpd {
public:
  static constexpr std::uint8_t kNoColor = 0xFF;

  Bpd() = default;
  // Throws std::invalid_argument unless tiles form a valid BPD.
  Bpd(int n, std::vector<Tile> tiles);

  int n() const { return n_; }
  Tile at(int r, int c) const { return tiles_[r * n_ + c]; }
  const std::vector<Tile>& tiles() const { return tiles_; }

  const Perm& boundary_perm() const { return perm_; }
  int cross_count() const { return crosses_; }
  int inversion_count() const { return inversions_; }
  bool is_reduced() const { return crosses_ == inversions_; }

  // Color on the north / east edge of a cell, kNoColor when unoccupied.
  std::uint8_t north_color(int r, int c) const { return ncol_[r * n_ + c]; }
  std::uint8_t east_color(int r, int c) const { return ecol_[r * n_ + c]; }
  int exit_row(int color) const { return exit_row_[color]; }

  // Replace the h x w block at (r0, c0). The block's outer edge occupancy
  // must be unchanged; pipes through the block are recolored and the
  // boundary permutation, cross and inversion counts update incrementally.
  // Throws std::invalid_argument (leaving the Bpd untouched) otherwise.
  void replace_block(int r0, int c0, int h, int w, const Tile* block);

  std::string to_text() const;

  friend bool operator==(const Bpd& a, const Bpd& b) { return a.n_ == b.n_ && a.tiles_ == b.tiles_; }
  friend bool operator<(const Bpd& a, const Bpd& b) { return a.tiles_ < b.tiles_; }

private:
  void trace_all();
  // Follows a pipe of `color` entering (r, c) from the south (from_south) or
  // west, writing colors. Outside [r0,r0+h) x [c0,c0+w) it stops as soon as
  // it meets an edge already carrying `color`; returns the exit row or -1.
  int trace_from(int r, int c, bool from_south, std::uint8_t color, int r0, int c0, int h, int w);
  void recount_inversions();

  int n_ = 0;
  std::vector<Tile> tiles_;
  std::vector<std::uint8_t> ncol_, ecol_;
  std::vector<int> exit_row_;
  Perm perm_;
  int crosses_ = 0;
  int inversions_ = 0;
};

Bpd parse_bpd(std::string_view text);

// Boundary permutation by tracing every pipe from scratch (no caches).
Perm trace_boundary(const Bpd& b);
bool is_reduced(const Bpd& b);

Bpd rothe_bpd(const Perm& w);

HeightGrid height(const Bpd& b);
Asm asm_of(const Bpd& b);
Asm asm_of(const HeightGrid& h);
HeightGrid height_of(const Asm& a);
void validate_height(const HeightGrid& h);  // throws std::invalid_argument
void validate_asm(const Asm& a);            // throws std::invalid_argument
Bpd bpd_from_asm(const Asm& a);
Bpd bpd_from_height(const HeightGrid& h);

bool leq(const Bpd& a, const Bpd& b);
Bpd meet(const Bpd& a, const Bpd& b);
Bpd join(const Bpd& a, const Bpd& b);
bool leq(const HeightGrid& a, const HeightGrid& b);

// All valid BPDs (equivalently ASMs), row-major lexicographic in tile order.
void for_each_bpd_grid(int n, const std::function<void(const std::vector<Tile>&)>& emit);
std::vector<Bpd> enumerate_asms(int n);
std::vector<Bpd> enumerate_rbpds(int n);

// CSV with a header row of column indices.
std::string height_csv(const HeightGrid& h);
std::string asm_csv(const Asm& a);

}  // namespace schubert
