#pragma once

#include <array>
#include <optional>
#include <vector>

#include "schubert/bpd.hpp"

namespace schubert {

enum class FlipDir { Up, Down };

// Window order: top-left, top-right, bottom-left, bottom-right.
using Window = std::array<Tile, 4>;

// A retiling of the 2x2 window around interior vertex (i, j), 1 <= i,j <= n-1.
// The window covers cells (i, j), (i, j+1), (i+1, j), (i+1, j+1) in 1-based
// coordinates. Up raises h(i, j) by one.
struct FlipMove {
  int i = 0;
  int j = 0;
  FlipDir dir = FlipDir::Up;
  char kind = 'a';  // a: no crosses, b: cross created/removed, c: cross moved
  Window before{};
  Window after{};
};

// One unordered pair of the flip table; `low` has the smaller height.
struct FlipPair {
  Window low;
  Window high;
  char kind;
};

// Every pair of edge-compatible 2x2 fillings sharing their outer edges,
// generated by brute force over all 6^4 fillings.
const std::vector<FlipPair>& flip_table();

std::optional<FlipMove> flip_available(const Bpd& b, int i, int j, FlipDir dir);
void apply_flip(Bpd& b, const FlipMove& m);
// Applies, tests, and reverts; b is unchanged on return.
bool flip_preserves_reducedness(Bpd& b, const FlipMove& m);
// Applies the flip iff it exists and keeps b reduced.
bool try_reduced_flip(Bpd& b, int i, int j, FlipDir dir);

// Rows [i1, i2], columns [j1, j2], 1-based, i1 < i2 and j1 < j2.
struct DroopRect {
  int i1 = 0, i2 = 0, j1 = 0, j2 = 0;
  bool undroop = false;
  friend bool operator==(const DroopRect&, const DroopRect&) = default;
};

// Tiles after the droop (or undroop) of r, or nullopt if r does not qualify.
std::optional<std::vector<Tile>> droop_result(const Bpd& b, const DroopRect& r);

std::vector<DroopRect> droopable_rects(const Bpd& b);
std::vector<DroopRect> undroopable_rects(const Bpd& b);
// Throw std::invalid_argument when the rectangle does not qualify.
void apply_droop(Bpd& b, DroopRect r);
void apply_undroop(Bpd& b, DroopRect r);
// Droop if droopable, undroop if undroopable; false if neither.
bool try_rect_move(Bpd& b, int i1, int i2, int j1, int j2);

// No reducedness-preserving up flip, and b is not b_id.
bool is_stuck(Bpd& b);

// The type-(b) up flip on rothe_bpd(w) at the topmost cross of the leftmost
// column containing a cross. w must not be the identity.
FlipMove rothe_reducing_flip(const Perm& w);

struct ConnectivityReport {
  std::size_t states = 0;
  std::size_t components = 0;
  std::size_t edges = 0;
  bool connected() const { return components == 1; }
};

ConnectivityReport flip_connectivity(int n);
ConnectivityReport flip_droop_connectivity(int n);

// Number of w-RBPDs reached from rothe_bpd(w) by droops alone.
std::size_t droop_reachable_count(const Perm& w);

}  // namespace schubert
