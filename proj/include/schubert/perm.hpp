#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace schubert {

using u128 = unsigned __int128;

// Largest n for packed codes and the evaluators: 5 bits per entry in 128.
inline constexpr int kMaxN = 25;
// Largest n for plain permutations and BPD grids.
inline constexpr int kMaxPermN = 128;

// A permutation of {1..n} in one-line notation, w(i) = entries[i-1].
class Perm {
public:
  Perm() : entries_{1} {}
  explicit Perm(std::vector<std::uint8_t> entries);
  Perm(std::initializer_list<int> entries);

  static Perm identity(int n);
  static Perm longest(int n);

  int size() const { return static_cast<int>(entries_.size()); }

  // 1-based: w(i).
  int operator()(int i) const { return entries_[i - 1]; }

  std::span<const std::uint8_t> entries() const { return entries_; }

  Perm inverse() const;
  bool is_identity() const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

private:
  std::vector<std::uint8_t> entries_;
};

// Number of inversions.
int length(const Perm& w);
int length(std::span<const std::uint8_t> w);

// Descent positions i (1-based) with w(i) > w(i+1).
std::vector<int> descents(const Perm& w);
int maj(const Perm& w);

// w * (a,b): swap the entries at positions a < b (1-based).
Perm apply_transposition(const Perm& w, int a, int b);

// True iff w * (a,b) covers w in Bruhat order. Positions are 0-based here
// because the check runs in the hot loops of the evaluators.
inline bool is_cover_0(std::span<const std::uint8_t> w, int a, int b) {
  int lo = w[a], hi = w[b];
  if (lo > hi) return false;
  for (int k = a + 1; k < b; ++k)
    if (w[k] > lo && w[k] < hi) return false;
  return true;
}

// All (a,b), 1-based, with w * (a,b) covering w.
std::vector<std::pair<int, int>> bruhat_covers(const Perm& w);

// Block structure (b_1, ..., b_k) of a layered permutation.
struct LayeredSpec {
  std::vector<int> blocks;

  int n() const;
  void validate() const;
  std::string to_string() const;
  friend bool operator==(const LayeredSpec&, const LayeredSpec&) = default;
};

Perm layered(const LayeredSpec& spec);
long layered_length(const LayeredSpec& spec);

// Compositions of n in lexicographic order of the block vectors.
std::vector<LayeredSpec> compositions(int n);

// Cells (i,j), 1-based, with w(i) > j and w^{-1}(j) > i.
std::vector<std::pair<int, int>> rothe_diagram(const Perm& w);

// Drops the suffix of fixed points; the identity collapses to the 1-element
// identity.
Perm strip_trailing_fixed_points(const Perm& w);

// No index acts as the "3" of a 132 pattern.
bool is_dominant(const Perm& w);

// Comma-separated one-line notation, whitespace ignored.
Perm parse_perm(std::string_view text);
std::string to_string(const Perm& w);

// Fixed-width codes: position i (0-based) occupies bits [B*i, B*(i+1)) and
// stores w(i+1) - 1. Unused high bits are zero, so equal permutations of equal
// size have equal codes.
template <class Code, int Bits>
struct PackedCodec {
  static constexpr int kBits = Bits;
  static constexpr int kMaxN = static_cast<int>(sizeof(Code) * 8 / Bits);
  static constexpr Code kMask = (Code{1} << Bits) - 1;

  static Code pack(std::span<const std::uint8_t> w) {
    Code c = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      c |= static_cast<Code>(w[i] - 1) << (Bits * i);
    return c;
  }

  static void unpack(Code c, int n, std::uint8_t* out) {
    for (int i = 0; i < n; ++i)
      out[i] = static_cast<std::uint8_t>(((c >> (Bits * i)) & kMask) + 1);
  }

  static int get(Code c, int pos) {
    return static_cast<int>((c >> (Bits * pos)) & kMask) + 1;
  }

  // Swap the entries at 0-based positions a and b.
  static Code swap(Code c, int a, int b) {
    Code x = ((c >> (Bits * a)) ^ (c >> (Bits * b))) & kMask;
    return c ^ ((x << (Bits * a)) | (x << (Bits * b)));
  }
};

using Codec128 = PackedCodec<u128, 5>;
using Codec64 = PackedCodec<std::uint64_t, 4>;

struct PackedPerm {
  u128 code = 0;
  int width = 0;
  friend bool operator==(const PackedPerm&, const PackedPerm&) = default;
};

struct PackedPerm64 {
  std::uint64_t code = 0;
  int width = 0;
  friend bool operator==(const PackedPerm64&, const PackedPerm64&) = default;
};

PackedPerm pack(const Perm& w);
Perm unpack(const PackedPerm& p);
PackedPerm64 pack_compact(const Perm& w);  // n <= 16
Perm unpack(const PackedPerm64& p);

struct U128Hash {
  std::size_t operator()(u128 x) const noexcept {
    std::uint64_t lo = static_cast<std::uint64_t>(x);
    std::uint64_t hi = static_cast<std::uint64_t>(x >> 64);
    std::uint64_t h = lo * 0x9E3779B97F4A7C15ull ^ (hi + 0x7F4A7C159E3779B9ull + (lo << 6));
    h ^= h >> 31;
    h *= 0xBF58476D1CE4E5B9ull;
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
  }
};

std::string u128_to_string(u128 x);

}  // namespace schubert
