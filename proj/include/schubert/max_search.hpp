#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "schubert/perm.hpp"

namespace schubert {

struct LevelMax {
  int length = 0;
  mpz_class value;
  std::vector<Perm> argmax;
};

struct SearchResult {
  int n = 0;
  Perm best_perm;
  mpz_class best_value;
  std::vector<Perm> argmax;  // every permutation attaining best_value
  std::vector<LevelMax> per_level;
  std::string method;
  std::size_t evaluated = 0;
  // Set when a resource cap or budget stopped the search early.
  bool aborted = false;
  std::string abort_reason;
};

struct FullSearchOptions {
  std::size_t frontier_cap = std::size_t{1} << 28;
};

// Exhaustive: an ascending descent frontier and a descending cotransition
// frontier claim levels from opposite ends until they meet.
SearchResult full_search(int n, const FullSearchOptions& opt = {});

// Every permutation within `radius` transpositions of center.
SearchResult neighborhood_search(const Perm& center, int radius, std::optional<std::size_t> budget = {},
                                 int threads = 1);

struct LayeredOptimum {
  LayeredSpec spec;
  mpz_class value;
  std::vector<std::pair<LayeredSpec, mpz_class>> all;  // composition order
};

LayeredOptimum optimal_layered(int n, int threads = 1);

// Block structure of w if it is layered.
std::optional<LayeredSpec> layered_blocks(const Perm& w);

// Permutations at transposition distance <= radius, sorted, center included.
std::vector<Perm> cayley_ball(const Perm& center, int radius);

}  // namespace schubert
