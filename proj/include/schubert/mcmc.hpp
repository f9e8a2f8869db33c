#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schubert/bpd.hpp"
#include "schubert/moves.hpp"
#include "schubert/rng.hpp"

namespace schubert {

enum class RectDist { Geometric, Uniform, LogUniform, ReverseLogUniform };

const char* to_string(RectDist d);
RectDist parse_rect_dist(const std::string& s);

struct ProposalConfig {
  double flip_probability = 0.75;
  RectDist rect_dist = RectDist::Geometric;
};

// Normalized weight of offset k in 1..dmax.
double offset_probability(RectDist d, int dmax, int k);
int sample_offset(Rng& rng, RectDist d, int dmax);

struct Move {
  bool is_flip = true;
  int i = 0, j = 0;  // flip vertex
  FlipDir dir = FlipDir::Up;
  int i1 = 0, i2 = 0, j1 = 0, j2 = 0;  // rectangle
};

Move propose(Rng& rng, const ProposalConfig& cfg, int n);

// Applies m if legal; returns whether the state changed.
bool apply_move(Bpd& b, const Move& m);

// One chain step; rejected proposals hold the state.
bool step(Bpd& b, Rng& rng, const ProposalConfig& cfg);

enum class StartState { RotheW0, RotheId, Given };

struct ChainConfig {
  int n = 4;
  std::uint64_t seed = 1;
  std::uint64_t chain_index = 0;
  StartState start = StartState::RotheW0;
  std::optional<Bpd> given;
  std::uint64_t burn_in_steps = 10'000'000;
  std::uint64_t thinning = 100'000;
  std::uint64_t sample_count = 0;
  ProposalConfig proposal;
  bool keep_archive = false;
  bool keep_heights = false;  // per-sample height grids, for fluctuations
};

struct SampleStats {
  int n = 0;
  std::uint64_t B = 0;
  std::vector<std::uint64_t> perm_matrix_sum;  // n*n, row-major, (i, w(i))
  std::vector<std::uint64_t> height_sum;       // (n+1)^2
  std::vector<int> length_trace;
  std::vector<Perm> archive;
  std::vector<HeightGrid> heights;
  std::uint64_t steps = 0;
  std::uint64_t accepted = 0;

  explicit SampleStats(int n_ = 0);
  void add(const Bpd& b, bool archive_perm, bool keep_height);
  // Appends other's traces after this one's; sums are order independent.
  void merge(const SampleStats& other);
};

Bpd start_state(const ChainConfig& cfg);
SampleStats run_chain(const ChainConfig& cfg);

double lag1_autocorrelation(const std::vector<double>& trace);
double lag1_autocorrelation(const std::vector<int>& trace);

// Geweke z-score comparing the means of the first `first` and last `last`
// fractions of the trace (naive variances).
double geweke_z(const std::vector<int>& trace, double first = 0.1, double last = 0.5);

// Real-valued (n+1)x(n+1) grid stored row-major.
struct RealGrid {
  int rows = 0, cols = 0;
  std::vector<double> v;
  double at(int i, int j) const { return v[i * cols + j]; }
};

RealGrid mean_height(const SampleStats& s);
RealGrid mean_perm_matrix(const SampleStats& s);
// n x n grid h(i,j) - h(i-1,j) - h(i,j-1) + h(i-1,j-1).
RealGrid mixed_difference(const RealGrid& h);
RealGrid fluctuation(const HeightGrid& h, const RealGrid& mean);
RealGrid to_real(const HeightGrid& h);

std::string grid_csv(const RealGrid& g, bool integers = false);

}  // namespace schubert
