#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "schubert/bpd.hpp"
#include "schubert/moves.hpp"
#include "schubert/rng.hpp"
#include "schubert/stats.hpp"

namespace schubert {

// Vertex (i, j) in [1, n-1]^2 and a direction, shared by coupled chains.
struct SharedUpdate {
  int i = 1;
  int j = 1;
  FlipDir dir = FlipDir::Up;
};

SharedUpdate draw_update(Rng& rng, int n);

// Applies the flip iff it exists and keeps b reduced.
void internal_rejection_step(Bpd& b, const SharedUpdate& u);

// All RBPDs of size n with precomputed single-update transitions and the
// lattice order, so coupled chains run on integer state indices.
class RbpdSpace {
public:
  explicit RbpdSpace(int n);

  int n() const { return n_; }
  std::size_t size() const { return states_.size(); }
  const Bpd& state(std::size_t k) const { return states_[k]; }
  std::size_t index_of(const Bpd& b) const;
  std::size_t bottom() const { return bottom_; }  // b_{w0}
  std::size_t top() const { return top_; }        // b_id

  int update_count() const { return 2 * (n_ - 1) * (n_ - 1); }
  int update_code(const SharedUpdate& u) const;
  SharedUpdate update_of(int code) const;

  // Internal rejection: next state index.
  std::size_t next(std::size_t s, int code) const { return next_[s * update_count() + code]; }
  // True when the flip exists but would leave the reduced set.
  bool rejected_nonreduced(std::size_t s, int code) const { return blocked_[s * update_count() + code]; }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * states_.size() + b]; }

private:
  int n_;
  std::vector<Bpd> states_;
  std::map<std::vector<Tile>, std::size_t> index_;
  std::vector<std::uint32_t> next_;
  std::vector<bool> blocked_;
  std::vector<bool> leq_;
  std::size_t bottom_ = 0, top_ = 0;
};

struct MonotonicityCounts {
  std::uint64_t ordered_pairs = 0;  // X <= Y, including X == Y
  std::uint64_t flip_checks = 0;
  std::uint64_t violations = 0;
};

MonotonicityCounts count_monotonicity_violations(const RbpdSpace& space);

// Unordered RBPD pairs whose meet is not reduced.
std::vector<std::pair<std::size_t, std::size_t>> sublattice_failure_pairs(const RbpdSpace& space);

struct CftpRun {
  std::uint64_t T = 0;
  std::vector<int> updates;  // updates[t-1] is the update code at time -t
  bool coalesced = false;
  std::size_t result = 0;  // state index when coalesced
};

enum class CftpScheme { Internal, Coupled };

// Backward coupling of the two extremal chains with time doubling; updates
// already drawn are reused. Stops uncoalesced once T would exceed max_T.
CftpRun naive_cftp(const RbpdSpace& space, Rng& rng, std::uint64_t max_T = std::uint64_t{1} << 24,
                   CftpScheme scheme = CftpScheme::Internal);

struct FalseCoalescence {
  CftpRun run;
  bool false_coalescence = false;
  bool sandwich_broken = false;  // some replayed chain left [bottom, top]
};

// Naive CFTP, then replay the logged updates from every RBPD.
FalseCoalescence false_coalescence_trial(const RbpdSpace& space, Rng& rng,
                                         std::uint64_t max_T = std::uint64_t{1} << 24);

struct BiasReport {
  std::vector<Perm> perms;            // all of S_n, lexicographic
  std::vector<std::uint64_t> observed;
  std::vector<double> expected;       // trials * Υ_w / |RBPD|
  ChiSquare test;
};

// Tests counts of boundary permutations against P(w) = Υ_w / |RBPD(n)|.
BiasReport upsilon_chi_square(int n, const std::map<Perm, std::uint64_t>& counts);

BiasReport bias_chi_square(const RbpdSpace& space, std::uint64_t trials, Rng& rng,
                           CftpScheme scheme = CftpScheme::Internal);

}  // namespace schubert
