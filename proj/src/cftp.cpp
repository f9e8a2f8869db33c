#include "schubert/cftp.hpp"

#include <algorithm>
#include <stdexcept>

#include "schubert/upsilon.hpp"

namespace schubert {

SharedUpdate draw_update(Rng& rng, int n) {
  SharedUpdate u;
  u.i = 1 + static_cast<int>(rng.below(n - 1));
  u.j = 1 + static_cast<int>(rng.below(n - 1));
  u.dir = rng.below(2) ? FlipDir::Up : FlipDir::Down;
  return u;
}

void internal_rejection_step(Bpd& b, const SharedUpdate& u) { try_reduced_flip(b, u.i, u.j, u.dir); }

RbpdSpace::RbpdSpace(int n) : n_(n) {
  if (n < 2 || n > 6) throw std::invalid_argument("RBPD state spaces support 2 <= n <= 6");
  states_ = enumerate_rbpds(n);
  for (std::size_t k = 0; k < states_.size(); ++k) index_.emplace(states_[k].tiles(), k);
  bottom_ = index_of(rothe_bpd(Perm::longest(n)));
  top_ = index_of(rothe_bpd(Perm::identity(n)));
  const int K = update_count();
  next_.resize(states_.size() * K);
  blocked_.assign(states_.size() * K, false);
  for (std::size_t s = 0; s < states_.size(); ++s)
    for (int code = 0; code < K; ++code) {
      SharedUpdate u = update_of(code);
      Bpd b = states_[s];
      std::size_t to = s;
      if (auto m = flip_available(b, u.i, u.j, u.dir)) {
        apply_flip(b, *m);
        if (b.is_reduced()) to = index_of(b);
        else blocked_[s * K + code] = true;
      }
      next_[s * K + code] = static_cast<std::uint32_t>(to);
    }
  std::vector<HeightGrid> h;
  for (const auto& b : states_) h.push_back(height(b));
  leq_.assign(states_.size() * states_.size(), false);
  for (std::size_t a = 0; a < states_.size(); ++a)
    for (std::size_t b = 0; b < states_.size(); ++b) leq_[a * states_.size() + b] = schubert::leq(h[a], h[b]);
}

std::size_t RbpdSpace::index_of(const Bpd& b) const {
  auto it = index_.find(b.tiles());
  if (it == index_.end()) throw std::invalid_argument("not a reduced BPD of this size");
  return it->second;
}

int RbpdSpace::update_code(const SharedUpdate& u) const {
  return (((u.i - 1) * (n_ - 1) + (u.j - 1)) << 1) | (u.dir == FlipDir::Down);
}

SharedUpdate RbpdSpace::update_of(int code) const {
  SharedUpdate u;
  u.dir = (code & 1) ? FlipDir::Down : FlipDir::Up;
  code >>= 1;
  u.i = code / (n_ - 1) + 1;
  u.j = code % (n_ - 1) + 1;
  return u;
}

MonotonicityCounts count_monotonicity_violations(const RbpdSpace& sp) {
  MonotonicityCounts c;
  const int K = sp.update_count();
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y) {
      if (!sp.leq(x, y)) continue;
      ++c.ordered_pairs;
      for (int code = 0; code < K; ++code) {
        ++c.flip_checks;
        if (!sp.leq(sp.next(x, code), sp.next(y, code))) ++c.violations;
      }
    }
  return c;
}

std::vector<std::pair<std::size_t, std::size_t>> sublattice_failure_pairs(const RbpdSpace& sp) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < sp.size(); ++a)
    for (std::size_t b = a + 1; b < sp.size(); ++b)
      if (!meet(sp.state(a), sp.state(b)).is_reduced()) out.emplace_back(a, b);
  return out;
}

namespace {

// Extremal chains from time -T to 0 under the logged updates.
std::pair<std::size_t, std::size_t> run_extremes(const RbpdSpace& sp, const std::vector<int>& log, std::uint64_t T,
                                                 CftpScheme scheme) {
  std::size_t lo = sp.bottom(), hi = sp.top();
  for (std::uint64_t t = T; t >= 1; --t) {
    const int code = log[t - 1];
    if (scheme == CftpScheme::Coupled && (sp.rejected_nonreduced(lo, code) || sp.rejected_nonreduced(hi, code)))
      continue;
    lo = sp.next(lo, code);
    hi = sp.next(hi, code);
  }
  return {lo, hi};
}

}  // namespace

CftpRun naive_cftp(const RbpdSpace& sp, Rng& rng, std::uint64_t max_T, CftpScheme scheme) {
  CftpRun run;
  run.T = 1;
  run.updates.push_back(sp.update_code(draw_update(rng, sp.n())));
  while (true) {
    auto [lo, hi] = run_extremes(sp, run.updates, run.T, scheme);
    if (lo == hi) {
      run.coalesced = true;
      run.result = lo;
      return run;
    }
    if (run.T * 2 > max_T) return run;
    for (std::uint64_t t = run.T; t < 2 * run.T; ++t) run.updates.push_back(sp.update_code(draw_update(rng, sp.n())));
    run.T *= 2;
  }
}

FalseCoalescence false_coalescence_trial(const RbpdSpace& sp, Rng& rng, std::uint64_t max_T) {
  FalseCoalescence fc;
  fc.run = naive_cftp(sp, rng, max_T);
  if (!fc.run.coalesced) throw std::runtime_error("CFTP did not coalesce within the horizon cap");
  std::vector<std::size_t> cur(sp.size());
  for (std::size_t s = 0; s < sp.size(); ++s) cur[s] = s;
  std::size_t lo = sp.bottom(), hi = sp.top();
  for (std::uint64_t t = fc.run.T; t >= 1; --t) {
    const int code = fc.run.updates[t - 1];
    lo = sp.next(lo, code);
    hi = sp.next(hi, code);
    for (auto& s : cur) {
      s = sp.next(s, code);
      if (!fc.sandwich_broken && !(sp.leq(lo, s) && sp.leq(s, hi))) fc.sandwich_broken = true;
    }
  }
  for (auto s : cur)
    if (s != fc.run.result) fc.false_coalescence = true;
  if (fc.false_coalescence && !fc.sandwich_broken)
    throw std::logic_error("false coalescence without any chain leaving the sandwich");
  return fc;
}

BiasReport upsilon_chi_square(int n, const std::map<Perm, std::uint64_t>& counts) {
  BiasReport r;
  std::vector<std::uint8_t> e(n);
  for (int i = 0; i < n; ++i) e[i] = static_cast<std::uint8_t>(i + 1);
  std::uint64_t total = 0;
  for (auto& [w, c] : counts) total += c;
  mpz_class sum = 0;
  std::vector<double> ups;
  do {
    Perm w(e);
    mpz_class u = upsilon_exact(w);
    sum += u;
    ups.push_back(u.get_d());
    r.perms.push_back(w);
    auto it = counts.find(w);
    r.observed.push_back(it == counts.end() ? 0 : it->second);
  } while (std::next_permutation(e.begin(), e.end()));
  for (double u : ups) r.expected.push_back(total * u / sum.get_d());
  r.test = chi_square_test(r.observed, ups);
  return r;
}

BiasReport bias_chi_square(const RbpdSpace& sp, std::uint64_t trials, Rng& rng, CftpScheme scheme) {
  std::map<Perm, std::uint64_t> counts;
  for (std::uint64_t t = 0; t < trials; ++t) {
    CftpRun run = naive_cftp(sp, rng, std::uint64_t{1} << 24, scheme);
    if (!run.coalesced) throw std::runtime_error("CFTP did not coalesce within the horizon cap");
    ++counts[sp.state(run.result).boundary_perm()];
  }
  return upsilon_chi_square(sp.n(), counts);
}

}  // namespace schubert
