#include "schubert/mcmc.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace schubert {

const char* to_string(RectDist d) {
  switch (d) {
    case RectDist::Geometric: return "geometric";
    case RectDist::Uniform: return "uniform";
    case RectDist::LogUniform: return "log-uniform";
    case RectDist::ReverseLogUniform: return "reverse-log-uniform";
  }
  return "?";
}

RectDist parse_rect_dist(const std::string& s) {
  if (s == "geometric") return RectDist::Geometric;
  if (s == "uniform") return RectDist::Uniform;
  if (s == "log-uniform") return RectDist::LogUniform;
  if (s == "reverse-log-uniform") return RectDist::ReverseLogUniform;
  throw std::invalid_argument("unknown rectangle distribution '" + s + "'");
}

namespace {

double weight(RectDist d, int dmax, int k) {
  switch (d) {
    case RectDist::Geometric: return std::ldexp(1.0, -k);
    case RectDist::Uniform: return 1.0;
    case RectDist::LogUniform: return 1.0 / k;
    case RectDist::ReverseLogUniform: return 1.0 / (dmax + 1 - k);
  }
  return 0;
}

// Cumulative tables for every family and dmax up to the largest grid.
struct OffsetTables {
  std::array<std::array<std::vector<double>, kMaxPermN + 1>, 4> cdf;
  OffsetTables() {
    for (int d = 0; d < 4; ++d)
      for (int dmax = 1; dmax <= kMaxPermN; ++dmax) {
        auto& c = cdf[d][dmax];
        double total = 0;
        for (int k = 1; k <= dmax; ++k) total += weight(static_cast<RectDist>(d), dmax, k);
        double acc = 0;
        for (int k = 1; k <= dmax; ++k) {
          acc += weight(static_cast<RectDist>(d), dmax, k) / total;
          c.push_back(acc);
        }
        c.back() = 1.0;
      }
  }
};

const OffsetTables& offset_tables() {
  static const OffsetTables t;
  return t;
}

}  // namespace

double offset_probability(RectDist d, int dmax, int k) {
  if (dmax < 1 || k < 1 || k > dmax) throw std::out_of_range("offset outside 1..dmax");
  double total = 0;
  for (int m = 1; m <= dmax; ++m) total += weight(d, dmax, m);
  return weight(d, dmax, k) / total;
}

int sample_offset(Rng& rng, RectDist d, int dmax) {
  if (dmax < 1 || dmax > kMaxPermN) throw std::out_of_range("dmax out of range");
  const auto& c = offset_tables().cdf[static_cast<int>(d)][dmax];
  const double u = rng.uniform();
  int k = 0;
  while (c[k] <= u) ++k;
  return k + 1;
}

Move propose(Rng& rng, const ProposalConfig& cfg, int n) {
  if (n < 2) throw std::invalid_argument("proposals need n >= 2");
  Move m;
  if (rng.bernoulli(cfg.flip_probability)) {
    m.is_flip = true;
    m.i = 1 + static_cast<int>(rng.below(n - 1));
    m.j = 1 + static_cast<int>(rng.below(n - 1));
    m.dir = rng.below(2) ? FlipDir::Up : FlipDir::Down;
  } else {
    m.is_flip = false;
    m.i2 = 2 + static_cast<int>(rng.below(n - 1));
    m.j2 = 2 + static_cast<int>(rng.below(n - 1));
    m.i1 = m.i2 - sample_offset(rng, cfg.rect_dist, m.i2 - 1);
    m.j1 = m.j2 - sample_offset(rng, cfg.rect_dist, m.j2 - 1);
  }
  return m;
}

bool apply_move(Bpd& b, const Move& m) {
  if (m.is_flip) return try_reduced_flip(b, m.i, m.j, m.dir);
  return try_rect_move(b, m.i1, m.i2, m.j1, m.j2);
}

bool step(Bpd& b, Rng& rng, const ProposalConfig& cfg) { return apply_move(b, propose(rng, cfg, b.n())); }

SampleStats::SampleStats(int n_)
    : n(n_), perm_matrix_sum(static_cast<std::size_t>(n_) * n_, 0), height_sum(static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0) {}

void SampleStats::add(const Bpd& b, bool archive_perm, bool keep_height) {
  const Perm& w = b.boundary_perm();
  ++B;
  for (int i = 1; i <= n; ++i) ++perm_matrix_sum[(i - 1) * n + w(i) - 1];
  HeightGrid h = height(b);
  for (std::size_t k = 0; k < h.h.size(); ++k) height_sum[k] += h.h[k];
  length_trace.push_back(b.inversion_count());
  if (archive_perm) archive.push_back(w);
  if (keep_height) heights.push_back(std::move(h));
}

void SampleStats::merge(const SampleStats& o) {
  if (o.n != n) throw std::invalid_argument("merging stats of different sizes");
  B += o.B;
  for (std::size_t k = 0; k < perm_matrix_sum.size(); ++k) perm_matrix_sum[k] += o.perm_matrix_sum[k];
  for (std::size_t k = 0; k < height_sum.size(); ++k) height_sum[k] += o.height_sum[k];
  length_trace.insert(length_trace.end(), o.length_trace.begin(), o.length_trace.end());
  archive.insert(archive.end(), o.archive.begin(), o.archive.end());
  heights.insert(heights.end(), o.heights.begin(), o.heights.end());
  steps += o.steps;
  accepted += o.accepted;
}

Bpd start_state(const ChainConfig& cfg) {
  switch (cfg.start) {
    case StartState::RotheW0: return rothe_bpd(Perm::longest(cfg.n));
    case StartState::RotheId: return rothe_bpd(Perm::identity(cfg.n));
    case StartState::Given:
      if (!cfg.given) throw std::invalid_argument("start=given needs a BPD");
      if (cfg.given->n() != cfg.n || !cfg.given->is_reduced()) throw std::invalid_argument("given start must be a reduced BPD of size n");
      return *cfg.given;
  }
  throw std::invalid_argument("bad start state");
}

SampleStats run_chain(const ChainConfig& cfg) {
  if (cfg.thinning < 1) throw std::invalid_argument("thinning must be >= 1");
  if (cfg.n < 2 || cfg.n > kMaxPermN) throw std::invalid_argument("chain size out of range");
  Rng rng(cfg.seed, cfg.chain_index);
  Bpd b = start_state(cfg);
  SampleStats s(cfg.n);
  constexpr std::uint64_t kCheckEvery = 10'000;
  auto advance = [&](std::uint64_t steps) {
    for (std::uint64_t t = 0; t < steps; ++t) {
      s.accepted += step(b, rng, cfg.proposal);
      if (++s.steps % kCheckEvery == 0 && !b.is_reduced()) throw std::logic_error("chain left the reduced set");
    }
  };
  advance(cfg.burn_in_steps);
  for (std::uint64_t k = 0; k < cfg.sample_count; ++k) {
    advance(cfg.thinning);
    s.add(b, cfg.keep_archive, cfg.keep_heights);
  }
  return s;
}

double lag1_autocorrelation(const std::vector<double>& x) {
  if (x.size() < 3) throw std::invalid_argument("autocorrelation needs at least 3 values");
  const std::size_t m = x.size() - 1;
  double ma = 0, mb = 0;
  for (std::size_t t = 0; t < m; ++t) {
    ma += x[t];
    mb += x[t + 1];
  }
  ma /= m;
  mb /= m;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t t = 0; t < m; ++t) {
    cov += (x[t] - ma) * (x[t + 1] - mb);
    va += (x[t] - ma) * (x[t] - ma);
    vb += (x[t + 1] - mb) * (x[t + 1] - mb);
  }
  if (va == 0 || vb == 0) throw std::domain_error("autocorrelation of a constant trace is undefined");
  return cov / std::sqrt(va * vb);
}

double lag1_autocorrelation(const std::vector<int>& trace) {
  return lag1_autocorrelation(std::vector<double>(trace.begin(), trace.end()));
}

double geweke_z(const std::vector<int>& trace, double first, double last) {
  const std::size_t m = trace.size();
  const std::size_t na = static_cast<std::size_t>(first * m), nb = static_cast<std::size_t>(last * m);
  if (na < 2 || nb < 2) throw std::invalid_argument("trace too short for Geweke diagnostic");
  auto moments = [&](std::size_t from, std::size_t count) {
    double mean = 0, var = 0;
    for (std::size_t t = from; t < from + count; ++t) mean += trace[t];
    mean /= count;
    for (std::size_t t = from; t < from + count; ++t) var += (trace[t] - mean) * (trace[t] - mean);
    return std::pair{mean, var / (count - 1)};
  };
  auto [ma, va] = moments(0, na);
  auto [mb, vb] = moments(m - nb, nb);
  const double se = std::sqrt(va / na + vb / nb);
  if (se == 0) return ma == mb ? 0.0 : INFINITY;
  return (ma - mb) / se;
}

RealGrid mean_height(const SampleStats& s) {
  if (s.B == 0) throw std::domain_error("no samples");
  RealGrid g{s.n + 1, s.n + 1, {}};
  for (auto v : s.height_sum) g.v.push_back(static_cast<double>(v) / s.B);
  return g;
}

RealGrid mean_perm_matrix(const SampleStats& s) {
  if (s.B == 0) throw std::domain_error("no samples");
  RealGrid g{s.n, s.n, {}};
  for (auto v : s.perm_matrix_sum) g.v.push_back(static_cast<double>(v) / s.B);
  return g;
}

RealGrid mixed_difference(const RealGrid& h) {
  if (h.rows < 2 || h.cols < 2) throw std::invalid_argument("grid too small for differences");
  RealGrid d{h.rows - 1, h.cols - 1, {}};
  for (int i = 1; i < h.rows; ++i)
    for (int j = 1; j < h.cols; ++j) d.v.push_back(h.at(i, j) - h.at(i - 1, j) - h.at(i, j - 1) + h.at(i - 1, j - 1));
  return d;
}

RealGrid to_real(const HeightGrid& h) {
  RealGrid g{h.n + 1, h.n + 1, {}};
  for (int v : h.h) g.v.push_back(v);
  return g;
}

RealGrid fluctuation(const HeightGrid& h, const RealGrid& mean) {
  if (mean.rows != h.n + 1 || mean.cols != h.n + 1) throw std::invalid_argument("dimension mismatch");
  RealGrid g = to_real(h);
  for (std::size_t k = 0; k < g.v.size(); ++k) g.v[k] -= mean.v[k];
  return g;
}

std::string grid_csv(const RealGrid& g, bool integers) {
  std::ostringstream os;
  for (int j = 0; j < g.cols; ++j) os << (j ? "," : "") << j;
  os << '\n';
  char buf[64];
  for (int i = 0; i < g.rows; ++i) {
    for (int j = 0; j < g.cols; ++j) {
      if (integers) std::snprintf(buf, sizeof buf, "%.0f", g.at(i, j));
      else std::snprintf(buf, sizeof buf, "%.17g", g.at(i, j));
      os << (j ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace schubert
