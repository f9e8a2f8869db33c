#include <doctest.h>

#include <cmath>

#include "schubert/cftp.hpp"
#include "schubert/stats.hpp"
#include "test_util.hpp"

using namespace schubert;
using test::grid;

TEST_CASE("shared updates") {
  Bpd id = rothe_bpd(Perm::identity(4));
  internal_rejection_step(id, SharedUpdate{2, 2, FlipDir::Up});
  CHECK(id == rothe_bpd(Perm::identity(4)));
  Rng rng(4);
  for (int t = 0; t < 1000; ++t) {
    SharedUpdate u = draw_update(rng, 5);
    CHECK((u.i >= 1 && u.i <= 4 && u.j >= 1 && u.j <= 4));
  }
}

TEST_CASE("state space transitions agree with direct flips") {
  RbpdSpace sp(4);
  CHECK(sp.size() == 41);
  CHECK(sp.state(sp.bottom()) == rothe_bpd(Perm::longest(4)));
  CHECK(sp.state(sp.top()) == rothe_bpd(Perm::identity(4)));
  CHECK(sp.update_count() == 18);
  for (int code = 0; code < sp.update_count(); ++code) CHECK(sp.update_code(sp.update_of(code)) == code);
  for (std::size_t s = 0; s < sp.size(); ++s)
    for (int code = 0; code < sp.update_count(); ++code) {
      Bpd b = sp.state(s);
      SharedUpdate u = sp.update_of(code);
      internal_rejection_step(b, u);
      CHECK(sp.index_of(b) == sp.next(s, code));
      auto m = flip_available(sp.state(s), u.i, u.j, u.dir);
      Bpd probe = sp.state(s);
      bool blocked = m && !flip_preserves_reducedness(probe, *m);
      CHECK(sp.rejected_nonreduced(s, code) == blocked);
    }
  CHECK_THROWS(RbpdSpace(7));
}

TEST_CASE("monotonicity counts for small n") {
  MonotonicityCounts c3 = count_monotonicity_violations(RbpdSpace(3));
  CHECK(c3.ordered_pairs == 26);
  CHECK(c3.flip_checks == 208);
  CHECK(c3.violations == 0);
  MonotonicityCounts c4 = count_monotonicity_violations(RbpdSpace(4));
  CHECK(c4.ordered_pairs == 618);
  CHECK(c4.flip_checks == 11124);
  CHECK(c4.violations == 16);
}

TEST_CASE("sublattice failures") {
  CHECK(sublattice_failure_pairs(RbpdSpace(3)).empty());
  RbpdSpace sp(4);
  auto pairs = sublattice_failure_pairs(sp);
  CHECK(pairs.size() == 9);
  std::size_t a = sp.index_of(grid("..r-/r-+-/|rjr/||r+")), b = sp.index_of(grid(".r--/.|r-/r+jr/||r+"));
  bool found = false;
  for (auto [x, y] : pairs) {
    found |= (x == std::min(a, b) && y == std::max(a, b));
    CHECK(meet(sp.state(x), sp.state(y)) == grid("..r-/.r+-/r+jr/||r+"));
  }
  CHECK(found);
}

TEST_CASE("naive cftp protocol") {
  RbpdSpace sp(4);
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    CftpRun run = naive_cftp(sp, rng);
    REQUIRE(run.coalesced);
    CHECK(sp.state(run.result).is_reduced());
    CHECK(run.updates.size() == run.T);
    CHECK((run.T & (run.T - 1)) == 0);
  }
  // The log is extended, never redrawn: it is the plain stream of draws.
  Rng a(99), b(99);
  CftpRun run = naive_cftp(sp, a);
  for (std::uint64_t k = 0; k < run.T; ++k) CHECK(run.updates[k] == sp.update_code(draw_update(b, 4)));
  Rng c(3);
  CftpRun capped = naive_cftp(sp, c, 1);
  CHECK(capped.T == 1);
  Rng d(5);
  CftpRun coupled = naive_cftp(sp, d, std::uint64_t{1} << 24, CftpScheme::Coupled);
  CHECK(coupled.coalesced);
}

TEST_CASE("false coalescence never happens at n = 3") {
  RbpdSpace sp(3);
  Rng rng(1);
  int fc = 0;
  for (int t = 0; t < 1000; ++t) fc += false_coalescence_trial(sp, rng).false_coalescence;
  CHECK(fc == 0);
}

TEST_CASE("false coalescence implies a sandwich break at n = 4") {
  RbpdSpace sp(4);
  Rng rng(2);
  int fc = 0;
  for (int t = 0; t < 2000; ++t) {
    FalseCoalescence r = false_coalescence_trial(sp, rng);
    if (r.false_coalescence) {
      ++fc;
      CHECK(r.sandwich_broken);
    }
  }
  CHECK(fc > 0);
}

TEST_CASE("expected counts for the bias test") {
  std::map<Perm, std::uint64_t> counts;
  counts[Perm::identity(4)] = 500000;
  BiasReport r = upsilon_chi_square(4, counts);
  CHECK(r.perms.size() == 24);
  CHECK(r.test.df == 23);
  for (std::size_t k = 0; k < 24; ++k) {
    if (r.perms[k] == Perm{1, 4, 3, 2}) CHECK(std::llround(r.expected[k]) == 60976);
    if (test::upsilon_s4(r.perms[k]) == 1) CHECK(std::llround(r.expected[k]) == 12195);
  }
  std::map<Perm, std::uint64_t> exact;
  for (const Perm& w : test::all_perms(4)) exact[w] = 1000 * test::upsilon_s4(w);
  BiasReport ok = upsilon_chi_square(4, exact);
  CHECK(ok.test.statistic == doctest::Approx(0.0));
  CHECK(ok.test.p_value == doctest::Approx(1.0));
}

TEST_CASE("chi-square tail and Wilson interval") {
  for (double x : {0.5, 2.0, 7.0}) CHECK(chi_square_upper_tail(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-12));
  CHECK(chi_square_upper_tail(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-10));
  CHECK(chi_square_upper_tail(49.72823247, 23) == doctest::Approx(1e-3).epsilon(1e-4));
  double p = chi_square_upper_tail(60.7, 23);
  CHECK(p > 2e-5);
  CHECK(p < 4e-5);
  ChiSquare t = chi_square_test({10, 20, 30}, {1, 2, 3});
  CHECK(t.statistic == doctest::Approx(0.0));
  CHECK(t.df == 2);
  Interval w = wilson_interval(50, 100, 0.99);
  CHECK(w.lo == doctest::Approx(0.37528).epsilon(1e-4));
  CHECK(w.hi == doctest::Approx(0.62472).epsilon(1e-4));
  CHECK(wilson_interval(0, 1000).lo == doctest::Approx(0.0));
  CHECK(w.contains(0.5));
}

TEST_CASE("rng streams") {
  Rng a(1, 0), b(1, 0), c(1, 1);
  for (int t = 0; t < 100; ++t) {
    auto x = a();
    CHECK(x == b());
    CHECK(x != c());
  }
  Rng r(3);
  std::vector<int> hits(7, 0);
  for (int t = 0; t < 70000; ++t) ++hits[r.below(7)];
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  for (int t = 0; t < 1000; ++t) {
    double u = r.uniform();
    CHECK((u >= 0 && u < 1));
  }
  CHECK(r.counter() > 0);
}
