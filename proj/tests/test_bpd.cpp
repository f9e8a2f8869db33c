#include <doctest.h>

#include <map>
#include <set>

#include "schubert/bpd.hpp"
#include "schubert/upsilon.hpp"
#include "test_util.hpp"

using namespace schubert;
using test::grid;

namespace {

HeightGrid heights(int n, const std::vector<std::vector<int>>& rows) {
  HeightGrid h;
  h.n = n;
  for (auto& r : rows) h.h.insert(h.h.end(), r.begin(), r.end());
  return h;
}

}  // namespace

TEST_CASE("tile characters and edges") {
  for (Tile t : {Tile::Empty, Tile::Cross, Tile::Horizontal, Tile::Vertical, Tile::RElbow, Tile::JElbow}) {
    CHECK(tile_from_char(tile_char(t)) == t);
    Tile back;
    REQUIRE(tile_from_edges(edges_of(t), back));
    CHECK(back == t);
  }
  CHECK_THROWS(tile_from_char('x'));
}

TEST_CASE("rothe bpd examples") {
  Bpd id = rothe_bpd(Perm::identity(4));
  CHECK(id == grid("r---/|r--/||r-/|||r"));
  CHECK(id.cross_count() == 0);
  Bpd w0 = rothe_bpd(Perm::longest(4));
  CHECK(w0 == grid("...r/..r+/.r++/r+++"));
  CHECK(w0.cross_count() == 6);
  CHECK(w0.is_reduced());
  Bpd b = rothe_bpd(Perm{2, 1, 4, 3});
  CHECK(b == grid(".r--/r+--/||.r/||r+"));
  CHECK(b.boundary_perm() == Perm{2, 1, 4, 3});
  CHECK(b.cross_count() == 2);
  CHECK(b.is_reduced());
  CHECK(trace_boundary(grid(".r--/r+--/||.r/||r+")) == Perm{2, 1, 4, 3});
  CHECK(trace_boundary(id) == Perm::identity(4));
}

TEST_CASE("rothe bpds over S5 and S6") {
  for (const Perm& w : test::all_perms(5)) {
    Bpd b = rothe_bpd(w);
    CHECK(b.boundary_perm() == w);
    CHECK(test::trace_naive(b).perm == w);
    CHECK(b.is_reduced());
    CHECK(b.cross_count() == length(w));
    std::set<std::pair<int, int>> empties;
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c)
        if (b.at(r, c) == Tile::Empty) empties.insert({r + 1, c + 1});
    auto d = rothe_diagram(w);
    CHECK(empties == std::set<std::pair<int, int>>(d.begin(), d.end()));
  }
  for (const Perm& w : test::all_perms(6)) {
    Bpd b = rothe_bpd(w);
    for (Tile t : b.tiles()) REQUIRE(t != Tile::JElbow);
  }
}

TEST_CASE("height grids of small examples") {
  CHECK(height(rothe_bpd(Perm::identity(4))) ==
        heights(4, {{0, 0, 0, 0, 0}, {0, 1, 1, 1, 1}, {0, 1, 2, 2, 2}, {0, 1, 2, 3, 3}, {0, 1, 2, 3, 4}}));
  CHECK(height(rothe_bpd(Perm{2, 1, 4, 3})) ==
        heights(4, {{0, 0, 0, 0, 0}, {0, 0, 1, 1, 1}, {0, 1, 2, 2, 2}, {0, 1, 2, 2, 3}, {0, 1, 2, 3, 4}}));
  CHECK(height(rothe_bpd(Perm::longest(4))) ==
        heights(4, {{0, 0, 0, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 1, 2}, {0, 0, 1, 2, 3}, {0, 1, 2, 3, 4}}));
  HeightGrid h = height(rothe_bpd(Perm{2, 1, 4, 3}));
  CHECK(h.at(2, 2) == 2);
  CHECK(h.at(1, 1) == 0);
}

TEST_CASE("asm of the extremes") {
  Asm a = asm_of(rothe_bpd(Perm::identity(5)));
  Asm b = asm_of(rothe_bpd(Perm::longest(5)));
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      CHECK(a.at(i, j) == (i == j));
      CHECK(b.at(i, j) == (i + j == 6));
    }
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_asms(3).size() == 7);
  CHECK(enumerate_rbpds(3).size() == 7);
  CHECK(enumerate_asms(4).size() == 42);
  CHECK(enumerate_rbpds(4).size() == 41);
  CHECK(enumerate_rbpds(5).size() == 393);
  CHECK(enumerate_asms(5).size() == 429);
  for (int n = 3; n <= 5; ++n) {
    mpz_class sum = 0;
    for (const Perm& w : test::all_perms(n)) sum += upsilon_exact(w);
    CHECK(sum == enumerate_rbpds(n).size());
  }
  auto rb = enumerate_rbpds(4);
  CHECK(std::is_sorted(rb.begin(), rb.end()));
  std::map<Perm, int> by;
  for (auto& b : rb) ++by[b.boundary_perm()];
  for (const Perm& w : test::all_perms(4)) CHECK(by[w] == test::upsilon_s4(w));
  CHECK_THROWS(enumerate_asms(8));
}

TEST_CASE("invariants over every BPD with n <= 5") {
  for (int n = 1; n <= 5; ++n)
    for (const Bpd& b : enumerate_asms(n)) {
      auto tr = test::trace_naive(b);
      REQUIRE(tr.perm == b.boundary_perm());
      REQUIRE(test::reduced_naive(b) == b.is_reduced());
      int r = 0, j = 0;
      for (Tile t : b.tiles()) {
        r += t == Tile::RElbow;
        j += t == Tile::JElbow;
      }
      CHECK(r - j == n);
      Asm a = asm_of(b);
      CHECK_NOTHROW(validate_asm(a));
      HeightGrid h = height(b);
      CHECK_NOTHROW(validate_height(h));
      CHECK(height_of(a) == h);
      CHECK(bpd_from_asm(a) == b);
      CHECK(bpd_from_height(h) == b);
      CHECK(parse_bpd(b.to_text()) == b);
    }
}

TEST_CASE("lattice order") {
  auto rb = enumerate_rbpds(4);
  Bpd lo = rothe_bpd(Perm::longest(4)), hi = rothe_bpd(Perm::identity(4));
  for (auto& x : rb) {
    CHECK(leq(lo, x));
    CHECK(leq(x, hi));
    CHECK(meet(lo, x) == lo);
    CHECK(join(hi, x) == hi);
    HeightGrid hx = height(x);
    for (auto& y : rb) {
      HeightGrid hy = height(y);
      bool pointwise = true;
      for (std::size_t k = 0; k < hx.h.size(); ++k) pointwise &= hx.h[k] <= hy.h[k];
      REQUIRE(leq(x, y) == pointwise);
      Bpd m = meet(x, y), jn = join(x, y);
      HeightGrid hm = height(m), hj = height(jn);
      for (std::size_t k = 0; k < hx.h.size(); ++k) {
        REQUIRE(hm.h[k] == std::min(hx.h[k], hy.h[k]));
        REQUIRE(hj.h[k] == std::max(hx.h[k], hy.h[k]));
      }
    }
  }
}

TEST_CASE("meet of the two sublattice witnesses is not reduced") {
  Bpd a = grid("..r-/r-+-/|rjr/||r+");
  Bpd b = grid(".r--/.|r-/r+jr/||r+");
  CHECK(a.is_reduced());
  CHECK(b.is_reduced());
  Bpd m = meet(a, b);
  CHECK(m == grid("..r-/.r+-/r+jr/||r+"));
  CHECK_FALSE(m.is_reduced());
  CHECK_FALSE(is_reduced(m));
  int nonreduced = 0;
  for (auto& x : enumerate_asms(4))
    if (!x.is_reduced()) {
      ++nonreduced;
      CHECK(x == m);
    }
  CHECK(nonreduced == 1);
}

TEST_CASE("invalid grids are rejected") {
  CHECK_THROWS_AS(grid("r-/||"), std::invalid_argument);
  CHECK_THROWS_AS(grid("--/--"), std::invalid_argument);
  CHECK_THROWS_AS(grid("r+/|r"), std::invalid_argument);
  HeightGrid bad = height(rothe_bpd(Perm::identity(3)));
  bad.at(1, 1) = 3;
  CHECK_THROWS_AS(validate_height(bad), std::invalid_argument);
}

TEST_CASE("replace_block keeps cached colors consistent") {
  // Swapping in the flip window of b_{w0} at n=3 and comparing with a fresh
  // trace of the full grid.
  Bpd b = rothe_bpd(Perm::longest(3));
  Bpd target = grid("..r/r-+/|r+");
  std::vector<Tile> block = {target.at(1, 0), target.at(1, 1), target.at(2, 0), target.at(2, 1)};
  b.replace_block(1, 0, 2, 2, block.data());
  CHECK(b == target);
  CHECK(b.boundary_perm() == target.boundary_perm());
  CHECK(b.cross_count() == target.cross_count());
  CHECK(b.inversion_count() == target.inversion_count());
  std::vector<Tile> broken = {Tile::Empty, Tile::Empty, Tile::Empty, Tile::Empty};
  Bpd before = b;
  CHECK_THROWS_AS(b.replace_block(0, 0, 2, 2, broken.data()), std::invalid_argument);
  CHECK(b == before);
}

TEST_CASE("csv exports have a header row") {
  std::string s = height_csv(height(rothe_bpd(Perm::identity(2))));
  CHECK(s == "0,1,2\n0,0,0\n0,1,1\n0,1,2\n");
  std::string a = asm_csv(asm_of(rothe_bpd(Perm{2, 1})));
  CHECK(a == "1,2\n0,1\n1,0\n");
}
