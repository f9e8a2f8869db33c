#include "schubert/max_search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "schubert/eval_value.hpp"
#include "schubert/upsilon.hpp"

namespace schubert {

namespace {

using Key = u128;
using Codec = Codec128;

struct Level {
  std::vector<Key> keys;  // sorted
  std::vector<u128> vals;
};

u128 checked_add(u128 a, u128 b) {
  u128 s = a + b;
  if (s < a) throw std::overflow_error("level value exceeds 128 bits");
  return s;
}

template <class Emit>
Level sort_reduce(std::vector<std::pair<Key, u128>>& ch, std::size_t cap, Emit&& finish) {
  if (ch.size() > cap)
    throw ResourceCapExceeded("frontier of " + std::to_string(ch.size()) + " entries exceeds cap");
  std::sort(ch.begin(), ch.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  Level out;
  for (std::size_t k = 0; k < ch.size();) {
    u128 acc = 0;
    std::size_t j = k;
    for (; j < ch.size() && ch[j].first == ch[k].first; ++j) acc = checked_add(acc, ch[j].second);
    out.keys.push_back(ch[k].first);
    out.vals.push_back(finish(acc));
    k = j;
  }
  return out;
}

// Level l+1 from level l: Υ_w = (Σ_{i ∈ Des(w)} i Υ_{w s_i}) / l(w).
Level descent_up(const Level& cur, int n, int next_len, std::size_t cap) {
  std::vector<std::pair<Key, u128>> ch;
  std::array<std::uint8_t, kMaxN> e{};
  for (std::size_t idx = 0; idx < cur.keys.size(); ++idx) {
    Codec::unpack(cur.keys[idx], n, e.data());
    for (int p = 0; p + 1 < n; ++p)
      if (e[p] < e[p + 1]) ch.emplace_back(Codec::swap(cur.keys[idx], p, p + 1), cur.vals[idx] * (p + 1));
  }
  return sort_reduce(ch, cap, [&](u128 acc) {
    if (acc % next_len != 0) throw std::logic_error("descent level sum not divisible by length");
    return acc / next_len;
  });
}

// Level l-1 from level l: each v pushes Υ_v to the w it covers whenever v
// moves w's cotransition index.
Level cotransition_down(const Level& cur, int n, std::size_t cap) {
  std::vector<std::pair<Key, u128>> ch;
  std::array<std::uint8_t, kMaxN> e{};
  for (std::size_t idx = 0; idx < cur.keys.size(); ++idx) {
    Codec::unpack(cur.keys[idx], n, e.data());
    for (int a = 0; a < n; ++a) {
      int max_below = 0;
      for (int b = a + 1; b < n; ++b) {
        if (e[b] < e[a] && e[b] > max_below) {
          std::swap(e[a], e[b]);
          int i = -1;
          for (int p = 0; p < n; ++p)
            if (p + 1 + e[p] <= n) {
              i = p;
              break;
            }
          std::swap(e[a], e[b]);
          if (i == a || i == b) ch.emplace_back(Codec::swap(cur.keys[idx], a, b), cur.vals[idx]);
        }
        if (e[b] < e[a]) max_below = std::max(max_below, static_cast<int>(e[b]));
      }
    }
  }
  return sort_reduce(ch, cap, [](u128 acc) { return acc; });
}

LevelMax level_max(const Level& lv, int n, int len) {
  LevelMax m;
  m.length = len;
  u128 best = 0;
  for (u128 v : lv.vals) best = std::max(best, v);
  m.value = to_mpz(best);
  std::vector<std::uint8_t> e(n);
  for (std::size_t k = 0; k < lv.keys.size(); ++k)
    if (lv.vals[k] == best) {
      Codec::unpack(lv.keys[k], n, e.data());
      m.argmax.emplace_back(e);
    }
  std::sort(m.argmax.begin(), m.argmax.end());
  return m;
}

void finalize(SearchResult& r) {
  bool first = true;
  for (const auto& lm : r.per_level) {
    if (first || lm.value > r.best_value) {
      r.best_value = lm.value;
      r.argmax = lm.argmax;
      first = false;
    } else if (lm.value == r.best_value) {
      r.argmax.insert(r.argmax.end(), lm.argmax.begin(), lm.argmax.end());
    }
  }
  std::sort(r.argmax.begin(), r.argmax.end());
  if (!r.argmax.empty()) r.best_perm = r.argmax.front();
}

}  // namespace

SearchResult full_search(int n, const FullSearchOptions& opt) {
  if (n < 1 || n > 16) throw std::invalid_argument("full search supports 1 <= n <= 16");
  const int top = n * (n - 1) / 2;
  SearchResult result;
  result.n = n;
  result.method = "full";
  std::vector<std::optional<LevelMax>> levels(top + 1);
  std::vector<std::size_t> level_sizes(top + 1, 0);

  std::mutex mu;
  int up_claimed = 0, down_claimed = top;  // levels owned so far by each side
  std::atomic<bool> stop{false};
  std::exception_ptr errors[2];

  {
    Level id{{Codec::pack(Perm::identity(n).entries())}, {1}};
    levels[0] = level_max(id, n, 0);
    level_sizes[0] = 1;
    if (top > 0) {
      Level w0{{Codec::pack(Perm::longest(n).entries())}, {1}};
      levels[top] = level_max(w0, n, top);
      level_sizes[top] = 1;
    }
  }

  auto up = [&] {
    try {
      Level cur{{Codec::pack(Perm::identity(n).entries())}, {1}};
      for (int len = 1;; ++len) {
        {
          std::lock_guard lk(mu);
          if (stop || len >= down_claimed) return;
          up_claimed = len;
        }
        cur = descent_up(cur, n, len, opt.frontier_cap);
        levels[len] = level_max(cur, n, len);
        level_sizes[len] = cur.keys.size();
      }
    } catch (...) {
      errors[0] = std::current_exception();
      stop = true;
    }
  };
  auto down = [&] {
    try {
      Level cur{{Codec::pack(Perm::longest(n).entries())}, {1}};
      for (int len = top - 1;; --len) {
        {
          std::lock_guard lk(mu);
          if (stop || len <= up_claimed) return;
          down_claimed = len;
        }
        cur = cotransition_down(cur, n, opt.frontier_cap);
        levels[len] = level_max(cur, n, len);
        level_sizes[len] = cur.keys.size();
      }
    } catch (...) {
      errors[1] = std::current_exception();
      stop = true;
    }
  };
  if (top > 1) {
    std::thread t1(up), t2(down);
    t1.join();
    t2.join();
  }

  for (auto& ep : errors) {
    if (!ep) continue;
    try {
      std::rethrow_exception(ep);
    } catch (const ResourceCapExceeded& e) {
      result.aborted = true;
      result.abort_reason = e.what();
    }
  }
  for (int len = 0; len <= top; ++len) {
    if (!levels[len]) continue;
    result.per_level.push_back(*levels[len]);
    result.evaluated += level_sizes[len];
  }
  finalize(result);
  return result;
}

std::vector<Perm> cayley_ball(const Perm& center, int radius) {
  if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
  if (center.size() > kMaxN) throw std::invalid_argument("Cayley balls support n <= 25");
  const int n = center.size();
  std::set<Key> seen{Codec::pack(center.entries())};
  std::vector<Key> frontier(seen.begin(), seen.end());
  for (int r = 0; r < radius; ++r) {
    std::vector<Key> next;
    for (Key k : frontier)
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          Key c = Codec::swap(k, a, b);
          if (seen.insert(c).second) next.push_back(c);
        }
    frontier = std::move(next);
  }
  std::vector<Perm> out;
  std::vector<std::uint8_t> e(n);
  for (Key k : seen) {
    Codec::unpack(k, n, e.data());
    out.emplace_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Exact Υ for each permutation, spread over a worker pool.
std::vector<std::optional<mpz_class>> evaluate_all(const std::vector<Perm>& perms, std::size_t limit,
                                                   int threads) {
  std::vector<std::optional<mpz_class>> vals(perms.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&] {
    try {
      for (std::size_t k; (k = next.fetch_add(1)) < std::min(limit, perms.size());) vals[k] = upsilon_exact(perms[k]);
    } catch (...) {
      std::lock_guard lk(err_mu);
      err = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(threads, 1); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return vals;
}

}  // namespace

SearchResult neighborhood_search(const Perm& center, int radius, std::optional<std::size_t> budget,
                                 int threads) {
  if (radius < 1) throw std::invalid_argument("radius must be at least 1");
  SearchResult result;
  result.n = center.size();
  result.method = "neighborhood";
  auto ball = cayley_ball(center, radius);
  std::size_t limit = budget ? std::min(*budget, ball.size()) : ball.size();
  auto vals = evaluate_all(ball, limit, threads);
  if (limit < ball.size()) {
    result.aborted = true;
    result.abort_reason = "evaluation budget exhausted after " + std::to_string(limit) + " of " +
                          std::to_string(ball.size()) + " permutations";
  }
  bool first = true;
  for (std::size_t k = 0; k < ball.size(); ++k) {
    if (!vals[k]) continue;
    ++result.evaluated;
    if (first || *vals[k] > result.best_value) {
      result.best_value = *vals[k];
      result.argmax = {ball[k]};
      first = false;
    } else if (*vals[k] == result.best_value) {
      result.argmax.push_back(ball[k]);
    }
  }
  if (!result.argmax.empty()) result.best_perm = result.argmax.front();
  return result;
}

LayeredOptimum optimal_layered(int n, int threads) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("n out of range");
  auto specs = compositions(n);
  std::vector<Perm> perms;
  perms.reserve(specs.size());
  for (const auto& s : specs) perms.push_back(layered(s));
  auto vals = evaluate_all(perms, perms.size(), threads);
  LayeredOptimum out;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    out.all.emplace_back(specs[k], *vals[k]);
    if (k == 0 || *vals[k] > out.value) {  // strict: earliest spec wins ties
      out.value = *vals[k];
      out.spec = specs[k];
    }
  }
  return out;
}

std::optional<LayeredSpec> layered_blocks(const Perm& w) {
  LayeredSpec spec;
  const int n = w.size();
  int start = 0;
  while (start < n) {
    int len = w(start + 1) - start;
    if (len < 1 || start + len > n) return std::nullopt;
    for (int k = 0; k < len; ++k)
      if (w(start + 1 + k) != start + len - k) return std::nullopt;
    spec.blocks.push_back(len);
    start += len;
  }
  return spec;
}

}  // namespace schubert
