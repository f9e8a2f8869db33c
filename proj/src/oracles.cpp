#include <stdexcept>
#include <vector>

#include "schubert/upsilon.hpp"

namespace schubert {

namespace {

// Sum over reduced words a_1..a_l of w of the product a_1...a_l, walking
// descents down to the identity with no sharing between branches.
void word_sum(std::vector<std::uint8_t>& e, int remaining, const mpz_class& prod, mpz_class& total) {
  if (remaining == 0) {
    total += prod;
    return;
  }
  const int n = static_cast<int>(e.size());
  for (int p = 0; p + 1 < n; ++p)
    if (e[p] > e[p + 1]) {
      std::swap(e[p], e[p + 1]);
      word_sum(e, remaining - 1, prod * (p + 1), total);
      std::swap(e[p], e[p + 1]);
    }
}

struct PipeDreamCounter {
  int n;
  std::vector<std::pair<int, int>> cells;  // reading order
  std::vector<std::uint8_t> target;
  int target_len;
  long long count = 0;

  void run(std::size_t k, std::vector<std::uint8_t>& u, int len) {
    if (target_len - len > static_cast<int>(cells.size() - k)) return;
    if (k == cells.size()) {
      if (len == target_len && u == target) ++count;
      return;
    }
    run(k + 1, u, len);  // elbow
    if (len == target_len) return;
    int s = cells[k].first + cells[k].second - 1;  // crossing contributes s_{i+j-1}
    if (u[s - 1] < u[s]) {  // pipes not yet crossed
      std::swap(u[s - 1], u[s]);
      run(k + 1, u, len + 1);
      std::swap(u[s - 1], u[s]);
    }
  }
};

}  // namespace

EvalValue upsilon_reduced_words_oracle(const Perm& w) {
  const int l = length(w);
  if (l > 16) throw std::invalid_argument("reduced-word oracle limited to length <= 16");
  std::vector<std::uint8_t> e(w.entries().begin(), w.entries().end());
  mpz_class total = 0;
  word_sum(e, l, mpz_class(1), total);
  mpz_class fact = 1;
  for (int k = 2; k <= l; ++k) fact *= k;
  if (total % fact != 0) throw std::logic_error("reduced-word sum not divisible by l!");
  return EvalValue(mpz_class(total / fact));
}

EvalValue upsilon_pipedream_oracle(const Perm& w) {
  const int n = w.size();
  if (n > 8) throw std::invalid_argument("pipe-dream oracle limited to n <= 8");
  PipeDreamCounter c{n, {}, {w.entries().begin(), w.entries().end()}, length(w)};
  for (int i = 1; i <= n; ++i)
    for (int j = n - i; j >= 1; --j) c.cells.emplace_back(i, j);
  std::vector<std::uint8_t> u(n);
  for (int i = 0; i < n; ++i) u[i] = static_cast<std::uint8_t>(i + 1);
  c.run(0, u, 0);
  return EvalValue(mpz_class(static_cast<long>(c.count)));
}

}  // namespace schubert
