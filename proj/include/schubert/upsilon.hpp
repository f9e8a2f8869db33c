#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "schubert/eval_value.hpp"
#include "schubert/perm.hpp"

namespace schubert {

enum class Formula { Descent, Transition, Cotransition };
enum class EvalMode { Bfs, Dfs };

const char* to_string(Formula f);
const char* to_string(EvalMode m);
Formula parse_formula(const std::string& s);
EvalMode parse_mode(const std::string& s);

inline constexpr std::size_t kDefaultMemoCap = std::size_t{1} << 27;
inline constexpr std::size_t kDescentFloatMemoCap = 3 * (std::size_t{1} << 26);
inline constexpr std::size_t kDefaultFrontierCap = std::size_t{1} << 28;

// A frontier or table outgrew its configured ceiling.
class ResourceCapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  std::size_t memo_cap = kDefaultMemoCap;
  std::size_t frontier_cap = kDefaultFrontierCap;
  // Evaluate on the stripped permutation (value is unchanged either way).
  bool strip = true;
  // Descent recursion over Des(w^{-1}) instead of Des(w).
  bool descent_use_inverse = false;
};

// Bounded memo: once full, inserts are dropped and callers recompute.
template <class Key, class Value, class Hash = std::hash<Key>>
class MemoTable {
public:
  explicit MemoTable(std::size_t cap = kDefaultMemoCap) : cap_(cap) {}

  const Value* find(const Key& k) const {
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }

  bool insert(const Key& k, const Value& v) {
    if (map_.size() >= cap_) {
      ++skipped_;
      return false;
    }
    map_.emplace(k, v);
    return true;
  }

  std::size_t size() const { return map_.size(); }
  std::size_t cap() const { return cap_; }
  std::size_t skipped() const { return skipped_; }

private:
  std::unordered_map<Key, Value, Hash> map_;
  std::size_t cap_;
  std::size_t skipped_ = 0;
};

// Positions are 1-based.
struct TransitionPivot {
  int r = 0;
  int s = 0;
  friend bool operator==(const TransitionPivot&, const TransitionPivot&) = default;
};

// Absent iff w is dominant.
std::optional<TransitionPivot> transition_pivot(const Perm& w);

// min{ j : j + w(j) <= n }, 1-based. Throws std::domain_error at w0.
int cotransition_index(const Perm& w);

// Descent recursion, level by level from w down to the identity. Exact uses
// arbitrary-precision rationals; Rational throws RationalOverflow on loss.
EvalValue upsilon_descent(const Perm& w, Arith arith, const EvalOptions& opt = {});

// Transition recursion, depth first with memo. Rational is treated as Exact.
EvalValue upsilon_transition(const Perm& w, Arith arith, const EvalOptions& opt = {});

// Cotransition recursion toward w0. Rational is treated as Exact.
EvalValue upsilon_cotransition(const Perm& w, Arith arith, EvalMode mode = EvalMode::Bfs,
                               const EvalOptions& opt = {});

EvalValue upsilon(const Perm& w, Formula f, Arith arith, EvalMode mode = EvalMode::Bfs,
                  const EvalOptions& opt = {});

// Cotransition BFS in exact arithmetic.
mpz_class upsilon_exact(const Perm& w);

// Brute-force references.
EvalValue upsilon_reduced_words_oracle(const Perm& w);
EvalValue upsilon_pipedream_oracle(const Perm& w);

}  // namespace schubert
