#pragma once

#include <cstdint>

namespace nnsig {

/// Field-operation tallies gathered while a ScopedOpCount is alive.
struct OpTally {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;
  std::uint64_t inv = 0;

  std::uint64_t total() const { return mul + add + inv; }
};

namespace detail {
extern thread_local OpTally* active_tally;

inline void count_mul(std::uint64_t k = 1) {
  if (active_tally) active_tally->mul += k;
}
inline void count_add(std::uint64_t k = 1) {
  if (active_tally) active_tally->add += k;
}
inline void count_inv(std::uint64_t k = 1) {
  if (active_tally) active_tally->inv += k;
}
} // namespace detail

/// Enables counting on the current thread for its lifetime. Scopes nest:
/// counts seen by an inner scope are folded into the enclosing one on exit.
class ScopedOpCount {
public:
  ScopedOpCount();
  ~ScopedOpCount();
  ScopedOpCount(const ScopedOpCount&) = delete;
  ScopedOpCount& operator=(const ScopedOpCount&) = delete;

  const OpTally& tally() const { return tally_; }

private:
  OpTally tally_;
  OpTally* previous_;
};

} // namespace nnsig
