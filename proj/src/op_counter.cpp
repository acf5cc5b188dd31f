#include "nnsig/op_counter.hpp"

namespace nnsig {

namespace detail {
thread_local OpTally* active_tally = nullptr;
} // namespace detail

ScopedOpCount::ScopedOpCount() : previous_(detail::active_tally) {
  detail::active_tally = &tally_;
}

ScopedOpCount::~ScopedOpCount() {
  detail::active_tally = previous_;
  if (previous_) {
    previous_->mul += tally_.mul;
    previous_->add += tally_.add;
    previous_->inv += tally_.inv;
  }
}

} // namespace nnsig
