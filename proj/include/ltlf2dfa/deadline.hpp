#pragma once

#include <chrono>
#include <optional>

#include "ltlf2dfa/errors.hpp"

namespace ltlf {

/// Cooperative deadline polled at algorithm loop heads.
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;

  static Deadline after(std::chrono::milliseconds budget) {
    Deadline d;
    d.expiry_ = Clock::now() + budget;
    return d;
  }

  static Deadline none() { return Deadline{}; }

  bool expired() const { return expiry_ && Clock::now() >= *expiry_; }

  void check() const {
    if (expired()) throw Timeout{};
  }

 private:
  std::optional<Clock::time_point> expiry_;
};

}  // namespace ltlf
