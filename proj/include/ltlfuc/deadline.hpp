#pragma once

#include <chrono>
#include <stdexcept>

namespace ltlfuc {

class DeadlineExceeded : public std::runtime_error {
public:
  DeadlineExceeded() : std::runtime_error("time limit exceeded") {}
};

/// Wall-clock limit shared by the engines. A default-constructed deadline never expires.
class Deadline {
public:
  using Clock = std::chrono::steady_clock;

  Deadline() = default;
  static Deadline after(double seconds) {
    Deadline d;
    if (seconds >= 0)
      d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                 std::chrono::duration<double>(seconds));
    return d;
  }

  bool expired() const { return at_ != Clock::time_point::max() && Clock::now() >= at_; }
  void check() const {
    if (expired())
      throw DeadlineExceeded();
  }
  /// Seconds left; a large number when unlimited.
  double remaining() const {
    if (at_ == Clock::time_point::max())
      return 1e9;
    return std::chrono::duration<double>(at_ - Clock::now()).count();
  }

private:
  Clock::time_point at_ = Clock::time_point::max();
};

} // namespace ltlfuc
