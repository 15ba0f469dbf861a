#pragma once
#include <cstdint>

namespace rbl {

// Counter-based splittable random stream: the i-th output is a fixed mix of
// (key, i), so streams can be replayed, forked per run/task, and used from
// different threads without shared state. child(tag) derives an independent
// stream; identical (seed, tag-path) always yields identical draws.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  RngStream child(std::uint64_t tag) const;

  std::uint64_t next_u64();
  double uniform01();                 // [0, 1)
  double uniform_open();              // (0, 1]
  double normal();                    // N(0, 1)
  double gamma(double shape);         // shape > 0, unit scale
  double beta(double a, double b);
  double symmetric_beta_pm1(double a);  // 2*Beta(a, a) - 1 on [-1, 1]

 private:
  RngStream(std::uint64_t key, int);  // raw key constructor
  std::uint64_t key_;
  std::uint64_t ctr_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rbl
