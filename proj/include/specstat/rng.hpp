#pragma once

#include <cmath>
#include <cstdint>

namespace specstat {

namespace detail {
// splitmix64 finaliser; full-period bijective mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

// Counter-based generator: the stream is a pure function of (seed, stream, counter),
// so draw i of realisation r is reproducible regardless of evaluation order or
// thread placement. Stream splitting: substream(id) keys an independent stream;
// by convention Monte-Carlo draw i uses substream(i) of the run seed.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(detail::mix64(seed ^ detail::mix64(stream * 0xd1342543de82ef95ull + 0x632be59bd9b4e019ull))),
        ctr_(0),
        have_cached_(false),
        cached_(0) {}

  CounterRng substream(std::uint64_t id) const { return CounterRng(key_, id + 1); }

  std::uint64_t next_u64() { return detail::mix64(key_ ^ detail::mix64(ctr_++)); }

  // uniform on the open interval (0,1); never returns 0 or 1 so logs are safe
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53; }

  // standard normal via Box-Muller on the uniform stream
  double normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform(), u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_;
  bool have_cached_;
  double cached_;
};

}  // namespace specstat
