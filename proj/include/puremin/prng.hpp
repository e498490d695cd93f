#pragma once

#include <cstdint>

namespace puremin {

/// splitmix64. Used everywhere randomness is needed so that identical seeds
/// give identical streams on every platform; std::uniform_int_distribution is
/// implementation-defined and would break byte-stable reports.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish value in [0, n); n > 0. Modulo bias is irrelevant here.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    /// Inclusive integer range.
    long long range(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }

    /// Independent stream for a sub-task; mixing the label keeps case results
    /// schedule-independent.
    Prng fork(std::uint64_t label) {
        std::uint64_t s = state_ ^ (0x632be59bd9b4e019ULL * (label + 1));
        Prng child(s);
        child.next();
        return child;
    }

  private:
    std::uint64_t state_;
};

}  // namespace puremin
