#pragma once

// Counter-based random streams: the stream for (seed, a, b) is a pure
// function of those three numbers, so parallel tasks that each derive their
// own stream produce the same draws under any schedule.

#include <kklab/numeric.hpp>

#include <cstdint>

namespace kklab {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Stream {
  public:
    explicit Stream(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0)
        : key_(splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0xD1B54A32D192ED03ULL)))
    {
    }

    std::uint64_t next() { return splitmix64(key_ ^ splitmix64(counter_++)); }

    /// Uniform on [0, bound), bound >= 1, by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t bound)
    {
        const std::uint64_t limit = -bound % bound; // 2^64 mod bound
        while (true) {
            std::uint64_t x = next();
            if (x >= limit)
                return x % bound;
        }
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Exact Bernoulli(p) for rational p in [0, 1].
    bool bernoulli(const Rational & p)
    {
        if (sgn(p) <= 0)
            return false;
        if (p >= 1)
            return true;
        const BigInt & den = p.get_den();
        if (mpz_sizeinbase(den.get_mpz_t(), 2) <= 64) {
            std::uint64_t d = 0, num = 0;
            mpz_export(&d, nullptr, -1, sizeof d, 0, 0, den.get_mpz_t());
            mpz_export(&num, nullptr, -1, sizeof num, 0, 0, p.get_num().get_mpz_t());
            return below(d) < num;
        }
        // Compare a uniform real bit by bit with the binary expansion of p.
        Rational rest = p;
        std::uint64_t bits = 0;
        int left = 0;
        while (true) {
            if (left == 0) {
                bits = next();
                left = 64;
            }
            int u = static_cast<int>(bits >> 63);
            bits <<= 1;
            --left;
            rest *= 2;
            int pb = rest >= 1 ? 1 : 0;
            if (pb)
                rest -= 1;
            if (u != pb)
                return u < pb;
        }
    }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace kklab
