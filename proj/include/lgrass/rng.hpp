#pragma once

#include "lgrass/matrix.hpp"

#include <cstdint>

namespace lgrass {

// Deterministic splitmix64 generator. Avoids std distributions so that
// seeded runs produce identical streams on any platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n).
    uint64_t below(uint64_t n) { return next() % n; }

    // Uniform integer in [lo, hi].
    long range(long lo, long hi) {
        return lo + long(below(uint64_t(hi - lo + 1)));
    }

    // Small rational with numerator in [-4, 4] and denominator in {1, 2, 3}.
    Rat small_rat() {
        return Rat(Int(range(-4, 4)), Int(range(1, 3)));
    }

    Rat small_nonzero_rat() {
        for (;;) {
            Rat r = small_rat();
            if (r != 0) return r;
        }
    }

    Mat matrix(int rows, int cols) {
        Mat m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = small_rat();
        return m;
    }

    Mat invertible_matrix(int n) {
        for (;;) {
            Mat m = matrix(n, n);
            if (invertible(m)) return m;
        }
    }

    // n x k matrix of full column rank.
    Mat full_rank_matrix(int n, int k) {
        for (;;) {
            Mat m = matrix(n, k);
            if (rank(m) == k) return m;
        }
    }

private:
    uint64_t state_;
};

} // namespace lgrass
