#pragma once

#include "lgrass/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace lgrass {

// Floor division (C++ integer division truncates toward zero).
inline long floor_div(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

inline long binom2(long n) { return n * (n - 1) / 2; }

// Brill-Noether parameters for rank-2 linear series with k sections on a
// genus-g curve of degree d, plus the halved quantities the parity case
// analysis runs on.
struct BNParams {
    long g = 0;
    long d = 0;
    long k = 2;

    long dprime() const { return floor_div(d, 2); }
    long kprime() const { return floor_div(k, 2); }
    bool d_even() const { return ((d % 2) + 2) % 2 == 0; }
    bool k_even() const { return k % 2 == 0; }
};

// Hypothesis range guards are advisory: sweeps are allowed to chart where
// the hypotheses fail, so out-of-range parameters produce warnings, not errors.
inline std::vector<std::string> range_warnings(const BNParams& p) {
    std::vector<std::string> w;
    if (p.g < 0) w.push_back("genus is negative");
    if (p.k < 2) w.push_back("section count below 2");
    if (p.d < p.g - 2) w.push_back("degree below g-2");
    if (p.d > 2 * p.g - 2) w.push_back("degree above 2g-2");
    return w;
}

// Expected dimension of the rank-2 Brill-Noether locus with fixed generic
// determinant of degree d.
inline long rho(const BNParams& p) {
    return 4 * p.g - 3 - p.k * (p.k - p.d + 2 * p.g - 2);
}

// Expected dimension with a fixed special (rather than generic) determinant.
inline long rho_special(const BNParams& p) {
    return rho(p) - p.g + binom2(p.k);
}

// Expected dimension of the locus where the determinant is allowed to vary.
inline long varying_det_dimension(const BNParams& p) {
    return rho(p) + binom2(p.k) - (p.d - p.g + 3);
}

// The varying-determinant locus exceeds rho - 1 exactly when C(k,2) > d-g+2
// (strict; equality keeps the predicate false).
inline bool exceeds_rho_minus_1(const BNParams& p) {
    return binom2(p.k) > p.d - p.g + 2;
}

struct InequalityResult {
    bool holds = false;
    long lhs = 0;
    long rhs = 0;
};

// Existence inequality for stable rank-2 series: 4g >= k^2 + 2k(2g-2-d) for
// even d, with an extra +4 on the right for odd d.
inline InequalityResult main_inequality(const BNParams& p) {
    InequalityResult r;
    r.lhs = 4 * p.g;
    r.rhs = p.k * p.k + 2 * p.k * (2 * p.g - 2 - p.d);
    if (!p.d_even()) r.rhs += 4;
    r.holds = r.lhs >= r.rhs;
    return r;
}

// Parity case of (d, k): first letter is the parity of d, second of k
// (E = even, O = odd).
enum class ParityCase { EE, EO, OE, OO };

inline const char* parity_case_name(ParityCase c) {
    switch (c) {
        case ParityCase::EE: return "ee";
        case ParityCase::EO: return "eo";
        case ParityCase::OE: return "oe";
        case ParityCase::OO: return "oo";
    }
    return "?";
}

inline ParityCase parity_case_of(const BNParams& p) {
    if (p.d_even()) return p.k_even() ? ParityCase::EE : ParityCase::EO;
    return p.k_even() ? ParityCase::OE : ParityCase::OO;
}

inline ParityCase parity_case_from_name(const std::string& s) {
    if (s == "ee") return ParityCase::EE;
    if (s == "eo") return ParityCase::EO;
    if (s == "oe") return ParityCase::OE;
    if (s == "oo") return ParityCase::OO;
    throw ValidationError("unknown parity case '" + s + "' (expected ee|eo|oe|oo)");
}

struct CaseInequalityResult {
    bool holds = false;
    long lhs = 0;
    long rhs = 0;
    // Integer equivalence with main_inequality at these parameters.
    bool equivalent_to_main = false;
};

// Per-case genus inequality driving the chain constructions.  Each case's
// right-hand side is also the number of components consumed by the structured
// blocks of that construction, so "holds" is exactly "the blocks fit".
inline CaseInequalityResult case_inequality(const BNParams& p, ParityCase c) {
    if (parity_case_of(p) != c)
        throw ValidationError(std::string("parity mismatch: (d,k)=(") + std::to_string(p.d) +
                              "," + std::to_string(p.k) + ") is not case " + parity_case_name(c));
    const long g = p.g, dp = p.dprime(), kp = p.kprime();
    CaseInequalityResult r;
    r.lhs = g;
    switch (c) {
        case ParityCase::EE:
            r.rhs = kp * kp + 2 * kp * (g - 1 - dp);
            break;
        case ParityCase::EO:
            r.rhs = kp * kp + kp + 1 + (2 * kp + 1) * (g - 1 - dp);
            break;
        case ParityCase::OE:
            r.rhs = kp * kp + 1 + kp * (2 * g - 2 - (2 * dp + 1));
            break;
        case ParityCase::OO:
            r.rhs = kp * kp + 1 + (2 * kp + 1) * (g - 1 - dp);
            break;
    }
    r.holds = r.lhs >= r.rhs;
    r.equivalent_to_main = (r.holds == main_inequality(p).holds);
    return r;
}

// The four parameter triples where the construction only reaches a strictly
// semistable series (no stable one exists).
inline bool stable_exception(const BNParams& p) {
    static constexpr std::array<std::array<long, 3>, 4> ex = {{{1, 0, 2}, {2, 2, 2}, {3, 2, 2}, {4, 6, 4}}};
    for (const auto& e : ex)
        if (p.g == e[0] && p.d == e[1] && p.k == e[2]) return true;
    return false;
}

// (3,4,3) is settled by a separate smooth-curve argument rather than the
// chain construction; it is reported as its own status, not an exception.
inline bool special_case_triple(const BNParams& p) {
    return p.g == 3 && p.d == 4 && p.k == 3;
}

struct StratumDims {
    long target_dim = 0;
    long stratum_dim = 0;
    long fiber_dim = 0;
};

// Dimension bookkeeping for the strata of a degree-d multidegree space cut
// out by forcing |S| coordinates to drop by 2: the stratum loses 2 per forced
// coordinate and the fiber gains 1 per forced coordinate.
inline StratumDims g0_stratum_dims(long d, long S) {
    if (d < 0 || S < 0) throw ValidationError("g0_stratum_dims: negative input");
    StratumDims r;
    r.target_dim = d;
    r.stratum_dim = d - 2 * S;
    r.fiber_dim = S;
    return r;
}

// Degenerate variant: the target degree d' is what remains outside the
// contracted components; S1 counts doubly forced coordinates, S2 singly
// forced ones, and m the connected clusters of contracted components.
inline StratumDims g0_stratum_dims_degenerate(long dprime, long S1, long S2, long m) {
    if (dprime < 0 || S1 < 0 || S2 < 0 || m < 0)
        throw ValidationError("g0_stratum_dims_degenerate: negative input");
    StratumDims r;
    r.target_dim = dprime;
    r.stratum_dim = dprime - 2 * S1 - S2;
    r.fiber_dim = S1 + S2 - m;
    return r;
}

}  // namespace lgrass
