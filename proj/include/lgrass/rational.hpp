#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace lgrass {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Bad user input (malformed JSON, graph not a tree, shape mismatches, ...).
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A mathematical consistency check failed (diagram not prelinked, audit
// mismatch, non-integral exponent, singular matrix where invertible needed).
struct MathCheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A capped search exhausted its budget before reaching the target.
struct BoundedSearchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rat parse_rat(const std::string& text) {
    auto bad = [&] { throw ValidationError("not a rational: '" + text + "'"); };
    if (text.empty()) bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) bad();
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat();
}

inline std::string rat_str(const Rat& r) { return r.str(); }

// r^e for e >= 0, with 0^0 = 1.
inline Rat rat_pow(const Rat& r, long long e) {
    if (e < 0) throw ValidationError("negative exponent");
    Rat acc(1);
    for (long long i = 0; i < e; ++i) acc *= r;
    return acc;
}

inline long long binom2(long long n) { return n < 2 ? 0 : n * (n - 1) / 2; }

} // namespace lgrass
