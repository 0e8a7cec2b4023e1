#pragma once

// Test-side reference computations, written independently of the library
// code paths they check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

#include "numerics.hpp"

namespace oracle {

using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<300>>;

inline Big big_of(const mpz_class& n) { return Big(n.get_str()); }
inline Big big_of(const mpq_class& q) { return Big(q.get_num().get_str()) / Big(q.get_den().get_str()); }
inline Big big_of(const hdist::Dyadic& d) { return big_of(d.to_rational()); }

inline Big log_of(const mpz_class& n) { return boost::multiprecision::log(big_of(n)); }

// lo <= x <= hi with the oracle value x, allowing the oracle's own error.
inline bool encloses(const hdist::HeightInterval& h, const Big& x) {
    const Big slack = Big("1e-80");
    return big_of(h.lo()) <= x + slack && x - slack <= big_of(h.hi());
}

// Determinant by the Leibniz permutation sum.
inline mpz_class leibniz_det(const std::vector<std::vector<mpz_class>>& a) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    mpz_class total = 0;
    do {
        std::size_t inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inversions;
        mpz_class term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n && term != 0; ++i) term *= a[i][perm[i]];
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// Dense univariate polynomial over Q, lowest degree first.
using QPoly = std::vector<mpq_class>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly remainder(QPoly a, const QPoly& b) {
    trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        const mpq_class factor = a.back() / b.back();
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
        trim(a);
    }
    return a;
}

inline std::size_t gcd_degree(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = remainder(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? 0 : a.size() - 1;
}

// Do two binary forms of degree d (coefficients of x^d, x^(d-1) y, ..., y^d)
// share a zero on P^1 over Q-bar? Checked as: both vanish at [1:0], or
// f(x,1) and g(x,1) have a nonconstant gcd, or one of them is identically
// zero.
inline bool binary_forms_share_zero(const std::vector<mpz_class>& f, const std::vector<mpz_class>& g) {
    const std::size_t d = f.size() - 1;
    auto all_zero = [](const std::vector<mpz_class>& v) {
        return std::all_of(v.begin(), v.end(), [](const mpz_class& c) { return c == 0; });
    };
    if (all_zero(f) || all_zero(g)) return d >= 1;
    if (f[0] == 0 && g[0] == 0) return true;
    // f(x,1) = sum_k f[k] x^(d-k)
    QPoly fx(d + 1), gx(d + 1);
    for (std::size_t k = 0; k <= d; ++k) {
        fx[d - k] = f[k];
        gx[d - k] = g[k];
    }
    return gcd_degree(fx, gx) > 0;
}

inline mpz_class random_int(std::mt19937_64& rng, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(rng);
}

}  // namespace oracle
