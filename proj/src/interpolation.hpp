#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "linalg.hpp"
#include "morphism.hpp"
#include "numerics.hpp"
#include "projective.hpp"

namespace hdist {

// Row j holds the degree-d monomials evaluated at point j, in the fixed
// graded lex order. det = 0 exactly on the degenerate configurations.
struct MonomialMatrix {
    std::size_t dim = 0;
    unsigned degree = 0;
    std::vector<ProjPoint> points;
    IntMatrix entries;
    mpz_class det;
    IntMatrix adjugate;  // entries * adjugate == det * I

    bool degenerate() const { return sgn(det) == 0; }
};

// Requires exactly K = C(N+d, N) points.
MonomialMatrix monomial_matrix(std::size_t dim, unsigned degree, const std::vector<ProjPoint>& points);

// Same matrix from unnormalized integer coordinate tuples.
IntMatrix monomial_rows(std::size_t dim, unsigned degree, const std::vector<std::vector<mpz_class>>& coords);

struct PointValue {
    ProjPoint point;
    std::vector<mpz_class> value;  // raw phi(x) at the canonical coordinates x of point
};

// Solves D a = adj * V on the first K pairs and normalizes the result.
// The values must be raw evaluations of one map, all with the same scaling;
// every pair (including any beyond the first K) is re-evaluated and must be
// proportional to its value by one common scalar. With exactly K pairs any
// values are interpolated, so a scaling error is only caught by extra pairs.
Morphism recover_map(std::size_t dim, unsigned degree, const std::vector<PointValue>& pairs);

// d(K-1) sum h(P_j) + sum h(phi(P_j)) - h(phi).
HeightInterval prop9_slack(const Morphism& phi, const std::vector<ProjPoint>& points,
                           unsigned precision_bits = kDefaultPrecisionBits);

struct TermCount {
    std::size_t permutations = 0;        // K!
    std::size_t distinct_monomials = 0;  // after collecting like terms
};

// Expands the determinant of the generic monomial matrix by permutations
// and counts the distinct monomials in the K groups of variables.
TermCount determinant_term_count(std::size_t dim, unsigned degree);

struct Prop9Scan {
    std::size_t configurations = 0;  // nondegenerate configurations used
    std::size_t degenerate = 0;      // drawn but skipped
    Dyadic max_negative_slack;       // running max of the upper end of -slack
    std::vector<ProjPoint> worst;    // configuration attaining it
};

// Draws K distinct points at random from enumerate_points(N, bound) until
// `configurations` nondegenerate ones have been seen.
Prop9Scan prop9_scan(const Morphism& phi, unsigned long bound, std::size_t configurations, std::uint64_t seed,
                     unsigned precision_bits = kDefaultPrecisionBits);

struct Genericity {
    std::size_t drawn = 0;
    std::size_t degenerate = 0;
    double fraction() const { return drawn ? static_cast<double>(degenerate) / static_cast<double>(drawn) : 0.0; }
};

// Fraction of random K-subsets of enumerate_points(N, bound) with det = 0.
Genericity degenerate_fraction(std::size_t dim, unsigned degree, unsigned long bound, std::size_t draws,
                               std::uint64_t seed);

}  // namespace hdist
