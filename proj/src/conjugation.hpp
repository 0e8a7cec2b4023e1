#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "distance.hpp"
#include "height_bounds.hpp"
#include "linalg.hpp"
#include "morphism.hpp"
#include "projective.hpp"

namespace hdist {

// An element of PGL_{N+1}(Q) as a primitive integer matrix: nonzero
// determinant, content 1, first nonzero entry positive.
class PglMap {
public:
    // Normalizes; throws singular_matrix when det = 0.
    explicit PglMap(IntMatrix matrix);

    static PglMap identity(std::size_t dim);
    // Rows separated by ';', entries by ',': "1,1;0,1".
    static PglMap parse(std::string_view text);

    std::size_t dim() const noexcept { return matrix_.rows() - 1; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    ProjPoint apply(const ProjPoint& p) const;
    PglMap inverse() const;  // the adjugate, normalized

    std::string to_string() const;

    // (f * g)(P) = f(g(P))
    friend PglMap operator*(const PglMap& f, const PglMap& g);
    friend bool operator==(const PglMap&, const PglMap&) = default;

private:
    IntMatrix matrix_;
};

// phi^f = f^-1 o phi o f, with f^-1 realized by the adjugate. Keeps phi's
// status, since conjugates of morphisms are morphisms.
Morphism conjugate(const Morphism& phi, const PglMap& f);

// Every PglMap with entries in [-bound, bound], each projective class once,
// in lexicographic order of the row-major entry tuple.
std::vector<PglMap> enumerate_pgl(std::size_t dim, long bound);

struct ClassSearchRow {
    PglMap f;
    DistanceEstimate estimate;
};

struct ClassSearchResult {
    std::size_t best = 0;  // index into table: least upper bound, first on ties
    std::vector<ClassSearchRow> table;
};

// Bounds for delta_hat(phi^f, psi) for every f with entries <= entry_bound.
ClassSearchResult class_distance_search(const CertifiedMap& phi, const CertifiedMap& psi, long entry_bound,
                                        const SampleSpec& spec);

}  // namespace hdist
