#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "numerics.hpp"
#include "polynomial.hpp"
#include "projective.hpp"

namespace hdist {

enum class MorphismStatus { unverified, verified, not_morphism };

const char* to_string(MorphismStatus status) noexcept;

// A degree-d rational self-map of P^N as an (N+1) x K integer coefficient
// table a_{iI}, monomials in graded lex order (x0 > ... > xN). The whole
// table is normalized like a projective point: content 1, first nonzero
// entry positive.
class Morphism {
public:
    // Takes an arbitrary nonzero table; normalizes it.
    Morphism(std::size_t dim, unsigned degree, std::vector<std::vector<mpz_class>> coeffs,
             MorphismStatus status = MorphismStatus::unverified);

    // Builds from one polynomial text per coordinate; rational coefficients
    // are cleared with a common denominator.
    static Morphism from_text(std::size_t dim, unsigned degree, const std::vector<std::string>& coords);
    static Morphism from_polys(const std::vector<Poly>& coords);

    // [x0^d : ... : xN^d]
    static Morphism power(std::size_t dim, unsigned degree);
    // [x^d + A x^(d-1) y : y^d] on P^1.
    static Morphism phi_a(unsigned degree, const mpz_class& a);

    std::size_t dim() const noexcept { return dim_; }
    unsigned degree() const noexcept { return degree_; }
    std::size_t monomial_count() const noexcept { return coeffs_.front().size(); }
    MorphismStatus status() const noexcept { return status_; }
    Morphism with_status(MorphismStatus status) const;

    const std::vector<std::vector<mpz_class>>& coeffs() const noexcept { return coeffs_; }
    Poly coordinate(std::size_t i) const;
    std::vector<std::string> coordinate_texts() const;

    // Flattened point [a_{iI}] of Rat_d^N, row-major over i.
    std::vector<mpz_class> coefficient_point() const;
    mpz_class max_abs_coefficient() const;
    bool is_power_map() const;

    // (phi_0(x), ..., phi_N(x)) at the given integer vector, no normalization.
    std::vector<mpz_class> evaluate_raw(std::span<const mpz_class> x) const;

    friend bool operator==(const Morphism& a, const Morphism& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
    }

private:
    std::size_t dim_;
    unsigned degree_;
    std::vector<std::vector<mpz_class>> coeffs_;
    MorphismStatus status_;
    std::vector<Monomial> monomials_;
};

struct Evaluation {
    ProjPoint point;
    std::vector<mpz_class> raw;  // first-step raw tuple at P's canonical coordinates
};

// phi^n(P), gcd-normalized after every step. Throws base_locus when a raw
// tuple vanishes.
Evaluation evaluate(const Morphism& phi, const ProjPoint& p, unsigned iterations = 1);

// h(phi): log max |a_{iI}|.
HeightInterval naive_height(const Morphism& phi, unsigned precision_bits = kDefaultPrecisionBits);

}  // namespace hdist
