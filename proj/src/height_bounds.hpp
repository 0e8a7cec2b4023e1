#pragma once

#include <string>
#include <vector>

#include <gmpxx.h>

#include "morphism.hpp"
#include "numerics.hpp"
#include "polynomial.hpp"
#include "projective.hpp"

namespace hdist {

// Exact witness that phi has no common zero over Q-bar:
//     R_j * x_j^t = sum_i G[i][j] * phi_i      for every j,
// with t = (N+1)(d-1)+1 and integer polynomials G[i][j] of degree t-d.
// From it follow, for every P in P^N(Q),
//     d h(P) - C_low <= h(phi(P)) <= d h(P) + C_up.
struct OffsetCertificate {
    unsigned t = 0;
    std::vector<std::vector<Poly>> g;  // g[i][j]
    std::vector<mpz_class> r;          // R_j > 0
    std::string method;                // "sylvester" or "macaulay"

    // Integer factors; the offsets are their logarithms.
    mpz_class upper_factor;        // K * max |a_iI|
    mpz_class lower_factor;        // (N+1) * C_G * lcm_j R_j
    mpz_class row_sum_factor;      // max_i sum_I |a_iI|
    mpq_class sharp_lower_factor;  // lcm_j R_j * max_j (sum_i |G_ij|_1) / R_j
    mpz_class lcm_r;
    mpz_class c_g;                 // max_j sum_i |G_ij|_1

    HeightInterval c_up;   // encloses log(upper_factor)
    HeightInterval c_low;  // encloses log(lower_factor)
    // Tighter offsets from the same data, used for Tate telescoping.
    HeightInterval sharp_up;   // encloses log(row_sum_factor)
    HeightInterval sharp_low;  // encloses log(sharp_lower_factor)
};

enum class CertificateMethod { automatic, sylvester, macaulay };

// Solves for the certificate at the Macaulay degree. For N = 1 the
// automatic method uses the Sylvester matrix and its adjugate. Throws
// not_morphism when phi has a common zero over Q-bar.
OffsetCertificate find_certificate(const Morphism& phi, unsigned precision_bits = kDefaultPrecisionBits,
                                   CertificateMethod method = CertificateMethod::automatic);

// Checks the polynomial identity coefficient by coefficient and recomputes
// every derived factor; throws invalid_certificate on any mismatch.
void verify_certificate(const Morphism& phi, const OffsetCertificate& cert);
bool identity_holds(const Morphism& phi, const OffsetCertificate& cert);

struct Offsets {
    HeightInterval c_up;
    HeightInterval c_low;
};

// Recomputes (C_up, C_low) enclosures for a certificate at the given
// precision; throws invalid_certificate if cert does not certify phi.
Offsets offsets(const Morphism& phi, const OffsetCertificate& cert,
                unsigned precision_bits = kDefaultPrecisionBits);

// Result of the exact integer inequalities at one point.
struct OffsetCheck {
    bool upper = false;        // H(phi P) <= K max|a| H(P)^d
    bool lower = false;        // lcm R (N+1) C_G H(phi P) >= H(P)^d
    bool sharp_upper = false;  // H(phi P) <= row_sum H(P)^d
    bool sharp_lower = false;  // sharp_lower_factor H(phi P) >= H(P)^d
    bool gcd_divides = false;  // gcd of raw tuple divides lcm R
    bool all() const { return upper && lower && sharp_upper && sharp_lower && gcd_divides; }
};

OffsetCheck check_offsets_at(const Morphism& phi, const OffsetCertificate& cert, const ProjPoint& p);

// A morphism together with its certificate.
struct CertifiedMap {
    Morphism map;
    OffsetCertificate cert;

    // C with |h(phi(P)) - d h(P)| <= C for all P (upper endpoint).
    Dyadic telescoping_constant() const;
};

CertifiedMap certify(const Morphism& phi, unsigned precision_bits = kDefaultPrecisionBits);

// Returns phi with status verified or not_morphism.
Morphism classify(const Morphism& phi);

}  // namespace hdist
