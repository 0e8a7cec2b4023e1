#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "distance.hpp"
#include "morphism.hpp"
#include "serialize.hpp"

namespace hdist {

inline constexpr int kReportVersion = 1;

// Fixed columns, string cells; the same config always yields the same bytes.
struct ExperimentReport {
    std::string name;
    Json config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    Json summary;
    std::vector<std::string> notes;

    std::string to_csv() const;
    Json to_json() const;
};

struct ExperimentConfig {
    unsigned long sample_bound = 2;
    mpq_class eps{1, 1000000};
    unsigned precision_bits = kDefaultPrecisionBits;
    std::uint64_t seed = 0;
};

// phi_A = [x^d + A x^(d-1) y : y^d] for each A: heights, both distances
// with witness, and the measured sup of |(1/d) h(phi_A(a)) - h(a)| next to
// the bound (1/d) log(1 + |A|).
ExperimentReport phi_a_experiment(unsigned degree, const std::vector<mpz_class>& a_values,
                                  const ExperimentConfig& config);

// Every normalized coefficient tensor with entries in [-bound, bound]:
// content 1, first nonzero entry positive, in lexicographic order.
std::vector<Morphism> enumerate_coefficient_tensors(std::size_t dim, unsigned degree, long bound);

// Ratio brackets h(phi) / Delta_hat over the morphisms of the enumeration.
ExperimentReport alpha_scan(std::size_t dim, unsigned degree, long coeff_bound, const ExperimentConfig& config);

// Classifies the enumeration, bounds delta_hat(phi, psi) for each
// morphism, and checks the two-sided height comparison with measured
// constants; a violated check throws internal.
ExperimentReport finiteness_search(std::size_t dim, unsigned degree, const Morphism& psi, long coeff_bound,
                                   const mpq_class& complexity_bound, const ExperimentConfig& config);

}  // namespace hdist
