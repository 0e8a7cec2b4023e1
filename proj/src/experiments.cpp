#include "experiments.hpp"

#include <cstdio>
#include <optional>

#include "errors.hpp"
#include "height_bounds.hpp"
#include "interpolation.hpp"
#include "polynomial.hpp"

namespace hdist {

namespace {

constexpr unsigned kRatioBits = 64;

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string map_text(const Morphism& phi) {
    std::string out;
    for (const auto& c : phi.coordinate_texts()) out += (out.empty() ? "" : " : ") + c;
    return out;
}

Json base_config(const std::string& name, const ExperimentConfig& config) {
    Json j;
    j["experiment"] = name;
    j["version"] = kReportVersion;
    j["sample_bound"] = config.sample_bound;
    j["eps"] = to_string(config.eps);
    j["precision_bits"] = config.precision_bits;
    j["seed"] = config.seed;
    return j;
}

SampleSpec sample_spec(const ExperimentConfig& config) {
    SampleSpec spec;
    spec.coord_bound = config.sample_bound;
    spec.eps = config.eps;
    spec.options.precision_bits = config.precision_bits;
    return spec;
}

// C / (d - 1) for the map, rounded up: the bound on |h_hat - h|.
Dyadic height_gap_bound(const CertifiedMap& phi) {
    return Dyadic::from_rational(phi.telescoping_constant().to_rational() / mpq_class(phi.map.degree() - 1), 64,
                                 Rounding::up);
}

// First K-subset, in lexicographic order, of the height-zero points with
// nonzero monomial determinant.
std::vector<ProjPoint> height_zero_configuration(std::size_t dim, unsigned degree) {
    const auto pool = enumerate_points(dim, 1);
    const std::size_t k = monomial_count(dim, degree);
    if (pool.size() < k) throw Error(ErrorKind::degenerate_configuration, "too few height-zero points");
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        std::vector<ProjPoint> pts;
        for (auto i : idx) pts.push_back(pool[i]);
        if (!monomial_matrix(dim, degree, pts).degenerate()) return pts;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t m = i; m < k; ++m) idx[m] = idx[m - 1] + 1;
    }
    throw Error(ErrorKind::degenerate_configuration, "every height-zero configuration is degenerate");
}

}  // namespace

std::string ExperimentReport::to_csv() const {
    std::string out = "# hdist experiment " + name + " v" + std::to_string(kReportVersion) + "\n";
    for (const auto& [key, value] : config.items()) out += "# config " + key + "=" + value.dump() + "\n";
    for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + csv_cell(columns[c]);
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_cell(row[c]);
        out += "\n";
    }
    for (const auto& [key, value] : summary.items()) out += "# summary " + key + "=" + value.dump() + "\n";
    for (const auto& note : notes) out += "# note " + note + "\n";
    return out;
}

Json ExperimentReport::to_json() const {
    Json j;
    j["experiment"] = name;
    j["version"] = kReportVersion;
    j["config"] = config;
    j["columns"] = columns;
    Json records = Json::array();
    for (const auto& row : rows) {
        Json r;
        for (std::size_t c = 0; c < columns.size(); ++c) r[columns[c]] = row[c];
        records.push_back(r);
    }
    j["rows"] = records;
    j["summary"] = summary;
    j["notes"] = notes;
    return j;
}

ExperimentReport phi_a_experiment(unsigned degree, const std::vector<mpz_class>& a_values,
                                  const ExperimentConfig& config) {
    if (degree < 2) throw Error(ErrorKind::invalid_argument, "degree must be at least 2");
    ExperimentReport report;
    report.name = "phi-a";
    report.config = base_config(report.name, config);
    report.config["d"] = degree;
    Json a_list = Json::array();
    for (const auto& a : a_values) a_list.push_back(a.get_str());
    report.config["A"] = a_list;
    report.columns = {"d",          "A",           "h_phi_lo",      "h_phi_hi",     "Delta_lower", "Delta_upper",
                      "Delta_witness", "delta_lower", "delta_upper", "delta_witness", "weil_gap_lo", "weil_gap_hi",
                      "weil_gap_at", "claimed_lo",  "claimed_hi",    "discrepancy",  "sample_size"};

    const CertifiedMap power = certify(Morphism::power(1, degree), config.precision_bits);
    const mpq_class inv_d(1, degree);
    std::size_t discrepancies = 0;
    for (const auto& a : a_values) {
        if (sgn(a) == 0) throw Error(ErrorKind::invalid_argument, "A must be nonzero");
        const CertifiedMap phi = certify(Morphism::phi_a(degree, a), config.precision_bits);
        SampleSpec spec = sample_spec(config);
        spec.extra_points.push_back(ProjPoint::normalize(std::span<const mpz_class>(std::vector<mpz_class>{-a, 1})));
        CanonicalHeightCache cache;
        const auto Delta = estimate_Delta_hat(phi, power, spec, &cache);
        const auto delta = estimate_complexity(phi, spec, &cache);

        std::optional<HeightInterval> weil_gap;
        std::optional<ProjPoint> weil_at;
        for (const auto& p : sample_points(1, spec)) {
            const HeightInterval image = weil_height(evaluate(phi.map, p, 1).point, config.precision_bits);
            const HeightInterval gap =
                interval::abs_diff(interval::scale(image, inv_d), weil_height(p, config.precision_bits));
            if (!weil_gap || weil_gap->lo() < gap.lo()) {
                weil_gap = gap;
                weil_at = p;
            }
        }
        const mpz_class one_plus = 1 + abs(a);
        const HeightInterval claimed = interval::scale(log_enclosure(one_plus, config.precision_bits), inv_d);
        const bool discrepancy = weil_gap->lo() > claimed.hi();
        if (discrepancy) ++discrepancies;

        const HeightInterval h = naive_height(phi.map, config.precision_bits);
        report.rows.push_back({std::to_string(degree), a.get_str(), lower_text(h.lo()), upper_text(h.hi()),
                               lower_text(Delta.lower), upper_text(Delta.upper), Delta.witness.to_string(),
                               lower_text(delta.lower), upper_text(delta.upper), delta.witness.to_string(),
                               lower_text(weil_gap->lo()), upper_text(weil_gap->hi()), weil_at->to_string(),
                               lower_text(claimed.lo()), upper_text(claimed.hi()), discrepancy ? "yes" : "no",
                               std::to_string(Delta.sample_size)});
    }
    report.summary["rows"] = report.rows.size();
    report.summary["discrepancies"] = discrepancies;
    report.notes.push_back("claimed = (1/d) log(1+|A|); discrepancy = measured Weil gap lower end above claimed upper end");
    return report;
}

std::vector<Morphism> enumerate_coefficient_tensors(std::size_t dim, unsigned degree, long bound) {
    if (bound < 1) throw Error(ErrorKind::invalid_argument, "coefficient bound must be at least 1");
    const std::size_t k = monomial_count(dim, degree);
    const std::size_t size = (dim + 1) * k;
    std::vector<long> entries(size, 0);
    std::vector<Morphism> out;
    // The first nonzero entry is positive: pick its position, then run the
    // later entries over [-bound, bound].
    for (std::size_t lead = 0; lead < size; ++lead) {
        for (long first = 1; first <= bound; ++first) {
            std::fill(entries.begin(), entries.end(), 0);
            entries[lead] = first;
            for (std::size_t m = lead + 1; m < size; ++m) entries[m] = -bound;
            for (;;) {
                mpz_class g = 0;
                for (std::size_t m = lead; m < size; ++m) {
                    mpz_class v = entries[m];
                    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
                }
                if (g == 1) {
                    std::vector<std::vector<mpz_class>> coeffs(dim + 1, std::vector<mpz_class>(k));
                    for (std::size_t m = 0; m < size; ++m) coeffs[m / k][m % k] = entries[m];
                    out.emplace_back(dim, degree, std::move(coeffs));
                }
                std::size_t m = size;
                while (m > lead + 1 && entries[m - 1] == bound) entries[--m] = -bound;
                if (m == lead + 1) break;
                ++entries[m - 1];
            }
        }
    }
    return out;
}

ExperimentReport alpha_scan(std::size_t dim, unsigned degree, long coeff_bound, const ExperimentConfig& config) {
    if (degree < 2) throw Error(ErrorKind::invalid_argument, "degree must be at least 2");
    ExperimentReport report;
    report.name = "alpha";
    report.config = base_config(report.name, config);
    report.config["N"] = dim;
    report.config["d"] = degree;
    report.config["coeff_bound"] = coeff_bound;
    report.columns = {"index",       "map",         "h_phi_lo",  "h_phi_hi", "Delta_lower",
                      "Delta_upper", "ratio_lo",    "ratio_hi",  "note"};

    const CertifiedMap power = certify(Morphism::power(dim, degree), config.precision_bits);
    const SampleSpec spec = sample_spec(config);
    const Dyadic eps_floor = Dyadic::from_rational(config.eps, 64, Rounding::down);
    std::optional<Dyadic> max_ratio;
    std::size_t morphisms = 0, zero_complexity = 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t fitted = 0;
    const auto tensors = enumerate_coefficient_tensors(dim, degree, coeff_bound);
    for (std::size_t index = 0; index < tensors.size(); ++index) {
        const Morphism classified = classify(tensors[index]);
        if (classified.status() != MorphismStatus::verified) continue;
        ++morphisms;
        const CertifiedMap phi = certify(classified, config.precision_bits);
        const HeightInterval h = naive_height(phi.map, config.precision_bits);
        const auto Delta = estimate_Delta_hat(phi, power, spec);
        std::string ratio_lo, ratio_hi, note;
        if (Delta.upper.is_zero()) {
            note = "zero-complexity";
            ++zero_complexity;
        } else {
            const Dyadic lo = Dyadic::quotient(h.lo(), Delta.upper, kRatioBits, Rounding::down);
            const Dyadic hi = Dyadic::quotient(h.hi(), max(Delta.lower, eps_floor), kRatioBits, Rounding::up);
            ratio_lo = lower_text(lo);
            ratio_hi = upper_text(hi);
            if (!max_ratio || *max_ratio < lo) max_ratio = lo;
            const double x = h.lo().to_double(), y = Delta.upper.to_double();
            sx += x, sy += y, sxx += x * x, sxy += x * y;
            ++fitted;
        }
        report.rows.push_back({std::to_string(index), map_text(phi.map), lower_text(h.lo()), upper_text(h.hi()),
                               lower_text(Delta.lower), upper_text(Delta.upper), ratio_lo, ratio_hi, note});
    }
    report.summary["candidates"] = tensors.size();
    report.summary["morphisms"] = morphisms;
    report.summary["zero_complexity"] = zero_complexity;
    report.summary["max_ratio_lower"] = max_ratio ? lower_text(*max_ratio) : "none";
    report.summary["ceiling_dK"] = degree * monomial_count(dim, degree);
    const double det = static_cast<double>(fitted) * sxx - sx * sx;
    if (fitted >= 2 && det != 0) {
        const double a = (static_cast<double>(fitted) * sxy - sx * sy) / det;
        const double b = (sy - a * sx) / static_cast<double>(fitted);
        report.summary["fit_slope"] = fixed(a);
        report.summary["fit_intercept"] = fixed(b);
    } else {
        report.summary["fit_slope"] = "none";
        report.summary["fit_intercept"] = "none";
    }
    report.notes.push_back("ratio bracket = [h / Delta.upper, h / max(Delta.lower, eps)]; fit is Delta.upper ~ slope*h + intercept in double precision");
    return report;
}

ExperimentReport finiteness_search(std::size_t dim, unsigned degree, const Morphism& psi_map, long coeff_bound,
                                   const mpq_class& complexity_bound, const ExperimentConfig& config) {
    if (degree < 2) throw Error(ErrorKind::invalid_argument, "degree must be at least 2");
    if (psi_map.dim() != dim || psi_map.degree() < 2) {
        throw Error(ErrorKind::invalid_argument, "psi must act on the same space with degree at least 2");
    }
    const CertifiedMap psi = certify(psi_map, config.precision_bits);
    ExperimentReport report;
    report.name = "finiteness";
    report.config = base_config(report.name, config);
    report.config["N"] = dim;
    report.config["d"] = degree;
    report.config["psi"] = map_text(psi.map);
    report.config["coeff_bound"] = coeff_bound;
    report.config["complexity_bound"] = to_string(complexity_bound);
    report.columns = {"index", "map", "status", "h_phi_lo", "h_phi_hi", "delta_lower", "delta_upper", "witness",
                      "neg_slack_hi", "within_bound"};

    const std::size_t k = monomial_count(dim, degree);
    const auto config_points = height_zero_configuration(dim, degree);
    const SampleSpec spec = sample_spec(config);
    const HeightInterval h_psi = naive_height(psi.map, config.precision_bits);

    struct Row {
        std::size_t index;
        Morphism map;
        HeightInterval h;
        std::optional<DistanceEstimate> delta;
        Dyadic neg_slack;
    };
    std::vector<Row> rows;
    std::size_t morphisms = 0;
    CanonicalHeightCache psi_cache;
    const auto tensors = enumerate_coefficient_tensors(dim, degree, coeff_bound);
    for (std::size_t index = 0; index < tensors.size(); ++index) {
        Morphism classified = classify(tensors[index]);
        Row row{index, classified, naive_height(classified, config.precision_bits), std::nullopt, Dyadic()};
        if (classified.status() == MorphismStatus::verified) {
            ++morphisms;
            const CertifiedMap phi = certify(classified, config.precision_bits);
            row.delta = estimate_delta_hat(phi, psi, spec, &psi_cache);
            row.neg_slack = -prop9_slack(phi.map, config_points, config.precision_bits).lo();
        }
        rows.push_back(std::move(row));
    }

    // Measured constants over the whole run.
    std::optional<Dyadic> c_nd, c_prime;
    for (const auto& r : rows) {
        if (!r.delta) continue;
        if (!c_nd || *c_nd < r.neg_slack) c_nd = r.neg_slack;
        const Dyadic spread = r.delta->upper - r.h.lo() - h_psi.lo();
        if (!c_prime || *c_prime < spread) c_prime = spread;
    }
    const Dyadic scale(static_cast<long>(k * (degree + 1)));
    const Dyadic c_psi = c_nd ? *c_nd + scale * height_gap_bound(psi) : Dyadic();

    const Dyadic bound_up = Dyadic::from_rational(complexity_bound, 64, Rounding::up);
    std::size_t within = 0;
    for (const auto& r : rows) {
        if (!r.delta) {
            report.rows.push_back({std::to_string(r.index), map_text(r.map), to_string(r.map.status()),
                                   lower_text(r.h.lo()), upper_text(r.h.hi()), "", "", "", "", ""});
            continue;
        }
        // h(phi) <= (d+1) K delta.upper + C_psi and
        // delta.lower <= h(phi) + h(psi) + C'.
        const Dyadic rhs_upper = scale * r.delta->upper + c_psi;
        if (r.h.lo() > rhs_upper) {
            throw Error(ErrorKind::internal, "height comparison violated for map " + map_text(r.map));
        }
        if (r.delta->lower > r.h.hi() + h_psi.hi() + *c_prime) {
            throw Error(ErrorKind::internal, "distance comparison violated for map " + map_text(r.map));
        }
        const bool inside = r.delta->upper <= bound_up;
        if (inside) ++within;
        report.rows.push_back({std::to_string(r.index), map_text(r.map), to_string(r.map.status()),
                               lower_text(r.h.lo()), upper_text(r.h.hi()), lower_text(r.delta->lower),
                               upper_text(r.delta->upper), r.delta->witness.to_string(), upper_text(r.neg_slack),
                               inside ? "yes" : "no"});
    }

    std::string configuration;
    for (const auto& p : config_points) configuration += (configuration.empty() ? "" : " ") + p.to_string();
    report.summary["candidates"] = tensors.size();
    report.summary["morphisms"] = morphisms;
    report.summary["non_morphisms"] = tensors.size() - morphisms;
    report.summary["within_complexity_bound"] = within;
    report.summary["slack_configuration"] = configuration;
    report.summary["C_Nd_measured"] = c_nd ? upper_text(*c_nd) : "none";
    report.summary["C_psi_measured"] = upper_text(c_psi);
    report.summary["C_prime_measured"] = c_prime ? upper_text(*c_prime) : "none";
    report.summary["consistency_checks"] = "passed";
    report.notes.push_back("C_psi_measured = C_Nd_measured + K(d+1) * (C_psi/(d_psi-1)); checks: h <= (d+1)K delta.upper + C_psi_measured, delta.lower <= h + h(psi) + C_prime_measured");
    return report;
}

}  // namespace hdist
