// Command-line front end; talks to the library only through the C API.
#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "hdist/hdist.h"

namespace {

struct MapDeleter {
    void operator()(hd_map* m) const { hd_map_free(m); }
};
struct PointDeleter {
    void operator()(hd_point* p) const { hd_point_free(p); }
};
using MapPtr = std::unique_ptr<hd_map, MapDeleter>;
using PointPtr = std::unique_ptr<hd_point, PointDeleter>;

// Carries a library status out to main().
struct Failure {
    hd_status status;
};

void check(hd_status s) {
    if (s != HD_OK) throw Failure{s};
}

// An argument naming an existing file is replaced by the file's contents.
std::string text_or_file(const std::string& arg) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(arg, ec)) return arg;
    std::ifstream in(arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

MapPtr load_map(const std::string& arg) {
    hd_map* m = nullptr;
    check(hd_map_parse(text_or_file(arg).c_str(), &m));
    return MapPtr(m);
}

PointPtr load_point(const std::string& arg) {
    hd_point* p = nullptr;
    check(hd_point_parse(arg.c_str(), &p));
    return PointPtr(p);
}

struct Output {
    std::string path;

    void write(char* text) const {
        std::string s(text);
        hd_string_free(text);
        if (s.empty() || s.back() != '\n') s += '\n';
        if (path.empty()) {
            std::cout << s;
            return;
        }
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << path << "\n";
            throw Failure{HD_ERR_INVALID};
        }
        out << s;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified heights and arithmetic distances for morphisms of projective space"};
    app.require_subcommand(1);
    app.fallthrough();

    hd_options options;
    hd_options_init(&options);
    std::string eps = "1/1000000";
    std::string format = "json";
    Output output;
    app.add_option("--precision", options.precision_bits, "Bits of precision for log enclosures")
        ->capture_default_str();
    app.add_option("--eps", eps, "Target width of canonical height intervals (exact rational)")->capture_default_str();
    app.add_option("--bound", options.bound, "Coordinate bound of the sample points")->capture_default_str();
    app.add_option("--seed", options.seed, "Seed for randomized scans")->capture_default_str();
    app.add_option("--bit-ceiling", options.bit_ceiling, "Largest iterate size in bits (0 = default)");
    app.add_option("--out", output.path, "Write the result to this file");
    app.add_option("--format", format, "Output format for experiments")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    std::string point_arg, map_arg, map_b_arg, method = "auto", cert_arg, mode = "delta", extra, pairs_arg,
                                                points_arg, matrix_arg;
    unsigned long configurations = 500;
    long entry_bound = 1;

    auto* height = app.add_subcommand("height", "Weil height of a point");
    height->add_option("point", point_arg, "Point such as 3:-2")->required();

    auto* map_height = app.add_subcommand("map-height", "Height of a map's coefficient point");
    map_height->add_option("--map", map_arg, "Map text or file")->required();

    auto* certificate = app.add_subcommand("certificate", "Offset certificate of a morphism");
    certificate->add_option("--map", map_arg, "Map text or file")->required();
    certificate->add_option("--method", method, "auto, sylvester or macaulay")
        ->check(CLI::IsMember({"auto", "sylvester", "macaulay"}));

    auto* check_certificate = app.add_subcommand("check-certificate", "Verify a certificate against a map");
    check_certificate->add_option("--map", map_arg, "Map text or file")->required();
    check_certificate->add_option("--certificate", cert_arg, "Certificate JSON text or file")->required();

    auto* canonical = app.add_subcommand("canonical-height", "Certified canonical height of a point");
    canonical->add_option("--map", map_arg, "Map text or file")->required();
    canonical->add_option("--point", point_arg, "Point such as 1:2")->required();

    auto* distance = app.add_subcommand("distance", "Bounds for the distance between two maps");
    distance->add_option("--map-a", map_arg, "First map")->required();
    distance->add_option("--map-b", map_b_arg, "Second map")->required();
    distance->add_option("--mode", mode, "delta or Delta")->check(CLI::IsMember({"delta", "Delta"}));
    distance->add_option("--extra", extra, "Extra sample points separated by spaces");

    auto* complexity = app.add_subcommand("complexity", "Bounds for the distance to the power map");
    complexity->add_option("--map", map_arg, "Map text or file")->required();
    complexity->add_option("--extra", extra, "Extra sample points separated by spaces");

    auto* recover = app.add_subcommand("recover", "Recover a map from point-value pairs");
    recover->add_option("--pairs", pairs_arg, "Pairs JSON text or file")->required();

    auto* prop9 = app.add_subcommand("prop9", "Slack of the map height inequality at a configuration");
    prop9->add_option("--map", map_arg, "Map text or file")->required();
    prop9->add_option("--points", points_arg, "K points separated by spaces (text or file); scan if omitted");
    prop9->add_option("--configurations", configurations, "Random configurations to scan")->capture_default_str();

    auto* conjugate = app.add_subcommand("conjugate", "Conjugate a map by a matrix");
    conjugate->add_option("--map", map_arg, "Map text or file")->required();
    conjugate->add_option("--f", matrix_arg, "Matrix such as 1,1;0,1 (text or file)")->required();

    auto* class_distance = app.add_subcommand("class-distance", "Search over conjugates for the smallest bound");
    class_distance->add_option("--map-a", map_arg, "First map")->required();
    class_distance->add_option("--map-b", map_b_arg, "Second map")->required();
    class_distance->add_option("--entry-bound", entry_bound, "Matrix entry bound")->capture_default_str();

    auto* experiment = app.add_subcommand("experiment", "Run an experiment");
    experiment->require_subcommand(1);
    experiment->fallthrough();
    unsigned degree = 2;
    std::size_t dim = 1;
    std::vector<std::string> a_values{"10", "100", "1000"};
    long coeff_bound = 1;
    std::string psi = "power:1,2", complexity_bound = "5";
    auto* phi_a = experiment->add_subcommand("phi-a", "The x^d + A x^(d-1) family");
    phi_a->add_option("--d", degree, "Degree")->capture_default_str();
    phi_a->add_option("--A", a_values, "Values of A")->delimiter(',');
    auto* alpha = experiment->add_subcommand("alpha", "Ratio scan of h(phi) against the distance bounds");
    alpha->add_option("--N", dim, "Dimension")->capture_default_str();
    alpha->add_option("--d", degree, "Degree")->capture_default_str();
    alpha->add_option("--coeff-bound", coeff_bound, "Coefficient bound")->capture_default_str();
    auto* finiteness = experiment->add_subcommand("finiteness", "Enumerate maps of bounded coefficients");
    finiteness->add_option("--N", dim, "Dimension")->capture_default_str();
    finiteness->add_option("--d", degree, "Degree")->capture_default_str();
    finiteness->add_option("--psi", psi, "Reference map")->capture_default_str();
    finiteness->add_option("--coeff-bound", coeff_bound, "Coefficient bound")->capture_default_str();
    finiteness->add_option("--complexity-bound", complexity_bound, "Distance bound for the sub-table")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    options.eps = eps.c_str();

    try {
        char* out = nullptr;
        if (*height) {
            auto p = load_point(point_arg);
            check(hd_point_height(p.get(), &options, &out));
        } else if (*map_height) {
            check(hd_map_height(load_map(map_arg).get(), &options, &out));
        } else if (*certificate) {
            check(hd_certificate(load_map(map_arg).get(), method.c_str(), &options, &out));
        } else if (*check_certificate) {
            check(hd_check_certificate(load_map(map_arg).get(), text_or_file(cert_arg).c_str(), &out));
        } else if (*canonical) {
            auto p = load_point(point_arg);
            check(hd_canonical_height(load_map(map_arg).get(), p.get(), &options, &out));
        } else if (*distance) {
            check(hd_distance(load_map(map_arg).get(), load_map(map_b_arg).get(), mode.c_str(),
                              extra.empty() ? nullptr : extra.c_str(), &options, &out));
        } else if (*complexity) {
            check(hd_complexity(load_map(map_arg).get(), extra.empty() ? nullptr : extra.c_str(), &options, &out));
        } else if (*recover) {
            check(hd_recover(text_or_file(pairs_arg).c_str(), &out));
        } else if (*prop9) {
            const std::string pts = points_arg.empty() ? std::string() : text_or_file(points_arg);
            check(hd_prop9(load_map(map_arg).get(), pts.empty() ? nullptr : pts.c_str(), configurations, &options,
                           &out));
        } else if (*conjugate) {
            hd_map* result = nullptr;
            check(hd_conjugate(load_map(map_arg).get(), text_or_file(matrix_arg).c_str(), &result));
            MapPtr owned(result);
            check(hd_map_to_json(owned.get(), &out));
        } else if (*class_distance) {
            check(hd_class_distance(load_map(map_arg).get(), load_map(map_b_arg).get(), entry_bound, &options, &out));
        } else {
            nlohmann::ordered_json params;
            std::string name;
            if (*phi_a) {
                name = "phi-a";
                params["d"] = degree;
                params["A"] = a_values;
            } else if (*alpha) {
                name = "alpha";
                params["N"] = dim;
                params["d"] = degree;
                params["coeff_bound"] = coeff_bound;
            } else {
                name = "finiteness";
                params["N"] = dim;
                params["d"] = degree;
                params["psi"] = text_or_file(psi);
                params["coeff_bound"] = coeff_bound;
                params["complexity_bound"] = complexity_bound;
            }
            check(hd_experiment(name.c_str(), params.dump().c_str(), &options, format.c_str(), &out));
        }
        output.write(out);
        return 0;
    } catch (const Failure& f) {
        const char* message = hd_last_error();
        std::cerr << "error (" << hd_status_name(f.status) << "): " << (*message ? message : "failed") << "\n";
        return static_cast<int>(f.status);
    }
}
