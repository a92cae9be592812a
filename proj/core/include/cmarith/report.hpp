#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmarith/convolution.hpp"
#include "cmarith/heights.hpp"

namespace cmarith {

// Configuration of the verification battery.  Every tolerance is explicit and
// the canonical serialization feeds the config hash recorded in reports.
struct RunConfig {
    i64 D = 7;
    int pi_trace = 1;
    PolyZ quadratic_F = {-1, -1, 1};    // x^2 - x - 1, disc 5
    PolyZ cubic_F = {-1, -3, 0, 1};     // x^3 - 3x - 1, disc 81
    int weight = 3;
    int lambda_rank = 2;
    i64 conv_prec = 30;
    i64 twist_prec = 60;
    i64 hecke_cutoff = 0;  // 0: default formula
    std::uint64_t seed = 20240801;
    int jobs = 1;

    double tol_weil = 1e-12;
    double tol_identity = 1e-10;
    double tol_lambda_cross = 1e-8;
    double tol_fe = 1e-8;
    double tol_chowla = 1e-8;
    double tol_consistency = 1e-10;
    double tol_mode_agreement = 1e-6;
    double tol_deriv_fd = 1e-5;

    std::string canonical() const;
    std::string hash() const;  // FNV-1a 64 of canonical()
};

struct CheckResult {
    std::string name;
    std::string anchor;  // stable check identifier
    bool pass = false;
    double residual = 0;
    double runtime_ms = 0;
    std::string detail;  // first offending input on failure
};

struct VerificationReport {
    std::string config_hash;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    // deterministic: no runtimes in the JSON rendering
    std::string to_json() const;
    std::string to_text() const;
    std::string to_csv() const;
};

// suites: lattice, weilrep, lfun, convolution, eisenstein, heights, all
VerificationReport run_suite(const RunConfig& cfg, const std::vector<std::string>& suites);

// --- ingestion / emission -------------------------------------------------

struct NewformIngest {
    NewformData form;
    bool normalized = false;          // c(1) != 1 was rescaled
    std::vector<i64> holes;           // missing indices filled with zero
};
// CSV with header "m,re,im"
NewformIngest ingest_newform_csv(const std::string& text, int weight, i64 level);
std::string emit_newform_csv(const NewformData& g);

std::string emit_theta_csv(const HermLattice& L, i64 prec);
std::string emit_induced_csv(const InducedForm& gt, i64 prec);

// field descriptor JSON: { "k": {"D": 7}, "F": {"min_poly": [...] } }
CMExtension parse_field_json(const std::string& text, int pi_trace = 1);
// lattice JSON: { "D": 7, "gram": [[[a,b], ...], ...] }
HermLattice parse_lattice_json(const std::string& text, int pi_trace = 1);

std::uint64_t fnv1a(const std::string& s);

}  // namespace cmarith
