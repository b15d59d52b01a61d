#pragma once

#include "rm2kit/analytic.hpp"
#include "rm2kit/catalog.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rm2 {

struct VerifyOptions {
    int digits = 60;
    int height = 7;                 // solve_aphi search height
    int theta_cutoff = 15;
    double tolerance = 1e-6;        // comp residual, lattice membership, Kummer agreement
    double printed_tolerance = 5e-8;  // relative error against printed 8-figure M entries
    std::uint64_t frobenius_bound = 100;
    int kummer_samples = 0;         // sample points for the theta cross-check (0 = skip)
};

struct CheckResult {
    std::string entry, name;
    bool passed = false;
    double residual = 0;
    std::string detail;
    double seconds = 0;
};

struct VerificationReport {
    std::vector<CheckResult> rows;
    bool all_passed() const;
    nlohmann::json to_json() const;
};

// Checks run per entry, in this order:
//   landing, diffmatrix, M1, M2, comp, solve_aphi, degree, kernel, frobenius, [kummer]
std::vector<CheckResult> verify_entry(const CatalogEntry& e, const VerifyOptions& opt);
VerificationReport verify_all(const std::vector<CatalogEntry>& entries, const VerifyOptions& opt);

// Abel-Jacobi image of a generator (or of every listed kernel divisor, for the cyclotomic form).
std::vector<CVec2> kernel_generators(const CatalogEntry& e, const AnalyticJacobian& jac);

// Theta-derived (z1 + z2, z1 z2) against the correspondence, at points with the given x.
// The correspondence sends [P - inf+] to [Q1 + Q2 - inf+ - inf-] + offset; the offset is zero
// when inf+ maps to the canonical class.
struct KummerSample {
    Rat x;
    std::complex<double> theta_sum, theta_product, corr_sum, corr_product;
    double deviation = 0;
};
std::vector<KummerSample> kummer_cross_check(const CatalogEntry& e, const AnalyticJacobian& j1,
                                             const ThetaContext& ctx2, const std::vector<Rat>& xs,
                                             const CVec2& offset = {});
// The offset above, by direct integration on both curves at the point with the given x.
CVec2 correspondence_offset(const CatalogEntry& e, const AnalyticJacobian& j1, const AnalyticJacobian& j2, const Rat& x);

}  // namespace rm2
