#pragma once

#include "rm2kit/correspondence.hpp"
#include "rm2kit/curve.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rm2 {

struct CatalogError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sum of c * sqrt(r) with rational c, r (principal square roots)
struct RadicalTerm {
    Rat coeff, radicand;
};
using RadicalExpr = std::vector<RadicalTerm>;

// Machine-readable form of the printed kernel description.
//   infinity_difference: generated by [inf+ - inf-]
//   point_difference:    generated by [P - Q] with P, Q given by radicals
//   cyclotomic:          [(x, y) - (x', -y')] with x + x', x x', y y' polynomials in
//                        alpha = 2 cos(2 pi n / modulus)
struct KernelData {
    enum class Kind { infinity_difference, point_difference, cyclotomic };
    Kind kind = Kind::infinity_difference;
    std::array<RadicalExpr, 2> P, Q;  // (x, y)
    int modulus = 0;
    std::vector<Rat> sum, product, y_product;  // coefficients in alpha, low to high
};

// One isogeny Jac(C1) -> Jac(C2) with its printed numerical data.
// M1 and M2 keep the printed decimal strings so the significant figures survive.
struct CatalogEntry {
    std::string label, partner;
    Rat twist{1};
    Genus2Curve C1, C2;
    BiPoly<Rat> quadratic, t_formula;
    std::string base_point = "infinity+";
    int degree = 0;
    std::string kernel;
    KernelData kernel_data;
    std::array<std::array<std::string, 2>, 2> M1, M2;
    Mat2<Rat> A_eps1, A_phi;
    int n1 = 0, n2 = 0;
    std::optional<std::string> erratum;

    Correspondence<Rat> correspondence() const;
};

std::vector<CatalogEntry> catalog_from_json(const nlohmann::json& doc);
nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> catalog_load(const std::string& path);

// Path of the shipped seed file (configured at build time).
std::string default_catalog_path();

}  // namespace rm2
