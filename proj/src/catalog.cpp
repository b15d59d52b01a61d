#include "rm2kit/catalog.hpp"

#include <fstream>

namespace rm2 {

namespace {

using nlohmann::json;

QPoly read_poly(const json& arr) {
    std::vector<Rat> c;
    for (const auto& v : arr) c.push_back(parse_rat(v.get<std::string>()));
    return QPoly(std::move(c));
}

json write_poly(const QPoly& p) {
    json arr = json::array();
    if (p.zero()) arr.push_back("0");
    for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
    return arr;
}

Mat2<Rat> read_mat(const json& m) {
    return Mat2<Rat>(parse_rat(m.at(0).at(0).get<std::string>()), parse_rat(m.at(0).at(1).get<std::string>()),
                     parse_rat(m.at(1).at(0).get<std::string>()), parse_rat(m.at(1).at(1).get<std::string>()));
}

json write_mat(const Mat2<Rat>& m) {
    return json::array({json::array({to_string(m(0, 0)), to_string(m(0, 1))}),
                        json::array({to_string(m(1, 0)), to_string(m(1, 1))})});
}

std::array<std::array<std::string, 2>, 2> read_decimal_mat(const json& m) {
    std::array<std::array<std::string, 2>, 2> out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            out[i][j] = m.at(i).at(j).get<std::string>();
            parse_rat(out[i][j]);  // must be a decimal
        }
    return out;
}

RadicalExpr read_radical(const json& arr) {
    RadicalExpr out;
    for (const auto& t : arr) out.push_back({parse_rat(t.at(0).get<std::string>()), parse_rat(t.at(1).get<std::string>())});
    return out;
}

json write_radical(const RadicalExpr& r) {
    json arr = json::array();
    for (const auto& t : r) arr.push_back(json::array({to_string(t.coeff), to_string(t.radicand)}));
    return arr;
}

std::vector<Rat> read_rats(const json& arr) {
    std::vector<Rat> out;
    for (const auto& v : arr) out.push_back(parse_rat(v.get<std::string>()));
    return out;
}

json write_rats(const std::vector<Rat>& v) {
    json arr = json::array();
    for (const auto& q : v) arr.push_back(to_string(q));
    return arr;
}

KernelData read_kernel(const json& k) {
    KernelData out;
    const auto type = k.at("type").get<std::string>();
    if (type == "infinity_difference") {
        out.kind = KernelData::Kind::infinity_difference;
    } else if (type == "point_difference") {
        out.kind = KernelData::Kind::point_difference;
        out.P = {read_radical(k.at("P").at("x")), read_radical(k.at("P").at("y"))};
        out.Q = {read_radical(k.at("Q").at("x")), read_radical(k.at("Q").at("y"))};
    } else if (type == "cyclotomic") {
        out.kind = KernelData::Kind::cyclotomic;
        out.modulus = k.at("modulus").get<int>();
        out.sum = read_rats(k.at("sum"));
        out.product = read_rats(k.at("product"));
        out.y_product = read_rats(k.at("y_product"));
        if (out.modulus < 3) throw CatalogError("cyclotomic kernel needs modulus >= 3");
    } else {
        throw CatalogError("unknown kernel type " + type);
    }
    return out;
}

json write_kernel(const KernelData& k) {
    switch (k.kind) {
        case KernelData::Kind::infinity_difference:
            return {{"type", "infinity_difference"}};
        case KernelData::Kind::point_difference:
            return {{"type", "point_difference"},
                    {"P", {{"x", write_radical(k.P[0])}, {"y", write_radical(k.P[1])}}},
                    {"Q", {{"x", write_radical(k.Q[0])}, {"y", write_radical(k.Q[1])}}}};
        case KernelData::Kind::cyclotomic:
            return {{"type", "cyclotomic"},
                    {"modulus", k.modulus},
                    {"sum", write_rats(k.sum)},
                    {"product", write_rats(k.product)},
                    {"y_product", write_rats(k.y_product)}};
    }
    return {};
}

CatalogEntry read_entry(const json& e) {
    const std::string label = e.at("label").get<std::string>();
    try {
        const std::string partner = e.at("partner").get<std::string>();
        const auto& c = e.at("correspondence");
        BiPoly<Rat> quadratic, t_formula;
        for (const auto& t : c.at("quadratic"))
            quadratic.push_back({RatFn<Rat>(read_poly(t.at("a"))), RatFn<Rat>(read_poly(t.at("b")))});
        QPoly den = read_poly(c.at("t_denominator"));
        for (const auto& t : c.at("t_numerator"))
            t_formula.push_back({RatFn<Rat>(read_poly(t.at("a")), den), RatFn<Rat>(read_poly(t.at("b")), den)});
        if (quadratic.size() != 3 || t_formula.size() != 2)
            throw CatalogError("correspondence needs three quadratic and two t coefficients");
        std::optional<std::string> erratum;
        if (e.contains("erratum")) erratum = e.at("erratum").get<std::string>();
        return CatalogEntry{.label = label,
                            .partner = partner,
                            .twist = e.contains("twist") ? Rat(e.at("twist").get<long>()) : Rat(1),
                            .C1 = Genus2Curve::make(read_poly(e.at("F1")), label),
                            .C2 = Genus2Curve::make(read_poly(e.at("F2")), partner),
                            .quadratic = std::move(quadratic),
                            .t_formula = std::move(t_formula),
                            .base_point = c.value("base", std::string("infinity+")),
                            .degree = e.at("degree").get<int>(),
                            .kernel = e.value("kernel", std::string()),
                            .kernel_data = read_kernel(e.at("kernel_data")),
                            .M1 = read_decimal_mat(e.at("M1")),
                            .M2 = read_decimal_mat(e.at("M2")),
                            .A_eps1 = read_mat(e.at("A_eps1")),
                            .A_phi = read_mat(e.at("A_phi")),
                            .n1 = e.at("n1").get<int>(),
                            .n2 = e.at("n2").get<int>(),
                            .erratum = std::move(erratum)};
    } catch (const std::exception& err) {
        throw CatalogError(label + ": " + err.what());
    }
}

// Common denominator of the two t coefficients, as stored on disk.
std::pair<QPoly, std::vector<std::pair<QPoly, QPoly>>> t_over_common_den(const BiPoly<Rat>& t) {
    QPoly den(Rat(1));
    for (const auto& term : t) {
        den = den * (term.a.den() / gcd(den, term.a.den()));
        den = den * (term.b.den() / gcd(den, term.b.den()));
    }
    std::vector<std::pair<QPoly, QPoly>> nums;
    for (const auto& term : t)
        nums.emplace_back(term.a.num() * (den / term.a.den()), term.b.num() * (den / term.b.den()));
    return {den, nums};
}

}  // namespace

Correspondence<Rat> CatalogEntry::correspondence() const {
    return Correspondence<Rat>(C1.F(), C2.F(), quadratic, t_formula, base_point);
}

std::vector<CatalogEntry> catalog_from_json(const json& doc) {
    std::vector<CatalogEntry> out;
    if (doc.is_null() || (doc.is_object() && doc.empty())) return out;
    if (doc.value("schema", std::string()) != "rm2kit/1") throw CatalogError("unknown catalog schema");
    for (const auto& e : doc.at("pairs")) out.push_back(read_entry(e));
    return out;
}

json catalog_to_json(const std::vector<CatalogEntry>& entries) {
    json pairs = json::array();
    for (const auto& e : entries) {
        json q = json::array();
        for (const auto& t : e.quadratic) q.push_back({{"a", write_poly(t.a.as_poly())}, {"b", write_poly(t.b.as_poly())}});
        auto [den, nums] = t_over_common_den(e.t_formula);
        json tn = json::array();
        for (const auto& [a, b] : nums) tn.push_back({{"a", write_poly(a)}, {"b", write_poly(b)}});
        json j = {{"label", e.label},
                  {"partner", e.partner},
                  {"twist", e.twist.get_num().get_si()},
                  {"F1", write_poly(e.C1.F())},
                  {"F2", write_poly(e.C2.F())},
                  {"correspondence", {{"quadratic", q}, {"t_numerator", tn}, {"t_denominator", write_poly(den)}, {"base", e.base_point}}},
                  {"degree", e.degree},
                  {"kernel", e.kernel},
                  {"kernel_data", write_kernel(e.kernel_data)},
                  {"M1", e.M1},
                  {"M2", e.M2},
                  {"A_eps1", write_mat(e.A_eps1)},
                  {"A_phi", write_mat(e.A_phi)},
                  {"n1", e.n1},
                  {"n2", e.n2}};
        if (e.erratum) j["erratum"] = *e.erratum;
        pairs.push_back(std::move(j));
    }
    return {{"schema", "rm2kit/1"}, {"pairs", pairs}};
}

std::vector<CatalogEntry> catalog_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog " + path);
    if (in.peek() == std::ifstream::traits_type::eof()) return {};
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw CatalogError(std::string("malformed catalog: ") + e.what());
    }
    return catalog_from_json(doc);
}

std::string default_catalog_path() { return RM2_CATALOG_PATH; }

}  // namespace rm2
