// rm2: command-line front end for rm2kit.
//
// Exit codes: 0 success, 1 a requested verification failed, 2 usage error.

#include "rm2kit/analytic.hpp"
#include "rm2kit/catalog.hpp"
#include "rm2kit/families.hpp"
#include "rm2kit/richelot.hpp"
#include "rm2kit/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>

using namespace rm2;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
    bool json = false;
    int digits = 60;
    int theta_cutoff = 15;
    int height = 7;
    std::string catalog = default_catalog_path();
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json poly_json(const QPoly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs()) out.push_back(to_string(c));
    return out;
}

template <class K>
json mat_json(const Mat2<K>& m) {
    return json::array({json::array({to_string(m(0, 0)), to_string(m(0, 1))}),
                        json::array({to_string(m(1, 0)), to_string(m(1, 1))})});
}

QPoly parse_poly(const std::string& text) {
    std::vector<Rat> c;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            c.push_back(parse_rat(item));
        } catch (const std::exception&) {
            throw UsageError("bad coefficient '" + item + "' in '" + text + "'");
        }
    }
    return QPoly(std::move(c));
}

Rat parse_arg(const std::string& text) {
    try {
        return parse_rat(text);
    } catch (const std::exception&) {
        throw UsageError("not a rational number: " + text);
    }
}

const CatalogEntry& find_entry(const std::vector<CatalogEntry>& entries, const std::string& label) {
    for (const auto& e : entries)
        if (e.label == label || e.partner == label) return e;
    throw UsageError("no catalog entry " + label);
}

// Prints a record as one JSON line or as "key: value" lines.
void emit(const Globals& g, const json& record) {
    if (g.json) {
        std::cout << record.dump() << "\n";
        return;
    }
    for (const auto& [k, v] : record.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

int report(const Globals& g, const VerificationReport& rep) {
    if (g.json) {
        for (const auto& row : rep.to_json()["rows"]) std::cout << row.dump() << "\n";
    } else {
        for (const auto& r : rep.rows)
            std::cout << std::left << std::setw(7) << r.entry << std::setw(12) << r.name << (r.passed ? "PASS " : "FAIL ")
                      << std::setw(12) << std::setprecision(3) << r.residual << std::fixed << std::setprecision(2) << r.seconds
                      << "s  " << std::defaultfloat << r.detail << "\n";
        std::cout << (rep.all_passed() ? "all checks passed" : "some checks FAILED") << "\n";
    }
    return rep.all_passed() ? 0 : 1;
}

VerifyOptions options(const Globals& g, int kummer) {
    VerifyOptions o;
    o.digits = g.digits;
    o.theta_cutoff = g.theta_cutoff;
    o.height = g.height;
    o.kummer_samples = kummer;
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rm2kit: genus-2 curves with real multiplication by sqrt2"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_flag("--json", g.json, "one JSON object per line");
    app.add_option("--digits", g.digits, "working precision in decimal digits")->check(CLI::Range(20, 2000));
    app.add_option("--theta-cutoff", g.theta_cutoff, "theta summation bound")->check(CLI::Range(1, 100));
    app.add_option("--height", g.height, "search height for A_phi")->check(CLI::Range(1, 100));
    app.add_option("--catalog", g.catalog, "catalog file")->check(CLI::ExistingFile);

    // family
    auto* family = app.add_subcommand("family", "generate curves of the special families");
    family->require_subcommand(1);
    std::string delta = "1", P = "1", Q = "0", A = "0", U = "3", V = "1", W = "1", N = "2";
    bool check = false;
    auto* rm2 = family->add_subcommand("rm2", "curve with sqrt2 multiplication from (delta, P, Q, A)");
    rm2->add_option("--delta", delta);
    rm2->add_option("--p", P);
    rm2->add_option("--q", Q);
    rm2->add_option("--a", A);
    rm2->add_flag("--check", check, "recompute the differential matrix of epsilon and check holomorphy");
    auto* thm51 = family->add_subcommand("thm51", "2-isogeny pair from (delta, U, V, W)");
    thm51->add_option("--delta", delta);
    thm51->add_option("--u", U);
    thm51->add_option("--v", V);
    thm51->add_option("--w", W);
    thm51->add_flag("--check", check);
    auto* thm52 = family->add_subcommand("thm52", "2-isogeny pair from (delta, W)");
    thm52->add_option("--delta", delta);
    thm52->add_option("--w", W);
    thm52->add_flag("--check", check);
    auto* quat = family->add_subcommand("quat", "quaternionic multiplication family from (delta, N)");
    quat->add_option("--delta", delta);
    quat->add_option("--n", N);
    quat->add_flag("--check", check, "also search for eta");

    // richelot
    auto* richelot = app.add_subcommand("richelot", "Richelot dual of Y^2 = delta G0 G1 G2");
    std::string g0, g1, g2;
    richelot->add_option("--delta", delta);
    richelot->add_option("--g0", g0, "coefficients low to high, comma separated")->required();
    richelot->add_option("--g1", g1)->required();
    richelot->add_option("--g2", g2)->required();
    richelot->add_flag("--check", check, "compute both differential matrices");

    // diffmat
    auto* diffmat = app.add_subcommand("diffmat", "differential matrix of a catalog correspondence");
    std::string label, method = "auto";
    diffmat->add_option("label", label)->required();
    diffmat->add_option("--method", method)->check(CLI::IsMember({"auto", "cascade", "two-point"}));

    // frobenius
    auto* frob = app.add_subcommand("frobenius", "Frobenius characteristic polynomials at good primes");
    std::string curve;
    std::uint64_t bound = 100;
    auto* frob_label = frob->add_option("--label", label, "catalog curve label");
    frob->add_option("--f", curve, "curve coefficients low to high")->excludes(frob_label);
    frob->add_option("--bound", bound, "primes below this bound")->check(CLI::Range(3, 500));

    // periods
    auto* periods = app.add_subcommand("periods", "period matrix and hermitian form");
    auto* per_label = periods->add_option("--label", label);
    periods->add_option("--f", curve)->excludes(per_label);

    // verify-isogeny / catalog verify
    int kummer = 0;
    auto* verify = app.add_subcommand("verify-isogeny", "run every check on one catalog pair");
    verify->add_option("label", label)->required();
    verify->add_option("--kummer", kummer, "theta cross-check sample points")->check(CLI::Range(0, 8));
    auto* cat = app.add_subcommand("catalog", "catalog operations");
    cat->require_subcommand(1);
    auto* cat_verify = cat->add_subcommand("verify", "verify catalog pairs");
    bool all = false;
    cat_verify->add_flag("--all", all, "every pair")->required();
    cat_verify->add_option("--kummer", kummer)->check(CLI::Range(0, 8));
    auto* cat_list = cat->add_subcommand("list", "list catalog pairs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rm2->parsed()) {
            auto m = rm2_generate(parse_arg(delta), parse_arg(P), parse_arg(Q), parse_arg(A));
            json out = {{"family", "rm2"}, {"F", poly_json(m.curve.F())}, {"B", to_string(m.B)}, {"C", to_string(m.C)},
                        {"R", to_string(m.R)}, {"A_epsilon", mat_json(m.A_epsilon)}};
            bool ok = true;
            if (check) {
                const auto recomputed = diffmatrix_cascade(m.epsilon);
                const bool holo = holomorphy_check(m.epsilon);
                ok = holo && recomputed == Mat2<NFElem>(NFElem(Rat(0)), NFElem(Rat(-1)), NFElem(Rat(-2)), NFElem(Rat(0)));
                out["check"] = {{"diffmatrix", mat_json(recomputed)}, {"holomorphic", holo}, {"passed", ok}};
            }
            if (g.json) emit(g, out);
            else {
                std::cout << "F = " << m.curve.F().str() << "\n" << "epsilon: " << m.A_epsilon.str() << "\n";
                if (check) std::cout << "check: " << (ok ? "PASS" : "FAIL") << "\n";
            }
            return ok ? 0 : 1;
        }
        if (thm51->parsed() || thm52->parsed()) {
            Genus2Curve c1 = Genus2Curve::make(qpoly({0, -1, 0, 0, 0, 1})), c2 = c1;
            Mat2<Rat> a1, a2;
            bool holo = true;
            if (thm51->parsed()) {
                auto pair = thm51_pair(parse_arg(delta), parse_arg(U), parse_arg(V), parse_arg(W));
                c1 = pair.C1, c2 = pair.C2;
                a1 = differential_matrix(pair.pi1), a2 = differential_matrix(pair.pi2);
                if (check) holo = holomorphy_check(pair.pi1) && holomorphy_check(pair.pi2);
            } else {
                auto pair = thm52_pair(parse_arg(delta), parse_arg(W));
                c1 = pair.C1, c2 = pair.C2;
                a1 = differential_matrix(pair.pi1), a2 = differential_matrix(pair.pi2);
                if (check) holo = holomorphy_check(pair.pi1) && holomorphy_check(pair.pi2);
            }
            const Mat2<Rat> comp = a2 * a1;
            const bool sqrt2 = comp * comp - Rat(4) * comp + Rat(2) * Mat2<Rat>::identity() == Mat2<Rat>();
            const bool ok = holo && sqrt2;
            emit(g, {{"F1", g.json ? poly_json(c1.F()) : json(c1.F().str())},
                     {"F2", g.json ? poly_json(c2.F()) : json(c2.F().str())},
                     {"A_pi1", mat_json(a1)},
                     {"A_pi2", mat_json(a2)},
                     {"composite", mat_json(comp)},
                     {"composite_is_2_plus_minus_sqrt2", sqrt2},
                     {"holomorphic", check ? json(holo) : json(nullptr)}});
            return ok ? 0 : 1;
        }
        if (quat->parsed()) {
            auto m = quat_generate(parse_arg(delta), parse_arg(N));
            json out = {{"family", "quat"}, {"F", g.json ? poly_json(m.curve.F()) : json(m.curve.F().str())},
                        {"A_epsilon", mat_json(m.A_epsilon)}, {"A_psi", mat_json(m.A_psi)}};
            if (check) {
                Mat2<NFElem> eps(NFElem(m.A_epsilon(0, 0)), NFElem(m.A_epsilon(0, 1)), NFElem(m.A_epsilon(1, 0)),
                                 NFElem(m.A_epsilon(1, 1)));
                auto eta = quat_eta(eps, m.A_psi);
                out["eta"] = {{"s0", eta.s0}, {"t0", eta.t0}, {"A_eta", mat_json(eta.A_eta)}};
            }
            emit(g, out);
            return 0;
        }
        if (richelot->parsed()) {
            auto s = splitting_new<Rat>(parse_arg(delta), parse_poly(g0), parse_poly(g1), parse_poly(g2));
            auto d = richelot_dual(s);
            json out = {{"F", g.json ? poly_json(s.product()) : json(s.product().str())},
                        {"det_g", to_string(d.det_g)},
                        {"F2", g.json ? poly_json(d.F2) : json(d.F2.str())}};
            bool ok = true;
            if (check) {
                const std::function<Rat(const Rat&)> ident = [](const Rat& v) { return v; };
                auto fwd = differential_matrix(richelot_correspondence<Rat, Rat>(s, RichelotDirection::forward, ident));
                auto dual = differential_matrix(richelot_correspondence<Rat, Rat>(s, RichelotDirection::dual, ident));
                ok = fwd == Mat2<Rat>::identity() && dual == Mat2<Rat>::scalar(Rat(2));
                out["A_forward"] = mat_json(fwd);
                out["A_dual"] = mat_json(dual);
                out["passed"] = ok;
            }
            emit(g, out);
            return ok ? 0 : 1;
        }

        const auto entries = catalog_load(g.catalog);
        if (diffmat->parsed()) {
            const auto& e = find_entry(entries, label);
            const auto corr = e.correspondence();
            Mat2<Rat> a = method == "cascade"     ? diffmatrix_cascade(corr)
                          : method == "two-point" ? diffmatrix_two_point(corr)
                                                  : differential_matrix(corr);
            const bool matches = a == e.A_phi || a == Rat(-1) * e.A_phi;
            emit(g, {{"label", e.label}, {"A_phi", mat_json(a)}, {"printed", mat_json(e.A_phi)}, {"matches_printed", matches}});
            return matches ? 0 : 1;
        }
        if (frob->parsed()) {
            Genus2Curve c = Genus2Curve::make(qpoly({0, -1, 0, 0, 0, 1}));
            if (!curve.empty()) c = Genus2Curve::make(parse_poly(curve));
            else if (!label.empty()) {
                const auto& e = find_entry(entries, label);
                c = e.label == label ? e.C1 : e.C2;
            } else
                throw UsageError("frobenius needs --label or --f");
            for (std::uint64_t p = 3; p < bound; p += 2) {
                bool prime = true;
                for (std::uint64_t q = 3; q * q <= p; q += 2) prime = prime && p % q != 0;
                if (!prime || !good_reduction(c, p)) continue;
                auto fd = frobenius_charpoly(c, p);
                auto uv = rm_form_check(fd);
                json row = {{"p", p}, {"N1", fd.n1}, {"N2", fd.n2}, {"s1", fd.s1}, {"s2", fd.s2}};
                row["rm_form"] = uv ? json::array({uv->first, uv->second}) : json(nullptr);
                if (g.json) std::cout << row.dump() << "\n";
                else
                    std::cout << "p=" << p << "  N1=" << fd.n1 << "  N2=" << fd.n2 << "  s1=" << fd.s1 << "  s2=" << fd.s2
                              << (uv ? "  u=" + std::to_string(uv->first) + " v=" + std::to_string(uv->second) : "  no RM form")
                              << "\n";
            }
            return 0;
        }
        if (periods->parsed()) {
            Genus2Curve c = Genus2Curve::make(qpoly({0, -1, 0, 0, 0, 1}));
            if (!curve.empty()) c = Genus2Curve::make(parse_poly(curve));
            else if (!label.empty()) {
                const auto& e = find_entry(entries, label);
                c = e.label == label ? e.C1 : e.C2;
            } else
                throw UsageError("periods needs --label or --f");
            auto pm = period_matrix(c, g.digits);
            auto h = hermitian_M(pm);
            const int shown = std::min(g.digits, 30);
            json rows = json::array();
            for (int r = 0; r < 2; ++r) {
                json row = json::array();
                for (int k = 0; k < 4; ++k) row.push_back(pm(r, k).str(shown));
                rows.push_back(row);
            }
            json m = json::array();
            for (int i = 0; i < 2; ++i) m.push_back(json::array({h.M[i][0].re.str(shown), h.M[i][1].re.str(shown)}));
            emit(g, {{"periods", rows},
                     {"basis", pm.symplectic_basis},
                     {"riemann_residual", pm.riemann_residual().convert_to<double>()},
                     {"M", m}});
            return 0;
        }
        if (verify->parsed()) {
            VerificationReport rep;
            rep.rows = verify_entry(find_entry(entries, label), options(g, kummer));
            return report(g, rep);
        }
        if (cat_list->parsed()) {
            for (const auto& e : entries)
                emit(g, {{"label", e.label}, {"partner", e.partner}, {"degree", e.degree}, {"kernel", e.kernel}});
            return 0;
        }
        if (cat_verify->parsed()) return report(g, verify_all(entries, options(g, kummer)));
    } catch (const UsageError& e) {
        std::cerr << "rm2: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rm2: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "rm2: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
