// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "rm2kit/analytic.hpp"
#include "rm2kit/catalog.hpp"
#include "rm2kit/factor.hpp"
#include "rm2kit/families.hpp"
#include "rm2kit/richelot.hpp"
#include "rm2kit/verify.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace rm2;

namespace {

Mat2<Rat> mat(long a, long b, long c, long d) { return Mat2<Rat>(Rat(a), Rat(b), Rat(c), Rat(d)); }

Mat2<NFElem> lift(const Mat2<Rat>& m) { return m.map<NFElem>([](const Rat& r) { return NFElem(r); }); }

bool is_sqrt2_translate(const Mat2<Rat>& m) { return m * m - Rat(4) * m + Rat(2) * Mat2<Rat>::identity() == Mat2<Rat>(); }

// Holomorphy results from criteria 1-5, consumed by criterion 10.
int holomorphy_checked = 0, holomorphy_failed = 0;

template <class K>
void record_holomorphy(const Correspondence<K>& c) {
    ++holomorphy_checked;
    if (!holomorphy_check(c)) ++holomorphy_failed;
}

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome richelot_identities() {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> coeff(-6, 6);
    auto quadratic = [&] {
        int lead = 0;
        while (lead == 0) lead = coeff(rng);
        return qpoly({coeff(rng), coeff(rng), lead});
    };
    const std::function<Rat(const Rat&)> ident = [](const Rat& v) { return v; };
    int done = 0, bad = 0;
    while (done < 50) {
        int delta = 0;
        while (delta == 0) delta = coeff(rng);
        QuadraticSplitting<Rat> s;
        try {
            s = splitting_new<Rat>(Rat(delta), quadratic(), quadratic(), quadratic());
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (s.det_g() == 0) continue;
        auto fwd = richelot_correspondence<Rat, Rat>(s, RichelotDirection::forward, ident);
        auto dual = richelot_correspondence<Rat, Rat>(s, RichelotDirection::dual, ident);
        record_holomorphy(fwd);
        record_holomorphy(dual);
        const auto a = diffmatrix_cascade(fwd), b = diffmatrix_cascade(dual);
        if (a != Mat2<Rat>::identity() || b != Mat2<Rat>::scalar(Rat(2)) || b * a != Mat2<Rat>::scalar(Rat(2))) ++bad;
        ++done;
    }
    return {bad == 0, std::to_string(done) + " splittings, " + std::to_string(bad) + " mismatches"};
}

Outcome sqrt2_family() {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> small(-5, 5);
    const auto expected = lift(mat(0, -1, -2, 0));
    const auto two = lift(Mat2<Rat>::scalar(Rat(2)));
    int done = 0, bad = 0, rejected = 0;
    while (done < 25) {
        Rat delta(small(rng)), P(small(rng), 1 + static_cast<unsigned>(rng() % 3)), Q(small(rng)), A(small(rng));
        P.canonicalize();
        if (sgn(delta) == 0 || sgn(P) == 0) continue;
        std::optional<RM2FamilyMember> m;
        try {
            m = rm2_generate(delta, P, Q, A);
        } catch (const FamilyError&) {
            ++rejected;
            continue;
        }
        const auto a = diffmatrix_cascade(m->epsilon);
        record_holomorphy(m->epsilon);
        if (a != expected || a * a != two) ++bad;
        ++done;
    }
    return {bad == 0, std::to_string(done) + " tuples (" + std::to_string(rejected) + " degenerate skipped), " +
                          std::to_string(bad) + " mismatches"};
}

Outcome uvw_family() {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> small(-6, 6);
    int done = 0, bad = 0, rejected = 0;
    while (done < 10) {
        Rat delta(small(rng)), U(small(rng)), V(small(rng)), W(small(rng));
        if (sgn(delta) == 0) continue;
        std::optional<IsogenyPair51> pair;
        try {
            pair = thm51_pair(delta, U, V, W);
        } catch (const std::exception&) {
            ++rejected;
            continue;
        }
        const auto a1 = differential_matrix(pair->pi1), a2 = differential_matrix(pair->pi2);
        record_holomorphy(pair->pi1);
        record_holomorphy(pair->pi2);
        if (a1 != mat(-1, 0, 0, -1) || a2 != mat(-2, 1, 2, -2) || !is_sqrt2_translate(a2 * a1)) ++bad;
        ++done;
    }
    return {bad == 0, std::to_string(done) + " tuples (" + std::to_string(rejected) + " degenerate skipped), " +
                          std::to_string(bad) + " mismatches"};
}

Outcome w_family() {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> small(-8, 8);
    int done = 0, bad = 0, rejected = 0;
    while (done < 10) {
        Rat delta(small(rng)), W(small(rng), 1 + static_cast<unsigned>(rng() % 2));
        W.canonicalize();
        if (sgn(delta) == 0) continue;
        std::optional<IsogenyPair52> pair;
        try {
            pair = thm52_pair(delta, W);
        } catch (const std::exception&) {
            ++rejected;
            continue;
        }
        const auto a1 = differential_matrix(pair->pi1), a2 = differential_matrix(pair->pi2);
        record_holomorphy(pair->pi1);
        record_holomorphy(pair->pi2);
        if (a1 != Mat2<Rat>(Rat(-1, 2), Rat(-1, 2), Rat(1), Rat(1, 2)) || a2 != mat(0, 2, -4, 0) || !is_sqrt2_translate(a2 * a1))
            ++bad;
        ++done;
    }
    return {bad == 0, std::to_string(done) + " tuples (" + std::to_string(rejected) + " degenerate skipped), " +
                          std::to_string(bad) + " mismatches"};
}

Outcome quaternionic_family() {
    int bad = 0;
    std::ostringstream detail;
    for (const Rat& n : {Rat(2), Rat(3), Rat(-2), make_rat(1, 3), make_rat(5, 2)}) {
        auto m = quat_generate(Rat(1), n);
        const NFElem s = NFElem::generator(m.sqrt_m3), half(make_rat(1, 2)), one(Rat(1));
        const Mat2<NFElem> printed_psi(NFElem(Rat(0)), half * (s - one), NFElem(Rat(0)) - half * (s + one), one);
        const auto psi = diffmatrix_two_point(m.psi);
        record_holomorphy(m.epsilon);
        record_holomorphy(m.psi);
        const auto eps = lift(m.A_epsilon);
        auto eta = quat_eta(eps, m.A_psi);
        const auto& e = eta.A_eta;
        const auto I = Mat2<NFElem>::identity();
        const bool ok = m.A_epsilon == mat(-1, -1, -1, 1) && psi == printed_psi && psi == m.A_psi &&
                        e * e - e + I == Mat2<NFElem>() && e * eps + eps * e == eps;
        if (!ok) ++bad;
        detail << " N=" << to_string(n) << ":(" << eta.s0 << "," << eta.t0 << ")";
    }
    return {bad == 0, "(s0,t0) per N:" + detail.str()};
}

Outcome numeric_reproduction(const std::vector<CatalogEntry>& entries, VerificationReport& out) {
    VerifyOptions opt;
    opt.digits = 60;
    out = verify_all(entries, opt);
    int bad = 0;
    double worst_comp = 0;
    for (const auto& r : out.rows) {
        if (r.name == "M1" || r.name == "M2" || r.name == "comp" || r.name == "degree" || r.name == "solve_aphi" ||
            r.name == "diffmatrix" || r.name == "kernel" || r.name == "landing")
            if (!r.passed) {
                ++bad;
                std::cerr << "  failed: " << r.entry << " " << r.name << " " << r.detail << "\n";
            }
        if (r.name == "comp") worst_comp = std::max(worst_comp, r.residual);
    }
    std::ostringstream d;
    d << entries.size() << " pairs, worst comp residual " << std::setprecision(2) << worst_comp;
    return {bad == 0 && entries.size() == 8, d.str()};
}

Outcome frobenius_coherence(const std::vector<CatalogEntry>& entries, const VerificationReport& rep) {
    int bad = 0;
    for (const auto& r : rep.rows)
        if (r.name == "frobenius" && !r.passed) ++bad;
    std::uint64_t irreducible_at = 0;
    for (std::uint64_t p = 3; p < 50 && irreducible_at == 0; p += 2) {
        if (!good_reduction(entries.front().C1, p)) continue;
        bool prime = true;
        for (std::uint64_t q = 3; q * q <= p; q += 2) prime = prime && p % q != 0;
        if (!prime) continue;
        auto f = factor_q(frobenius_charpoly(entries.front().C1, p).charpoly());
        if (f.factors.size() == 1 && f.factors[0].multiplicity == 1) irreducible_at = p;
    }
    return {bad == 0 && irreducible_at != 0,
            "charpolys agree on all pairs; 29A1 charpoly irreducible at p = " + std::to_string(irreducible_at)};
}

Outcome twist_evidence() {
    auto m = quat_generate(Rat(1), Rat(2));
    const auto twisted = m.curve.twist(Rat(-3));
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 5; p < 60; p += 2) {
        bool prime = true;
        for (std::uint64_t q = 3; q * q <= p; q += 2) prime = prime && p % q != 0;
        if (prime && good_reduction(m.curve, p) && good_reduction(twisted, p)) primes.push_back(p);
    }
    auto ev = quat_twist_evidence(m.curve, primes);
    int disagree = 0, informative = 0;
    for (const auto& t : ev) {
        disagree += !t.agree;
        informative += t.informative;
    }
    return {disagree == 0 && !ev.empty(), std::to_string(ev.size()) + " good primes, " + std::to_string(informative) +
                                              " informative, " + std::to_string(disagree) + " disagreements"};
}

Outcome kummer(const std::vector<CatalogEntry>& entries) {
    const auto& e = entries.front();
    auto j1 = AnalyticJacobian::make(e.C1, 60), j2 = AnalyticJacobian::make(e.C2, 60);
    auto ctx = ThetaContext::make(j2, 15);
    const std::vector<Rat> xs = {make_rat(1, 2), Rat(2), make_rat(-13, 10), make_rat(37, 10), make_rat(1, 10)};
    double worst = 0;
    for (const auto& s : kummer_cross_check(e, j1, ctx, xs)) worst = std::max(worst, s.deviation);
    std::ostringstream d;
    d << "5 points on " << e.label << ", worst deviation " << std::setprecision(2) << worst;
    return {worst < 1e-6, d.str()};
}

Outcome property_suites(const std::vector<CatalogEntry>& entries) {
    // holomorphy on every generated correspondence, plus the catalog ones
    for (const auto& e : entries) record_holomorphy(e.correspondence());

    auto pm = period_matrix(entries.front().C1, 60);
    auto h = hermitian_M(pm);
    std::mt19937_64 rng(10);
    Real worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto h2 = hermitian_M(pm.transformed(random_symplectic(rng)));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) worst = boost::multiprecision::max(worst, (h.M[i][j] - h2.M[i][j]).abs() / h.M[i][j].abs());
    }

    const auto labels = two_torsion_labels();
    const auto table = weil_pairing_table();
    int weil_bad = 0;
    for (std::size_t i = 0; i < 15; ++i)
        for (std::size_t j = 0; j < 15; ++j) {
            int shared = 0;
            for (int a : labels[i])
                for (int b : labels[j]) shared += a == b;
            weil_bad += table[i][j] != (shared == 1 ? -1 : 1);
        }

    std::ostringstream d;
    d << holomorphy_checked << " correspondences holomorphic (" << holomorphy_failed << " failed); M basis change "
      << std::setprecision(2) << worst.convert_to<double>() << "; Weil table mismatches " << weil_bad;
    return {holomorphy_failed == 0 && worst < Real("1e-50") && weil_bad == 0, d.str()};
}

}  // namespace

int main() {
    std::vector<CatalogEntry> entries = catalog_load(default_catalog_path());
    VerificationReport numeric;
    struct Criterion {
        int id;
        std::string name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "Richelot identities", richelot_identities},
        {2, "sqrt2 family epsilon", sqrt2_family},
        {3, "(Delta,U,V,W) 2-isogenies", uvw_family},
        {4, "(Delta,W) 2-isogenies", w_family},
        {5, "quaternionic family", quaternionic_family},
        {6, "catalog numeric reproduction", [&] { return numeric_reproduction(entries, numeric); }},
        {7, "Frobenius coherence", [&] { return frobenius_coherence(entries, numeric); }},
        {8, "twist 9-isogeny evidence", twist_evidence},
        {9, "Kummer cross-check", [&] { return kummer(entries); }},
        {10, "property suites", [&] { return property_suites(entries); }},
    };
    bool all = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.passed;
        std::cout << "criterion " << std::setw(2) << c.id << " " << (o.passed ? "PASS" : "FAIL") << "  " << c.name << " ("
                  << std::fixed << std::setprecision(1) << secs << " s): " << o.detail << std::endl;
    }
    return all ? 0 : 1;
}
