#include "rm2kit/number_field.hpp"

#include "rm2kit/factor.hpp"
#include "rm2kit/linalg_q.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <stdexcept>

namespace rm2 {

namespace {

std::vector<std::complex<double>> numeric_roots(const QPoly& m) {
    const int d = m.degree();
    std::vector<std::complex<double>> roots;
    if (d == 1) {
        roots.emplace_back(-Rat(m.coeff(0) / m.lead()).get_d(), 0.0);
        return roots;
    }
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -Rat(m.coeff(i) / m.lead()).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
    std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
        if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

}  // namespace

NumberField::NumberField(QPoly m, std::string name, int embedding_index)
    : min_poly_(std::move(m)), name_(std::move(name)), roots_(numeric_roots(min_poly_)) {
    if (embedding_index < 0 || embedding_index >= static_cast<int>(roots_.size()))
        throw std::invalid_argument("embedding index out of range");
    embedding_ = roots_[static_cast<std::size_t>(embedding_index)];
}

FieldRef NumberField::make(const QPoly& min_poly, std::string name, int embedding_index) {
    if (min_poly.degree() < 1 || min_poly.degree() > 6)
        throw std::invalid_argument("number field degree must be between 1 and 6");
    QPoly m = min_poly.monic();
    if (!is_irreducible_q(m)) throw std::invalid_argument("minimal polynomial is reducible over Q");
    return FieldRef(new NumberField(std::move(m), std::move(name), embedding_index));
}

FieldRef NumberField::rationals() {
    static const FieldRef q(new NumberField(qpoly({0, 1}), "Q", 0));
    return q;
}

NFElem::NFElem(FieldRef K, std::vector<Rat> coeffs) : K_(std::move(K)), c_(std::move(coeffs)) { trim(); }

NFElem NFElem::generator(const FieldRef& K) { return NFElem(K, {Rat(0), Rat(1)}); }

Rat NFElem::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[static_cast<std::size_t>(i)];
}

Rat NFElem::rational_value() const {
    if (!is_rational()) throw std::domain_error("number field element is not rational");
    return c_.empty() ? Rat(0) : c_[0];
}

void NFElem::trim() {
    if (K_) {
        const auto& m = K_->min_poly().coeffs();
        const std::size_t d = m.size() - 1;
        if (c_.size() > d) {
            for (std::size_t k = c_.size() - 1; k >= d; --k) {
                Rat f = c_[k];
                if (sgn(f) != 0)
                    for (std::size_t j = 0; j <= d; ++j) c_[k - d + j] -= f * m[j];
                if (k == d) break;
            }
            c_.resize(d);
        }
    } else if (c_.size() > 1) {
        throw std::logic_error("field-less element with irrational part");
    }
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

void NFElem::adopt(const NFElem& o) {
    if (!o.K_ || o.K_ == K_) return;
    if (!K_) {
        K_ = o.K_;
        return;
    }
    if (K_->min_poly() != o.K_->min_poly()) throw std::logic_error("mixing elements of different number fields");
}

NFElem& NFElem::operator+=(const NFElem& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
    adopt(o);
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

NFElem& NFElem::operator*=(const NFElem& o) {
    adopt(o);
    if (c_.empty() || o.c_.empty()) {
        c_.clear();
        return *this;
    }
    if (o.c_.size() == 1) {
        for (auto& v : c_) v *= o.c_[0];
        trim();
        return *this;
    }
    std::vector<Rat> r(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    c_ = std::move(r);
    trim();
    return *this;
}

NFElem NFElem::inverse() const {
    if (c_.empty()) throw std::domain_error("inverse of zero in number field");
    if (c_.size() == 1) return NFElem(K_, {Rat(1) / c_[0]});
    XGcd<Rat> e = xgcd(QPoly(c_), K_->min_poly());
    if (e.g.degree() != 0) throw std::domain_error("element not invertible");
    return NFElem(K_, e.s.coeffs());
}

std::complex<double> NFElem::numeric() const {
    std::complex<double> t = K_ ? K_->embedding() : std::complex<double>(0.0);
    std::complex<double> acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + it->get_d();
    return acc;
}

NFElem NFElem::substitute_generator(const NFElem& image) const {
    NFElem acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * image + NFElem(*it);
    return acc;
}

std::string NFElem::str() const {
    if (c_.empty()) return "0";
    if (c_.size() == 1) return c_[0].get_str();
    std::string var = K_ ? K_->name() : "t";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        if (!out.empty()) out += " + ";
        out += c_[i].get_str();
        if (i >= 1) out += "*" + var;
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

KPoly to_kpoly(const QPoly& p) {
    std::vector<NFElem> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.emplace_back(c);
    return KPoly(std::move(v));
}

QPoly to_qpoly(const KPoly& p) {
    std::vector<Rat> v;
    v.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) v.push_back(c.rational_value());
    return QPoly(std::move(v));
}

QPoly minimal_polynomial(const NFElem& a) {
    if (a.is_rational()) return QPoly({-a.rational_value(), Rat(1)});
    const int d = a.field()->degree();
    std::vector<NFElem> powers{NFElem(1)};
    for (int k = 1; k <= d; ++k) {
        powers.push_back(powers.back() * a);
        // Look for a^k as a combination of lower powers.
        QMatrix m(static_cast<std::size_t>(d), QVector(static_cast<std::size_t>(k)));
        QVector rhs(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < k; ++j) m[i][j] = powers[j].coeff(i);
            rhs[i] = powers[k].coeff(i);
        }
        if (auto sol = solve_q(m, rhs)) {
            std::vector<Rat> mp(sol->size() + 1);
            for (std::size_t j = 0; j < sol->size(); ++j) mp[j] = -(*sol)[j];
            mp.back() = 1;
            return QPoly(std::move(mp));
        }
    }
    throw std::logic_error("minimal polynomial search failed");
}

}  // namespace rm2
