#include "mixnewton/mixed_poly.hpp"

#include <algorithm>
#include <numeric>

#include "mixnewton/exact_lp.hpp"

namespace mixnewton {

namespace {

void check_exponent(const Exponent& e, int n) {
    if (static_cast<int>(e.size()) != n)
        throw DimensionMismatch("exponent length does not match variable count");
    for (int v : e)
        if (v < 0) throw DimensionMismatch("negative exponent entry");
}

Complex ipow(Complex base, int k) {
    Complex r(1.0, 0.0);
    while (k-- > 0) r *= base;
    return r;
}

} // namespace

MixedPolynomial::MixedPolynomial(int vars) : n_(vars) {
    if (vars < 1) throw DimensionMismatch("variable count must be >= 1");
}

MixedPolynomial MixedPolynomial::constant(int vars, Complex c) {
    MixedPolynomial f(vars);
    f.add_term(Exponent(vars, 0), Exponent(vars, 0), c);
    return f;
}

MixedPolynomial MixedPolynomial::monomial(Exponent nu, Exponent mu, Complex c) {
    MixedPolynomial f(static_cast<int>(nu.size()));
    if (nu.size() != mu.size()) throw DimensionMismatch("nu and mu must have equal length");
    f.add_term(nu, mu, c);
    return f;
}

MixedPolynomial MixedPolynomial::variable(int vars, int index) {
    if (index < 1 || index > vars) throw DimensionMismatch("variable index out of range");
    Exponent nu(vars, 0), mu(vars, 0);
    nu[index - 1] = 1;
    return monomial(nu, mu, Complex(1.0, 0.0));
}

MixedPolynomial MixedPolynomial::conj_variable(int vars, int index) {
    if (index < 1 || index > vars) throw DimensionMismatch("variable index out of range");
    Exponent nu(vars, 0), mu(vars, 0);
    mu[index - 1] = 1;
    return monomial(nu, mu, Complex(1.0, 0.0));
}

bool MixedPolynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const TermKey& k = terms_.begin()->first;
    auto zero = [](const Exponent& e) {
        return std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
    };
    return zero(k.nu) && zero(k.mu);
}

Complex MixedPolynomial::constant_term() const {
    TermKey k{Exponent(n_, 0), Exponent(n_, 0)};
    auto it = terms_.find(k);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void MixedPolynomial::add_term(const Exponent& nu, const Exponent& mu, Complex c) {
    check_exponent(nu, n_);
    check_exponent(mu, n_);
    if (c == Complex(0.0, 0.0)) return;
    TermKey key{nu, mu};
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
    }
}

MixedPolynomial& MixedPolynomial::operator+=(const MixedPolynomial& rhs) {
    if (rhs.n_ != n_) throw DimensionMismatch("variable counts differ in +");
    for (const auto& [key, c] : rhs.terms_) add_term(key.nu, key.mu, c);
    return *this;
}

MixedPolynomial& MixedPolynomial::operator-=(const MixedPolynomial& rhs) {
    if (rhs.n_ != n_) throw DimensionMismatch("variable counts differ in -");
    for (const auto& [key, c] : rhs.terms_) add_term(key.nu, key.mu, -c);
    return *this;
}

MixedPolynomial& MixedPolynomial::operator*=(Complex s) {
    if (s == Complex(0.0, 0.0)) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    // scaling by a nonzero scalar cannot create exact zeros except via underflow
    std::erase_if(terms_, [](const auto& kv) { return kv.second == Complex(0.0, 0.0); });
    return *this;
}

MixedPolynomial MixedPolynomial::operator*(const MixedPolynomial& rhs) const {
    if (rhs.n_ != n_) throw DimensionMismatch("variable counts differ in *");
    MixedPolynomial out(n_);
    Exponent nu(n_), mu(n_);
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : rhs.terms_) {
            for (int i = 0; i < n_; ++i) {
                nu[i] = ka.nu[i] + kb.nu[i];
                mu[i] = ka.mu[i] + kb.mu[i];
            }
            out.add_term(nu, mu, ca * cb);
        }
    }
    return out;
}

MixedPolynomial MixedPolynomial::pow(int k) const {
    if (k < 0) throw DimensionMismatch("negative polynomial power");
    MixedPolynomial out = constant(n_, Complex(1.0, 0.0));
    for (int i = 0; i < k; ++i) out = out * (*this);
    return out;
}

Complex MixedPolynomial::evaluate(const ComplexPoint& z) const {
    if (static_cast<int>(z.size()) != n_) throw DimensionMismatch("point dimension mismatch in evaluate");
    Complex acc(0.0, 0.0);
    for (const auto& [key, c] : terms_) {
        Complex t = c;
        for (int i = 0; i < n_; ++i) {
            if (key.nu[i]) t *= ipow(z[i], key.nu[i]);
            if (key.mu[i]) t *= ipow(std::conj(z[i]), key.mu[i]);
        }
        acc += t;
    }
    return acc;
}

int MixedPolynomial::total_degree() const {
    int deg = -1;
    for (const auto& [key, c] : terms_) {
        int d = std::accumulate(key.nu.begin(), key.nu.end(), 0) +
                std::accumulate(key.mu.begin(), key.mu.end(), 0);
        deg = std::max(deg, d);
    }
    return deg;
}

std::vector<MixedPolynomial> wirtinger_dz(const MixedPolynomial& f) {
    const int n = f.vars();
    std::vector<MixedPolynomial> out(n, MixedPolynomial(n));
    for (const auto& [key, c] : f.terms()) {
        for (int i = 0; i < n; ++i) {
            if (key.nu[i] == 0) continue;
            Exponent nu = key.nu;
            nu[i] -= 1;
            out[i].add_term(nu, key.mu, c * static_cast<double>(key.nu[i]));
        }
    }
    return out;
}

std::vector<MixedPolynomial> wirtinger_dzbar(const MixedPolynomial& f) {
    const int n = f.vars();
    std::vector<MixedPolynomial> out(n, MixedPolynomial(n));
    for (const auto& [key, c] : f.terms()) {
        for (int i = 0; i < n; ++i) {
            if (key.mu[i] == 0) continue;
            Exponent mu = key.mu;
            mu[i] -= 1;
            out[i].add_term(key.nu, mu, c * static_cast<double>(key.mu[i]));
        }
    }
    return out;
}

MixedPolynomial conjugate(const MixedPolynomial& f) {
    MixedPolynomial out(f.vars());
    for (const auto& [key, c] : f.terms()) out.add_term(key.mu, key.nu, std::conj(c));
    return out;
}

MixedPolynomial shift_constant(const MixedPolynomial& f) {
    MixedPolynomial out = f;
    Complex c0 = f.constant_term();
    if (c0 != Complex(0.0, 0.0))
        out.add_term(Exponent(f.vars(), 0), Exponent(f.vars(), 0), -c0);
    return out;
}

MixedPolynomial restrict_to_axes(const MixedPolynomial& f, const std::set<int>& I) {
    if (I.empty()) throw DimensionMismatch("restriction index set must be non-empty");
    for (int i : I)
        if (i < 1 || i > f.vars()) throw DimensionMismatch("restriction index out of range");
    MixedPolynomial out(f.vars());
    for (const auto& [key, c] : f.terms()) {
        bool keep = true;
        for (int i = 0; i < f.vars() && keep; ++i)
            if (!I.count(i + 1) && (key.nu[i] != 0 || key.mu[i] != 0)) keep = false;
        if (keep) out.add_term(key.nu, key.mu, c);
    }
    return out;
}

std::set<int> effective_variables(const MixedPolynomial& f) {
    std::set<int> out;
    for (const auto& [key, c] : f.terms())
        for (int i = 0; i < f.vars(); ++i)
            if (key.nu[i] + key.mu[i] > 0) out.insert(i + 1);
    return out;
}

std::optional<WeightedHomogeneity> is_weighted_homogeneous(const MixedPolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomialError("weighted homogeneity is undefined for the zero polynomial");
    const int n = f.vars();

    // Distinct exponent sums nu + mu over all stored terms.
    std::set<std::vector<long long>> sums;
    for (const auto& [key, c] : f.terms()) {
        std::vector<long long> s(n);
        for (int i = 0; i < n; ++i) s[i] = key.nu[i] + key.mu[i];
        sums.insert(s);
    }
    const std::vector<std::vector<long long>> pts(sums.begin(), sums.end());

    std::vector<Rational> q;
    if (pts.size() == 1) {
        q.assign(n, Rational(1));
    } else {
        // Feasibility of { (s_j - s_0).q = 0 for all j, q_i >= 1 } in exact rationals.
        std::vector<std::vector<Rational>> A;
        std::vector<Rational> b;
        for (std::size_t j = 1; j < pts.size(); ++j) {
            std::vector<Rational> row(n), neg(n);
            for (int i = 0; i < n; ++i) {
                row[i] = Rational(pts[j][i] - pts[0][i]);
                neg[i] = -row[i];
            }
            A.push_back(row);
            b.push_back(Rational(0));
            A.push_back(neg);
            b.push_back(Rational(0));
        }
        for (int i = 0; i < n; ++i) {
            std::vector<Rational> row(n, Rational(0));
            row[i] = Rational(1);
            A.push_back(row);
            b.push_back(Rational(1));
        }
        LpResult lp = lp_feasible(A, b);
        if (!lp.feasible) return std::nullopt;
        q = lp.point;
    }

    // Scale to integers with gcd 1.
    boost::multiprecision::mpz_int lcm_den = 1;
    for (const Rational& v : q) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(v));
    std::vector<boost::multiprecision::mpz_int> qi(n);
    for (int i = 0; i < n; ++i) qi[i] = numerator(q[i]) * (lcm_den / denominator(q[i]));
    boost::multiprecision::mpz_int g = 0;
    for (const auto& v : qi) g = boost::multiprecision::gcd(g, v);
    if (g == 0) return std::nullopt;
    for (auto& v : qi) v /= g;

    boost::multiprecision::mpz_int m = 0;
    for (int i = 0; i < n; ++i) m += qi[i] * pts[0][i];
    if (m <= 0) return std::nullopt;  // a constant term forces m = 0

    WeightedHomogeneity wh;
    wh.weights.resize(n);
    for (int i = 0; i < n; ++i) wh.weights[i] = static_cast<long long>(qi[i]);
    wh.degree = static_cast<long long>(m);
    return wh;
}

RealPolynomial::RealPolynomial(int real_vars) : m_(real_vars) {
    if (real_vars < 2 || real_vars % 2 != 0)
        throw DimensionMismatch("real variable count must be a positive even number");
}

void RealPolynomial::add_term(const std::vector<int>& exponents, double c) {
    if (static_cast<int>(exponents.size()) != m_)
        throw DimensionMismatch("real exponent length mismatch");
    for (int v : exponents)
        if (v < 0) throw DimensionMismatch("negative exponent entry");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(exponents, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

double RealPolynomial::evaluate(const std::vector<double>& xy) const {
    if (static_cast<int>(xy.size()) != m_) throw DimensionMismatch("point dimension mismatch");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (int i = 0; i < m_; ++i)
            for (int k = 0; k < e[i]; ++k) t *= xy[i];
        acc += t;
    }
    return acc;
}

namespace {

MixedPolynomial substitute_real(const RealPolynomial& p, int n) {
    // x_k = (z_k + zb_k)/2, y_k = -i (z_k - zb_k)/2.
    MixedPolynomial acc(n);
    for (const auto& [e, c] : p.terms()) {
        MixedPolynomial t = MixedPolynomial::constant(n, Complex(c, 0.0));
        for (int k = 0; k < n; ++k) {
            if (e[2 * k] > 0) {
                MixedPolynomial x =
                    (MixedPolynomial::variable(n, k + 1) + MixedPolynomial::conj_variable(n, k + 1)) *
                    Complex(0.5, 0.0);
                t = t * x.pow(e[2 * k]);
            }
            if (e[2 * k + 1] > 0) {
                MixedPolynomial y =
                    (MixedPolynomial::variable(n, k + 1) - MixedPolynomial::conj_variable(n, k + 1)) *
                    Complex(0.0, -0.5);
                t = t * y.pow(e[2 * k + 1]);
            }
        }
        acc += t;
    }
    return acc;
}

} // namespace

MixedPolynomial real_pair_to_mixed(const RealPolynomial& g, const RealPolynomial& h) {
    if (g.real_vars() != h.real_vars())
        throw DimensionMismatch("g and h must share the same variables");
    const int n = g.real_vars() / 2;
    return substitute_real(g, n) + substitute_real(h, n) * Complex(0.0, 1.0);
}

std::pair<RealPolynomial, RealPolynomial> mixed_to_real_pair(const MixedPolynomial& f) {
    const int n = f.vars();
    // Expand f in the real monomial basis: z_k = x_k + i y_k, zb_k = x_k - i y_k.
    std::map<std::vector<int>, Complex> xy;
    for (const auto& [key, c] : f.terms()) {
        std::map<std::vector<int>, Complex> term;
        term[std::vector<int>(2 * n, 0)] = c;
        auto mul_linear = [&](int k, Complex ycoef, int times) {
            for (int rep = 0; rep < times; ++rep) {
                std::map<std::vector<int>, Complex> next;
                for (const auto& [e, w] : term) {
                    std::vector<int> ex = e;
                    ex[2 * k] += 1;
                    next[ex] += w;
                    std::vector<int> ey = e;
                    ey[2 * k + 1] += 1;
                    next[ey] += w * ycoef;
                }
                term.swap(next);
            }
        };
        for (int k = 0; k < n; ++k) {
            mul_linear(k, Complex(0.0, 1.0), key.nu[k]);
            mul_linear(k, Complex(0.0, -1.0), key.mu[k]);
        }
        for (const auto& [e, w] : term) xy[e] += w;
    }
    RealPolynomial g(2 * n), h(2 * n);
    for (const auto& [e, w] : xy) {
        g.add_term(e, w.real());
        h.add_term(e, w.imag());
    }
    return {g, h};
}

} // namespace mixnewton
