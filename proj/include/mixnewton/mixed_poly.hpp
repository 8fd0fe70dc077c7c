#ifndef MIXNEWTON_MIXED_POLY_HPP
#define MIXNEWTON_MIXED_POLY_HPP

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mixnewton/errors.hpp"

namespace mixnewton {

using Complex = std::complex<double>;

// Lattice exponent vector; length is the ambient variable count n.
using Exponent = std::vector<int>;

// A point of C^n.
using ComplexPoint = std::vector<Complex>;

struct TermKey {
    Exponent nu;  // exponents of z
    Exponent mu;  // exponents of conj(z)
    auto operator<=>(const TermKey&) const = default;
};

/**
 * A mixed polynomial f(z, conj z) = sum c_{nu,mu} z^nu conj(z)^mu in n complex
 * variables, stored as a finite term map. Coefficients are complex doubles;
 * exponents are exact. Zero coefficients are never stored, so the empty map is
 * the zero polynomial. All operations are pure.
 */
class MixedPolynomial {
public:
    explicit MixedPolynomial(int vars = 1);

    static MixedPolynomial zero(int vars) { return MixedPolynomial(vars); }
    static MixedPolynomial constant(int vars, Complex c);
    static MixedPolynomial monomial(Exponent nu, Exponent mu, Complex c);
    // 1-based variable index: variable(n, i) = z_i, conj_variable(n, i) = zb_i.
    static MixedPolynomial variable(int vars, int index);
    static MixedPolynomial conj_variable(int vars, int index);

    int vars() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    const std::map<TermKey, Complex>& terms() const { return terms_; }
    Complex constant_term() const;

    // Accumulates c into the (nu, mu) coefficient, dropping exact zeros.
    void add_term(const Exponent& nu, const Exponent& mu, Complex c);

    MixedPolynomial& operator+=(const MixedPolynomial& rhs);
    MixedPolynomial& operator-=(const MixedPolynomial& rhs);
    MixedPolynomial& operator*=(Complex s);
    friend MixedPolynomial operator+(MixedPolynomial a, const MixedPolynomial& b) { return a += b; }
    friend MixedPolynomial operator-(MixedPolynomial a, const MixedPolynomial& b) { return a -= b; }
    friend MixedPolynomial operator*(MixedPolynomial a, Complex s) { return a *= s; }
    friend MixedPolynomial operator*(Complex s, MixedPolynomial a) { return a *= s; }
    MixedPolynomial operator*(const MixedPolynomial& rhs) const;
    MixedPolynomial pow(int k) const;

    bool operator==(const MixedPolynomial&) const = default;

    Complex evaluate(const ComplexPoint& z) const;

    int total_degree() const;  // -1 for the zero polynomial

private:
    int n_;
    std::map<TermKey, Complex> terms_;
};

// Formal Wirtinger partials treating z and conj(z) as independent variables.
std::vector<MixedPolynomial> wirtinger_dz(const MixedPolynomial& f);
std::vector<MixedPolynomial> wirtinger_dzbar(const MixedPolynomial& f);

// Term rule (nu, mu, c) -> (mu, nu, conj c); evaluate(conjugate(f), z) == conj(evaluate(f, z)).
MixedPolynomial conjugate(const MixedPolynomial& f);

// f - f(0); removes the constant term and leaves all derivatives unchanged.
MixedPolynomial shift_constant(const MixedPolynomial& f);

// Keeps exactly the terms supported on the coordinate subspace C^I (1-based
// indices); result lives in the same ambient dimension.
MixedPolynomial restrict_to_axes(const MixedPolynomial& f, const std::set<int>& I);

// Indices i (1-based) such that some term has nu_i + mu_i > 0.
std::set<int> effective_variables(const MixedPolynomial& f);

struct WeightedHomogeneity {
    std::vector<long long> weights;  // positive integers, gcd 1
    long long degree;                // positive
};

// Positive integer weights q with gcd 1 and q.(nu+mu) = m for every term, if
// such weights exist; then f(t o z) = t^m f(z, conj z) for real t.
std::optional<WeightedHomogeneity> is_weighted_homogeneous(const MixedPolynomial& f);

/**
 * Real polynomial in the 2n interleaved variables x_1, y_1, ..., x_n, y_n.
 * Used for the correspondence between mixed polynomials f and real maps (g, h).
 */
class RealPolynomial {
public:
    explicit RealPolynomial(int real_vars = 2);

    int real_vars() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, double>& terms() const { return terms_; }
    void add_term(const std::vector<int>& exponents, double c);
    double evaluate(const std::vector<double>& xy) const;
    bool operator==(const RealPolynomial&) const = default;

private:
    int m_;
    std::map<std::vector<int>, double> terms_;
};

// f(z, conj z) = g(x, y) + i h(x, y) under z = x + i y.
MixedPolynomial real_pair_to_mixed(const RealPolynomial& g, const RealPolynomial& h);
std::pair<RealPolynomial, RealPolynomial> mixed_to_real_pair(const MixedPolynomial& f);

} // namespace mixnewton

#endif
