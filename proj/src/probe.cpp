#include "mixnewton/probe.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <set>

#include "mixnewton/exact_lp.hpp"
#include "mixnewton/expr_parser.hpp"
#include "mixnewton/multistart.hpp"
#include "mixnewton/regularity.hpp"
#include "mixnewton/rng.hpp"
#include "mixnewton/solver.hpp"
#include "systems.hpp"

namespace mixnewton {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct RawWitness {
    bool ok = false;
    ComplexPoint z;
    Complex value{0.0, 0.0};
    double residual = 0.0;
    double kos = 0.0;
    double theta = 0.0;
    double lambda = 0.0;
    int phase = -1;  // phase-grid index the witness was solved at
};

bool lex_less(const ComplexPoint& a, const ComplexPoint& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return false;
}

bool value_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

bool witness_order(const RawWitness& a, const RawWitness& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    if (a.value.imag() != b.value.imag()) return a.value.imag() < b.value.imag();
    if (a.residual != b.residual) return a.residual < b.residual;
    return lex_less(a.z, b.z);
}

// Deterministic greedy bucketing of witnesses by value; each bucket keeps the
// witness with the smallest residual as representative.
struct Bucket {
    RawWitness rep;
    double spread = 0.0;
    int count = 0;
};

std::vector<Bucket> bucket_by_value(std::vector<RawWitness> ws, double tol, bool relative) {
    std::vector<Bucket> out;
    std::sort(ws.begin(), ws.end(), witness_order);
    std::vector<bool> used(ws.size(), false);
    for (std::size_t i = 0; i < ws.size(); ++i) {
        if (used[i]) continue;
        const Complex seed = ws[i].value;
        const double t = relative ? tol * (1.0 + std::abs(seed)) : tol;
        Bucket b;
        b.rep = ws[i];
        b.count = 0;
        for (std::size_t j = i; j < ws.size(); ++j) {
            if (used[j]) continue;
            if (ws[j].value.real() - seed.real() > t) break;  // sorted by real part
            if (std::abs(ws[j].value - seed) > t) continue;
            used[j] = true;
            b.count += 1;
            b.spread = std::max(b.spread, std::abs(ws[j].value - seed));
            if (ws[j].residual < b.rep.residual ||
                (ws[j].residual == b.rep.residual && lex_less(ws[j].z, b.rep.z)))
                b.rep = ws[j];
        }
        out.push_back(std::move(b));
    }
    return out;
}

// Start profiles on the sphere of radius R:
//   0: balanced direction;
//   1: per-coordinate log-stratified moduli (reaches unbalanced branches);
//   2+: one dominant coordinate at modulus ~R, the rest stratified below 1.
ComplexPoint sphere_start(Rng& rng, int n, double radius, int profile) {
    ComplexPoint z(n);
    double nrm2 = 0.0;
    if (profile == 0) {
        for (int i = 0; i < n; ++i) {
            const double re = rng.uniform(-1.0, 1.0), im = rng.uniform(-1.0, 1.0);
            z[i] = Complex(re, im);
            nrm2 += std::norm(z[i]);
        }
        if (nrm2 == 0.0) z[0] = Complex(1.0, 0.0), nrm2 = 1.0;
    } else if (profile == 1) {
        for (int i = 0; i < n; ++i) {
            const double e = rng.uniform(-3.0, 1.0);
            const double m = std::pow(radius, e);
            z[i] = std::polar(m, rng.angle());
            nrm2 += m * m;
        }
    } else {
        const int dominant = (profile - 2) % n;
        for (int i = 0; i < n; ++i) {
            const double e = i == dominant ? 1.0 : rng.uniform(-3.0, 0.5);
            const double m = std::pow(radius, e);
            z[i] = std::polar(m, rng.angle());
            nrm2 += m * m;
        }
    }
    const double s = radius / std::sqrt(nrm2);
    for (auto& c : z) c *= s;
    return z;
}

std::vector<double> torus_moduli(Rng& rng, int n, double lo, double hi,
                                 const std::vector<long long>& slice) {
    std::vector<double> m(n);
    for (int i = 0; i < n; ++i) m[i] = rng.log_uniform(lo, hi);
    if (!slice.empty()) {
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            num += static_cast<double>(slice[i]) * std::log(m[i]);
            den += static_cast<double>(slice[i]) * static_cast<double>(slice[i]);
        }
        if (den > 0.0) {
            const double t = -num / den;
            for (int i = 0; i < n; ++i) m[i] *= std::exp(t * static_cast<double>(slice[i]));
        }
    }
    return m;
}

struct CritSearchConfig {
    bool torus = false;
    std::vector<long long> slice;
    std::uint64_t salt = 0;
};

CriticalValueSet critical_values_impl(const MixedPolynomial& f, const ProbeOptions& opts,
                                      const CritSearchConfig& cfg) {
    if (f.is_constant()) throw DegenerateInputError("critical-point search requires a non-constant polynomial");
    const int n = f.vars();
    const GradientEvaluator ge(f);
    LMOptions lm;
    lm.max_iters = opts.max_iters;

    const int phases = std::max(1, opts.crit_phase_grid);
    const int per_phase = std::max(1, opts.crit_starts_per_phase);
    const int total = phases * per_phase;

    // The phase is swept on a deterministic grid and held fixed: values found
    // at the same phase line up run to run, and curve coverage is a function
    // of the grid alone.
    auto polish = [&](int p, const ComplexPoint& z0) -> RawWitness {
        systems::CriticalSystem sys{&ge, false, true, kTwoPi * p / phases};
        Eigen::VectorXd u(sys.unknowns());
        systems::put_point(u, z0);

        LMResult res = levenberg_marquardt(
            [&](const Eigen::VectorXd& v, Eigen::VectorXd& F) { sys.residual(v, F); },
            [&](const Eigen::VectorXd& v, Eigen::MatrixXd& J) { sys.jacobian(v, J); },
            u, sys.residuals(), lm);

        RawWitness w;
        w.z = systems::point_from(res.u, n);
        if (cfg.torus && !cfg.slice.empty()) {
            // Renormalize along the torus action, which preserves both the
            // singular-point equation and the value.
            std::vector<double> m(n);
            bool positive = true;
            for (int i = 0; i < n; ++i) {
                m[i] = std::abs(w.z[i]);
                if (m[i] <= 0.0) positive = false;
            }
            if (positive) {
                double num = 0.0, den = 0.0;
                for (int i = 0; i < n; ++i) {
                    num += static_cast<double>(cfg.slice[i]) * std::log(m[i]);
                    den += static_cast<double>(cfg.slice[i]) * static_cast<double>(cfg.slice[i]);
                }
                if (den > 0.0) {
                    const double t = -num / den;
                    for (int i = 0; i < n; ++i)
                        w.z[i] *= std::exp(t * static_cast<double>(cfg.slice[i]));
                }
            }
        }
        w.theta = kTwoPi * p / phases;
        w.phase = p;
        const double nw = nu(ge, w.z);
        w.residual = nw;
        w.value = ge.value(w.z);
        w.kos = (1.0 + std::sqrt(norm2(w.z))) * nw;
        bool region_ok = true;
        if (cfg.torus) {
            for (int i = 0; i < n; ++i) {
                const double mi = std::abs(w.z[i]);
                if (!(mi >= opts.torus_margin && mi <= 1.0 / opts.torus_margin)) region_ok = false;
            }
        }
        w.ok = region_ok && nw <= opts.tol * ge.scale(w.z);
        return w;
    };

    auto kernel = [&](int idx) -> RawWitness {
        const int p = idx / per_phase;
        Rng rng = Rng::from(opts.seed, 0x9100 + cfg.salt, static_cast<std::uint64_t>(idx));
        ComplexPoint z0(n);
        if (cfg.torus) {
            std::vector<double> m = torus_moduli(rng, n, 0.1, 10.0, cfg.slice);
            for (int i = 0; i < n; ++i) z0[i] = std::polar(m[i], rng.angle());
        } else {
            for (int i = 0; i < n; ++i)
                z0[i] = Complex(rng.uniform(-opts.box_halfwidth, opts.box_halfwidth),
                                rng.uniform(-opts.box_halfwidth, opts.box_halfwidth));
        }
        return polish(p, z0);
    };

    std::vector<RawWitness> all = run_starts<RawWitness>(total, kernel, opts.threads);
    std::vector<RawWitness> accepted;
    for (auto& w : all)
        if (w.ok) accepted.push_back(std::move(w));

    // Phase-continuation sweep: solve neighbouring phases from an accepted
    // point so the whole value curve is traced even when random torus seeds
    // only land on part of it.
    if (cfg.torus && !accepted.empty()) {
        auto better = [](const RawWitness& a, const RawWitness& b) {
            if (a.residual != b.residual) return a.residual < b.residual;
            return lex_less(a.z, b.z);
        };
        std::vector<RawWitness> slot(phases);
        for (const auto& w : accepted) {
            RawWitness& sl = slot[w.phase];
            if (!sl.ok || better(w, sl)) sl = w;
        }
        int p0 = 0;
        for (int p = 0; p < phases; ++p)
            if (slot[p].ok) { p0 = p; break; }
        for (int dir = 0; dir < 2; ++dir) {
            RawWitness carry;
            for (int step = 0; step <= phases; ++step) {
                const int p = dir == 0 ? (p0 + step) % phases
                                       : ((p0 - step) % phases + phases) % phases;
                if (slot[p].ok) {
                    carry = slot[p];
                    continue;
                }
                if (!carry.ok) continue;
                RawWitness w = polish(p, carry.z);
                if (w.ok) {
                    w.phase = p;
                    slot[p] = w;
                    accepted.push_back(w);
                    carry = std::move(w);
                }
            }
        }
    }

    CriticalValueSet out;
    for (const auto& w : accepted) out.max_modulus = std::max(out.max_modulus, std::abs(w.value));
    for (const Bucket& b : bucket_by_value(std::move(accepted), opts.cluster_tol, false)) {
        ValueCluster c;
        c.center = b.rep.value;
        c.radius_estimate = b.spread;
        c.classification = ChainClass::finite_limit;
        ChainMember m;
        m.radius = std::sqrt(norm2(b.rep.z));
        m.z = b.rep.z;
        m.value = b.rep.value;
        m.residual = b.rep.residual;
        m.kos = b.rep.kos;
        m.theta = b.rep.theta;
        m.lambda = 0.0;
        c.members.push_back(std::move(m));
        out.clusters.push_back(std::move(c));
    }
    return out;
}

// ---- chain machinery shared by the S and K-infinity probes ----

struct Chain {
    int first_radius = 0;
    std::vector<ChainMember> members;
    std::vector<double> drift;
};

std::vector<Chain> chain_across_radii(const std::vector<std::vector<RawWitness>>& per_radius,
                                      const std::vector<double>& radii, double chain_tol_base) {
    std::vector<Chain> chains;
    const int K = static_cast<int>(radii.size());
    auto to_member = [&](const RawWitness& w, int k) {
        ChainMember m;
        m.radius = radii[k];
        m.z = w.z;
        m.value = w.value;
        m.residual = w.residual;
        m.kos = w.kos;
        m.theta = w.theta;
        m.lambda = w.lambda;
        return m;
    };
    for (int k = 0; k < K; ++k) {
        std::vector<bool> claimed(per_radius[k].size(), false);
        for (Chain& ch : chains) {
            const int tail_radius =
                ch.first_radius + static_cast<int>(ch.members.size()) - 1;
            if (tail_radius != k - 1) continue;  // chain already closed
            const Complex tail = ch.members.back().value;
            const double last_drift = ch.drift.empty() ? 0.0 : ch.drift.back();
            const double tol = std::max(chain_tol_base, 5.0 * last_drift);
            int best = -1;
            double best_dist = 0.0;
            for (std::size_t j = 0; j < per_radius[k].size(); ++j) {
                const double dist = std::abs(per_radius[k][j].value - tail);
                if (dist > tol) continue;
                if (best < 0 || dist < best_dist) best = static_cast<int>(j), best_dist = dist;
            }
            if (best >= 0) {
                ch.members.push_back(to_member(per_radius[k][best], k));
                ch.drift.push_back(best_dist);
                claimed[best] = true;
            }
        }
        for (std::size_t j = 0; j < per_radius[k].size(); ++j) {
            if (claimed[j]) continue;
            Chain ch;
            ch.first_radius = k;
            ch.members.push_back(to_member(per_radius[k][j], k));
            chains.push_back(std::move(ch));
        }
    }
    return chains;
}

bool tail_non_increasing(const std::vector<double>& seq, double floor_value) {
    if (seq.size() < 2) return true;
    const double last = seq[seq.size() - 1];
    const double prev = seq[seq.size() - 2];
    return last <= std::max(prev, floor_value);
}

ChainClass classify_values(const Chain& ch, int total_radii, double cluster_tol) {
    const int tail_radius = ch.first_radius + static_cast<int>(ch.members.size()) - 1;
    const Complex v_final = ch.members.back().value;
    const bool full_tail = tail_radius == total_radii - 1;
    if (full_tail && ch.members.size() >= 3) {
        const double d_final = ch.drift.back();
        const double floor = 1e-8 * (1.0 + std::abs(v_final));
        if (d_final <= cluster_tol && tail_non_increasing(ch.drift, floor))
            return ChainClass::finite_limit;
    }
    const Complex v_first = ch.members.front().value;
    const bool blew_up = std::abs(v_final) > 1e3 ||
                         (ch.members.size() >= 2 && std::abs(v_final) > 4.0 * (1.0 + std::abs(v_first)));
    if (blew_up) return ChainClass::divergent;
    return ChainClass::inconclusive;
}

ValueCluster cluster_from_chain(const Chain& ch, ChainClass cls) {
    ValueCluster c;
    c.classification = cls;
    c.members = ch.members;
    c.drift = ch.drift;
    for (const ChainMember& m : ch.members) c.kos_trace.push_back(m.kos);
    c.center = ch.members.back().value;
    for (const ChainMember& m : ch.members)
        c.radius_estimate = std::max(c.radius_estimate, std::abs(m.value - c.center));
    return c;
}

// Keep one representative per value at cluster_tol resolution inside each class.
std::vector<ValueCluster> dedupe_clusters(std::vector<ValueCluster> cs, double tol) {
    std::stable_sort(cs.begin(), cs.end(), [](const ValueCluster& a, const ValueCluster& b) {
        if (a.classification != b.classification)
            return static_cast<int>(a.classification) < static_cast<int>(b.classification);
        return value_less(a.center, b.center);
    });
    std::vector<ValueCluster> out;
    for (auto& c : cs) {
        bool merged = false;
        for (auto it = out.rbegin(); it != out.rend(); ++it) {
            if (it->classification != c.classification) break;
            if (c.center.real() - it->center.real() > tol) break;
            if (std::abs(c.center - it->center) <= tol) {
                it->radius_estimate =
                    std::max(it->radius_estimate, std::abs(c.center - it->center));
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(std::move(c));
    }
    return out;
}

} // namespace

void RadiusSchedule::validate() const {
    if (radii.size() < 2) throw DegenerateInputError("radius schedule needs at least two radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (radii[i] <= 0.0) throw DegenerateInputError("radii must be positive");
        if (i > 0 && radii[i] <= radii[i - 1])
            throw DegenerateInputError("radii must be strictly increasing");
    }
    if (starts_per_radius < 1) throw DegenerateInputError("per-radius budget must be positive");
}

std::vector<const ValueCluster*> ProbeResult::finite_limits() const {
    std::vector<const ValueCluster*> out;
    for (const auto& c : clusters)
        if (c.classification == ChainClass::finite_limit) out.push_back(&c);
    return out;
}

CriticalValueSet critical_values(const MixedPolynomial& f, const ProbeOptions& opts) {
    return critical_values_impl(f, opts, CritSearchConfig{});
}

BoundSet bad_face_critical_values(const MixedPolynomial& f, const ProbeOptions& opts) {
    if (f.is_constant()) throw DegenerateInputError("bound computation requires a non-constant polynomial");
    BoundSet out;
    out.includes_zero = true;
    out.shift = f.constant_term();
    const MixedPolynomial h = shift_constant(f);

    LatticePolytope hull = support_hull(h);
    std::vector<int> bad = mark_bad_faces(hull);
    for (int fid : bad) {
        const Face& face = hull.faces()[fid];
        MixedPolynomial f_face = restrict_to_face(h, hull, face);
        CritSearchConfig cfg;
        cfg.torus = true;
        cfg.slice = face.bad_witness;
        cfg.salt = 0x77 + static_cast<std::uint64_t>(fid);
        CriticalValueSet vals = critical_values_impl(f_face, opts, cfg);
        out.bad_face_values.emplace(fid, std::move(vals.clusters));
    }

    out.union_values.push_back(Complex(0.0, 0.0));
    for (const auto& [fid, clusters] : out.bad_face_values)
        for (const auto& c : clusters) out.union_values.push_back(c.center);
    std::sort(out.union_values.begin(), out.union_values.end(), value_less);
    return out;
}

namespace {

// Continuation rescale between spheres: the point moves along the monomial
// curve z_i(t) = z_i t^{e_i} through its own coordinates (exponents relative
// to the current radius), with t chosen so the norm hits the target radius.
// Moving along the curve preserves every monomial relation balanced on a
// face, which a plain uniform rescale would destroy.
ComplexPoint rescale_profile(const ComplexPoint& z, double from_radius, double to_radius) {
    const int n = static_cast<int>(z.size());
    std::vector<double> e(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double m = std::abs(z[i]);
        if (m > 0.0 && from_radius > 1.0) e[i] = std::log(m) / std::log(from_radius);
    }
    auto norm_at = [&](double logt) {
        double nrm2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double m = std::abs(z[i]);
            if (m <= 0.0) continue;
            const double m2 = m * std::exp(e[i] * logt);
            nrm2 += m2 * m2;
        }
        return std::sqrt(nrm2);
    };
    // Bisection on log t; the dominant-exponent coordinate makes the norm
    // eventually increasing.
    double lo = 0.0, hi = 2.0 * std::abs(std::log(to_radius / from_radius)) + 1.0;
    if (norm_at(hi) < to_radius) {
        // fall back to a uniform rescale when the profile is degenerate
        ComplexPoint out = z;
        const double nn = std::sqrt(norm2(z));
        if (nn > 0.0)
            for (auto& c : out) c *= to_radius / nn;
        return out;
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (norm_at(mid) < to_radius)
            lo = mid;
        else
            hi = mid;
    }
    ComplexPoint out(n);
    for (int i = 0; i < n; ++i) out[i] = z[i] * std::exp(e[i] * hi);
    return out;
}

// Exponent profiles read off the Newton geometry. A functional p that is
// constant on a face and has min p_i < 0 corresponds to monomial curves
// z_i ~ a_i R^{-p_i} along which exactly that face's terms balance at
// infinity; unbounded Milnor branches and shrinking-gradient valleys live on
// these scalings. For every face we take an integer basis of the functionals
// constant on it and enumerate small combinations, normalized so the dominant
// exponent is 1.
std::vector<std::vector<double>> face_exponent_profiles(const MixedPolynomial& f) {
    using Rat = Rational;
    std::set<std::vector<long long>> cands;

    auto add_candidate = [&](std::vector<long long> p) {
        long long g = 0;
        for (long long v : p) g = std::gcd(g, v < 0 ? -v : v);
        if (g == 0) return;
        for (long long& v : p) v /= g;
        cands.insert(p);
        for (long long& v : p) v = -v;
        cands.insert(p);
    };

    auto scan = [&](const LatticePolytope& P) {
        const int n = P.ambient();
        for (const Face& face : P.faces()) {
            add_candidate(face.support);
            if (face.bad) add_candidate(face.bad_witness);
            if (face.dim < 1) continue;
            // Integer basis of { a : a constant on the face }.
            std::vector<std::vector<Rat>> M;
            const auto& ids = face.vertices;
            for (std::size_t j = 1; j < ids.size(); ++j) {
                std::vector<Rat> row(n);
                for (int c = 0; c < n; ++c)
                    row[c] = Rat(P.vertex(ids[j])[c] - P.vertex(ids[0])[c]);
                M.push_back(std::move(row));
            }
            // Gauss-Jordan to expose the nullspace.
            std::vector<int> pivots;
            std::size_t r = 0;
            for (int c = 0; c < n && r < M.size(); ++c) {
                std::size_t piv = r;
                while (piv < M.size() && M[piv][c] == 0) ++piv;
                if (piv == M.size()) continue;
                std::swap(M[piv], M[r]);
                const Rat inv = M[r][c];
                for (int j = 0; j < n; ++j) M[r][j] /= inv;
                for (std::size_t i = 0; i < M.size(); ++i) {
                    if (i == r || M[i][c] == 0) continue;
                    const Rat fct = M[i][c];
                    for (int j = 0; j < n; ++j) M[i][j] -= fct * M[r][j];
                }
                pivots.push_back(c);
                ++r;
            }
            std::vector<bool> is_pivot(n, false);
            for (int c : pivots) is_pivot[c] = true;
            std::vector<std::vector<long long>> basis;
            for (int free = 0; free < n; ++free) {
                if (is_pivot[free]) continue;
                std::vector<Rat> v(n, Rat(0));
                v[free] = 1;
                for (std::size_t rr = 0; rr < pivots.size(); ++rr) v[pivots[rr]] = -M[rr][free];
                boost::multiprecision::mpz_int l = 1;
                for (const Rat& q : v) l = boost::multiprecision::lcm(l, denominator(q));
                std::vector<long long> b(n);
                for (int c = 0; c < n; ++c)
                    b[c] = static_cast<long long>(numerator(v[c]) * (l / denominator(v[c])));
                basis.push_back(std::move(b));
            }
            // Small integer combinations of the basis.
            const int k = static_cast<int>(basis.size());
            if (k == 0 || k > 4) continue;
            std::vector<int> coef(k, -1);
            while (true) {
                std::vector<long long> pvec(n, 0);
                for (int t = 0; t < k; ++t)
                    for (int c = 0; c < n; ++c) pvec[c] += coef[t] * basis[t][c];
                add_candidate(pvec);
                int t = 0;
                while (t < k && coef[t] == 1) coef[t++] = -1;
                if (t == k) break;
                ++coef[t];
            }
        }
    };
    scan(newton_polyhedron(f));
    SupportSet supp = support(f);
    supp.erase(LatticePoint(f.vars(), 0));
    if (!supp.empty()) scan(support_hull(f));

    std::vector<std::vector<double>> out;
    for (const auto& pvec : cands) {
        long long mn = 0;
        for (long long v : pvec) mn = std::min(mn, v);
        if (mn >= 0) continue;
        std::vector<double> e(pvec.size());
        for (std::size_t i = 0; i < pvec.size(); ++i)
            e[i] = -static_cast<double>(pvec[i]) / static_cast<double>(-mn);
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (out.size() > 32) out.resize(32);
    return out;
}

ProbeResult sphere_probe(const MixedPolynomial& f, const RadiusSchedule& schedule,
                         const ProbeOptions& opts, bool milnor_mode) {
    if (f.is_constant()) throw DegenerateInputError("asymptotic probe requires a non-constant polynomial");
    schedule.validate();
    const int n = f.vars();
    const GradientEvaluator ge(f);

    ProbeResult out;
    out.radii = schedule.radii;
    std::vector<std::vector<RawWitness>> per_radius;

    const std::vector<std::vector<double>> face_profiles = face_exponent_profiles(f);
    // balanced, stratified, one dominant profile per coordinate, then the
    // face-functional scalings
    const int profiles = 2 + n + static_cast<int>(face_profiles.size());
    const int phases = std::max(1, schedule.starts_per_radius / 2);
    std::vector<RawWitness> warm(phases);  // best accepted witness per phase, previous radius

    auto solve_from = [&](double R, double theta0, const ComplexPoint& z0) -> RawWitness {
        RawWitness w;
        if (milnor_mode) {
            systems::MilnorSystem sys{&ge, R, true, theta0};
            LMOptions lm;
            lm.max_iters = opts.max_iters;
            lm.sphere_len = 2 * n;
            lm.sphere_radius = R;
            Eigen::VectorXd u(sys.unknowns());
            systems::put_point(u, z0);
            u[sys.lambda_col()] = 0.0;
            LMResult res = levenberg_marquardt(
                [&](const Eigen::VectorXd& v, Eigen::VectorXd& F) { sys.residual(v, F); },
                [&](const Eigen::VectorXd& v, Eigen::MatrixXd& J) { sys.jacobian(v, J); },
                u, sys.residuals(), lm);
            w.z = systems::point_from(res.u, n);
            const MilnorResidual mr = milnor_residual(ge, w.z);
            w.residual = mr.r;
            w.theta = mr.theta;
            w.lambda = mr.lambda;
            w.value = ge.value(w.z);
            w.kos = kos_quantity(ge, w.z);
            w.ok = mr.r <= opts.tol * ge.scale(w.z);
        } else {
            systems::KosSystem sys{&ge, R, true, theta0};
            LMOptions lm;
            lm.max_iters = opts.max_iters;
            lm.sphere_len = 2 * n;
            lm.sphere_radius = R;
            Eigen::VectorXd u(sys.unknowns());
            systems::put_point(u, z0);
            LMResult res = levenberg_marquardt(
                [&](const Eigen::VectorXd& v, Eigen::VectorXd& F) { sys.residual(v, F); },
                [&](const Eigen::VectorXd& v, Eigen::MatrixXd& J) { sys.jacobian(v, J); },
                u, sys.residuals(), lm);
            w.z = systems::point_from(res.u, n);
            w.theta = theta0;
            w.lambda = 0.0;
            w.residual = nu(ge, w.z);
            w.value = ge.value(w.z);
            w.kos = (1.0 + std::sqrt(norm2(w.z))) * w.residual;
            w.ok = w.kos <= opts.kos_keep_cap;
        }
        return w;
    };

    auto better = [&](const RawWitness& a, const RawWitness& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        return lex_less(a.z, b.z);
    };

    // Runs one sphere: fresh multistart (a bundle of seed profiles per phase,
    // more rounds when branches must be discovered from scratch), a
    // continuation start per phase alive on the previous sphere, and a
    // bounded-branch tracer sweep. Returns the accepted witnesses and updates
    // the per-phase warm slots.
    auto run_radius = [&](double R, double prev_R, std::uint64_t salt,
                          int rounds) -> std::vector<RawWitness> {
        const int fresh = phases * profiles * rounds;
        auto kernel = [&](int idx) -> RawWitness {
            const int phase_idx = idx % phases;
            const double theta0 = kTwoPi * phase_idx / phases;
            RawWitness w;
            if (idx >= fresh) {
                if (!warm[phase_idx].ok) return RawWitness{};
                const ComplexPoint seed = rescale_profile(warm[phase_idx].z, prev_R, R);
                w = solve_from(R, theta0, seed);
                if (phase_idx == 0 && std::getenv("MIXNEWTON_DEBUG_RAMP")) {
                    std::fprintf(stderr, "    [warm p0] R=%g prev=%g |warm|=(", R, prev_R);
                    for (const auto& c : warm[0].z) std::fprintf(stderr, "%g,", std::abs(c));
                    std::fprintf(stderr, ") |seed|=(");
                    for (const auto& c : seed) std::fprintf(stderr, "%g,", std::abs(c));
                    std::fprintf(stderr, ") -> kos %g |v| %g\n", w.kos, std::abs(w.value));
                }
            } else {
                const int profile = (idx / phases) % profiles;
                Rng rng = Rng::from(opts.seed, (milnor_mode ? 0x51 : 0x52) * 1024 + salt,
                                    static_cast<std::uint64_t>(idx));
                if (profile >= 2 + n) {
                    const std::vector<double>& e = face_profiles[profile - 2 - n];
                    ComplexPoint z0(n);
                    double nrm2 = 0.0;
                    for (int i = 0; i < n; ++i) {
                        const double m = std::pow(R, e[i] + rng.uniform(-0.25, 0.25));
                        z0[i] = std::polar(m, rng.angle());
                        nrm2 += m * m;
                    }
                    const double sc = R / std::sqrt(nrm2);
                    for (auto& c : z0) c *= sc;
                    w = solve_from(R, theta0, z0);
                } else {
                    w = solve_from(R, theta0, sphere_start(rng, n, R, profile));
                }
            }
            w.phase = phase_idx;
            return w;
        };
        std::vector<RawWitness> found =
            run_starts<RawWitness>(fresh + phases, kernel, opts.threads);
        if (std::getenv("MIXNEWTON_DEBUG_RAMP")) {
            int wtry = 0, wok = 0;
            double wminv = 1e300;
            for (int idx = fresh; idx < static_cast<int>(found.size()); ++idx) {
                if (!warm[idx % phases].ok) continue;
                ++wtry;
                if (found[idx].ok) {
                    ++wok;
                    wminv = std::min(wminv, std::abs(found[idx].value));
                }
            }
            std::fprintf(stderr, "  warm at R=%g: tried %d ok %d min|v| %g\n", R, wtry, wok, wminv);
        }

        // Per-phase continuation slot. Bounded-value branches are the S(f)
        // candidates, so prefer the smallest |value| over raw residual; the
        // divergent branches re-appear from fresh seeds anyway.
        auto prefer = [&](const RawWitness& a, const RawWitness& b) {
            const double ma = std::abs(a.value), mb = std::abs(b.value);
            if (ma != mb) return ma < mb;
            return better(a, b);
        };
        std::vector<RawWitness> slot(phases);
        auto place = [&](const RawWitness& w, int p) {
            if (!slot[p].ok || prefer(w, slot[p])) slot[p] = w;
        };
        for (int idx = 0; idx < static_cast<int>(found.size()); ++idx)
            if (found[idx].ok) place(found[idx], idx % phases);

        std::vector<RawWitness> accepted;
        for (auto& w : found)
            if (w.ok) accepted.push_back(std::move(w));

        // Trace the bounded-value branch through every phase by sequential
        // continuation, both directions with wrap-around. Fresh seeds find
        // the branch on a fraction of phases only; continuation from a
        // neighbouring phase closes the gaps.
        const RawWitness* init = nullptr;
        for (const auto& w : accepted)
            if (w.ok && (!init || prefer(w, *init))) init = &w;
        if (init) {
            const int p0 = init->phase >= 0 ? init->phase : 0;
            const RawWitness start = *init;
            for (int dir = 0; dir < 2; ++dir) {
                RawWitness carry = start;
                for (int step = 1; step <= phases; ++step) {
                    const int p = dir == 0 ? (p0 + step) % phases
                                           : ((p0 - step) % phases + phases) % phases;
                    RawWitness w = solve_from(R, kTwoPi * p / phases, carry.z);
                    if (!w.ok) continue;
                    w.phase = p;
                    accepted.push_back(w);
                    place(w, p);
                    if (std::abs(w.value) <= 2.0 * std::abs(carry.value) + 1.0) carry = std::move(w);
                }
            }
        }

        warm = slot;
        return accepted;
    };

    // Warm-up ramp: branches whose basins pinch off as the radius grows (the
    // gradient canyons of very stiff fixtures) are found on small spheres
    // where they are wide, then continued outward. Nothing from the ramp is
    // reported directly.
    double prev_R = schedule.radii[0];
    if (schedule.radii[0] > 2.5) {
        std::vector<double> ramp;
        for (double r = schedule.radii[0] / 8.0; r < schedule.radii[0] * 0.75; r *= 2.0)
            if (r >= 1.25) ramp.push_back(r);
        for (std::size_t j = 0; j < ramp.size(); ++j) {
            run_radius(ramp[j], j == 0 ? ramp[j] : ramp[j - 1], 900 + j, j == 0 ? 2 : 1);
            prev_R = ramp[j];
        }
        if (std::getenv("MIXNEWTON_DEBUG_RAMP")) {
            int filled = 0;
            double best = 1e300;
            for (const auto& w : warm)
                if (w.ok) { filled++; best = std::min(best, std::abs(w.value)); }
            std::fprintf(stderr, "ramp end: warm filled %d/%d min|v| %g\n", filled, phases, best);
        }
    }
    for (std::size_t k = 0; k < schedule.radii.size(); ++k) {
        const double R = schedule.radii[k];
        std::vector<RawWitness> accepted = run_radius(R, prev_R, k, k == 0 ? 2 : 1);
        prev_R = R;

        out.accepted_per_radius.push_back(static_cast<int>(accepted.size()));
        if (std::getenv("MIXNEWTON_DEBUG_RAMP")) {
            double mv = 1e300, mk = 1e300;
            for (const auto& w : accepted) {
                mv = std::min(mv, std::abs(w.value));
                mk = std::min(mk, w.kos);
            }
            std::fprintf(stderr, "radius %g: accepted %zu min|v| %g min kos %g\n", R,
                         accepted.size(), mv, mk);
        }
        std::vector<RawWitness> kept;
        for (const Bucket& b : bucket_by_value(std::move(accepted), opts.cluster_tol, true))
            kept.push_back(b.rep);
        if (std::getenv("MIXNEWTON_DEBUG_RAMP")) {
            double mv = 1e300;
            for (const auto& w : kept) mv = std::min(mv, std::abs(w.value));
            std::fprintf(stderr, "  kept %zu min|v| %g\n", kept.size(), mv);
        }
        per_radius.push_back(std::move(kept));
    }

    std::vector<Chain> chains = chain_across_radii(per_radius, schedule.radii, opts.chain_tol_base);
    const int K = static_cast<int>(schedule.radii.size());
    std::vector<ValueCluster> clusters;
    for (const Chain& ch : chains) {
        ChainClass cls = classify_values(ch, K, opts.cluster_tol);
        if (!milnor_mode && cls == ChainClass::finite_limit) {
            // An asymptotic critical value additionally needs the KOS quantity
            // to tend to zero along the chain.
            const double kos_final = ch.members.back().kos;
            std::vector<double> trace;
            for (const auto& m : ch.members) trace.push_back(m.kos);
            if (!(kos_final <= opts.kos_tol && tail_non_increasing(trace, 1e-3)))
                cls = ChainClass::inconclusive;
        }
        clusters.push_back(cluster_from_chain(ch, cls));
    }
    out.clusters = dedupe_clusters(std::move(clusters), opts.cluster_tol);
    return out;
}

} // namespace

ProbeResult estimate_S(const MixedPolynomial& f, const RadiusSchedule& schedule,
                       const ProbeOptions& opts) {
    return sphere_probe(f, schedule, opts, true);
}

ProbeResult estimate_Kinf(const MixedPolynomial& f, const RadiusSchedule& schedule,
                          const ProbeOptions& opts) {
    return sphere_probe(f, schedule, opts, false);
}

namespace {

double dist_to_values(const Complex& c, const std::vector<Complex>& vals) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& v : vals) best = std::min(best, std::abs(c - v));
    return best;
}

} // namespace

AnalysisReport assemble_report(const MixedPolynomial& f, const RadiusSchedule& schedule,
                               const ProbeOptions& opts) {
    if (f.is_zero() || f.is_constant())
        throw DegenerateInputError("analysis requires a non-constant polynomial");

    AnalysisReport rep;
    rep.expr = format(f);
    rep.n = f.vars();
    rep.shift = f.constant_term();
    rep.schedule = schedule;
    rep.options = opts;
    rep.seed = opts.seed;

    rep.geometry = analyze_newton(f);

    WitnessSearchOptions wopts;
    wopts.tol = opts.tol;
    wopts.torus_margin = opts.torus_margin;
    wopts.seed = opts.seed;
    wopts.threads = opts.threads;
    wopts.max_iters = opts.max_iters;
    rep.nondeg = check_newton_nondegenerate(f, wopts);

    rep.bound = bad_face_critical_values(f, opts);
    rep.critical = critical_values(f, opts);
    rep.s_estimate = estimate_S(f, schedule, opts);
    rep.kinf_estimate = estimate_Kinf(f, schedule, opts);

    // Containment and shortcut checks.
    const auto s_finite = rep.s_estimate.finite_limits();
    {
        std::vector<Complex> bound_vals;
        for (const Complex& v : rep.bound.union_values) bound_vals.push_back(v + rep.shift);
        int matched = 0;
        for (const auto* c : s_finite)
            if (dist_to_values(c->center, bound_vals) <= opts.value_tol) ++matched;
        CheckOutcome o;
        o.applicable = rep.nondeg.nondegenerate;
        o.pass = matched == static_cast<int>(s_finite.size());
        o.detail = std::to_string(matched) + "/" + std::to_string(s_finite.size()) +
                   " S clusters within value_tol of the bound set";
        rep.checks["bound_containment"] = o;
    }
    {
        std::vector<Complex> kinf_vals;
        for (const auto* c : rep.kinf_estimate.finite_limits()) kinf_vals.push_back(c->center);
        int matched = 0;
        for (const auto* c : s_finite)
            if (dist_to_values(c->center, kinf_vals) <= opts.value_tol) ++matched;
        CheckOutcome o;
        o.pass = matched == static_cast<int>(s_finite.size());
        o.detail = std::to_string(matched) + "/" + std::to_string(s_finite.size()) +
                   " S clusters matched by a K-infinity cluster";
        rep.checks["s_subset_kinf"] = o;
    }
    {
        int good = 0;
        for (const auto* c : s_finite) {
            const bool ok = !c->kos_trace.empty() && c->kos_trace.back() <= opts.kos_tol &&
                            tail_non_increasing(c->kos_trace, 1e-3);
            if (ok) ++good;
        }
        CheckOutcome o;
        o.pass = good == static_cast<int>(s_finite.size());
        o.detail = std::to_string(good) + "/" + std::to_string(s_finite.size()) +
                   " S clusters with decaying KOS trace";
        rep.checks["s_kos_decay"] = o;
    }
    {
        double max_s = 0.0;
        for (const auto* c : s_finite) max_s = std::max(max_s, std::abs(c->center));
        CheckOutcome o;
        o.applicable = rep.nondeg.strongly_nondegenerate;
        o.pass = std::isfinite(rep.critical.max_modulus) && std::isfinite(max_s);
        char buf[128];
        std::snprintf(buf, sizeof buf, "max |critical value| = %.6g, max |S| = %.6g",
                      rep.critical.max_modulus, max_s);
        o.detail = buf;
        rep.checks["boundedness"] = o;
    }
    {
        CheckOutcome o;
        o.applicable = rep.geometry.convenient && rep.nondeg.nondegenerate;
        o.pass = !o.applicable || s_finite.empty();
        o.detail = o.applicable ? (s_finite.empty() ? "convenient and non-degenerate: S estimate empty"
                                                    : "S estimate should be empty but is not")
                                : "not applicable";
        rep.checks["convenient_shortcut"] = o;
    }
    {
        CheckOutcome o;
        o.applicable = rep.geometry.weighted.has_value() && rep.nondeg.strongly_nondegenerate;
        bool ok = true;
        if (o.applicable) {
            for (const auto& c : rep.critical.clusters)
                if (std::abs(c.center) > opts.value_tol) ok = false;
            for (const auto* c : s_finite)
                if (std::abs(c->center) > opts.value_tol) ok = false;
        }
        o.pass = ok;
        o.detail = o.applicable ? "all probed values within value_tol of 0 expected"
                                : "not applicable";
        rep.checks["weighted_homogeneous_shortcut"] = o;
    }
    {
        // Chains with exactly constant values and c != 0 witness an unbounded
        // fibre of M(f); they must come from bad-face critical values.
        std::vector<Complex> bound_vals;
        for (const Complex& v : rep.bound.union_values) bound_vals.push_back(v + rep.shift);
        int flagged = 0, matched = 0;
        for (const auto& c : rep.s_estimate.clusters) {
            if (c.members.size() != rep.schedule.radii.size()) continue;
            bool constant = true;
            for (double d : c.drift)
                if (d > 1e-10 * (1.0 + std::abs(c.center))) constant = false;
            if (!constant || std::abs(c.center) <= opts.value_tol) continue;
            ++flagged;
            if (dist_to_values(c.center, bound_vals) <= opts.value_tol) ++matched;
        }
        CheckOutcome o;
        o.applicable = rep.nondeg.nondegenerate;
        o.pass = matched == flagged;
        o.detail = std::to_string(matched) + "/" + std::to_string(flagged) +
                   " constant-value chains matched by bad-face values";
        rep.checks["sigma_infinity"] = o;
    }
    return rep;
}

} // namespace mixnewton
