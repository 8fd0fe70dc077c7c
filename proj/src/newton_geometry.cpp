#include "mixnewton/newton_geometry.hpp"

#include <algorithm>

#include "mixnewton/exact_lp.hpp"

namespace mixnewton {

namespace {

bool is_origin(const LatticePoint& p) {
    return std::all_of(p.begin(), p.end(), [](long long v) { return v == 0; });
}

// Whether the polytope was built from this polynomial's support (possibly with
// the origin adjoined, as in the Newton polyhedron).
void check_association(const MixedPolynomial& f, const LatticePolytope& P) {
    SupportSet supp = support(f);
    SupportSet pts(P.source_points().begin(), P.source_points().end());
    SupportSet with_zero = supp;
    with_zero.insert(LatticePoint(f.vars(), 0));
    SupportSet without_zero = supp;
    without_zero.erase(LatticePoint(f.vars(), 0));
    if (pts != supp && pts != with_zero && pts != without_zero)
        throw ForeignFaceError("face does not belong to a polytope built from this polynomial");
}

} // namespace

SupportSet support(const MixedPolynomial& f) {
    if (f.is_zero()) throw ZeroPolynomialError("the zero polynomial has no support");
    SupportSet out;
    const int n = f.vars();
    for (const auto& [key, c] : f.terms()) {
        LatticePoint p(n);
        for (int i = 0; i < n; ++i) p[i] = key.nu[i] + key.mu[i];
        out.insert(std::move(p));
    }
    return out;
}

LatticePolytope support_hull(const MixedPolynomial& f) {
    SupportSet supp = support(f);
    supp.erase(LatticePoint(f.vars(), 0));
    if (supp.empty())
        throw ZeroPolynomialError("support is contained in the origin; no hull at infinity");
    return LatticePolytope::hull(f.vars(), {supp.begin(), supp.end()});
}

LatticePolytope newton_polyhedron(const MixedPolynomial& f) {
    SupportSet supp = support(f);
    supp.insert(LatticePoint(f.vars(), 0));
    LatticePolytope P = LatticePolytope::hull(f.vars(), {supp.begin(), supp.end()});

    // 0 minimizes sum(x_i) over the nonnegative orthant, hence it is a vertex
    // and origin membership of a face is vertex membership.
    int origin_id = -1;
    for (int i = 0; i < static_cast<int>(P.vertices().size()); ++i)
        if (is_origin(P.vertex(i))) origin_id = i;
    for (Face& face : P.faces()) {
        face.contains_origin =
            origin_id >= 0 &&
            std::binary_search(face.vertices.begin(), face.vertices.end(), origin_id);
        face.on_gamma_plus = !face.contains_origin;
    }
    return P;
}

std::vector<int> gamma_plus_face_ids(const LatticePolytope& gamma0) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(gamma0.faces().size()); ++i)
        if (gamma0.faces()[i].on_gamma_plus) out.push_back(i);
    return out;
}

bool is_convenient(const MixedPolynomial& f) {
    SupportSet supp = support(f);
    const int n = f.vars();
    for (int axis = 0; axis < n; ++axis) {
        bool hit = false;
        for (const auto& p : supp) {
            if (p[axis] == 0) continue;
            bool on_axis = true;
            for (int j = 0; j < n && on_axis; ++j)
                if (j != axis && p[j] != 0) on_axis = false;
            if (on_axis) { hit = true; break; }
        }
        if (!hit) return false;
    }
    return true;
}

std::vector<int> mark_bad_faces(LatticePolytope& P) {
    const int n = P.ambient();
    std::vector<int> out;
    for (int fid = 0; fid < static_cast<int>(P.faces().size()); ++fid) {
        Face& face = P.faces()[fid];
        face.bad = false;
        face.bad_witness.clear();

        // (i) the affine span of the face passes through the origin:
        // 0 = sum t_k v_k with sum t_k = 1 solvable.
        {
            std::vector<std::vector<Rational>> A;
            std::vector<Rational> b;
            const auto& ids = face.vertices;
            for (int row = 0; row < n; ++row) {
                std::vector<Rational> r(ids.size());
                for (std::size_t k = 0; k < ids.size(); ++k)
                    r[k] = Rational(P.vertex(ids[k])[row]);
                A.push_back(r);
                b.push_back(Rational(0));
                std::vector<Rational> rn(ids.size());
                for (std::size_t k = 0; k < ids.size(); ++k) rn[k] = -r[k];
                A.push_back(rn);
                b.push_back(Rational(0));
            }
            std::vector<Rational> ones(ids.size(), Rational(1));
            A.push_back(ones);
            b.push_back(Rational(1));
            std::vector<Rational> neg(ids.size(), Rational(-1));
            A.push_back(neg);
            b.push_back(Rational(-1));
            // Free barycentric coordinates: t unrestricted, handled by lp_feasible.
            if (!lp_feasible(A, b).feasible) continue;
        }

        // (ii) Phase 1: the lattice of functionals vanishing on the face.
        std::vector<std::vector<Rational>> van;
        for (int id : face.vertices) {
            std::vector<Rational> row(n);
            for (int j = 0; j < n; ++j) row[j] = Rational(P.vertex(id)[j]);
            van.push_back(row);
        }
        // Nullspace basis of the vertex matrix.
        std::vector<std::vector<Rational>> N;
        {
            // Gauss-Jordan on van to find the nullspace of a . v = 0.
            std::vector<std::vector<Rational>> M = van;
            std::vector<int> pivots;
            std::size_t r = 0;
            for (int c = 0; c < n && r < M.size(); ++c) {
                std::size_t piv = r;
                while (piv < M.size() && M[piv][c] == 0) ++piv;
                if (piv == M.size()) continue;
                std::swap(M[piv], M[r]);
                const Rational inv = M[r][c];
                for (int j = 0; j < n; ++j) M[r][j] /= inv;
                for (std::size_t i = 0; i < M.size(); ++i) {
                    if (i == r || M[i][c] == 0) continue;
                    const Rational fct = M[i][c];
                    for (int j = 0; j < n; ++j) M[i][j] -= fct * M[r][j];
                }
                pivots.push_back(c);
                ++r;
            }
            std::vector<bool> is_pivot(n, false);
            for (int c : pivots) is_pivot[c] = true;
            for (int free = 0; free < n; ++free) {
                if (is_pivot[free]) continue;
                std::vector<Rational> v(n, Rational(0));
                v[free] = 1;
                for (std::size_t rr = 0; rr < pivots.size(); ++rr) v[pivots[rr]] = -M[rr][free];
                N.push_back(std::move(v));
            }
        }
        if (N.empty()) continue;
        const int k = static_cast<int>(N.size());

        // Outside vertices of the hull.
        std::vector<int> outside;
        for (int v = 0; v < static_cast<int>(P.vertices().size()); ++v)
            if (!std::binary_search(face.vertices.begin(), face.vertices.end(), v))
                outside.push_back(v);

        // Phase 2: for each ordered sign pair (i, j), exact feasibility of
        // { a = N y : a.w >= 1 outside, a_i <= -1, a_j >= 1 }.
        bool found = false;
        for (int i = 0; i < n && !found; ++i) {
            for (int j = 0; j < n && !found; ++j) {
                if (i == j) continue;
                std::vector<std::vector<Rational>> A;
                std::vector<Rational> b;
                for (int w : outside) {
                    std::vector<Rational> row(k, Rational(0));
                    for (int t = 0; t < k; ++t)
                        for (int c = 0; c < n; ++c)
                            row[t] += N[t][c] * Rational(P.vertex(w)[c]);
                    A.push_back(row);
                    b.push_back(Rational(1));
                }
                std::vector<Rational> row_i(k), row_j(k);
                for (int t = 0; t < k; ++t) {
                    row_i[t] = -N[t][i];
                    row_j[t] = N[t][j];
                }
                A.push_back(row_i);
                b.push_back(Rational(1));  // -a_i >= 1
                A.push_back(row_j);
                b.push_back(Rational(1));  // a_j >= 1
                LpResult lp = lp_feasible(A, b);
                if (!lp.feasible) continue;

                std::vector<Rational> a(n, Rational(0));
                for (int t = 0; t < k; ++t)
                    for (int c = 0; c < n; ++c) a[c] += lp.point[t] * N[t][c];
                boost::multiprecision::mpz_int lcm_den = 1;
                for (const Rational& q : a)
                    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(q));
                std::vector<long long> ai(n);
                for (int c = 0; c < n; ++c)
                    ai[c] = static_cast<long long>(numerator(a[c]) * (lcm_den / denominator(a[c])));
                face.bad = true;
                face.bad_witness = ai;
                found = true;
            }
        }
        if (face.bad) out.push_back(fid);
    }
    return out;
}

bool is_face_of_gamma_plus(const MixedPolynomial& f, const LatticePolytope& supp_hull,
                           const Face& face) {
    check_association(f, supp_hull);
    LatticePolytope gamma0 = newton_polyhedron(f);
    for (const Face& g : gamma0.faces()) {
        if (g.contains_origin) continue;
        if (LatticePolytope::same_point_set(supp_hull, face, gamma0, g)) return true;
    }
    return false;
}

MixedPolynomial restrict_to_face(const MixedPolynomial& f, const LatticePolytope& parent,
                                 const Face& face) {
    check_association(f, parent);
    const int n = f.vars();
    const int face_id = parent.face_index_by_vertices(face.vertices);
    if (face_id < 0) throw ForeignFaceError("face is not part of the given polytope");
    MixedPolynomial out(n);
    for (const auto& [key, c] : f.terms()) {
        LatticePoint p(n);
        for (int i = 0; i < n; ++i) p[i] = key.nu[i] + key.mu[i];
        if (parent.face_contains(face_id, p)) out.add_term(key.nu, key.mu, c);
    }
    return out;
}

NewtonData analyze_newton(const MixedPolynomial& f) {
    if (f.is_zero() || f.is_constant())
        throw DegenerateInputError("Newton geometry requires a non-constant polynomial");
    NewtonData out;
    out.supp = support(f);
    out.gamma0 = newton_polyhedron(f);
    out.gamma_plus = gamma_plus_face_ids(out.gamma0);
    SupportSet at_infinity = out.supp;
    at_infinity.erase(LatticePoint(f.vars(), 0));
    if (!at_infinity.empty()) {
        out.supp_hull = support_hull(f);
        out.bad_faces = mark_bad_faces(*out.supp_hull);
    }
    out.convenient = is_convenient(f);
    out.weighted = is_weighted_homogeneous(f);
    out.effective = effective_variables(f);
    return out;
}

} // namespace mixnewton
