#include "mixnewton/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "mixnewton/exact_lp.hpp"

namespace mixnewton {

namespace {

using I128 = __int128;
using RMat = std::vector<std::vector<Rational>>;

long long checked_narrow(I128 v) {
    if (v > static_cast<I128>(9'000'000'000'000'000'000LL) ||
        v < -static_cast<I128>(9'000'000'000'000'000'000LL))
        throw LatticeOverflow("lattice functional exceeds 64-bit range");
    return static_cast<long long>(v);
}

I128 dot128(const std::vector<long long>& a, const LatticePoint& x) {
    I128 acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<I128>(a[i]) * x[i];
    return acc;
}

// Gauss-Jordan over Q; returns rank, M becomes reduced row echelon form.
int rref(RMat& M, std::vector<int>* pivot_cols = nullptr) {
    if (M.empty()) return 0;
    const std::size_t rows = M.size(), cols = M[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && M[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(M[pivot], M[r]);
        const Rational inv = M[r][c];
        for (std::size_t j = 0; j < cols; ++j) M[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            const Rational f = M[i][c];
            for (std::size_t j = 0; j < cols; ++j) M[i][j] -= f * M[r][j];
        }
        if (pivot_cols) pivot_cols->push_back(static_cast<int>(c));
        ++r;
    }
    return static_cast<int>(r);
}

// Basis of { v : R v = 0 } for the row space R (rows x cols).
std::vector<std::vector<Rational>> nullspace(RMat R, int cols) {
    std::vector<int> pivots;
    rref(R, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(cols, Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (r < R.size()) v[pivots[r]] = -R[r][free];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Particular solution of A x = b (consistent systems only; returns empty on
// inconsistency). Free variables are set to zero.
std::vector<Rational> solve_particular(RMat A, std::vector<Rational> b, int cols) {
    for (std::size_t i = 0; i < A.size(); ++i) A[i].push_back(b[i]);
    std::vector<int> pivots;
    rref(A, &pivots);
    for (std::size_t i = 0; i < A.size(); ++i) {
        bool all_zero = true;
        for (int j = 0; j < cols; ++j)
            if (A[i][j] != 0) { all_zero = false; break; }
        if (all_zero && A[i][cols] != 0) return {};
    }
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = A[r][cols];
    return x;
}

// Clears denominators and divides by the gcd; the scale factor is positive so
// signs and orientations are preserved.
std::vector<long long> clear_denominators(const std::vector<Rational>& v) {
    boost::multiprecision::mpz_int l = 1;
    for (const Rational& q : v) l = boost::multiprecision::lcm(l, denominator(q));
    std::vector<boost::multiprecision::mpz_int> w(v.size());
    boost::multiprecision::mpz_int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = numerator(v[i]) * (l / denominator(v[i]));
        g = boost::multiprecision::gcd(g, w[i]);
    }
    std::vector<long long> out(v.size(), 0);
    if (g == 0) return out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        boost::multiprecision::mpz_int e = w[i] / g;
        if (e > 9'000'000'000'000'000'000LL || e < -9'000'000'000'000'000'000LL)
            throw LatticeOverflow("functional entry exceeds 64-bit range");
        out[i] = static_cast<long long>(e);
    }
    return out;
}

std::vector<long long> gcd_normalize(std::vector<long long> v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g > 1)
        for (long long& x : v) x /= g;
    return v;
}

int affine_rank(const std::vector<LatticePoint>& pts, const std::vector<int>& ids) {
    if (ids.size() <= 1) return 0;
    RMat dirs;
    const LatticePoint& base = pts[ids[0]];
    for (std::size_t i = 1; i < ids.size(); ++i) {
        std::vector<Rational> row(base.size());
        for (std::size_t j = 0; j < base.size(); ++j)
            row[j] = Rational(pts[ids[i]][j] - base[j]);
        dirs.push_back(std::move(row));
    }
    return rref(dirs);
}

struct FacetCandidate {
    std::vector<int> point_ids;          // all source points on the hyperplane
    std::vector<long long> local_normal; // oriented so the polytope is on the >= side
};

// Exact determinant by cofactor expansion; sizes stay tiny (k <= ambient - 1).
I128 det_small(const std::vector<std::vector<I128>>& M) {
    const int k = static_cast<int>(M.size());
    if (k == 0) return 1;
    if (k == 1) return M[0][0];
    if (k == 2) return M[0][0] * M[1][1] - M[0][1] * M[1][0];
    I128 acc = 0;
    int sign = 1;
    for (int c = 0; c < k; ++c) {
        if (M[0][c] != 0) {
            std::vector<std::vector<I128>> minor(k - 1, std::vector<I128>(k - 1));
            for (int r = 1; r < k; ++r) {
                int cc = 0;
                for (int j = 0; j < k; ++j)
                    if (j != c) minor[r - 1][cc++] = M[r][j];
            }
            acc += sign * M[0][c] * det_small(minor);
        }
        sign = -sign;
    }
    return acc;
}

} // namespace

LatticePolytope LatticePolytope::hull(int ambient, const std::vector<LatticePoint>& points) {
    if (ambient < 1) throw DimensionMismatch("ambient dimension must be >= 1");
    LatticePolytope P;
    P.ambient_ = ambient;

    std::set<LatticePoint> dedup;
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != ambient)
            throw DimensionMismatch("lattice point dimension mismatch");
        dedup.insert(p);
    }
    if (dedup.empty()) throw ZeroPolynomialError("cannot take the hull of an empty point set");
    P.source_.assign(dedup.begin(), dedup.end());
    const int m = static_cast<int>(P.source_.size());
    const LatticePoint& base = P.source_[0];

    // Affine hull: dimension, a direction basis and integer equations.
    RMat dirs;
    for (int i = 1; i < m; ++i) {
        std::vector<Rational> row(ambient);
        for (int j = 0; j < ambient; ++j) row[j] = Rational(P.source_[i][j] - base[j]);
        dirs.push_back(row);
    }
    RMat echelon = dirs;
    std::vector<int> pivots;
    const int d = rref(echelon, &pivots);
    P.dim_ = d;

    std::vector<std::vector<Rational>> basis;  // d independent direction vectors
    for (int r = 0; r < d; ++r) basis.push_back(echelon[r]);

    for (const auto& eq : nullspace(dirs.empty() ? RMat{std::vector<Rational>(ambient, Rational(0))} : dirs,
                                    ambient)) {
        std::vector<long long> c = clear_denominators(eq);
        bool zero = std::all_of(c.begin(), c.end(), [](long long v) { return v == 0; });
        if (zero) continue;
        P.equations_.emplace_back(c, checked_narrow(dot128(c, base)));
    }

    if (d == 0) {
        P.verts_ = P.source_;
        Face f;
        f.vertices = {0};
        f.dim = 0;
        f.improper = true;
        f.support = P.equations_.empty() ? std::vector<long long>(ambient, 0) : P.equations_[0].first;
        f.support_value = P.equations_.empty() ? 0 : P.equations_[0].second;
        P.faces_.push_back(std::move(f));
        return P;
    }

    // Integer local coordinates: scale the rational coordinates in the chosen
    // basis by a common denominator.
    RMat coeff(ambient, std::vector<Rational>(d));
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < ambient; ++i) coeff[i][j] = basis[j][i];
    std::vector<std::vector<Rational>> local_q(m, std::vector<Rational>(d));
    for (int i = 0; i < m; ++i) {
        std::vector<Rational> rhs(ambient);
        for (int j = 0; j < ambient; ++j) rhs[j] = Rational(P.source_[i][j] - base[j]);
        std::vector<Rational> y = solve_particular(coeff, rhs, d);
        if (y.empty() && i != 0)
            throw LatticeOverflow("inconsistent local coordinates");  // cannot happen
        if (!y.empty()) local_q[i] = std::move(y);
    }
    boost::multiprecision::mpz_int scale = 1;
    for (const auto& row : local_q)
        for (const Rational& q : row) scale = boost::multiprecision::lcm(scale, denominator(q));
    std::vector<std::vector<long long>> local(m, std::vector<long long>(d));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) {
            boost::multiprecision::mpz_int e =
                numerator(local_q[i][j]) * (scale / denominator(local_q[i][j]));
            if (e > 9'000'000'000'000'000'000LL || e < -9'000'000'000'000'000'000LL)
                throw LatticeOverflow("local coordinate exceeds 64-bit range");
            local[i][j] = static_cast<long long>(e);
        }

    // Supporting-hyperplane enumeration over d-subsets of the points.
    std::map<std::vector<int>, FacetCandidate> facets;
    std::vector<int> comb(d);
    std::iota(comb.begin(), comb.end(), 0);
    auto next_combination = [&]() {
        int i = d - 1;
        while (i >= 0 && comb[i] == m - d + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };
    do {
        // Normal in local coordinates via the generalized cross product of the
        // d-1 difference vectors.
        std::vector<std::vector<long long>> rows(d - 1, std::vector<long long>(d));
        for (int r = 1; r < d; ++r)
            for (int j = 0; j < d; ++j)
                rows[r - 1][j] = local[comb[r]][j] - local[comb[0]][j];

        std::vector<long long> u(d, 0);
        // u_j = (-1)^j det(rows without column j): the generalized cross product.
        for (int j = 0; j < d; ++j) {
            std::vector<std::vector<I128>> minor(d - 1, std::vector<I128>(d - 1));
            for (int r = 0; r < d - 1; ++r) {
                int cc = 0;
                for (int c = 0; c < d; ++c)
                    if (c != j) minor[r][cc++] = rows[r][c];
            }
            const I128 value = det_small(minor);
            u[j] = checked_narrow((j % 2) == 0 ? value : -value);
        }
        if (std::all_of(u.begin(), u.end(), [](long long v) { return v == 0; })) continue;
        u = gcd_normalize(u);

        I128 offset = 0;
        for (int j = 0; j < d; ++j) offset += static_cast<I128>(u[j]) * local[comb[0]][j];
        bool below = false, above = false;
        for (int i = 0; i < m && !(below && above); ++i) {
            I128 v = 0;
            for (int j = 0; j < d; ++j) v += static_cast<I128>(u[j]) * local[i][j];
            if (v < offset) below = true;
            if (v > offset) above = true;
        }
        if (below && above) continue;
        if (above) {
            // already min on the subset side
        } else {
            for (long long& v : u) v = -v;
            offset = -offset;
        }
        std::vector<int> on;
        for (int i = 0; i < m; ++i) {
            I128 v = 0;
            for (int j = 0; j < d; ++j) v += static_cast<I128>(u[j]) * local[i][j];
            if (v == offset) on.push_back(i);
        }
        facets.try_emplace(on, FacetCandidate{on, u});
    } while (next_combination());

    // Extreme points: the active facet normals span the full local space.
    std::vector<bool> extreme(m, false);
    for (int i = 0; i < m; ++i) {
        RMat active;
        for (const auto& [ids, fc] : facets) {
            if (!std::binary_search(ids.begin(), ids.end(), i)) continue;
            std::vector<Rational> row(d);
            for (int j = 0; j < d; ++j) row[j] = Rational(fc.local_normal[j]);
            active.push_back(std::move(row));
        }
        if (!active.empty() && rref(active) == d) extreme[i] = true;
    }
    std::map<LatticePoint, int> vertex_id;
    for (int i = 0; i < m; ++i)
        if (extreme[i]) {
            vertex_id.emplace(P.source_[i], 0);
        }
    {
        int next = 0;
        for (auto& [pt, id] : vertex_id) id = next++;
        P.verts_.resize(vertex_id.size());
        for (const auto& [pt, id] : vertex_id) P.verts_[id] = pt;
    }

    // Ambient integer lift of each facet functional.
    struct AmbientFacet {
        std::vector<int> vert_ids;
        std::vector<long long> functional;
        long long value;
    };
    std::vector<AmbientFacet> ambient_facets;
    for (const auto& [ids, fc] : facets) {
        std::vector<int> vids;
        for (int i : ids)
            if (extreme[i]) vids.push_back(vertex_id.at(P.source_[i]));
        std::sort(vids.begin(), vids.end());

        // a . basis_j = u_j defines the lift up to the affine-hull equations.
        RMat A(d, std::vector<Rational>(ambient));
        std::vector<Rational> rhs(d);
        for (int j = 0; j < d; ++j) {
            for (int i = 0; i < ambient; ++i) A[j][i] = basis[j][i];
            rhs[j] = Rational(fc.local_normal[j]);
        }
        std::vector<Rational> a_q = solve_particular(A, rhs, ambient);
        std::vector<long long> a = clear_denominators(a_q);
        long long value = checked_narrow(dot128(a, P.verts_[vids[0]]));
        // Orientation check against a vertex off the facet.
        for (int v = 0; v < static_cast<int>(P.verts_.size()); ++v) {
            if (std::binary_search(vids.begin(), vids.end(), v)) continue;
            I128 dv = dot128(a, P.verts_[v]);
            if (dv < value) {
                for (long long& x : a) x = -x;
                value = -value;
            }
            break;
        }
        ambient_facets.push_back({vids, a, value});
    }
    std::sort(ambient_facets.begin(), ambient_facets.end(),
              [](const AmbientFacet& x, const AmbientFacet& y) { return x.vert_ids < y.vert_ids; });

    // Face lattice: closure of {improper, facets} under intersections.
    std::set<std::vector<int>> face_sets;
    std::vector<int> all_ids(P.verts_.size());
    std::iota(all_ids.begin(), all_ids.end(), 0);
    face_sets.insert(all_ids);
    for (const auto& f : ambient_facets) face_sets.insert(f.vert_ids);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> snapshot(face_sets.begin(), face_sets.end());
        for (const auto& s : snapshot) {
            for (const auto& f : ambient_facets) {
                std::vector<int> inter;
                std::set_intersection(s.begin(), s.end(), f.vert_ids.begin(), f.vert_ids.end(),
                                      std::back_inserter(inter));
                if (!inter.empty() && face_sets.insert(inter).second) grew = true;
            }
        }
    }

    for (const auto& ids : face_sets) {
        Face f;
        f.vertices = ids;
        f.dim = affine_rank(P.verts_, ids);
        f.improper = ids.size() == P.verts_.size();
        if (f.improper) {
            if (d == ambient) {
                f.support.assign(ambient, 0);
                f.support_value = 0;
            } else {
                f.support = P.equations_[0].first;
                f.support_value = P.equations_[0].second;
            }
        } else {
            std::vector<I128> acc(ambient, 0);
            I128 val = 0;
            for (const auto& fac : ambient_facets) {
                if (!std::includes(fac.vert_ids.begin(), fac.vert_ids.end(), ids.begin(), ids.end()))
                    continue;
                for (int i = 0; i < ambient; ++i) acc[i] += fac.functional[i];
                val += fac.value;
            }
            f.support.resize(ambient);
            for (int i = 0; i < ambient; ++i) f.support[i] = checked_narrow(acc[i]);
            f.support = gcd_normalize(f.support);
            f.support_value = checked_narrow(dot128(f.support, P.verts_[ids[0]]));
            (void)val;
        }
        P.faces_.push_back(std::move(f));
    }
    std::sort(P.faces_.begin(), P.faces_.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.vertices < b.vertices;
    });
    for (int i = 0; i < static_cast<int>(P.faces_.size()); ++i)
        if (P.faces_[i].dim == d - 1 && !P.faces_[i].improper) P.facet_ids_.push_back(i);

    return P;
}

bool LatticePolytope::contains(const LatticePoint& x) const {
    if (static_cast<int>(x.size()) != ambient_) throw DimensionMismatch("point dimension mismatch");
    for (const auto& [c, c0] : equations_)
        if (dot128(c, x) != c0) return false;
    if (dim_ == 0) return x == verts_[0];
    for (int fid : facet_ids_) {
        const Face& f = faces_[fid];
        if (dot128(f.support, x) < f.support_value) return false;
    }
    return true;
}

bool LatticePolytope::face_contains(int face_id, const LatticePoint& x) const {
    if (!contains(x)) return false;
    const Face& f = faces_[face_id];
    if (f.improper) return true;
    return dot128(f.support, x) == f.support_value;
}

std::pair<int, long long> LatticePolytope::min_face(const std::vector<long long>& p) const {
    if (static_cast<int>(p.size()) != ambient_)
        throw DimensionMismatch("functional dimension mismatch");
    bool all_zero = std::all_of(p.begin(), p.end(), [](long long v) { return v == 0; });
    if (all_zero) throw DimensionMismatch("the zero functional has no minimal face");
    I128 best = 0;
    bool first = true;
    for (const auto& v : verts_) {
        I128 val = dot128(p, v);
        if (first || val < best) best = val, first = false;
    }
    std::vector<int> ids;
    for (int i = 0; i < static_cast<int>(verts_.size()); ++i)
        if (dot128(p, verts_[i]) == best) ids.push_back(i);
    const int idx = face_index_by_vertices(ids);
    if (idx < 0) throw LatticeOverflow("argmin vertex set is not a face (lattice inconsistency)");
    return {idx, checked_narrow(best)};
}

int LatticePolytope::face_index_by_vertices(const std::vector<int>& sorted_ids) const {
    for (int i = 0; i < static_cast<int>(faces_.size()); ++i)
        if (faces_[i].vertices == sorted_ids) return i;
    return -1;
}

bool LatticePolytope::same_point_set(const LatticePolytope& a, const Face& fa,
                                     const LatticePolytope& b, const Face& fb) {
    if (fa.vertices.size() != fb.vertices.size()) return false;
    std::set<LatticePoint> pa, pb;
    for (int id : fa.vertices) pa.insert(a.verts_[id]);
    for (int id : fb.vertices) pb.insert(b.verts_[id]);
    return pa == pb;
}

} // namespace mixnewton
