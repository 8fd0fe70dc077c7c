#ifndef MIXNEWTON_POLYTOPE_HPP
#define MIXNEWTON_POLYTOPE_HPP

#include <utility>
#include <vector>

#include "mixnewton/errors.hpp"

namespace mixnewton {

using LatticePoint = std::vector<long long>;

/**
 * A face of a lattice polytope, identified by the vertex subset it spans.
 * `support` is an exact integer functional whose minimum over the parent
 * polytope is `support_value`, attained exactly on this face. For the improper
 * face of a full-dimensional polytope the functional is the zero vector (no
 * nonzero functional can be constant there); in every other case it is
 * nonzero.
 */
struct Face {
    std::vector<int> vertices;  // sorted vertex ids into the parent polytope
    int dim = 0;
    bool improper = false;
    std::vector<long long> support;
    long long support_value = 0;

    // Flags filled in by the Newton-geometry layer.
    bool contains_origin = false;
    bool on_gamma_plus = false;
    bool bad = false;
    std::vector<long long> bad_witness;  // hyperplane functional for bad faces
};

/**
 * Exact convex hull of a finite set of lattice points together with its full
 * face lattice (faces of every dimension, including the improper face).
 * All computations are exact; doubles never enter this class.
 */
class LatticePolytope {
public:
    static LatticePolytope hull(int ambient, const std::vector<LatticePoint>& points);

    int ambient() const { return ambient_; }
    int dim() const { return dim_; }
    const std::vector<LatticePoint>& source_points() const { return source_; }
    const std::vector<LatticePoint>& vertices() const { return verts_; }
    const LatticePoint& vertex(int id) const { return verts_[id]; }

    // Faces sorted by (dim, vertex ids); the improper face comes last.
    const std::vector<Face>& faces() const { return faces_; }
    std::vector<Face>& faces() { return faces_; }
    int improper_face_index() const { return static_cast<int>(faces_.size()) - 1; }
    const std::vector<int>& facet_ids() const { return facet_ids_; }

    // Affine hull equations c.x = c0 satisfied by every point of the polytope.
    const std::vector<std::pair<std::vector<long long>, long long>>& hull_equations() const {
        return equations_;
    }

    bool contains(const LatticePoint& x) const;
    bool face_contains(int face_id, const LatticePoint& x) const;

    // Exact minimum of p over the polytope and the unique maximal face where
    // it is attained.
    std::pair<int, long long> min_face(const std::vector<long long>& p) const;

    // Face lookup by exact vertex-id set; -1 if the set is not a face.
    int face_index_by_vertices(const std::vector<int>& sorted_ids) const;

    // True when the two faces have identical vertex coordinate sets.
    static bool same_point_set(const LatticePolytope& a, const Face& fa,
                               const LatticePolytope& b, const Face& fb);

private:
    int ambient_ = 0;
    int dim_ = 0;
    std::vector<LatticePoint> source_;
    std::vector<LatticePoint> verts_;
    std::vector<std::pair<std::vector<long long>, long long>> equations_;
    std::vector<Face> faces_;
    std::vector<int> facet_ids_;
};

} // namespace mixnewton

#endif
