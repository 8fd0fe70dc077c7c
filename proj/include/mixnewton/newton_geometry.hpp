#ifndef MIXNEWTON_NEWTON_GEOMETRY_HPP
#define MIXNEWTON_NEWTON_GEOMETRY_HPP

#include <optional>
#include <set>
#include <vector>

#include "mixnewton/mixed_poly.hpp"
#include "mixnewton/polytope.hpp"

namespace mixnewton {

using SupportSet = std::set<LatticePoint>;

// supp(f) = { nu + mu : c_{nu,mu} != 0 }; distinct terms may collapse to one point.
SupportSet support(const MixedPolynomial& f);

// Convex hull of supp(f) \ {0}; errors when the support is contained in {0}.
LatticePolytope support_hull(const MixedPolynomial& f);

// Newton polyhedron at infinity: convex hull of {0} union supp(f), with
// contains_origin / on_gamma_plus flags filled on every face.
LatticePolytope newton_polyhedron(const MixedPolynomial& f);

// Indices of the faces of newton_polyhedron(f) that avoid the origin.
std::vector<int> gamma_plus_face_ids(const LatticePolytope& gamma0);

// True iff supp(f) meets every positive coordinate axis.
bool is_convenient(const MixedPolynomial& f);

// Marks the bad faces of conv(supp \ {0}): faces whose affine span passes
// through the origin and which are cut out by a mixed-sign hyperplane through
// the origin. Returns the face ids; each marked face stores a witness
// functional. The improper face is eligible.
std::vector<int> mark_bad_faces(LatticePolytope& supp_hull);

// True iff the face (of conv(supp \ {0})) coincides as a point set with a face
// of the Newton polyhedron that avoids the origin.
bool is_face_of_gamma_plus(const MixedPolynomial& f, const LatticePolytope& supp_hull, const Face& face);

// f restricted to the terms whose exponent sum lies on the given face.
// The polytope must have been built from f's support (else ForeignFaceError).
MixedPolynomial restrict_to_face(const MixedPolynomial& f, const LatticePolytope& parent, const Face& face);

// One-stop geometry bundle used by the report pipeline.
struct NewtonData {
    SupportSet supp;
    std::optional<LatticePolytope> supp_hull;  // absent when supp is {0}
    LatticePolytope gamma0;
    std::vector<int> gamma_plus;  // face ids into gamma0
    std::vector<int> bad_faces;   // face ids into supp_hull
    bool convenient = false;
    std::optional<WeightedHomogeneity> weighted;
    std::set<int> effective;
};

NewtonData analyze_newton(const MixedPolynomial& f);

} // namespace mixnewton

#endif
