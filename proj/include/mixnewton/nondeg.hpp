#ifndef MIXNEWTON_NONDEG_HPP
#define MIXNEWTON_NONDEG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "mixnewton/mixed_poly.hpp"
#include "mixnewton/newton_geometry.hpp"

namespace mixnewton {

enum class WitnessMode { nondegenerate_test, strong_test };
enum class WitnessStatus { degenerate_witness_found, presumed_nondegenerate };

struct CriticalWitness {
    ComplexPoint z;
    double theta = 0.0;   // phase of mu in conj(df) = mu dbar f
    double lambda = 0.0;  // real multiplier; 0 for singular-type witnesses
    double residual = 0.0;
    Complex value{0.0, 0.0};
};

struct SearchBudget {
    int starts = 0;
    long long iterations = 0;
    std::uint64_t seed = 0;
};

struct FaceVerdict {
    WitnessMode mode = WitnessMode::strong_test;
    WitnessStatus status = WitnessStatus::presumed_nondegenerate;
    std::optional<CriticalWitness> witness;
    SearchBudget budget;
};

struct WitnessSearchOptions {
    int starts = 1000;
    int max_iters = 200;
    double tol = 1e-9;
    double torus_margin = 1e-3;
    double modulus_lo = 0.1;
    double modulus_hi = 10.0;
    std::uint64_t seed = 1;
    std::uint64_t salt = 0;  // distinguishes streams between faces/modes
    int threads = 0;
    // Optional torus-action slice: search is renormalized onto
    // sum_i a_i log|z_i| = 0, which is value-preserving on faces whose span
    // passes through the origin.
    std::vector<long long> slice;
};

// Multistart search for a singular point of the face polynomial on the open
// torus (Sing f_face intersected with (C*)^n); absence of a witness within the
// budget is reported as presumed_nondegenerate, never as a proof.
FaceVerdict strong_degeneracy_witness(const MixedPolynomial& f_face, const WitnessSearchOptions& opts);

// Same search with the additional equation f_face(z) = 0.
FaceVerdict degeneracy_witness(const MixedPolynomial& f_face, const WitnessSearchOptions& opts);

struct NondegReport {
    std::vector<int> face_ids;  // faces of gamma0 on the Newton boundary, ascending dimension
    std::map<int, FaceVerdict> nondegenerate_verdicts;
    std::map<int, FaceVerdict> strong_verdicts;
    bool nondegenerate = false;
    bool strongly_nondegenerate = false;
};

// Runs both witness searches on every face of the Newton boundary at infinity.
NondegReport check_newton_nondegenerate(const MixedPolynomial& f, const WitnessSearchOptions& opts);

// Closed form for the one-variable quadratic family a z^2 + b z zb + c zb^2:
// true iff (|a|^2 - |c|^2)^2 > |conj(a) b - c conj(b)|^2, i.e. iff the family
// member is Newton non-degenerate.
bool quadratic_oracle(Complex a, Complex b, Complex c);

} // namespace mixnewton

#endif
