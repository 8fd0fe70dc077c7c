#ifndef MIXNEWTON_PROBE_HPP
#define MIXNEWTON_PROBE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mixnewton/mixed_poly.hpp"
#include "mixnewton/newton_geometry.hpp"
#include "mixnewton/nondeg.hpp"

namespace mixnewton {

// Increasing sphere radii realizing |z_k| -> infinity, with the per-radius
// multistart budget.
struct RadiusSchedule {
    std::vector<double> radii{1e1, 1e2, 1e3, 1e4, 1e5};
    int starts_per_radius = 400;

    void validate() const;
};

struct ProbeOptions {
    double tol = 1e-9;          // witness acceptance, relative to 1 + gradient norms
    double cluster_tol = 1e-3;  // final-drift bound and value dedupe resolution
    double value_tol = 1e-2;    // set-comparison tolerance
    double torus_margin = 1e-3;
    double chain_tol_base = 1e-2;
    double kos_tol = 1e-2;       // "tends to zero" bound on the final KOS entry
    double kos_keep_cap = 10.0;  // per-radius filter for K-infinity candidates
    double box_halfwidth = 3.0;  // critical-point search box
    int crit_phase_grid = 256;
    int crit_starts_per_phase = 4;
    int max_iters = 200;
    std::uint64_t seed = 1;
    int threads = 0;
};

enum class ChainClass { finite_limit, divergent, inconclusive };

struct ChainMember {
    double radius = 0.0;
    ComplexPoint z;
    Complex value{0.0, 0.0};
    double residual = 0.0;
    double kos = 0.0;
    double theta = 0.0;
    double lambda = 0.0;
};

struct ValueCluster {
    Complex center{0.0, 0.0};
    double radius_estimate = 0.0;  // spread of member values around the center
    ChainClass classification = ChainClass::inconclusive;
    std::vector<ChainMember> members;   // ordered by radius
    std::vector<double> drift;          // |v_{k+1} - v_k| along the chain
    std::vector<double> kos_trace;      // (1 + |z|) nu along the chain
};

struct ProbeResult {
    std::vector<ValueCluster> clusters;  // every chain, all classifications
    std::vector<double> radii;
    std::vector<int> accepted_per_radius;

    std::vector<const ValueCluster*> finite_limits() const;
};

struct CriticalValueSet {
    std::vector<ValueCluster> clusters;  // single-radius value clusters
    double max_modulus = 0.0;            // boundedness diagnostic
};

// Multistart search for Sing f over a bounded box, phases seeded on a grid;
// values are clustered at cluster_tol.
CriticalValueSet critical_values(const MixedPolynomial& f, const ProbeOptions& opts);

struct BoundSet {
    bool includes_zero = true;
    Complex shift{0.0, 0.0};  // f(0); values are reported in the shifted frame
    std::map<int, std::vector<ValueCluster>> bad_face_values;  // supp-hull face id -> clusters
    std::vector<Complex> union_values;                         // {0} plus all bad-face values
};

// The bound {0} union over bad faces of f_face(Sing f_face); the input is
// shifted to f - f(0) first and the shift is recorded.
BoundSet bad_face_critical_values(const MixedPolynomial& f, const ProbeOptions& opts);

// Estimate of S(f): per-radius Milnor witnesses chained across the schedule;
// finite_limit clusters are the estimate, divergent chains are diagnostics.
ProbeResult estimate_S(const MixedPolynomial& f, const RadiusSchedule& schedule,
                       const ProbeOptions& opts);

// Estimate of the asymptotic critical values: per-radius minimization of the
// KOS quantity, chained across radii.
ProbeResult estimate_Kinf(const MixedPolynomial& f, const RadiusSchedule& schedule,
                          const ProbeOptions& opts);

struct CheckOutcome {
    bool applicable = true;
    bool pass = true;
    std::string detail;
};

struct AnalysisReport {
    std::string expr;  // canonical formatting of the input
    int n = 1;
    Complex shift{0.0, 0.0};
    NewtonData geometry;
    NondegReport nondeg;
    BoundSet bound;
    CriticalValueSet critical;
    ProbeResult s_estimate;
    ProbeResult kinf_estimate;
    std::map<std::string, CheckOutcome> checks;
    RadiusSchedule schedule;
    ProbeOptions options;
    std::uint64_t seed = 0;
};

// Full pipeline: geometry, verdicts, bound set, probes and containment checks.
AnalysisReport assemble_report(const MixedPolynomial& f, const RadiusSchedule& schedule,
                               const ProbeOptions& opts);

} // namespace mixnewton

#endif
