#ifndef MIXNEWTON_REPORT_HPP
#define MIXNEWTON_REPORT_HPP

#include <json.hpp>
#include <string>

#include "mixnewton/probe.hpp"

namespace mixnewton {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "mixnewton 0.1.0";

struct RunConfig {
    RadiusSchedule schedule;
    ProbeOptions opts;
    std::string out_path;   // empty = stdout
    std::string svg_path;   // empty = no plot
    bool emit_timings = false;

    void validate() const;
};

using Json = nlohmann::ordered_json;

// Section serializers (complex numbers as [re, im], exact rationals as "p/q").
Json json_polytope(const LatticePolytope& P);
Json json_geometry(const NewtonData& g);
Json json_verdict(const FaceVerdict& v);
Json json_nondeg(const NondegReport& r);
Json json_cluster(const ValueCluster& c);
Json json_probe(const ProbeResult& p);
Json json_critical(const CriticalValueSet& c);
Json json_bound(const BoundSet& b);

Json report_to_json(const AnalysisReport& rep);
std::string serialize_report(const AnalysisReport& rep);

// Reconstructs the report value from its serialization; geometry and verdict
// structure are rebuilt deterministically from the echoed input, numeric
// sections are read back verbatim. serialize(deserialize(s)) == s.
AnalysisReport report_from_json(const Json& j);

// 2-D scatter of the complex value plane with a legend; byte-deterministic
// for a fixed report.
std::string render_svg(const AnalysisReport& rep);

} // namespace mixnewton

#endif
