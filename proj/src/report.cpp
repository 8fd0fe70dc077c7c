#include "mixnewton/report.hpp"

#include <numeric>

#include "mixnewton/expr_parser.hpp"

namespace mixnewton {

namespace {

Json json_complex(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from(const Json& j) { return Complex(j.at(0).get<double>(), j.at(1).get<double>()); }

std::string rational_string(long long p, long long q = 1) {
    return std::to_string(p) + "/" + std::to_string(q);
}

Json json_functional(const std::vector<long long>& a) {
    Json out = Json::array();
    for (long long v : a) out.push_back(rational_string(v));
    return out;
}

Json json_point(const ComplexPoint& z) {
    Json out = Json::array();
    for (const Complex& c : z) out.push_back(json_complex(c));
    return out;
}

ComplexPoint point_from(const Json& j) {
    ComplexPoint z;
    for (const auto& e : j) z.push_back(complex_from(e));
    return z;
}

Json json_member(const ChainMember& m) {
    Json out;
    out["radius"] = m.radius;
    out["z"] = json_point(m.z);
    out["value"] = json_complex(m.value);
    out["residual"] = m.residual;
    out["kos"] = m.kos;
    out["theta"] = m.theta;
    out["lambda"] = m.lambda;
    return out;
}

ChainMember member_from(const Json& j) {
    ChainMember m;
    m.radius = j.at("radius").get<double>();
    m.z = point_from(j.at("z"));
    m.value = complex_from(j.at("value"));
    m.residual = j.at("residual").get<double>();
    m.kos = j.at("kos").get<double>();
    m.theta = j.at("theta").get<double>();
    m.lambda = j.at("lambda").get<double>();
    return m;
}

const char* class_name(ChainClass c) {
    switch (c) {
        case ChainClass::finite_limit: return "finite_limit";
        case ChainClass::divergent: return "divergent";
        default: return "inconclusive";
    }
}

ChainClass class_from(const std::string& s) {
    if (s == "finite_limit") return ChainClass::finite_limit;
    if (s == "divergent") return ChainClass::divergent;
    return ChainClass::inconclusive;
}

const char* status_name(WitnessStatus s) {
    return s == WitnessStatus::degenerate_witness_found ? "degenerate_witness_found"
                                                        : "presumed_nondegenerate";
}

const char* mode_name(WitnessMode m) {
    return m == WitnessMode::strong_test ? "strong_test" : "nondegenerate_test";
}

ValueCluster cluster_from(const Json& j) {
    ValueCluster c;
    c.center = complex_from(j.at("center"));
    c.radius_estimate = j.at("radius_estimate").get<double>();
    c.classification = class_from(j.at("classification").get<std::string>());
    for (const auto& d : j.at("drift")) c.drift.push_back(d.get<double>());
    for (const auto& k : j.at("kos_trace")) c.kos_trace.push_back(k.get<double>());
    for (const auto& m : j.at("members")) c.members.push_back(member_from(m));
    return c;
}

FaceVerdict verdict_from(const Json& j) {
    FaceVerdict v;
    v.mode = j.at("mode").get<std::string>() == "strong_test" ? WitnessMode::strong_test
                                                              : WitnessMode::nondegenerate_test;
    v.status = j.at("status").get<std::string>() == "degenerate_witness_found"
                   ? WitnessStatus::degenerate_witness_found
                   : WitnessStatus::presumed_nondegenerate;
    if (!j.at("witness").is_null()) {
        CriticalWitness w;
        const Json& jw = j.at("witness");
        w.z = point_from(jw.at("z"));
        w.theta = jw.at("theta").get<double>();
        w.lambda = jw.at("lambda").get<double>();
        w.residual = jw.at("residual").get<double>();
        w.value = complex_from(jw.at("value"));
        v.witness = w;
    }
    v.budget.starts = j.at("budget").at("starts").get<int>();
    v.budget.iterations = j.at("budget").at("iterations").get<long long>();
    v.budget.seed = j.at("budget").at("seed").get<std::uint64_t>();
    return v;
}

ProbeResult probe_from(const Json& j) {
    ProbeResult p;
    for (const auto& r : j.at("radii")) p.radii.push_back(r.get<double>());
    for (const auto& a : j.at("accepted_per_radius")) p.accepted_per_radius.push_back(a.get<int>());
    for (const auto& c : j.at("clusters")) p.clusters.push_back(cluster_from(c));
    return p;
}

Json json_config(const RadiusSchedule& s, const ProbeOptions& o) {
    Json out;
    out["radii"] = s.radii;
    out["starts_per_radius"] = s.starts_per_radius;
    out["tol"] = o.tol;
    out["cluster_tol"] = o.cluster_tol;
    out["value_tol"] = o.value_tol;
    out["torus_margin"] = o.torus_margin;
    out["chain_tol_base"] = o.chain_tol_base;
    out["kos_tol"] = o.kos_tol;
    out["kos_keep_cap"] = o.kos_keep_cap;
    out["box_halfwidth"] = o.box_halfwidth;
    out["crit_phase_grid"] = o.crit_phase_grid;
    out["crit_starts_per_phase"] = o.crit_starts_per_phase;
    out["max_iters"] = o.max_iters;
    out["threads"] = o.threads;
    return out;
}

void config_from(const Json& j, RadiusSchedule& s, ProbeOptions& o) {
    s.radii.clear();
    for (const auto& r : j.at("radii")) s.radii.push_back(r.get<double>());
    s.starts_per_radius = j.at("starts_per_radius").get<int>();
    o.tol = j.at("tol").get<double>();
    o.cluster_tol = j.at("cluster_tol").get<double>();
    o.value_tol = j.at("value_tol").get<double>();
    o.torus_margin = j.at("torus_margin").get<double>();
    o.chain_tol_base = j.at("chain_tol_base").get<double>();
    o.kos_tol = j.at("kos_tol").get<double>();
    o.kos_keep_cap = j.at("kos_keep_cap").get<double>();
    o.box_halfwidth = j.at("box_halfwidth").get<double>();
    o.crit_phase_grid = j.at("crit_phase_grid").get<int>();
    o.crit_starts_per_phase = j.at("crit_starts_per_phase").get<int>();
    o.max_iters = j.at("max_iters").get<int>();
    o.threads = j.at("threads").get<int>();
}

} // namespace

void RunConfig::validate() const {
    schedule.validate();
    if (opts.tol <= 0 || opts.cluster_tol <= 0 || opts.value_tol <= 0 || opts.torus_margin <= 0)
        throw DegenerateInputError("all tolerances must be positive");
}

Json json_polytope(const LatticePolytope& P) {
    Json out;
    out["ambient"] = P.ambient();
    out["dim"] = P.dim();
    Json verts = Json::array();
    for (const auto& v : P.vertices()) verts.push_back(v);
    out["vertices"] = verts;
    Json eqs = Json::array();
    for (const auto& [c, c0] : P.hull_equations()) {
        Json e;
        e["normal"] = json_functional(c);
        e["value"] = rational_string(c0);
        eqs.push_back(e);
    }
    out["hull_equations"] = eqs;
    Json faces = Json::array();
    for (const Face& f : P.faces()) {
        Json jf;
        jf["dim"] = f.dim;
        jf["vertices"] = f.vertices;
        jf["improper"] = f.improper;
        jf["functional"] = json_functional(f.support);
        jf["value"] = rational_string(f.support_value);
        jf["contains_origin"] = f.contains_origin;
        jf["on_gamma_plus"] = f.on_gamma_plus;
        jf["bad"] = f.bad;
        jf["bad_witness"] = f.bad ? json_functional(f.bad_witness) : Json();
        faces.push_back(jf);
    }
    out["faces"] = faces;
    return out;
}

Json json_geometry(const NewtonData& g) {
    Json out;
    Json supp = Json::array();
    for (const auto& p : g.supp) supp.push_back(p);
    out["support"] = supp;
    out["gamma0"] = json_polytope(g.gamma0);
    out["supp_hull"] = g.supp_hull ? json_polytope(*g.supp_hull) : Json();
    out["gamma_plus"] = g.gamma_plus;
    out["bad_faces"] = g.bad_faces;
    out["convenient"] = g.convenient;
    if (g.weighted) {
        Json w;
        w["q"] = g.weighted->weights;
        w["m"] = g.weighted->degree;
        out["weighted_homogeneous"] = w;
    } else {
        out["weighted_homogeneous"] = Json();
    }
    out["effective_variables"] = std::vector<int>(g.effective.begin(), g.effective.end());
    return out;
}

Json json_verdict(const FaceVerdict& v) {
    Json out;
    out["mode"] = mode_name(v.mode);
    out["status"] = status_name(v.status);
    if (v.witness) {
        Json w;
        w["z"] = json_point(v.witness->z);
        w["theta"] = v.witness->theta;
        w["lambda"] = v.witness->lambda;
        w["residual"] = v.witness->residual;
        w["value"] = json_complex(v.witness->value);
        out["witness"] = w;
    } else {
        out["witness"] = Json();
    }
    Json b;
    b["starts"] = v.budget.starts;
    b["iterations"] = v.budget.iterations;
    b["seed"] = v.budget.seed;
    out["budget"] = b;
    return out;
}

Json json_nondeg(const NondegReport& r) {
    Json out;
    Json faces = Json::array();
    for (int fid : r.face_ids) {
        Json jf;
        jf["face"] = fid;
        jf["nondegenerate_test"] = json_verdict(r.nondegenerate_verdicts.at(fid));
        jf["strong_test"] = json_verdict(r.strong_verdicts.at(fid));
        faces.push_back(jf);
    }
    out["faces"] = faces;
    out["nondegenerate"] = r.nondegenerate;
    out["strongly_nondegenerate"] = r.strongly_nondegenerate;
    return out;
}

Json json_cluster(const ValueCluster& c) {
    Json out;
    out["center"] = json_complex(c.center);
    out["radius_estimate"] = c.radius_estimate;
    out["classification"] = class_name(c.classification);
    out["drift"] = c.drift;
    out["kos_trace"] = c.kos_trace;
    Json members = Json::array();
    for (const auto& m : c.members) members.push_back(json_member(m));
    out["members"] = members;
    return out;
}

Json json_probe(const ProbeResult& p) {
    Json out;
    out["radii"] = p.radii;
    out["accepted_per_radius"] = p.accepted_per_radius;
    Json clusters = Json::array();
    for (const auto& c : p.clusters) clusters.push_back(json_cluster(c));
    out["clusters"] = clusters;
    return out;
}

Json json_critical(const CriticalValueSet& c) {
    Json out;
    Json clusters = Json::array();
    for (const auto& cl : c.clusters) clusters.push_back(json_cluster(cl));
    out["clusters"] = clusters;
    out["max_modulus"] = c.max_modulus;
    return out;
}

Json json_bound(const BoundSet& b) {
    Json out;
    out["includes_zero"] = b.includes_zero;
    out["shift"] = json_complex(b.shift);
    Json faces = Json::array();
    for (const auto& [fid, clusters] : b.bad_face_values) {
        Json jf;
        jf["face"] = fid;
        Json cl = Json::array();
        for (const auto& c : clusters) cl.push_back(json_cluster(c));
        jf["clusters"] = cl;
        faces.push_back(jf);
    }
    out["faces"] = faces;
    Json uni = Json::array();
    for (const Complex& v : b.union_values) uni.push_back(json_complex(v));
    out["union"] = uni;
    return out;
}

Json report_to_json(const AnalysisReport& rep) {
    Json out;
    out["schema"] = kSchemaVersion;
    out["tool"] = kToolVersion;
    out["seed"] = rep.seed;
    Json input;
    input["expr"] = rep.expr;
    input["n"] = rep.n;
    input["shift"] = json_complex(rep.shift);
    out["input"] = input;
    out["config"] = json_config(rep.schedule, rep.options);
    out["geometry"] = json_geometry(rep.geometry);
    out["nondegeneracy"] = json_nondeg(rep.nondeg);
    out["bound"] = json_bound(rep.bound);
    out["critical_values"] = json_critical(rep.critical);
    out["s_estimate"] = json_probe(rep.s_estimate);
    out["kinf_estimate"] = json_probe(rep.kinf_estimate);
    Json checks;
    for (const auto& [name, o] : rep.checks) {
        Json jo;
        jo["applicable"] = o.applicable;
        jo["pass"] = o.pass;
        jo["detail"] = o.detail;
        checks[name] = jo;
    }
    out["checks"] = checks;
    return out;
}

std::string serialize_report(const AnalysisReport& rep) {
    return report_to_json(rep).dump(2) + "\n";
}

AnalysisReport report_from_json(const Json& j) {
    AnalysisReport rep;
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.expr = j.at("input").at("expr").get<std::string>();
    rep.n = j.at("input").at("n").get<int>();
    rep.shift = complex_from(j.at("input").at("shift"));
    config_from(j.at("config"), rep.schedule, rep.options);

    // Geometry and the verdict layout are exact, deterministic functions of
    // the echoed input; rebuild them rather than reverse-engineering the
    // polytope internals from JSON.
    const MixedPolynomial f = parse(SourceExpr{rep.expr, rep.n});
    rep.geometry = analyze_newton(f);

    rep.nondeg.nondegenerate = j.at("nondegeneracy").at("nondegenerate").get<bool>();
    rep.nondeg.strongly_nondegenerate =
        j.at("nondegeneracy").at("strongly_nondegenerate").get<bool>();
    for (const auto& jf : j.at("nondegeneracy").at("faces")) {
        const int fid = jf.at("face").get<int>();
        rep.nondeg.face_ids.push_back(fid);
        rep.nondeg.nondegenerate_verdicts.emplace(fid, verdict_from(jf.at("nondegenerate_test")));
        rep.nondeg.strong_verdicts.emplace(fid, verdict_from(jf.at("strong_test")));
    }

    const Json& jb = j.at("bound");
    rep.bound.includes_zero = jb.at("includes_zero").get<bool>();
    rep.bound.shift = complex_from(jb.at("shift"));
    for (const auto& jf : jb.at("faces")) {
        std::vector<ValueCluster> cs;
        for (const auto& c : jf.at("clusters")) cs.push_back(cluster_from(c));
        rep.bound.bad_face_values.emplace(jf.at("face").get<int>(), std::move(cs));
    }
    for (const auto& v : jb.at("union")) rep.bound.union_values.push_back(complex_from(v));

    for (const auto& c : j.at("critical_values").at("clusters"))
        rep.critical.clusters.push_back(cluster_from(c));
    rep.critical.max_modulus = j.at("critical_values").at("max_modulus").get<double>();
    rep.s_estimate = probe_from(j.at("s_estimate"));
    rep.kinf_estimate = probe_from(j.at("kinf_estimate"));

    for (const auto& [name, jo] : j.at("checks").items()) {
        CheckOutcome o;
        o.applicable = jo.at("applicable").get<bool>();
        o.pass = jo.at("pass").get<bool>();
        o.detail = jo.at("detail").get<std::string>();
        rep.checks[name] = o;
    }
    return rep;
}

} // namespace mixnewton
