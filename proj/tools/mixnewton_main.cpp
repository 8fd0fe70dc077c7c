// Command-line surface: parses a mixed polynomial, runs the requested
// pipeline and emits JSON (optionally an SVG value-plane plot).

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "mixnewton/expr_parser.hpp"
#include "mixnewton/report.hpp"

namespace {

using namespace mixnewton;

struct CliArgs {
    std::string expr;
    RunConfig config;
    int declared_n = 0;  // 0 = infer
    bool timings = false;
};

void add_common_options(CLI::App* cmd, CliArgs& args) {
    cmd->add_option("expr", args.expr, "polynomial expression, e.g. \"z1*z2 + zb1^2*zb2^2\"")
        ->required();
    cmd->add_option("--seed", args.config.opts.seed, "PRNG seed; fully determines the output");
    cmd->add_option("--radii", args.config.schedule.radii, "sphere radii (increasing)")
        ->delimiter(',');
    cmd->add_option("--starts", args.config.schedule.starts_per_radius,
                    "multistart budget per radius");
    cmd->add_option("--tol", args.config.opts.tol, "witness residual tolerance");
    cmd->add_option("--value-tol", args.config.opts.value_tol, "set comparison tolerance");
    cmd->add_option("--cluster-tol", args.config.opts.cluster_tol, "cluster resolution");
    cmd->add_option("--phase-grid", args.config.opts.crit_phase_grid,
                    "phase seeds for the critical-point sweep");
    cmd->add_option("--phase-starts", args.config.opts.crit_starts_per_phase,
                    "point seeds per phase");
    cmd->add_option("--box", args.config.opts.box_halfwidth, "critical-point search box half-width");
    cmd->add_option("--threads", args.config.opts.threads, "worker threads (0 = all)");
    cmd->add_option("--n", args.declared_n, "ambient dimension override");
    cmd->add_option("--out", args.config.out_path, "write JSON here instead of stdout");
    cmd->add_flag("--timings", args.timings, "append wall-clock timings (breaks byte determinism)");
}

MixedPolynomial parse_input(const CliArgs& args) {
    SourceExpr src{args.expr, args.declared_n > 0 ? std::optional<int>(args.declared_n) : std::nullopt};
    return parse(src);
}

Json header_json(const CliArgs& args, const MixedPolynomial& f) {
    Json out;
    out["schema"] = kSchemaVersion;
    out["tool"] = kToolVersion;
    out["seed"] = args.config.opts.seed;
    Json input;
    input["expr"] = format(f);
    input["n"] = f.vars();
    input["shift"] = Json::array({f.constant_term().real(), f.constant_term().imag()});
    out["input"] = input;
    return out;
}

void write_output(const CliArgs& args, const std::string& text) {
    if (args.config.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream os(args.config.out_path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open output file " + args.config.out_path);
        os << text;
    }
}

int run_guarded(const CliArgs& args, const std::function<std::string(const MixedPolynomial&)>& body) {
    try {
        const MixedPolynomial f = parse_input(args);
        args.config.validate();
        const auto t0 = std::chrono::steady_clock::now();
        std::string text = body(f);
        if (args.timings) {
            const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
            Json j = Json::parse(text);
            j["timings"] = Json{{"total_seconds", dt.count()}};
            text = j.dump(2) + "\n";
        }
        write_output(args, text);
        return 0;
    } catch (const ParseError& e) {
        Json err;
        err["error"] = "parse";
        err["offset"] = e.offset;
        err["message"] = e.message;
        err["expected"] = e.expected;
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const ZeroPolynomialError& e) {
        std::cerr << Json{{"error", "degenerate"}, {"message", e.what()}}.dump() << "\n";
        return 3;
    } catch (const DegenerateInputError& e) {
        std::cerr << Json{{"error", "degenerate"}, {"message", e.what()}}.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton geometry at infinity and bifurcation-value estimation for mixed polynomials"};
    app.require_subcommand(1);

    CliArgs args;
    std::string mode;

    auto* analyze = app.add_subcommand("analyze", "full report: geometry, verdicts, bound, probes");
    add_common_options(analyze, args);
    std::string svg_path;
    analyze->add_option("--svg", svg_path, "write a value-plane scatter plot");
    analyze->callback([&] { mode = "analyze"; });

    for (const char* name : {"faces", "badfaces", "nondeg", "bound", "probe-s", "probe-kinf"}) {
        auto* cmd = app.add_subcommand(
            name, std::string("section pipeline: ") + name + " JSON fragment only");
        add_common_options(cmd, args);
        cmd->callback([&mode, name] { mode = name; });
    }

    CLI11_PARSE(app, argc, argv);

    return run_guarded(args, [&](const MixedPolynomial& f) -> std::string {
        const RunConfig& cfg = args.config;
        if (mode == "analyze") {
            AnalysisReport rep = assemble_report(f, cfg.schedule, cfg.opts);
            if (!svg_path.empty()) {
                std::ofstream os(svg_path, std::ios::binary);
                if (!os) throw std::runtime_error("cannot open SVG output " + svg_path);
                os << render_svg(rep);
            }
            return serialize_report(rep);
        }
        Json out = header_json(args, f);
        if (mode == "faces") {
            out["geometry"] = json_geometry(analyze_newton(f));
        } else if (mode == "badfaces") {
            LatticePolytope hull = support_hull(f);
            std::vector<int> bad = mark_bad_faces(hull);
            Json faces = Json::array();
            for (int fid : bad) {
                const Face& face = hull.faces()[fid];
                Json jf;
                jf["face"] = fid;
                Json verts = Json::array();
                for (int v : face.vertices) verts.push_back(hull.vertex(v));
                jf["vertex_coords"] = verts;
                jf["dim"] = face.dim;
                Json wit = Json::array();
                for (long long a : face.bad_witness) wit.push_back(std::to_string(a) + "/1");
                jf["witness"] = wit;
                faces.push_back(jf);
            }
            out["bad_faces"] = faces;
        } else if (mode == "nondeg") {
            WitnessSearchOptions wopts;
            wopts.tol = cfg.opts.tol;
            wopts.torus_margin = cfg.opts.torus_margin;
            wopts.seed = cfg.opts.seed;
            wopts.threads = cfg.opts.threads;
            wopts.max_iters = cfg.opts.max_iters;
            out["nondegeneracy"] = json_nondeg(check_newton_nondegenerate(f, wopts));
        } else if (mode == "bound") {
            out["bound"] = json_bound(bad_face_critical_values(f, cfg.opts));
        } else if (mode == "probe-s") {
            out["s_estimate"] = json_probe(estimate_S(f, cfg.schedule, cfg.opts));
        } else if (mode == "probe-kinf") {
            out["kinf_estimate"] = json_probe(estimate_Kinf(f, cfg.schedule, cfg.opts));
        }
        return out.dump(2) + "\n";
    });
}
