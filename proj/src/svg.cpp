#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mixnewton/report.hpp"

namespace mixnewton {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct MarkerSet {
    const char* label;
    const char* color;
    std::vector<Complex> points;
};

} // namespace

// Scatter of the complex value plane. Marker shapes: critical values as
// circles, bound set as squares, S clusters as crosses, K-infinity clusters
// as triangles. Output is byte-deterministic for a fixed report.
std::string render_svg(const AnalysisReport& rep) {
    const int W = 640, H = 640;
    const double margin = 48.0;

    std::vector<MarkerSet> sets(4);
    sets[0] = {"critical values", "#707070", {}};
    sets[1] = {"bound set", "#1f77b4", {}};
    sets[2] = {"S clusters", "#d62728", {}};
    sets[3] = {"K-infinity clusters", "#2ca02c", {}};
    for (const auto& c : rep.critical.clusters) sets[0].points.push_back(c.center);
    for (const auto& v : rep.bound.union_values) sets[1].points.push_back(v + rep.bound.shift);
    for (const auto* c : rep.s_estimate.finite_limits()) sets[2].points.push_back(c->center);
    for (const auto* c : rep.kinf_estimate.finite_limits()) sets[3].points.push_back(c->center);

    double lo_x = -1.0, hi_x = 1.0, lo_y = -1.0, hi_y = 1.0;
    bool any = false;
    for (const auto& s : sets)
        for (const Complex& p : s.points) {
            if (!any) {
                lo_x = hi_x = p.real();
                lo_y = hi_y = p.imag();
                any = true;
            }
            lo_x = std::min(lo_x, p.real());
            hi_x = std::max(hi_x, p.real());
            lo_y = std::min(lo_y, p.imag());
            hi_y = std::max(hi_y, p.imag());
        }
    double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
    const double pad = 0.1 * span;
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    const double half = 0.5 * span + pad;
    lo_x = cx - half;
    hi_x = cx + half;
    lo_y = cy - half;
    hi_y = cy + half;

    auto X = [&](double re) { return margin + (re - lo_x) / (hi_x - lo_x) * (W - 2 * margin); };
    auto Y = [&](double im) { return H - margin - (im - lo_y) / (hi_y - lo_y) * (H - 2 * margin); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
           "\" height=\"" + std::to_string(H) + "\" viewBox=\"0 0 " + std::to_string(W) + " " +
           std::to_string(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + num(margin) + "\" y=\"" + num(margin) + "\" width=\"" +
           num(W - 2 * margin) + "\" height=\"" + num(H - 2 * margin) +
           "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    if (lo_x < 0 && hi_x > 0)
        svg += "<line x1=\"" + num(X(0)) + "\" y1=\"" + num(margin) + "\" x2=\"" + num(X(0)) +
               "\" y2=\"" + num(H - margin) + "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
    if (lo_y < 0 && hi_y > 0)
        svg += "<line x1=\"" + num(margin) + "\" y1=\"" + num(Y(0)) + "\" x2=\"" +
               num(W - margin) + "\" y2=\"" + num(Y(0)) + "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";

    svg += "<text x=\"" + num(margin) + "\" y=\"" + num(H - margin + 16) +
           "\" font-size=\"11\" fill=\"#333\">Re: [" + num(lo_x) + ", " + num(hi_x) + "]</text>\n";
    svg += "<text x=\"" + num(margin) + "\" y=\"" + num(H - margin + 30) +
           "\" font-size=\"11\" fill=\"#333\">Im: [" + num(lo_y) + ", " + num(hi_y) + "]</text>\n";

    for (std::size_t s = 0; s < sets.size(); ++s) {
        for (const Complex& p : sets[s].points) {
            const double x = X(p.real()), y = Y(p.imag());
            switch (s) {
                case 0:
                    svg += "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) +
                           "\" r=\"3\" fill=\"" + sets[s].color + "\" fill-opacity=\"0.7\"/>\n";
                    break;
                case 1:
                    svg += "<rect x=\"" + num(x - 3) + "\" y=\"" + num(y - 3) +
                           "\" width=\"6\" height=\"6\" fill=\"none\" stroke=\"" + sets[s].color +
                           "\" stroke-width=\"1.5\"/>\n";
                    break;
                case 2:
                    svg += "<path d=\"M" + num(x - 3) + " " + num(y - 3) + " L" + num(x + 3) + " " +
                           num(y + 3) + " M" + num(x - 3) + " " + num(y + 3) + " L" + num(x + 3) +
                           " " + num(y - 3) + "\" stroke=\"" + sets[s].color +
                           "\" stroke-width=\"1.5\"/>\n";
                    break;
                default:
                    svg += "<path d=\"M" + num(x) + " " + num(y - 4) + " L" + num(x + 3.5) + " " +
                           num(y + 3) + " L" + num(x - 3.5) + " " + num(y + 3) +
                           " Z\" fill=\"none\" stroke=\"" + sets[s].color +
                           "\" stroke-width=\"1.5\"/>\n";
            }
        }
    }

    const double lx = W - margin - 180, ly = margin + 10;
    svg += "<rect x=\"" + num(lx - 8) + "\" y=\"" + num(ly - 14) +
           "\" width=\"188\" height=\"72\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999\"/>\n";
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const double y = ly + 16.0 * s;
        svg += "<circle cx=\"" + num(lx) + "\" cy=\"" + num(y - 4) + "\" r=\"4\" fill=\"" +
               sets[s].color + "\"/>\n";
        svg += "<text x=\"" + num(lx + 10) + "\" y=\"" + num(y) + "\" font-size=\"12\" fill=\"#222\">" +
               std::string(sets[s].label) + " (" + std::to_string(sets[s].points.size()) +
               ")</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace mixnewton
