#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "phase_sentinel/compactify/disc.hpp"
#include "phase_sentinel/compactify/infinity.hpp"
#include "phase_sentinel/flow/integrate.hpp"

namespace phase_sentinel {

/// Locale-independent fixed formatting so artifacts are byte-stable.
inline std::string fmt_fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    std::string s(buf);
    if (s == "-0." + std::string(static_cast<std::size_t>(digits), '0')) s.erase(0, 1);
    return s;
}

inline std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Trace export: one row per sample, event rows interleaved by time.
inline std::string trace_to_csv(const OrbitTrace& trace) {
    std::string out = "t,x,y,event\n";
    std::size_t ei = 0;
    for (const auto& s : trace.samples) {
        while (ei < trace.events.size() && trace.events[ei].t <= s.t) {
            const auto& e = trace.events[ei++];
            out += fmt_full(e.t) + "," + fmt_full(e.x) + "," + fmt_full(e.y) + "," +
                   event_kind_name(e.kind) + "\n";
        }
        out += fmt_full(s.t) + "," + fmt_full(s.x) + "," + fmt_full(s.y) + ",\n";
    }
    while (ei < trace.events.size()) {
        const auto& e = trace.events[ei++];
        out += fmt_full(e.t) + "," + fmt_full(e.x) + "," + fmt_full(e.y) + "," +
               event_kind_name(e.kind) + "\n";
    }
    return out;
}

struct SvgOptions {
    int viewport = 1000;          // unit disc mapped to viewport x viewport
    std::size_t max_points = 5000;  // polyline decimation cap
    std::string metadata;         // figure tag etc.
};

/// Poincare-disc portrait: boundary circle, projected orbits, equilibrium
/// markers (boundary equilibria as antipodal pairs).
inline std::string render_disc_svg(const std::vector<OrbitTrace>& traces,
                                   const std::vector<std::string>& trace_notes,
                                   const std::vector<InfinityEquilibrium>& boundary,
                                   const SvgOptions& opts = {}) {
    const int vp = opts.viewport;
    auto px = [vp](const DiscPoint& d) {
        return std::pair<std::string, std::string>(fmt_fixed((d.xi + 1.0) * vp / 2.0, 2),
                                                   fmt_fixed((1.0 - d.eta) * vp / 2.0, 2));
    };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(vp) + "\" height=\"" +
           std::to_string(vp) + "\" viewBox=\"0 0 " + std::to_string(vp) + " " + std::to_string(vp) + "\">\n";
    if (!opts.metadata.empty()) svg += "  <desc>" + opts.metadata + "</desc>\n";
    svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "  <circle cx=\"" + fmt_fixed(vp / 2.0, 2) + "\" cy=\"" + fmt_fixed(vp / 2.0, 2) + "\" r=\"" +
           fmt_fixed(vp / 2.0 - 1.0, 2) + "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";

    for (std::size_t k = 0; k < traces.size(); ++k) {
        const OrbitTrace& tr = traces[k];
        if (tr.samples.size() < 2) continue;
        std::size_t stride = std::max<std::size_t>(1, tr.samples.size() / opts.max_points);
        std::string pts;
        for (std::size_t i = 0; i < tr.samples.size(); i += stride) {
            DiscPoint d = disc_project({tr.samples[i].x, tr.samples[i].y});
            auto [sx, sy] = px(d);
            pts += sx + "," + sy + " ";
        }
        if (!pts.empty()) pts.pop_back();
        svg += "  <polyline fill=\"none\" stroke=\"" + std::string(palette[k % 8]) +
               "\" stroke-width=\"1\" points=\"" + pts + "\"/>";
        if (k < trace_notes.size() && !trace_notes[k].empty())
            svg += "<!-- " + trace_notes[k] + " -->";
        svg += "\n";
    }

    // origin marker
    {
        auto [sx, sy] = px(disc_project({0.0, 0.0}));
        svg += "  <circle cx=\"" + sx + "\" cy=\"" + sy + "\" r=\"4\" fill=\"black\"/>\n";
    }
    for (const auto& eq : boundary) {
        auto [plus, minus] = disc_boundary_pair(eq.chart, eq.position);
        for (const DiscPoint& d : {plus, minus}) {
            auto [sx, sy] = px(d);
            svg += "  <circle cx=\"" + sx + "\" cy=\"" + sy +
                   "\" r=\"5\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>";
            svg += "<!-- " + eq.label + " -->\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace phase_sentinel
