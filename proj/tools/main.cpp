// Command-line front end: analyze system documents, render Poincare-disc
// portraits with orbit traces, and classify cubic-family parameter batches.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phase_sentinel/analysis.hpp"
#include "phase_sentinel/render/export.hpp"
#include "phase_sentinel/util/parallel.hpp"

namespace ps = phase_sentinel;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ps::ParseError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

struct CommonArgs {
    std::string input;
    std::string out_dir;
    double tol = 1e-9;
    std::string seeds;
    double probe_radius = 0.0;
    std::string format = "report";
};

int cmd_analyze(const CommonArgs& args, bool criteria_only) {
    ps::ParsedSystem parsed = ps::parse_system(read_file(args.input));
    ps::AnalysisOptions opts;
    opts.tol = args.tol;
    ps::Analysis analysis = ps::analyze_system(parsed, opts);

    nlohmann::ordered_json j = ps::to_json(analysis, parsed);
    if (args.probe_radius > 0.0) {
        try {
            ps::SectorSummary probe = ps::sector_probe(parsed.system, args.probe_radius);
            j["sector_probe"] = ps::to_json(probe);
        } catch (const ps::Error& e) {
            j["sector_probe"] = {{"error", e.what()}};
        }
    }
    j["verdict"] = ps::verdict_name(ps::best_verdict(analysis));

    std::string text = j.dump(2) + "\n";
    if (!args.out_dir.empty()) write_file(fs::path(args.out_dir) / "report.json", text);
    std::cout << text;

    if (criteria_only) return ps::best_verdict(analysis) == ps::Verdict::Inconclusive ? kExitInconclusive : kExitOk;
    return analysis.origin_classified ? kExitOk : kExitInconclusive;
}

std::vector<double> parse_seed_list(const std::string& spec) {
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    return out;
}

int cmd_portrait(const CommonArgs& args) {
    ps::ParsedSystem parsed = ps::parse_system(read_file(args.input));
    const ps::PlanarSystem& sys = parsed.system;

    std::vector<double> seeds =
        args.seeds.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0, -0.25, -0.5, -1.0, -2.0}
                           : parse_seed_list(args.seeds);

    std::vector<ps::OrbitTrace> traces;
    std::vector<std::string> notes;
    for (double y0 : seeds) {
        for (bool reversed : {false, true}) {
            ps::IntegrateOptions opts;
            opts.tol = args.tol;
            opts.t_end = 60.0;
            opts.escape_radius = 60.0;
            opts.converge_radius = 1e-6;
            std::string note;
            ps::OrbitTrace tr;
            try {
                if (reversed) {
                    ps::ReversedField<ps::SystemField> rev{ps::SystemField{&sys}};
                    tr = ps::integrate_field(rev, {0.0, y0}, opts, ps::ZeroWork{});
                } else {
                    tr = ps::integrate(sys, {0.0, y0}, opts);
                }
                note = std::string("seed y0=") + ps::fmt_fixed(y0, 3) + (reversed ? " reversed" : "") +
                       " termination=" + ps::termination_name(tr.termination);
            } catch (const ps::Error& e) {
                note = std::string("seed y0=") + ps::fmt_fixed(y0, 3) + " aborted: " + e.what();
            }
            traces.push_back(std::move(tr));
            notes.push_back(note);
        }
    }

    std::vector<ps::InfinityEquilibrium> boundary;
    std::string tag = "phase-sentinel portrait";
    if (parsed.cubic && parsed.cubic->family != ps::Family::general) {
        try {
            boundary = ps::infinity_equilibria(*parsed.cubic);
            ps::RegionLabel label = ps::classify_region(*parsed.cubic);
            tag += " " + ps::figure_tag(label);
        } catch (const ps::Error&) {
        }
    }

    fs::path out_dir = args.out_dir.empty() ? fs::path(".") : fs::path(args.out_dir);
    bool want_svg = args.format.find("svg") != std::string::npos || args.format == "report";
    bool want_csv = args.format.find("csv") != std::string::npos || args.format == "report";
    if (want_svg) {
        ps::SvgOptions so;
        so.metadata = tag;
        write_file(out_dir / "portrait.svg", ps::render_disc_svg(traces, notes, boundary, so));
    }
    if (want_csv) {
        for (std::size_t i = 0; i < traces.size(); ++i)
            write_file(out_dir / ("trace_" + std::to_string(i) + ".csv"), ps::trace_to_csv(traces[i]));
    }
    std::cout << "portrait written to " << out_dir.string() << "\n";
    return kExitOk;
}

int cmd_atlas(const CommonArgs& args) {
    std::ifstream in(args.input);
    if (!in) throw ps::ParseError("cannot open input file: " + args.input);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.push_back(line);
    }

    std::vector<std::string> outputs(lines.size());
    ps::parallel_for(lines.size(), [&](std::size_t i) {
        nlohmann::ordered_json record;
        try {
            ps::ParsedSystem parsed = ps::parse_system(lines[i]);
            if (!parsed.cubic) throw ps::OutOfRegion("atlas records must name a family");
            ps::RegionLabel label = ps::classify_region(*parsed.cubic);
            record["label"] = label.label;
            record["figure"] = ps::figure_tag(label);
            nlohmann::ordered_json d = nlohmann::ordered_json::object();
            for (const auto& [k, v] : label.discriminants) d[k] = v;
            record["discriminants"] = d;
            try {
                ps::PortraitDescriptor desc = ps::portrait_descriptor(label, *parsed.cubic);
                record["origin"] = ps::kind_name(desc.origin_kind);
                record["expected_inventory"] = desc.expected_inventory;
                nlohmann::ordered_json inv = nlohmann::ordered_json::array();
                for (std::size_t k = 0; k < desc.infinity.size(); ++k)
                    inv.push_back(ps::to_json(desc.infinity[k], desc.infinity_classes[k]));
                record["infinity"] = inv;
                record["nonexistence"] = ps::verdict_name(desc.nonexistence);
            } catch (const ps::Error& e) {
                record["descriptor_error"] = e.what();
            }
        } catch (const ps::Error& e) {
            record["error"] = e.what();
        }
        outputs[i] = record.dump();
    });

    std::map<std::string, int> histogram;
    for (const auto& s : outputs) {
        auto j = nlohmann::ordered_json::parse(s);
        if (j.contains("label")) ++histogram[j["label"].get<std::string>()];
        else ++histogram["error"];
    }

    std::string body;
    for (const auto& s : outputs) body += s + "\n";
    if (!args.out_dir.empty()) write_file(fs::path(args.out_dir) / "labels.ndjson", body);
    else std::cout << body;

    std::cerr << "atlas summary:";
    for (const auto& [k, v] : histogram) std::cerr << " " << k << "=" << v;
    std::cerr << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "criteria, local structure, and global portraits for planar systems x' = y, y' = -g(x) - f(x,y) y"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", args.input, "system definition or batch file")->required();
        sub->add_option("--out", args.out_dir, "output directory");
        sub->add_option("--tol", args.tol, "integrator tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seeds", args.seeds, "comma-separated y-axis seeds");
        sub->add_option("--probe-radius", args.probe_radius, "sector probe radius (analyze)");
        sub->add_option("--format", args.format, "svg, csv, or report");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "full report: criteria, origin, boundary inventory");
    add_common(analyze);
    CLI::App* criteria = app.add_subcommand("criteria", "nonexistence criteria only");
    add_common(criteria);
    CLI::App* portrait = app.add_subcommand("portrait", "disc portrait SVG and orbit CSV traces");
    add_common(portrait);
    CLI::App* atlas = app.add_subcommand("atlas", "batch region classification (NDJSON in/out)");
    add_common(atlas);

    try {
        app.parse(argc, argv);
        if (analyze->parsed()) return cmd_analyze(args, false);
        if (criteria->parsed()) return cmd_analyze(args, true);
        if (portrait->parsed()) return cmd_portrait(args);
        if (atlas->parsed()) return cmd_atlas(args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
