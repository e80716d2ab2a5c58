#pragma once

#include <string>
#include <vector>

#include "phase_sentinel/atlas/regions.hpp"
#include "phase_sentinel/compactify/infinity.hpp"
#include "phase_sentinel/criteria/theorems.hpp"
#include "phase_sentinel/equilibrium/local.hpp"

namespace phase_sentinel {

/// Structural portrait data: origin type, boundary inventory with
/// classifications, the nonexistence verdict, and the subfigure tag the
/// region corresponds to.  Portraits are topological claims; this stores
/// connection data, not curves.
struct PortraitDescriptor {
    RegionLabel region;
    std::string figure_tag;
    EquilibriumKind origin_kind = EquilibriumKind::Center;
    std::vector<InfinityEquilibrium> infinity;
    std::vector<InfinityClass> infinity_classes;
    std::vector<std::string> expected_inventory;  // multiset predicted by the label
    Verdict nonexistence = Verdict::Inconclusive;
};

/// Origin type of the cubic family by parameter cases.
inline EquilibriumKind origin_kind_cubic(const CubicParams& p) {
    double lambda = (p.family == Family::sys71) ? 1.0 : p.lambda;
    if (p.mu == 0.0) return (p.a == 0.0 && p.c == 0.0) ? EquilibriumKind::Center : EquilibriumKind::StableFocus;
    if (lambda == 0.0) return EquilibriumKind::StableImproperNode;
    double disc = p.mu * p.mu - 4.0 * lambda;
    if (disc > 0.0) return EquilibriumKind::StableNode;
    if (disc == 0.0) return EquilibriumKind::StableImproperNode;
    return EquilibriumKind::StableFocus;
}

/// Boundary-equilibrium multiset implied by each region label.
inline std::vector<std::string> expected_infinity_inventory(const RegionLabel& r) {
    const std::string& s = r.label;
    if (r.family == Family::sys61) {
        if (s == "S1" || s == "S4" || s == "S5") return {"A", "B", "D"};
        if (s == "S2" || s == "S3") return {"D"};
        if (s == "S6" || s == "S7" || s == "S8") return {"C", "D"};
        if (s == "S9") return {"E", "D"};
        if (s == "S10" || s == "S11" || s == "S12") return {"K", "F", "D"};
        if (s == "S13" || s == "S14" || s == "S15" || s == "S16") return {"F", "Q", "D"};
        return {"F1", "F2", "F3", "D"};  // S17, S18
    }
    if (s == "G5" || s == "G6") return {"G", "R", "D"};
    if (s == "G7" || s == "G8") return {"G", "S", "D"};
    if (s == "G10" || s == "G11") return {"G", "P1", "P2", "D"};
    if (s == "G12" || s == "G13" || s == "G14" || s == "G15") return {"G", "T", "D"};
    return {"G", "D"};  // G1-G4, G9
}

inline std::string figure_tag(const RegionLabel& r) {
    int index = std::stoi(r.label.substr(1)) - 1;
    char letter = static_cast<char>('a' + index);
    return std::string(r.family == Family::sys61 ? "portrait-61(" : "portrait-71(") + letter + ")";
}

/// Assemble the full structural descriptor for a classified parameter vector.
inline PortraitDescriptor portrait_descriptor(const RegionLabel& label, const CubicParams& p) {
    PortraitDescriptor out;
    out.region = label;
    out.figure_tag = figure_tag(label);
    out.origin_kind = origin_kind_cubic(p);
    out.infinity = infinity_equilibria(p);
    for (const auto& eq : out.infinity) out.infinity_classes.push_back(classify_infinity(eq, p));
    out.expected_inventory = expected_infinity_inventory(label);
    out.nonexistence = check_thm1(to_system(p)).verdict;
    return out;
}

}  // namespace phase_sentinel
