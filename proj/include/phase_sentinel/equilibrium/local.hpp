#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "phase_sentinel/core/errors.hpp"
#include "phase_sentinel/core/series.hpp"

namespace phase_sentinel {

enum class EquilibriumKind {
    StableNode,
    StableFocus,
    StableImproperNode,
    Center,
    CenterOrFocus,
    Saddle,
    SaddleNode,
    UnstableNode,
    Degenerate,
};

inline const char* kind_name(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::StableNode: return "stable-node";
        case EquilibriumKind::StableFocus: return "stable-focus";
        case EquilibriumKind::StableImproperNode: return "stable-improper-node";
        case EquilibriumKind::Center: return "center";
        case EquilibriumKind::CenterOrFocus: return "center-or-focus";
        case EquilibriumKind::Saddle: return "saddle";
        case EquilibriumKind::SaddleNode: return "saddle-node";
        case EquilibriumKind::UnstableNode: return "unstable-node";
        default: return "degenerate";
    }
}

struct SectorCounts {
    int elliptic = 0;
    int hyperbolic = 0;
};

struct EquilibriumClass {
    EquilibriumKind kind = EquilibriumKind::Degenerate;
    std::optional<SectorCounts> sectors;
    std::vector<double> directions;        // sorted, in [0, 2*pi)
    std::set<int> parabolic_candidates;    // possible parabolic-sector counts
    bool reflected = false;                // (x,y,t) -> (x,-y,-t) was applied
};

enum class GRegionLabel { G1, G2, G3, G4, G5, G61, G62, G63 };

inline const char* region_name(GRegionLabel r) {
    switch (r) {
        case GRegionLabel::G1: return "G1";
        case GRegionLabel::G2: return "G2";
        case GRegionLabel::G3: return "G3";
        case GRegionLabel::G4: return "G4";
        case GRegionLabel::G5: return "G5";
        case GRegionLabel::G61: return "G61";
        case GRegionLabel::G62: return "G62";
        default: return "G63";
    }
}

struct GRegion {
    GRegionLabel label;
    double discriminant = 0.0;       // b^2 - 4a
    std::optional<double> nilpotent_discriminant;  // b_n^2 - 2(k+1) a_k when a = b = 0
    bool reflected = false;          // b_n < 0 was normalized away
};

/// Eigenvalues (-b +- sqrt(b^2 - 4a)) / 2 of the linearization at the origin.
inline std::pair<std::complex<double>, std::complex<double>> linearize_origin(const SeriesData& s) {
    std::complex<double> disc(s.b * s.b - 4.0 * s.a, 0.0);
    std::complex<double> root = std::sqrt(disc);
    return {(-s.b + root) / 2.0, (-s.b - root) / 2.0};
}

namespace detail {

inline bool near_zero(double v, double scale) { return std::abs(v) <= 1e-12 * std::max(1.0, scale); }

}  // namespace detail

/// Locate (a, b) -- and the jet when both vanish -- in the parameter
/// subdivision used by the origin classification.  Inputs are expected with
/// b >= 0; a negative b_n is removed by the normalizing reflection and noted.
inline GRegion region_of(const SeriesData& s) {
    if (s.a < 0.0 || s.b < 0.0)
        throw Error("region_of expects a >= 0 and b >= 0 (apply the normalizing reflections first)");
    GRegion out{GRegionLabel::G1, s.b * s.b - 4.0 * s.a, std::nullopt, false};

    bool a_zero = detail::near_zero(s.a, s.a);
    bool b_zero = detail::near_zero(s.b, s.b);
    if (!a_zero && !b_zero) {
        // discriminant tie-break: |b^2-4a| <= 1e-12 max(1, b^2) counts as zero
        if (std::abs(out.discriminant) <= 1e-12 * std::max(1.0, s.b * s.b)) out.label = GRegionLabel::G3;
        else out.label = (out.discriminant > 0.0) ? GRegionLabel::G1 : GRegionLabel::G2;
        return out;
    }
    if (!a_zero && b_zero) {
        out.label = GRegionLabel::G4;
        return out;
    }
    if (a_zero && !b_zero) {
        out.label = GRegionLabel::G5;
        return out;
    }

    // nilpotent case: need the jet
    if (s.k <= 0 || s.a_k == 0.0) throw NeedsSeries("a = b = 0 but the g-jet (a_k, k) is unavailable");
    if (s.a_k <= 0.0 || s.k % 2 == 0)
        throw Error("nilpotent subdivision requires a_k > 0 and k odd (sign condition violated)");

    double bn = s.b_n.value_or(0.0);
    int n = s.n.value_or(0);
    if (bn < 0.0) {
        bn = -bn;
        out.reflected = true;
    }
    if (bn == 0.0) {
        out.label = GRegionLabel::G61;
        return out;
    }
    double half = (s.k - 1) / 2.0;
    double nd = bn * bn - 2.0 * (s.k + 1) * s.a_k;
    out.nilpotent_discriminant = nd;
    if (n > half || (n == half && nd < 0.0)) {
        out.label = GRegionLabel::G61;
    } else {
        // n < (k-1)/2, or n = (k-1)/2 with nd >= 0
        out.label = (n % 2 == 0) ? GRegionLabel::G62 : GRegionLabel::G63;
    }
    return out;
}

enum class Symmetry { Symmetric, Asymmetric };
enum class EllipticBound { Bounded, Unbounded, Unknown };

namespace detail {

inline std::vector<double> node_directions(double a, double b) {
    double root = std::sqrt(std::max(0.0, b * b - 4.0 * a));
    double s1 = (b - root) / 2.0, s2 = (b + root) / 2.0;
    std::vector<double> th = {M_PI - std::atan(s1), M_PI - std::atan(s2),
                              2.0 * M_PI - std::atan(s1), 2.0 * M_PI - std::atan(s2)};
    for (double& t : th)
        if (t >= 2.0 * M_PI) t -= 2.0 * M_PI;
    std::sort(th.begin(), th.end());
    return th;
}

inline std::vector<double> improper_directions(double b) {
    std::vector<double> th = {M_PI - std::atan(b / 2.0), 2.0 * M_PI - std::atan(b / 2.0)};
    for (double& t : th)
        if (t >= 2.0 * M_PI) t -= 2.0 * M_PI;
    std::sort(th.begin(), th.end());
    return th;
}

}  // namespace detail

/// Classify the origin from its region.  The caller is responsible for the
/// standing hypotheses (sign condition, one-signed reflection profile); the
/// symmetry flag selects the symmetric specialization (centers instead of
/// weak foci), and the boundedness of the elliptic sector narrows the
/// possible parabolic-sector counts of the degenerate case.
inline EquilibriumClass classify_origin(const SeriesData& s, Symmetry sym,
                                        EllipticBound bounded = EllipticBound::Unknown) {
    GRegion region = region_of(s);
    EquilibriumClass out;
    out.reflected = region.reflected;
    switch (region.label) {
        case GRegionLabel::G1:
        case GRegionLabel::G5:
            out.kind = EquilibriumKind::StableNode;
            out.directions = detail::node_directions(s.a, s.b);
            return out;
        case GRegionLabel::G2:
            out.kind = EquilibriumKind::StableFocus;
            return out;
        case GRegionLabel::G4:
        case GRegionLabel::G61:
            out.kind = (sym == Symmetry::Symmetric) ? EquilibriumKind::Center : EquilibriumKind::StableFocus;
            return out;
        case GRegionLabel::G3:
        case GRegionLabel::G62:
            out.kind = EquilibriumKind::StableImproperNode;
            out.directions = detail::improper_directions(s.b);
            return out;
        case GRegionLabel::G63:
        default:
            out.kind = EquilibriumKind::Degenerate;
            out.sectors = SectorCounts{1, 1};
            out.directions = {0.0, M_PI};
            if (sym == Symmetry::Symmetric)
                out.parabolic_candidates = (bounded == EllipticBound::Bounded) ? std::set<int>{0}
                                                                               : std::set<int>{0, 2};
            else
                out.parabolic_candidates = (bounded == EllipticBound::Bounded) ? std::set<int>{1}
                                                                               : std::set<int>{0, 1, 2};
            return out;
    }
}

/// Exceptional directions of the node and improper-node regions.
inline std::vector<double> exceptional_directions(const SeriesData& s) {
    GRegion region = region_of(s);
    switch (region.label) {
        case GRegionLabel::G1:
        case GRegionLabel::G5:
            return detail::node_directions(s.a, s.b);
        case GRegionLabel::G3:
        case GRegionLabel::G62:
            return detail::improper_directions(s.b);
        default:
            throw WrongRegion(std::string("no exceptional directions in region ") + region_name(region.label));
    }
}

}  // namespace phase_sentinel
