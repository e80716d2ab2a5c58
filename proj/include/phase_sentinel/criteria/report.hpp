#pragma once

#include <string>
#include <vector>

#include "phase_sentinel/core/system.hpp"

namespace phase_sentinel {

enum class TheoremTag { T1, T1b, T2, T3, DulacB1, LMP, SugieA, SugieB };

inline const char* theorem_tag_name(TheoremTag t) {
    switch (t) {
        case TheoremTag::T1: return "T1";
        case TheoremTag::T1b: return "T1b";
        case TheoremTag::T2: return "T2";
        case TheoremTag::T3: return "T3";
        case TheoremTag::DulacB1: return "DulacB1";
        case TheoremTag::LMP: return "LMP";
        case TheoremTag::SugieA: return "SugieA";
        default: return "SugieB";
    }
}

enum class ConditionStatus { Holds, HoldsWithEqualityEverywhere, Violated, Undecided };

inline const char* condition_status_name(ConditionStatus s) {
    switch (s) {
        case ConditionStatus::Holds: return "holds";
        case ConditionStatus::HoldsWithEqualityEverywhere: return "holds-with-equality-everywhere";
        case ConditionStatus::Violated: return "violated";
        default: return "undecided";
    }
}

enum class Verdict { NoClosedOrbits, NoClosedOrbitsAroundOrigin, Inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::NoClosedOrbits: return "NoClosedOrbits";
        case Verdict::NoClosedOrbitsAroundOrigin: return "NoClosedOrbitsAroundOrigin";
        default: return "Inconclusive";
    }
}

struct ConditionRecord {
    std::string id;                 // "i", "ii", "iii", "iii'", "iv", "v", "vi", ...
    ConditionStatus status = ConditionStatus::Undecided;
    std::vector<Point> witnesses;   // violation or strictness witnesses
    bool sampled = false;           // decided by sampling rather than exactly
    int sign = 0;                   // +1 for >= 0, -1 for <= 0 when one-signed
    std::string note;
};

/// Sampling grid for the semidecision paths: log-biased toward the origin.
struct SamplingGrid {
    int nx = 201;
    int ny = 201;
    double x_cap = 10.0;  // half-width cap for infinite strips
    double y_cap = 10.0;
};

struct CriterionReport {
    TheoremTag theorem = TheoremTag::T1;
    std::vector<ConditionRecord> conditions;
    Verdict verdict = Verdict::Inconclusive;
    std::string scope;  // "strip" or "around O"
    SamplingGrid grid;
    std::vector<std::string> flags;

    const ConditionRecord* condition(const std::string& id) const {
        for (const auto& c : conditions)
            if (c.id == id) return &c;
        return nullptr;
    }
};

}  // namespace phase_sentinel
