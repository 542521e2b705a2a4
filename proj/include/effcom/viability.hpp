#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "effcom/infotheory.hpp"

namespace effcom::viability {

/// Receiver uncertainty over candidate handover instants.
struct Belief {
    infotheory::ProbDist dist;
};

struct ScenarioSpec {
    std::size_t horizon = 5;           // slots
    std::size_t deadline = 3;          // required handover slot
    std::size_t candidate_instants = 4;
    double drop_penalty = -100.0;

    void validate() const;
};

struct ViabilityCurve {
    std::vector<double> values;  // one per slot, all <= 0
    std::optional<std::size_t> drop_slot;
};

struct FictitiousCurves {
    ViabilityCurve full_info;
    ViabilityCurve no_info;
};

/// drop_penalty if dropped, else -H(belief); 0 iff degenerate belief.
double viability_from_belief(const Belief& b, bool dropped, const ScenarioSpec& spec);

/// Upper bound on viability given i bits of information about the handover
/// instant: -max(0, log2(candidates) - i).
double viability_vs_information(double i_bits, const ScenarioSpec& spec);

/// Full-information vs no-information viability curves over the horizon.
FictitiousCurves fictitious_scenario(const ScenarioSpec& spec);

}  // namespace effcom::viability
