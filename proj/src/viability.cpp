#include "effcom/viability.hpp"

#include <cmath>
#include <stdexcept>

namespace effcom::viability {

void ScenarioSpec::validate() const {
    if (deadline < 1 || deadline >= horizon)
        throw std::invalid_argument("ScenarioSpec: need 1 <= deadline < horizon");
    if (candidate_instants < 2)
        throw std::invalid_argument("ScenarioSpec: candidate_instants must be >= 2");
    if (!(drop_penalty < -std::log2(static_cast<double>(candidate_instants))))
        throw std::invalid_argument("ScenarioSpec: drop_penalty must be below -log2(candidates)");
}

double viability_from_belief(const Belief& b, bool dropped, const ScenarioSpec& spec) {
    spec.validate();
    if (dropped) return spec.drop_penalty;
    return -infotheory::shannon_entropy(b.dist);
}

double viability_vs_information(double i_bits, const ScenarioSpec& spec) {
    spec.validate();
    if (i_bits < 0.0) throw std::invalid_argument("viability_vs_information: i_bits must be >= 0");
    const double h0 = std::log2(static_cast<double>(spec.candidate_instants));
    return -std::max(0.0, h0 - i_bits);
}

FictitiousCurves fictitious_scenario(const ScenarioSpec& spec) {
    spec.validate();
    FictitiousCurves out;
    // Full information: belief stays degenerate, handover happens at the
    // deadline, the call never drops.
    out.full_info.values.assign(spec.horizon, 0.0);

    // No information: uniform belief over the candidate instants until the
    // missed deadline drops the call.
    const double uniform = -std::log2(static_cast<double>(spec.candidate_instants));
    out.no_info.values.assign(spec.horizon, uniform);
    for (std::size_t t = spec.deadline + 1; t < spec.horizon; ++t)
        out.no_info.values[t] = spec.drop_penalty;
    if (spec.deadline + 1 < spec.horizon) out.no_info.drop_slot = spec.deadline + 1;
    return out;
}

}  // namespace effcom::viability
