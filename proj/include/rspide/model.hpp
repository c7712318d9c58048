#pragma once

#include <vector>

#include "rspide/levy_measures.hpp"
#include "rspide/regime_chain.hpp"

namespace rspide {

/// Full model bundle: one Levy triplet per regime, the synchronous-jump
/// matrix, and the chain generator.
struct MarkovLevyModel {
    std::vector<RegimeModel> regimes;
    SyncJumpSpec sync;
    GeneratorMatrix chain;

    int regime_count() const { return static_cast<int>(regimes.size()); }
};

/// Checks dimensional consistency across the bundle.
void validate(const MarkovLevyModel& model);

}  // namespace rspide
