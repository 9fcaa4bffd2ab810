#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace iotassure {

enum class Phase {
    Reconnaissance,
    Scanning,
    GainingAccess,
    MaintainingAccess,
    CoveringTracks,
};

/// The only phases that are scored and planned.
inline constexpr std::array<Phase, 3> kAutomatablePhases{
    Phase::Reconnaissance, Phase::Scanning, Phase::GainingAccess};

constexpr bool is_automatable(Phase p) {
    return p == Phase::Reconnaissance || p == Phase::Scanning || p == Phase::GainingAccess;
}

/// "reconnaissance", "scanning", "gaining_access", ...
std::string_view to_string(Phase p);
/// Accepts the full names and the short forms recon/scan/access/maintain/cover.
/// Throws LookupError otherwise.
Phase phase_from_string(std::string_view s);

/// Tool input requirements for a phase, mapped onto catalog ids.
/// Throws UnsupportedPhaseError for the two non-automatable phases.
const std::vector<std::string>& phase_inputs(Phase p);

/// Union of all automatable phases' inputs, in first-seen order.
const std::vector<std::string>& all_phase_inputs();

} // namespace iotassure
