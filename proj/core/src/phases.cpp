#include "iotassure/phases.hpp"

#include <algorithm>
#include <utility>

#include "iotassure/catalog.hpp"
#include "iotassure/errors.hpp"

namespace iotassure {
namespace {

struct PhaseName {
    Phase phase;
    std::string_view name;
    std::string_view short_name;
};

constexpr std::array<PhaseName, 5> kPhaseNames{{
    {Phase::Reconnaissance, "reconnaissance", "recon"},
    {Phase::Scanning, "scanning", "scan"},
    {Phase::GainingAccess, "gaining_access", "access"},
    {Phase::MaintainingAccess, "maintaining_access", "maintain"},
    {Phase::CoveringTracks, "covering_tracks", "cover"},
}};

std::vector<std::string> ids(std::initializer_list<std::string_view> l) {
    return {l.begin(), l.end()};
}

} // namespace

std::string_view to_string(Phase p) {
    for (const auto& n : kPhaseNames) {
        if (n.phase == p) {
            return n.name;
        }
    }
    return "?";
}

Phase phase_from_string(std::string_view s) {
    for (const auto& n : kPhaseNames) {
        if (n.name == s || n.short_name == s) {
            return n.phase;
        }
    }
    throw LookupError("unknown phase '" + std::string(s) + "'");
}

// Network interfaces (scanning) map to hardware_interface; host names,
// network addresses, web URLs and port numbers map to extension parameters.
const std::vector<std::string>& phase_inputs(Phase p) {
    namespace k = param;
    static const std::vector<std::string> recon =
        ids({k::kIpAddress, k::kHostNames, k::kNetworkAddress, k::kHardwareInterface});
    static const std::vector<std::string> scan = ids(
        {k::kWebUrls, k::kIpAddress, k::kHardwareInterface, k::kOpenPorts, k::kOperatingSystem});
    static const std::vector<std::string> access =
        ids({k::kOperatingSystem, k::kSoftwareVersions, k::kProtocolVersion});
    switch (p) {
    case Phase::Reconnaissance: return recon;
    case Phase::Scanning: return scan;
    case Phase::GainingAccess: return access;
    case Phase::MaintainingAccess:
    case Phase::CoveringTracks: break;
    }
    throw UnsupportedPhaseError("phase '" + std::string(to_string(p)) +
                                "' is not automatable and has no input requirements");
}

const std::vector<std::string>& all_phase_inputs() {
    static const std::vector<std::string> all = [] {
        std::vector<std::string> out;
        for (Phase p : kAutomatablePhases) {
            for (const auto& id : phase_inputs(p)) {
                if (std::find(out.begin(), out.end(), id) == out.end()) {
                    out.push_back(id);
                }
            }
        }
        return out;
    }();
    return all;
}

} // namespace iotassure
