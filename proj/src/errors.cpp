#include "chargeplan/errors.hpp"

namespace chargeplan {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::malformed_file: return "MalformedFile";
    case Errc::dangling_arc: return "DanglingArc";
    case Errc::self_loop: return "SelfLoop";
    case Errc::empty_selection: return "EmptySelection";
    case Errc::disconnected_graph: return "DisconnectedGraph";
    case Errc::too_few_nodes: return "TooFewNodes";
    case Errc::no_demand_data: return "NoDemandData";
    case Errc::duplicate_site_id: return "DuplicateSiteId";
    case Errc::downgrade_attempt: return "DowngradeAttempt";
    case Errc::no_feasible_solution: return "NoFeasibleSolution";
    case Errc::invalid_config: return "InvalidConfig";
    case Errc::missing_artifact: return "MissingArtifact";
    case Errc::internal: return "InternalError";
    }
    return "UnknownError";
}

} // namespace chargeplan
