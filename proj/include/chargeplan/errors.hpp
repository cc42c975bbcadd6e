#pragma once

#include <stdexcept>
#include <string>

namespace chargeplan {

// Error taxonomy shared by loaders, model evaluation and the optimizer.
// The CLI maps these onto process exit codes (see tools/).
enum class Errc {
    malformed_file,
    dangling_arc,
    self_loop,
    empty_selection,
    disconnected_graph,
    too_few_nodes,
    no_demand_data,
    duplicate_site_id,
    downgrade_attempt,
    no_feasible_solution,
    invalid_config,
    missing_artifact,
    internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

} // namespace chargeplan
