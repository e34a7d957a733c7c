#pragma once

#include <stdexcept>
#include <string>

namespace mabo {

// Linear algebra failed beyond the jitter ladder, or an oracle produced a
// non-finite value.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Run-config schema violation. `field` holds the dotted path of the bad key,
// e.g. "oracle.nominal.b" or "acquisitions[3].beta".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field_path, const std::string& what)
        : std::runtime_error(field_path + ": " + what), field_(std::move(field_path)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Failure inside an ADMM run, tagged with the iteration and the agent that
// raised it. iteration < 0 means the error happened while seeding agents.
class RunError : public std::runtime_error {
public:
    RunError(int iteration, int agent, const std::string& what)
        : std::runtime_error(describe(iteration, agent) + ": " + what),
          iteration_(iteration),
          agent_(agent) {}

    int iteration() const noexcept { return iteration_; }
    int agent() const noexcept { return agent_; }

private:
    static std::string describe(int iteration, int agent) {
        if (iteration < 0) return "setup, agent " + std::to_string(agent);
        return "iteration " + std::to_string(iteration) + ", agent " + std::to_string(agent);
    }

    int iteration_;
    int agent_;
};

}  // namespace mabo
