#include <iostream>

#include "wtsim/experiment.hpp"

int main(int argc, char** argv) {
    const wtsim::ParseResult parsed = wtsim::parse_config(argc, argv);
    if (!parsed.config) {
        if (!parsed.message.empty())
            (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
        return parsed.exit_code;
    }
    return wtsim::run_experiment(*parsed.config);
}
