#include <iostream>

#include "beltrami/cli.hpp"

int main(int argc, char** argv)
{
    const auto parsed = beltrami::cli::parse(argc, argv);
    if (parsed.exit_now) {
        (*parsed.exit_now == 0 ? std::cout : std::cerr) << parsed.message << '\n';
        return *parsed.exit_now;
    }
    return beltrami::cli::run(parsed.config, std::cout, std::cerr);
}
