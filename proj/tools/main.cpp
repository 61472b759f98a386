#include <iostream>
#include <sstream>

#include "gwpt/cli.hpp"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    gwpt::CommandResult result = gwpt::run_command(args, []() {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    });
    std::cout << result.dump();
    return result.exit_code;
}
