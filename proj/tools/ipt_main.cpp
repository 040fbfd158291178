#include <vector>

#include "ipt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ipt::cli_main(args);
}
