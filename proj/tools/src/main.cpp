#include <iostream>
#include <string>
#include <vector>

#include "digitdim_cli/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return digitdim::cli::run(args, std::cout, std::cerr);
}
