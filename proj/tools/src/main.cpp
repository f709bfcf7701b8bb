#include <iostream>

#include "agtool/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return agtool::run(args, std::cout, std::cerr);
}
