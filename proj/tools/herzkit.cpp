#include "herzkit/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return herzkit::run_command_line(argc, argv, std::cout, std::cerr);
}
