#include <iostream>
#include <string>
#include <vector>

#include "nqp/cli.hpp"

int main(int argc, char** argv)
{
    return nqp::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
