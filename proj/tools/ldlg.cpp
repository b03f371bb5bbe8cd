#include <iostream>

#include "ldlg/cli.hpp"

int main(int argc, char** argv)
{
    return ldlg::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
