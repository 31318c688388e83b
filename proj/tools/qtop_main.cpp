#include "qtop/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return qtop::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
