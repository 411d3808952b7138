#include <mocz/cli.hpp>

int main(int argc, char** argv)
{
    return mocz::cli_main(argc, argv);
}
