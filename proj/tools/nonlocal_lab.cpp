#include "nonlocal/cli.hpp"

int main(int argc, char** argv) { return nonlocal::run_command(argc, argv); }
