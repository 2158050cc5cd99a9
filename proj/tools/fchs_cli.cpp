#include "fchs/cli.hpp"

int main(int argc, char** argv) { return fchs::cli_main(argc, argv); }
