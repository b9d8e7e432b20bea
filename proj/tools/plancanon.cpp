#include "plancanon/cli.hpp"

int main(int argc, char** argv) { return plancanon::cli_main(argc, argv); }
