#include "bandplan/cli.hpp"

int main(int argc, char** argv) { return bandplan::cli::run(argc, argv); }
