#include "fpo/harness.hpp"

int main(int argc, char** argv) { return fpo::cli_main(argc, argv); }
