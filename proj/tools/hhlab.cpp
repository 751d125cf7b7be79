#include "hhlab/cli.hpp"

int main(int argc, char** argv) { return hh::run_cli(argc, argv); }
