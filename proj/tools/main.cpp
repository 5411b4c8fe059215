#include "augsill/cli.hpp"

int main(int argc, char** argv) { return augsill::run_cli(argc, argv); }
