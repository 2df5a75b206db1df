#include "netshift/cli.hpp"

int main(int argc, char** argv) { return netshift::run_cli(argc, argv); }
