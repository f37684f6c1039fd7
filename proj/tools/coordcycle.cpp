#include "coordcycle/cli.hpp"

int main(int argc, char **argv) { return coordcycle::run_cli(argc, argv); }
