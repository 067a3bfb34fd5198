#include "recpart/cli.hpp"

int main(int argc, char** argv) { return recpart::run_cli(argc, argv); }
