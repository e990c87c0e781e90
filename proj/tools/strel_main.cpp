#include "strel/cli.hpp"

int main(int argc, char** argv) { return strel::run_cli(argc, argv); }
