#include "waveflow/commands.hpp"

int main(int argc, char** argv) { return waveflow::run_cli(argc, argv); }
