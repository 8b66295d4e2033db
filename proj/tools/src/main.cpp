#include "waveobs_cli/commands.hpp"

int main(int argc, char** argv) { return waveobs::cli::run_cli(argc, argv); }
