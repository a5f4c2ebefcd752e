#include "cli.hpp"

int main(int argc, char** argv) { return spinpart::cli::main_entry(argc, argv); }
