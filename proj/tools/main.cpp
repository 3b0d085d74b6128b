#include "cli.hpp"

int main(int argc, char** argv) { return heckebench::cli::main_entry(argc, argv); }
