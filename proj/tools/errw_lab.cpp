#include "errw/cli/modes.hpp"

int main(int argc, char** argv) { return errw::cli::main_entry(argc, argv); }
