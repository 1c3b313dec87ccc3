#include "revshare/cli.hpp"

int main(int argc, char** argv) { return revshare::cli::main_entry(argc, argv); }
