#include "cli.hpp"

int main(int argc, char** argv) { return tdesign::cli::main_entry(argc, argv); }
