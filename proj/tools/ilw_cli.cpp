#include "ilw/runner.hpp"

int main(int argc, char** argv) { return ilw::cli_main(argc, argv); }
