#include "olive/cli.hpp"

int main(int argc, char** argv) { return olive::cli_main(argc, argv); }
