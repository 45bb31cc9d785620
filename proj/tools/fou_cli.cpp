#include "fou/harness.hpp"

int main(int argc, char** argv) { return fou::cli_main(argc, argv); }
