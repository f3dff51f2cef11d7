#include "ltlf2dfa/harness.hpp"

int main(int argc, char** argv) { return ltlf::run_cli(argc, argv); }
