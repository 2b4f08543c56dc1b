#include "qestkit/cli.hpp"

int main(int argc, char** argv) { return qestkit::run_cli(argc, argv); }
