#include "isoperf/cli.hpp"

int main(int argc, char** argv) { return isoperf::run_cli(argc, argv); }
