#include "gpdelta/cli.hpp"

int main(int argc, char** argv) { return gpdelta::cli_dispatch(argc, argv); }
