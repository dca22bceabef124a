#include "mlfc_cli/cli.hpp"

int main(int argc, char** argv) { return mlfc::cli::main_entry(argc, argv); }
