#include "netsync/cli.hpp"

int main(int argc, char** argv) {
    return netsync::cli::main_entry(argc, argv);
}
