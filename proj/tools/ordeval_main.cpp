#include "ordeval/cli.hpp"

int main(int argc, char** argv) {
    return ordeval::run_cli(argc, argv);
}
