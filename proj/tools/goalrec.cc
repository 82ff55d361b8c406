#include "goalrec/cli/commands.h"

#include <iostream>

int main(int argc, char **argv) {
    return goalrec::cli::run(argc, argv, std::cout, std::cerr);
}
