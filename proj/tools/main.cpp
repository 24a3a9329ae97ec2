#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
    return bucb::cli::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
