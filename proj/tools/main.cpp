#include "metabbo/cli/cli.hpp"

int main(int argc, char** argv) {
    return metabbo::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
