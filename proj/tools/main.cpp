#include <vector>

#include "slowlight/cli.hpp"

int main(int argc, char** argv) {
  return slowlight::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
