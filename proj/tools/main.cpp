#include <vector>

#include "chaoskit/cli.hpp"

int main(int argc, char** argv) {
  return chaoskit::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
