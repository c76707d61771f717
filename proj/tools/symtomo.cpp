#include <iostream>
#include <string>
#include <vector>

#include "app/commands.hpp"

int main(int argc, char** argv) {
  return symtomo::app::run_cli(std::vector<std::string>(argv, argv + argc), std::cerr);
}
