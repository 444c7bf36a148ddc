// Writes the bundled identity table: reductions the library derives itself.
#include <fstream>
#include <iostream>

#include "eulersum/reduction.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_starter_table OUT.jsonl\n";
    return 2;
  }
  std::ofstream out(argv[1]);
  if (!out) {
    std::cerr << "cannot write " << argv[1] << '\n';
    return 1;
  }
  eulersum::write_identity_table(out, eulersum::build_starter_table(12));
  return 0;
}
