// Nearest-neighbour "model" speaking the external-command protocol:
//   srbench-nn-model [--scale N] <input.png> <output.png>
// Handy as a stand-in when exercising ensemble and tile-apply.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "srbench/error.hpp"
#include "srbench/image.hpp"
#include "srbench/png_io.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nearest-neighbour upscaler"};
  int scale = 2;
  std::string input;
  std::string output;
  app.add_option("--scale", scale, "integer upscale factor")->check(CLI::Range(1, 8));
  app.add_option("input", input)->required();
  app.add_option("output", output)->required();
  CLI11_PARSE(app, argc, argv);
  try {
    srbench::save_png(srbench::upscale_nearest(srbench::load_png(input), scale), output);
  } catch (const srbench::Error& e) {
    std::cerr << "srbench-nn-model: " << e.what() << "\n";
    return srbench::exit_code(e.kind());
  }
  return 0;
}
