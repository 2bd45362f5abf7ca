#include "srbench/model.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <unistd.h>

#include "srbench/error.hpp"
#include "srbench/png_io.hpp"

namespace srbench {

namespace {

namespace fs = std::filesystem;

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'') {
      out += "'\\''";
    } else {
      out += ch;
    }
  }
  out += "'";
  return out;
}

// Removes the per-call scratch directory.
class ScratchDir {
 public:
  ScratchDir() {
    static std::atomic<unsigned long long> counter{0};
    path_ = fs::temp_directory_path() /
            ("srbench-model-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

void check_model_output(const Image& in, const Image& out, int scale,
                        const std::string& context) {
  if (out.height() != in.height() * scale || out.width() != in.width() * scale) {
    throw Error(ErrorKind::kModelFailure,
                context + ": model returned " + std::to_string(out.height()) +
                    "x" + std::to_string(out.width()) + " for a " +
                    std::to_string(in.height()) + "x" +
                    std::to_string(in.width()) + " input at scale " +
                    std::to_string(scale));
  }
}

Model nearest_neighbor_model(int scale) {
  return Model{scale, [scale](const Image& img) { return upscale_nearest(img, scale); },
               true};
}

Model external_command_model(std::string command, int scale) {
  auto run = [command = std::move(command)](const Image& img) {
    ScratchDir scratch;
    const fs::path in = scratch.path() / "input.png";
    const fs::path out = scratch.path() / "output.png";
    save_png(img, in);
    const std::string line = command + " " + shell_quote(in.string()) + " " +
                             shell_quote(out.string());
    const int status = std::system(line.c_str());
    if (status != 0) {
      throw Error(ErrorKind::kModelFailure,
                  "model command failed (status " + std::to_string(status) +
                      "): " + line);
    }
    if (!fs::exists(out)) {
      throw Error(ErrorKind::kModelFailure,
                  "model command produced no output: " + line);
    }
    return load_png(out);
  };
  return Model{scale, std::move(run), true};
}

}  // namespace srbench
