#include "rfblt_app/output.hpp"

#include <fstream>
#include <system_error>
#include <vector>
#include <unistd.h>

#include "rfblt/error.hpp"

namespace fs = std::filesystem;

namespace rfblt::app {

StagedOutput::StagedOutput(fs::path target) : target_(std::move(target)) {
  require(!target_.empty(), ErrorCode::InvalidArgument, "output directory is required");
  const fs::path absolute = fs::absolute(target_).lexically_normal();
  const fs::path parent = absolute.has_filename() ? absolute.parent_path()
                                                  : absolute.parent_path().parent_path();
  const std::string leaf = absolute.has_filename() ? absolute.filename().string()
                                                   : absolute.parent_path().filename().string();
  std::error_code ec;
  fs::create_directories(parent, ec);
  stage_ = parent / ("." + leaf + ".staging-" + std::to_string(::getpid()));
  fs::remove_all(stage_, ec);
  fs::create_directories(stage_, ec);
  require(!ec, ErrorCode::IoError, "cannot create staging directory " + stage_.string());
}

StagedOutput::~StagedOutput() {
  std::error_code ec;
  fs::remove_all(stage_, ec);
}

void StagedOutput::write(const fs::path& relative, const std::string& content) {
  const fs::path path = stage_ / relative;
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  require(out.good(), ErrorCode::IoError, "cannot write " + path.string());
}

void StagedOutput::commit() {
  require(!committed_, ErrorCode::IoError, "output already committed");
  std::error_code ec;
  fs::create_directories(target_, ec);
  require(!ec, ErrorCode::IoError, "cannot create output directory " + target_.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(stage_)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  for (const auto& file : files) {
    const fs::path dest = target_ / fs::relative(file, stage_);
    fs::create_directories(dest.parent_path(), ec);
    fs::rename(file, dest, ec);
    require(!ec, ErrorCode::IoError, "cannot move output into " + dest.string());
  }
  committed_ = true;
}

}  // namespace rfblt::app
