#pragma once

#include <filesystem>
#include <string>

namespace rfblt::app {

/// Collects output files in a hidden sibling directory and moves them into
/// the target directory only on commit(). An uncommitted stage is deleted on
/// destruction, so a failed run leaves the target untouched.
class StagedOutput {
 public:
  explicit StagedOutput(std::filesystem::path target);
  ~StagedOutput();

  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;

  /// Writes `content` to `relative` inside the stage.
  void write(const std::filesystem::path& relative, const std::string& content);

  void commit();

 private:
  std::filesystem::path target_;
  std::filesystem::path stage_;
  bool committed_ = false;
};

}  // namespace rfblt::app
