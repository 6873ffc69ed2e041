#pragma once

#include <fstream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "slowlight/config.hpp"

namespace slowlight {

// Fixed 9-significant-digit formatting so identical inputs give
// byte-identical output.
std::string format_sig9(double v);

// CSV with '#'-prefixed comment lines. On error the writer appends a
// trailing "# error:" marker so a truncated file is never silent.
class CsvWriter {
 public:
  // path "-" writes to stdout.
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void error_marker(const std::string& message);

  std::ostream& stream();

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
};

// Full parameter echo written at the top of every emitted file.
void echo_config(CsvWriter& w, const SimConfig& cfg);

}  // namespace slowlight
