#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "ncgalois/io.hpp"

namespace ncgalois::cli {

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides a "seed" entry in the spec
  Tolerance tol{};
  unsigned threads = 1;
};

// Runs one subcommand on a parsed experiment spec; refs resolve against base_dir.
// Returns the full report, including "violations".
io::Json run(const std::string& command, const io::Json& spec, const std::filesystem::path& base_dir,
             const RunOptions& options);

// Reads and runs spec_path, then renders the canonical report text.
std::string run_file(const std::string& command, const std::filesystem::path& spec_path, const RunOptions& options);

// Process entry point; returns the exit status (0 ok, 1 validation error, 2 numerical failure).
int main(int argc, char** argv);

}  // namespace ncgalois::cli
