#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ambra {

// Runtime configuration shared by the CLI commands.
struct RunConfig {
  unsigned long seed = 0;
  std::optional<long> bfs_node_cap;
  std::optional<long> search_radius_cap;
  bool json_output = false;
  std::optional<int> word_check_length;  // default: dim-derived
};

// Exit codes: 0 success, 1 parse error, 2 out of scope / target unreachable,
// 3 search budget exhausted, 4 internal error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ambra
