#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "citeforensics/refnet.hpp"

namespace citeforensics {

/// Shortest round-trip decimal form (std::to_chars), locale-independent.
std::string format_double(double value);

/// RFC 4180 quoting: fields containing commas, quotes, or newlines are quoted.
std::string csv_field(std::string_view value);

/// DOT rendering of the top_n largest components (node = paper id, edge
/// attribute `weight`). Nodes and edges appear in sorted order.
std::string network_to_dot(const RefMatchNetwork& network,
                           const std::map<int, std::set<std::string>>& components,
                           int top_n);

std::string network_nodes_csv(const RefMatchNetwork& network);
std::string network_edges_csv(const RefMatchNetwork& network);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace citeforensics
