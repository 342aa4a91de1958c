#include "citeforensics/export.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "citeforensics/errors.hpp"

namespace citeforensics {

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string csv_field(std::string_view value) {
    const bool needs_quotes =
        value.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(value);
    std::string out = "\"";
    for (const char c : value) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string dot_quote(std::string_view id) {
    std::string out = "\"";
    for (const char c : id) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string network_to_dot(const RefMatchNetwork& network,
                           const std::map<int, std::set<std::string>>& components,
                           int top_n) {
    std::set<std::string> included;
    for (const auto& [component_id, members] : components) {
        if (component_id >= top_n) break;
        included.insert(members.begin(), members.end());
    }

    std::string out = "graph refnet {\n";
    for (const auto& node : included) {
        out += "  " + dot_quote(node) + ";\n";
    }
    for (const auto& [key, edge] : network.edges) {
        if (!included.count(key.first) || !included.count(key.second)) continue;
        out += "  " + dot_quote(key.first) + " -- " + dot_quote(key.second) +
               " [weight=" + std::to_string(edge.weight) + "];\n";
    }
    out += "}\n";
    return out;
}

std::string network_nodes_csv(const RefMatchNetwork& network) {
    std::string out = "paper_id\n";
    for (const auto& node : network.nodes) {
        out += csv_field(node) + "\n";
    }
    return out;
}

std::string network_edges_csv(const RefMatchNetwork& network) {
    std::string out = "src,dst,weight\n";
    for (const auto& [key, edge] : network.edges) {
        out += csv_field(key.first) + "," + csv_field(key.second) + "," +
               std::to_string(edge.weight) + "\n";
    }
    return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace citeforensics
