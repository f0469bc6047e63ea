#include "awfs/dot.hpp"

#include <array>
#include <set>
#include <sstream>

namespace awfs {

namespace {

constexpr std::array<const char*, 8> kPalette{"#d9d9d9", "#8dd3c7", "#fdb462", "#80b1d3",
                                              "#fb8072", "#b3de69", "#bc80bd", "#ffed6f"};

const char* stage_color(int stage) { return kPalette[static_cast<std::size_t>(stage) % kPalette.size()]; }

std::string quoted(const std::string& id) {
  std::string out = "\"";
  for (char ch : id) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const CellComplex& c) {
  const auto& body = c.body();
  std::set<int> stages;
  for (int k = 0; k <= std::min(body.max_dim(), 1); ++k) {
    for (const auto& id : body.ids(k)) stages.insert(c.birth(id));
  }
  std::ostringstream out;
  out << "digraph complex {\n";
  if (!body.empty()) out << "  node [shape=circle, style=filled];\n";
  for (int s : stages) {
    out << "  // " << (s == 0 ? std::string("base") : "stratum " + std::to_string(s - 1)) << ": " << stage_color(s) << "\n";
  }
  for (int k = 2; k <= body.max_dim(); ++k) out << "  // " << k << "-simplices: " << body.size(k) << "\n";
  for (const auto& id : body.ids(0)) {
    out << "  " << quoted(id) << " [fillcolor=\"" << stage_color(c.birth(id)) << "\"];\n";
  }
  for (std::uint32_t i = 0; i < body.size(1); ++i) {
    const auto& id = body.id(1, i);
    auto faces = body.face_ids(1, i);
    out << "  " << quoted(faces[1]) << " -> " << quoted(faces[0]) << " [label=" << quoted(id) << ", color=\""
        << stage_color(c.birth(id)) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace awfs
