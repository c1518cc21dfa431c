#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/complex.hpp"
#include "coherence/matching.hpp"

namespace coherence {

struct ComplexFile {
  std::shared_ptr<const TwoComplex> complex;
  WeightFunction weights;
};

/// Lines: `vertex <name>`, `edge <name> <v1> <v2>`, `face <name> <e|e->+`,
/// `weights standard|zero`, `weight <face> <position> <k>`; `#` comments.
ComplexFile parse_complex(std::string_view text);
ComplexFile read_complex_file(const std::string& path);

/// Map into a given complex. Either one shortcut line
///   identity | skeleton | edge-cell <e> | face-cell <f> | boundary <f> |
///   include <edge or face name>+
/// or an explicit source:
///   vertex <name> <target vertex>
///   edge <name> <v1> <v2> <target edge>[-]
///   face <name> <target face> <offset> [reflected] : <e|e->+
/// A final `pack` line packs the map.
CombinatorialMap parse_map(std::string_view text, std::shared_ptr<const TwoComplex> target);
CombinatorialMap read_map_file(const std::string& path, std::shared_ptr<const TwoComplex> target);

struct GraphFile {
  BipartiteGraph graph;
  Multiplicity multiplicity;
  std::vector<std::string> left_names;
  std::vector<std::string> right_names;
};

/// Lines: `left <name> [multiplicity]`, `right <name>`, `edge <left> <right>`.
GraphFile parse_graph(std::string_view text);
GraphFile read_graph_file(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace coherence
