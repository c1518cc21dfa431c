#include "coherence/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "coherence/presentation.hpp"

namespace coherence {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream words(raw);
    Line l{number, {}};
    for (std::string tok; words >> tok;) l.tokens.push_back(tok);
    if (!l.tokens.empty()) lines.push_back(std::move(l));
  }
  return lines;
}

InputError fail(const Line& l, const std::string& msg) {
  return InputError("line " + std::to_string(l.number) + ": " + msg);
}

long long to_int(const Line& l, const std::string& s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw fail(l, "bad integer '" + s + "'");
  return v;
}

void need(const Line& l, std::size_t at_least, const std::string& usage) {
  if (l.tokens.size() < at_least) throw fail(l, "usage: " + usage);
}

int lookup(const Line& l, const std::map<std::string, int>& names, const std::string& name, const std::string& kind) {
  auto it = names.find(name);
  if (it == names.end()) throw fail(l, "unknown " + kind + " '" + name + "'");
  return it->second;
}

void declare(const Line& l, std::map<std::string, int>& names, const std::string& name, int id, const std::string& kind) {
  if (!names.emplace(name, id).second) throw fail(l, "duplicate " + kind + " '" + name + "'");
}

EdgeStep edge_token(const Line& l, const std::map<std::string, int>& edges, std::string tok) {
  bool reversed = false;
  if (tok.size() > 1 && tok.back() == '-') {
    reversed = true;
    tok.pop_back();
  }
  return {lookup(l, edges, tok, "edge"), reversed};
}

template <class Fn>
auto at_line(const Line& l, Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    throw fail(l, e.what());
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ComplexFile parse_complex(std::string_view text) {
  auto x = std::make_shared<TwoComplex>();
  std::map<std::string, int> vertices, edges, faces;
  WeightFunction::Mode mode = WeightFunction::Mode::standard;
  bool mode_seen = false;
  std::vector<std::pair<Line, Triangle>> overrides;
  std::vector<std::int64_t> values;

  for (const Line& l : tokenize(text)) {
    const std::string& head = l.tokens[0];
    if (head == "vertex") {
      need(l, 2, "vertex <name>");
      if (l.tokens.size() != 2) throw fail(l, "usage: vertex <name>");
      declare(l, vertices, l.tokens[1], x->vertex_count(), "vertex");
      x->add_vertex(l.tokens[1]);
    } else if (head == "edge") {
      if (l.tokens.size() != 4) throw fail(l, "usage: edge <name> <v1> <v2>");
      int a = lookup(l, vertices, l.tokens[2], "vertex");
      int b = lookup(l, vertices, l.tokens[3], "vertex");
      declare(l, edges, l.tokens[1], x->edge_count(), "edge");
      x->add_edge(a, b, std::nullopt, l.tokens[1]);
    } else if (head == "face") {
      need(l, 3, "face <name> <edge-token>+");
      EdgePath b;
      for (std::size_t i = 2; i < l.tokens.size(); ++i) b.push_back(edge_token(l, edges, l.tokens[i]));
      declare(l, faces, l.tokens[1], x->face_count(), "face");
      at_line(l, [&] { return x->add_face(std::move(b), l.tokens[1]); });
    } else if (head == "weights") {
      if (l.tokens.size() != 2 || (l.tokens[1] != "standard" && l.tokens[1] != "zero"))
        throw fail(l, "usage: weights standard|zero");
      if (mode_seen) throw fail(l, "weight mode declared twice");
      mode_seen = true;
      mode = l.tokens[1] == "standard" ? WeightFunction::Mode::standard : WeightFunction::Mode::sparse;
    } else if (head == "weight") {
      if (l.tokens.size() != 4) throw fail(l, "usage: weight <face> <position> <k>");
      overrides.push_back({l, {lookup(l, faces, l.tokens[1], "face"), static_cast<int>(to_int(l, l.tokens[2]))}});
      values.push_back(to_int(l, l.tokens[3]));
    } else {
      throw fail(l, "unknown directive '" + head + "'");
    }
  }

  ComplexFile out{x, WeightFunction(mode)};
  for (std::size_t i = 0; i < overrides.size(); ++i) {
    const auto& [l, t] = overrides[i];
    if (t.position < 0 || t.position >= x->boundary_length(t.face)) throw fail(l, "weight position out of range");
    if (values[i] < 0) throw fail(l, "weights must be nonnegative");
    out.weights.set(t, values[i]);
  }
  return out;
}

ComplexFile read_complex_file(const std::string& path) { return parse_complex(read_text_file(path)); }

CombinatorialMap parse_map(std::string_view text, std::shared_ptr<const TwoComplex> target) {
  const TwoComplex& x = *target;
  std::map<std::string, int> tv, te, tf;
  for (int v = 0; v < x.vertex_count(); ++v) tv.emplace(x.vertex_name(v), v);
  for (int e = 0; e < x.edge_count(); ++e) te.emplace(x.edge(e).name, e);
  for (int f = 0; f < x.face_count(); ++f) tf.emplace(x.face(f).name, f);

  std::optional<CombinatorialMap> shortcut;
  CombinatorialMap explicit_map(target);
  bool explicit_used = false;
  bool pack_requested = false;
  std::map<std::string, int> sv, se, sf;

  for (const Line& l : tokenize(text)) {
    const std::string& head = l.tokens[0];
    if (pack_requested) throw fail(l, "`pack` must be the last line");
    auto single = [&](CombinatorialMap m) {
      if (shortcut || explicit_used) throw fail(l, "a map file holds one shortcut or one explicit source");
      shortcut = std::move(m);
    };
    if (head == "identity" && l.tokens.size() == 1) {
      single(CombinatorialMap::identity(target));
    } else if (head == "skeleton" && l.tokens.size() == 1) {
      single(skeleton_inclusion(target));
    } else if (head == "edge-cell" && l.tokens.size() == 2) {
      single(edge_cell_map(target, lookup(l, te, l.tokens[1], "edge")));
    } else if (head == "face-cell" && l.tokens.size() == 2) {
      single(face_cell_map(target, lookup(l, tf, l.tokens[1], "face")));
    } else if (head == "boundary" && l.tokens.size() == 2) {
      single(face_boundary_map(target, lookup(l, tf, l.tokens[1], "face")));
    } else if (head == "include") {
      need(l, 2, "include <edge or face>+");
      std::vector<int> edges, faces;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        if (auto e = te.find(l.tokens[i]); e != te.end())
          edges.push_back(e->second);
        else
          faces.push_back(lookup(l, tf, l.tokens[i], "edge or face"));
      }
      single(subcomplex_inclusion(target, edges, faces));
    } else if (head == "pack" && l.tokens.size() == 1) {
      pack_requested = true;
    } else if (head == "vertex" || head == "edge" || head == "face") {
      if (shortcut) throw fail(l, "a map file holds one shortcut or one explicit source");
      explicit_used = true;
      if (head == "vertex") {
        if (l.tokens.size() != 3) throw fail(l, "usage: vertex <name> <target vertex>");
        declare(l, sv, l.tokens[1], explicit_map.source().vertex_count(), "vertex");
        explicit_map.add_vertex(lookup(l, tv, l.tokens[2], "target vertex"), l.tokens[1]);
      } else if (head == "edge") {
        if (l.tokens.size() != 5) throw fail(l, "usage: edge <name> <v1> <v2> <target edge>[-]");
        int a = lookup(l, sv, l.tokens[2], "vertex");
        int b = lookup(l, sv, l.tokens[3], "vertex");
        EdgeStep img = edge_token(l, te, l.tokens[4]);
        declare(l, se, l.tokens[1], explicit_map.source().edge_count(), "edge");
        at_line(l, [&] { return explicit_map.add_edge(a, b, {img.edge, img.reversed}, l.tokens[1]); });
      } else {
        // face <name> <target face> <offset> [reflected] : <tokens>
        need(l, 6, "face <name> <target face> <offset> [reflected] : <edge-token>+");
        std::size_t i = 4;
        bool reflected = false;
        if (l.tokens[i] == "reflected") {
          reflected = true;
          ++i;
        }
        if (l.tokens[i] != ":") throw fail(l, "expected ':' before the boundary");
        EdgePath b;
        for (++i; i < l.tokens.size(); ++i) b.push_back(edge_token(l, se, l.tokens[i]));
        FaceImage img{lookup(l, tf, l.tokens[2], "target face"), static_cast<int>(to_int(l, l.tokens[3])), reflected};
        declare(l, sf, l.tokens[1], explicit_map.source().face_count(), "face");
        at_line(l, [&] { return explicit_map.add_face(std::move(b), img, l.tokens[1]); });
      }
    } else {
      throw fail(l, "unknown directive '" + head + "'");
    }
  }
  CombinatorialMap out = shortcut ? *shortcut : explicit_map;
  return pack_requested ? pack(out) : out;
}

CombinatorialMap read_map_file(const std::string& path, std::shared_ptr<const TwoComplex> target) {
  return parse_map(read_text_file(path), std::move(target));
}

GraphFile parse_graph(std::string_view text) {
  std::map<std::string, int> left, right;
  GraphFile out;
  std::vector<std::pair<Line, std::pair<std::string, std::string>>> edges;
  for (const Line& l : tokenize(text)) {
    const std::string& head = l.tokens[0];
    if (head == "left") {
      if (l.tokens.size() != 2 && l.tokens.size() != 3) throw fail(l, "usage: left <name> [multiplicity]");
      const long long m = l.tokens.size() == 3 ? to_int(l, l.tokens[2]) : 1;
      if (m < 1) throw fail(l, "multiplicity must be positive");
      declare(l, left, l.tokens[1], static_cast<int>(out.left_names.size()), "left vertex");
      out.left_names.push_back(l.tokens[1]);
      out.multiplicity.push_back(static_cast<int>(m));
    } else if (head == "right") {
      if (l.tokens.size() != 2) throw fail(l, "usage: right <name>");
      declare(l, right, l.tokens[1], static_cast<int>(out.right_names.size()), "right vertex");
      out.right_names.push_back(l.tokens[1]);
    } else if (head == "edge") {
      if (l.tokens.size() != 3) throw fail(l, "usage: edge <left> <right>");
      edges.push_back({l, {l.tokens[1], l.tokens[2]}});
    } else {
      throw fail(l, "unknown directive '" + head + "'");
    }
  }
  out.graph = BipartiteGraph(static_cast<int>(out.left_names.size()), static_cast<int>(out.right_names.size()));
  for (const auto& [l, e] : edges)
    at_line(l, [&] {
      out.graph.add_edge(lookup(l, left, e.first, "left vertex"), lookup(l, right, e.second, "right vertex"));
      return 0;
    });
  return out;
}

GraphFile read_graph_file(const std::string& path) { return parse_graph(read_text_file(path)); }

}  // namespace coherence
