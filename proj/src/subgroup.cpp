#include "coherence/subgroup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace coherence {

namespace {

int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

Word step_word(const std::vector<Word>& w, EdgeStep s) {
  const Word& e = w.at(static_cast<std::size_t>(s.edge));
  return s.reversed ? inverse(e) : e;
}

Word path_word(const std::vector<Word>& w, std::span<const EdgeStep> path) {
  Word out;
  for (EdgeStep s : path) {
    Word sw = step_word(w, s);
    out.insert(out.end(), sw.begin(), sw.end());
  }
  return free_reduce(out);
}

EdgePath reduce_path(std::span<const EdgeStep> path) {
  EdgePath out;
  for (EdgeStep s : path) {
    if (!out.empty() && out.back() == s.inverse())
      out.pop_back();
    else
      out.push_back(s);
  }
  return out;
}

Word image_word(const CombinatorialMap& phi, std::span<const EdgeStep> path) {
  Word out;
  for (EdgeStep s : path) {
    EdgeStep t = phi.image(s);
    out.emplace_back(t.edge, t.reversed);
  }
  return out;
}

// Multiplies the words of edges at the chosen vertices by P (on the left
// when leaving, by P^-1 on the right when entering). Based loops keep their
// value as long as the basepoint is not chosen.
void gauge(const TwoComplex& y, std::vector<Word>& w, const std::function<bool(int)>& chosen,
           const std::function<bool(int)>& alive, const Word& p) {
  const Word p_inv = inverse(p);
  for (int e = 0; e < y.edge_count(); ++e) {
    if (!alive(e)) continue;
    Word& we = w[static_cast<std::size_t>(e)];
    if (chosen(y.edge(e).source)) we = concat(p, we);
    if (chosen(y.edge(e).target)) we = concat(we, p_inv);
    we = free_reduce(we);
  }
}

void fold_state(SubgroupState& st, std::vector<EdgePath*> paths, TameReport* report) {
  const TwoComplex& y = st.map.source();
  std::vector<int> parent(static_cast<std::size_t>(y.vertex_count()));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
    return v;
  };
  std::vector<bool> alive(static_cast<std::size_t>(y.edge_count()), true);
  std::vector<Word>& w = st.witnesses;
  const int base = st.base;

  auto observer = [&](const FoldEvent& ev) {
    if (ev.kept_end != ev.merged_end) {
      const Word x = free_reduce(concat(inverse(step_word(w, ev.kept)), step_word(w, ev.merged)));
      const bool keep_base_side = find(base) == ev.merged_end;
      const int cls = keep_base_side ? ev.kept_end : ev.merged_end;
      gauge(
          y, w, [&](int v) { return find(v) == cls; }, [&](int e) { return alive[static_cast<std::size_t>(e)]; },
          keep_base_side ? inverse(x) : x);
      parent[static_cast<std::size_t>(ev.merged_end)] = ev.kept_end;
    }
    alive[static_cast<std::size_t>(ev.merged.edge)] = false;
  };
  FoldResult fr = fold(st.map, observer);

  std::vector<Word> next(static_cast<std::size_t>(fr.map.source().edge_count()));
  for (int e = 0; e < y.edge_count(); ++e)
    if (alive[static_cast<std::size_t>(e)]) next[static_cast<std::size_t>(fr.edge_remap[static_cast<std::size_t>(e)].edge)] = w[static_cast<std::size_t>(e)];
  for (EdgePath* path : paths)
    for (EdgeStep& s : *path) {
      EdgeStep r = fr.edge_remap[static_cast<std::size_t>(s.edge)];
      s = {r.edge, r.reversed != s.reversed};
    }
  if (report) report->folds += fr.folds;
  st.base = fr.vertex_remap[static_cast<std::size_t>(st.base)];
  st.witnesses = std::move(next);
  st.map = complete_packets(fr.map);
}

// The part of the loop a replace move rewrites, as a boundary path of the
// relator face read forwards.
Reduction seed_for(const DehnMove& move, const EdgePath& beta, int boundary_length) {
  const int n = static_cast<int>(beta.size());
  EdgePath segment;
  for (int k = 0; k < move.length; ++k) segment.push_back(beta[static_cast<std::size_t>((move.at + k) % n)]);
  if (!move.inverted) return {move.relator, move.rotation, move.length, segment};
  return {move.relator, mod(boundary_length - move.rotation - move.length, boundary_length), move.length,
          inverse(segment)};
}

std::optional<EdgePath> fitting_boundary(const CombinatorialMap& phi, const Reduction& red) {
  const TwoComplex& y = phi.source();
  const int n = phi.target().boundary_length(red.face);
  for (int g = 0; g < y.face_count(); ++g) {
    if (phi.face_image(g).face != red.face) continue;
    EdgePath a = phi.aligned_boundary(g);
    bool fits = true;
    for (int i = 0; i < red.length && fits; ++i)
      fits = a[static_cast<std::size_t>(mod(red.start + i, n))] == red.path[static_cast<std::size_t>(i)];
    if (fits) return a;
  }
  return std::nullopt;
}

// Replaces the segment by the rest of the disc boundary.
EdgePath replace_segment(const DehnMove& move, const EdgePath& beta, const Reduction& red, const EdgePath& aligned) {
  const int n = static_cast<int>(aligned.size());
  EdgePath rest;
  for (int k = red.length; k < n; ++k) rest.push_back(aligned[static_cast<std::size_t>(mod(red.start + k, n))]);
  EdgePath out = move.inverted ? rest : inverse(rest);
  const int len = static_cast<int>(beta.size());
  for (int k = move.length; k < len; ++k) out.push_back(beta[static_cast<std::size_t>((move.at + k) % len)]);
  return out;
}

EdgePath tighten_path(const EdgePath& beta, int position) {
  const std::size_t n = beta.size();
  const std::size_t i = static_cast<std::size_t>(position);
  if (beta[(i + 1) % n] != beta[i].inverse()) throw std::logic_error("tame: tighten does not lift to the immersion");
  if (i + 1 < n) {
    EdgePath out = beta;
    out.erase(out.begin() + static_cast<std::ptrdiff_t>(i), out.begin() + static_cast<std::ptrdiff_t>(i) + 2);
    return out;
  }
  return EdgePath(beta.begin() + 1, beta.end() - 1);
}

}  // namespace

Word LoopBasis::rewrite(std::span<const EdgeStep> path) const {
  Word out;
  for (EdgeStep s : path) {
    if (tree_edge[static_cast<std::size_t>(s.edge)]) continue;
    auto it = std::find(generator_edges.begin(), generator_edges.end(), s.edge);
    if (it == generator_edges.end()) throw std::logic_error("rewrite: edge outside the based component");
    out.emplace_back(static_cast<int>(it - generator_edges.begin()), s.reversed);
  }
  return free_reduce(out);
}

EdgePath LoopBasis::loop(WordView basis_word) const {
  EdgePath out;
  for (Letter l : basis_word) {
    const EdgePath& g = loops.at(static_cast<std::size_t>(l.gen()));
    EdgePath piece = l.inverted() ? inverse(g) : g;
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return reduce_path(out);
}

LoopBasis loop_basis(const TwoComplex& y, int base) {
  LoopBasis b;
  b.tree_edge.assign(static_cast<std::size_t>(y.edge_count()), false);
  b.to_vertex.assign(static_cast<std::size_t>(y.vertex_count()), {});
  std::vector<std::vector<EdgeStep>> leaving(static_cast<std::size_t>(y.vertex_count()));
  for (int e = 0; e < y.edge_count(); ++e) {
    leaving[static_cast<std::size_t>(y.edge(e).source)].push_back({e, false});
    leaving[static_cast<std::size_t>(y.edge(e).target)].push_back({e, true});
  }
  for (auto& l : leaving) std::sort(l.begin(), l.end());
  std::vector<bool> seen(static_cast<std::size_t>(y.vertex_count()), false);
  std::queue<int> q;
  seen[static_cast<std::size_t>(base)] = true;
  q.push(base);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (EdgeStep s : leaving[static_cast<std::size_t>(u)]) {
      int v = y.step_target(s);
      if (seen[static_cast<std::size_t>(v)]) continue;
      seen[static_cast<std::size_t>(v)] = true;
      b.tree_edge[static_cast<std::size_t>(s.edge)] = true;
      b.to_vertex[static_cast<std::size_t>(v)] = b.to_vertex[static_cast<std::size_t>(u)];
      b.to_vertex[static_cast<std::size_t>(v)].push_back(s);
      q.push(v);
    }
  }
  for (int e = 0; e < y.edge_count(); ++e) {
    if (b.tree_edge[static_cast<std::size_t>(e)] || !seen[static_cast<std::size_t>(y.edge(e).source)]) continue;
    EdgePath loop = b.to_vertex[static_cast<std::size_t>(y.edge(e).source)];
    loop.push_back({e, false});
    EdgePath back = inverse(b.to_vertex[static_cast<std::size_t>(y.edge(e).target)]);
    loop.insert(loop.end(), back.begin(), back.end());
    b.generator_edges.push_back(e);
    b.loops.push_back(std::move(loop));
  }
  return b;
}

SubgroupState build_immersion_state(std::shared_ptr<const TwoComplex> x, const std::vector<Word>& words) {
  if (x->vertex_count() != 1) throw std::invalid_argument("build_immersion: target must have one vertex");
  SubgroupState st{CombinatorialMap(x), 0, {}};
  st.base = st.map.add_vertex(0, "base");
  for (std::size_t i = 0; i < words.size(); ++i) {
    const Word& w = words[i];
    if (w.empty()) throw std::invalid_argument("build_immersion: empty word");
    int at = st.base;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k].gen() >= x->edge_count()) throw std::invalid_argument("build_immersion: letter is not an edge of the target");
      const int next = k + 1 == w.size() ? st.base : st.map.add_vertex(0);
      st.map.add_edge(at, next, {w[k].gen(), w[k].inverted()});
      st.witnesses.push_back(k + 1 == w.size() ? Word{Letter(static_cast<int>(i), false)} : Word{});
      at = next;
    }
  }
  fold_state(st, {}, nullptr);
  return st;
}

CombinatorialMap build_immersion(std::shared_ptr<const TwoComplex> x, const std::vector<Word>& words) {
  return build_immersion_state(std::move(x), words).map;
}

bool trace_lifts(const Presentation& p, const CombinatorialMap& phi, const EdgePath& loop, const DehnResult& solution) {
  EdgePath beta = loop;
  for (const DehnMove& move : solution.trace) {
    if (move.kind == DehnMove::Kind::tighten) {
      beta = tighten_path(beta, move.position);
      continue;
    }
    const int n = static_cast<int>(p.relators.at(static_cast<std::size_t>(move.relator)).size());
    Reduction red = seed_for(move, beta, n);
    auto aligned = fitting_boundary(phi, red);
    if (!aligned) return false;
    beta = replace_segment(move, beta, red, *aligned);
  }
  return true;
}

std::optional<KernelLoop> find_kernel_loop(const Presentation& p, const SubgroupState& state, int bound) {
  const LoopBasis basis = loop_basis(state.map.source(), state.base);
  const int letters = 2 * static_cast<int>(basis.generator_edges.size());
  if (letters == 0) return std::nullopt;
  Word word;
  std::optional<KernelLoop> found;
  auto visit = [&](auto&& self, int remaining) -> void {
    if (found) return;
    if (remaining == 0) {
      EdgePath loop = basis.loop(word);
      Word image = image_word(state.map, loop);
      DehnResult sol = dehn_solve(p, image);
      if (sol.verdict == DehnVerdict::trivial && !trace_lifts(p, state.map, loop, sol))
        found = KernelLoop{word, std::move(loop), std::move(image), std::move(sol)};
      return;
    }
    for (int code = 0; code < letters && !found; ++code) {
      Letter l = Letter::from_code(static_cast<std::uint32_t>(code));
      if (!word.empty() && word.back() == l.inverse()) continue;
      word.push_back(l);
      self(self, remaining - 1);
      word.pop_back();
    }
  };
  for (int len = 1; len <= bound && !found; ++len) visit(visit, len);
  return found;
}

TameReport tame(const Presentation& p, const WeightFunction& w, SubgroupState& state, const KernelLoop& kernel) {
  TameReport report;
  report.before = missing_weight(state.map, w);
  EdgePath beta = kernel.loop;
  Word alpha = kernel.image;
  for (const DehnMove& move : kernel.solution.trace) {
    if (move.kind == DehnMove::Kind::tighten) {
      beta = tighten_path(beta, move.position);
    } else {
      const int n = static_cast<int>(p.relators.at(static_cast<std::size_t>(move.relator)).size());
      Reduction red = seed_for(move, beta, n);
      auto aligned = fitting_boundary(state.map, red);
      if (!aligned) {
        auto seeded = find_reduction(state.map, red.face, red);
        if (!seeded) throw std::logic_error("tame: no reduction contains the unlifted segment");
        const Reduction maximal = extend_to_maximal(state.map, *seeded);
        const ReductionOutcome out = apply_reduction(state.map, maximal, w);
        report.reduction_deltas.push_back(out.delta());
        if (!out.lemma_holds) ++report.lemma_violations;

        // witnesses
        const TwoComplex& y = state.map.source();
        const Word w_rho = path_word(state.witnesses, maximal.path);
        const int first = y.step_source(maximal.path.front());
        const int last = y.step_target(maximal.path.back());
        if (out.kind == ReductionKind::complete) {
          ++report.complete_reductions;
          if (out.endpoints_identified) {
            const int chosen = last != state.base ? last : first;
            gauge(
                y, state.witnesses, [&](int v) { return v == chosen; }, [](int) { return true; },
                chosen == last ? w_rho : inverse(w_rho));
          }
        } else {
          ++report.incomplete_reductions;
          state.witnesses.resize(static_cast<std::size_t>(out.map.source().edge_count()));
          state.witnesses[static_cast<std::size_t>(out.complement_path.back().edge)] = inverse(w_rho);
        }
        state.witnesses.resize(static_cast<std::size_t>(out.map.source().edge_count()));
        state.base = out.vertex_remap[static_cast<std::size_t>(state.base)];
        state.map = out.map;

        fold_state(state, {&beta, &red.path}, &report);
        aligned = fitting_boundary(state.map, red);
        if (!aligned) throw std::logic_error("tame: applied reduction does not cover the segment");
      }
      beta = replace_segment(move, beta, red, *aligned);
    }
    alpha = apply_move(p, alpha, move);
    if (image_word(state.map, beta) != alpha) throw std::logic_error("tame: lifted loop diverged from the trace");
  }
  if (!beta.empty()) throw std::logic_error("tame: trace did not end at the constant loop");
  report.after = missing_weight(state.map, w);
  return report;
}

std::string status_name(SubgroupPresentation::Status s) {
  return s == SubgroupPresentation::Status::stable_at_bound ? "stable-at-bound" : "iteration-capped";
}

Presentation SubgroupPresentation::as_presentation() const {
  Presentation out;
  out.generators = generators;
  out.relators = relators;
  return out;
}

SubgroupPresentation present_subgroup(const Presentation& p, const Certificate& cert, const std::vector<Word>& words,
                                      const SubgroupOptions& options) {
  std::string why;
  if (!verify_certificate(p, cert, &why)) throw InputError("certificate does not verify: " + why);
  if (!cert.coherent) throw InputError("certificate verdict is not coherent");
  if (cert.cls != PresentationClass::dehn) throw InputError("the subgroup loop needs a Dehn-class certificate");
  if (options.bound < 0) throw InputError("bound must be nonnegative");
  if (options.max_iterations < 0) throw InputError("iteration cap must be nonnegative");

  std::vector<Word> inputs;
  for (const Word& w : words) {
    Word r = free_reduce(w);
    if (r.empty()) throw InputError("generator word reduces to the empty word");
    inputs.push_back(std::move(r));
  }

  auto x = std::make_shared<const TwoComplex>(presentation_complex(p));
  const WeightFunction weights = cert.weight_function();
  SubgroupState state = build_immersion_state(x, inputs);

  SubgroupPresentation out;
  out.bound = options.bound;
  out.initial_missing_weight = missing_weight(state.map, weights);
  out.trajectory.push_back(out.initial_missing_weight);
  for (;;) {
    auto kernel = find_kernel_loop(p, state, options.bound);
    if (!kernel) {
      out.status = SubgroupPresentation::Status::stable_at_bound;
      break;
    }
    if (static_cast<int>(out.iterations.size()) >= options.max_iterations) {
      out.status = SubgroupPresentation::Status::iteration_capped;
      break;
    }
    IterationRecord rec;
    rec.kernel_word = kernel->basis_word;
    rec.trace_length = static_cast<int>(kernel->solution.trace.size());
    rec.report = tame(p, weights, state, *kernel);
    out.trajectory.push_back(rec.report.after);
    out.iterations.push_back(std::move(rec));
  }
  out.final_missing_weight = out.trajectory.back();

  const TwoComplex& y = state.map.source();
  const LoopBasis basis = loop_basis(y, state.base);
  for (std::size_t j = 0; j < basis.generator_edges.size(); ++j) {
    out.generators.push_back("t" + std::to_string(j + 1));
    out.generator_images.push_back(image_word(state.map, basis.loops[j]));
    out.witnesses.push_back(path_word(state.witnesses, basis.loops[j]));
  }
  std::set<Word> seen;
  for (int g = 0; g < y.face_count(); ++g) {
    Word r = cyclic_reduce(basis.rewrite(y.face(g).boundary)).word;
    if (r.empty()) continue;
    Word key = std::min(least_rotation(r), least_rotation(inverse(r)));
    if (seen.insert(key).second) out.relators.push_back(key);
  }

  // input words traced from the basepoint
  std::vector<std::map<EdgeStep, EdgeStep>> leaving(static_cast<std::size_t>(y.vertex_count()));
  for (int e = 0; e < y.edge_count(); ++e) {
    leaving[static_cast<std::size_t>(y.edge(e).source)][state.map.image(EdgeStep{e, false})] = {e, false};
    leaving[static_cast<std::size_t>(y.edge(e).target)][state.map.image(EdgeStep{e, true})] = {e, true};
  }
  for (const Word& w : inputs) {
    EdgePath path;
    int at = state.base;
    for (Letter l : w) {
      auto& out_steps = leaving[static_cast<std::size_t>(at)];
      auto it = out_steps.find(EdgeStep{l.gen(), l.inverted()});
      if (it == out_steps.end()) throw std::logic_error("present_subgroup: input word no longer reads in Y");
      path.push_back(it->second);
      at = y.step_target(it->second);
    }
    if (at != state.base) throw std::logic_error("present_subgroup: input word is not a loop in Y");
    out.inputs_in_basis.push_back(basis.rewrite(path));
  }
  return out;
}

std::string subgroup_log_json(const SubgroupPresentation& result, const Presentation& p) {
  using nlohmann::json;
  const Presentation sub = result.as_presentation();
  Presentation inputs;
  const std::size_t k = result.inputs_in_basis.size();
  for (std::size_t i = 0; i < k; ++i) inputs.generators.push_back("g" + std::to_string(i + 1));

  json j;
  j["status"] = status_name(result.status);
  j["bound"] = result.bound;
  j["initial_missing_weight"] = result.initial_missing_weight;
  j["final_missing_weight"] = result.final_missing_weight;
  j["trajectory"] = result.trajectory;
  json iters = json::array();
  for (const auto& it : result.iterations) {
    Presentation basis_names;
    int top = 0;
    for (Letter l : it.kernel_word) top = std::max(top, l.gen() + 1);
    for (int g = 0; g < top; ++g) basis_names.generators.push_back("t" + std::to_string(g + 1));
    iters.push_back({{"kernel_word", basis_names.format_word(it.kernel_word)},
                     {"trace_length", it.trace_length},
                     {"before", it.report.before},
                     {"after", it.report.after},
                     {"complete_reductions", it.report.complete_reductions},
                     {"incomplete_reductions", it.report.incomplete_reductions},
                     {"folds", it.report.folds},
                     {"lemma_violations", it.report.lemma_violations}});
  }
  j["iterations"] = iters;
  j["generators"] = result.generators;
  json rels = json::array();
  for (const auto& r : result.relators) rels.push_back(sub.format_word(r));
  j["relators"] = rels;
  json images = json::object(), witnesses = json::object();
  for (std::size_t g = 0; g < result.generators.size(); ++g) {
    images[result.generators[g]] = p.format_word(result.generator_images[g]);
    witnesses[result.generators[g]] = inputs.format_word(result.witnesses[g]);
  }
  j["generator_images"] = images;
  j["witnesses"] = witnesses;
  json in_basis = json::object();
  for (std::size_t i = 0; i < k; ++i) in_basis[inputs.generators[i]] = sub.format_word(result.inputs_in_basis[i]);
  j["inputs_in_basis"] = in_basis;
  return j.dump(2) + "\n";
}

}  // namespace coherence
