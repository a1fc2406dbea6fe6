#include "lore/graph.hpp"

#include <algorithm>
#include <sstream>

namespace lore {

namespace {

// Syntactic reactive reads of a term (bare names were rewritten to
// ReactiveRead by the checker; unchecked terms still carry Vars, so both are
// matched against the declared names).
void scan_reads(const CheckedProgram& cp, const Term* t, std::set<std::string>& out) {
  if (!t) return;
  switch (t->k) {
    case Term::K::ReactiveRead:
      out.insert(t->name);
      return;
    case Term::K::Var:
      if (cp.sourceIndex.count(t->name) || cp.derivedIndex.count(t->name))
        out.insert(t->name);
      return;
    default:
      scan_reads(cp, t->a.get(), out);
      scan_reads(cp, t->b.get(), out);
      for (const auto& x : t->args) scan_reads(cp, x.get(), out);
      return;
  }
}

}  // namespace

DataflowGraph build_graph(const CheckedProgram& cp) {
  DataflowGraph g;
  for (const auto& s : cp.program.sources) g.nodes.push_back(s.name);
  for (const auto& d : cp.program.deriveds) g.nodes.push_back(d.name);
  for (const auto& d : cp.program.deriveds) {
    std::set<std::string> reads;
    scan_reads(cp, d.body.get(), reads);
    for (const auto& r : reads) g.edges[r].insert(d.name);
  }
  for (const auto& inv : cp.program.invariants) {
    std::set<std::string> reads;
    scan_reads(cp, inv.formula.get(), reads);
    if (reads.empty()) g.constantInvariants.push_back(inv.id);
    g.invariantReads[inv.id] = std::move(reads);
  }
  for (const auto& i : cp.program.interactions) {
    if (!i.complete()) continue;
    g.interactionWrites[i.name] =
        std::set<std::string>(i.modifies.begin(), i.modifies.end());
  }
  return g;
}

std::set<std::string> reaches(const DataflowGraph& g, const CheckedProgram& cp,
                              const std::string& interaction) {
  std::set<std::string> out;
  const InteractionDecl* d = cp.program.find_interaction(interaction);
  if (!d) return out;
  std::vector<std::string> work(d->modifies.begin(), d->modifies.end());
  while (!work.empty()) {
    std::string n = work.back();
    work.pop_back();
    if (!out.insert(n).second) continue;
    auto it = g.edges.find(n);
    if (it != g.edges.end())
      for (const auto& succ : it->second) work.push_back(succ);
  }
  return out;
}

bool overlaps(const DataflowGraph& g, const CheckedProgram& cp,
              const std::string& interaction, int invariantId) {
  auto reach = reaches(g, cp, interaction);
  auto it = g.invariantReads.find(invariantId);
  if (it == g.invariantReads.end()) return false;
  for (const auto& r : it->second)
    if (reach.count(r)) return true;
  return false;
}

OverlapReport overlapping_pairs(const DataflowGraph& g, const CheckedProgram& cp) {
  OverlapReport rep;
  std::vector<std::string> names = cp.executable_names();
  for (const auto& n : names) {
    rep.reaches[n] = reaches(g, cp, n);
    std::set<int> ids;
    for (const auto& inv : cp.program.invariants) {
      const auto& reads = g.invariantReads.at(inv.id);
      for (const auto& r : reads) {
        if (rep.reaches[n].count(r)) {
          ids.insert(inv.id);
          break;
        }
      }
    }
    rep.invariantOverlaps[n] = std::move(ids);
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = i; j < names.size(); ++j) {
      const auto& a = rep.invariantOverlaps[names[i]];
      const auto& b = rep.invariantOverlaps[names[j]];
      bool shared = false;
      for (int id : a)
        if (b.count(id)) {
          shared = true;
          break;
        }
      if (shared) {
        auto p = std::minmax(names[i], names[j]);
        rep.interactionPairs.insert({p.first, p.second});
      }
    }
  }
  return rep;
}

std::string to_dot(const DataflowGraph& g, const CheckedProgram& cp) {
  std::ostringstream os;
  os << "digraph dataflow {\n  rankdir=TB;\n";
  for (const auto& s : cp.program.sources)
    os << "  \"" << s.name << "\" [shape=box,style=filled,fillcolor=lightblue];\n";
  for (const auto& d : cp.program.deriveds) os << "  \"" << d.name << "\" [shape=ellipse];\n";
  for (const auto& [from, tos] : g.edges)
    for (const auto& to : tos) os << "  \"" << from << "\" -> \"" << to << "\";\n";
  for (const auto& inv : cp.program.invariants) {
    std::string n = "invariant_" + std::to_string(inv.id);
    os << "  \"" << n << "\" [shape=note,style=dashed];\n";
    for (const auto& r : g.invariantReads.at(inv.id))
      os << "  \"" << r << "\" -> \"" << n << "\" [style=dotted];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace lore
