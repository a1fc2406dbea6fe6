#pragma once

// Dataflow graph construction and the overlap analysis that prunes
// confluence obligations to interaction pairs sharing an invariant.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lore/checker.hpp"

namespace lore {

struct DataflowGraph {
  std::vector<std::string> nodes;                      // sources then deriveds
  std::map<std::string, std::set<std::string>> edges;  // r → d iff d's body reads r
  std::map<int, std::set<std::string>> invariantReads;
  std::map<std::string, std::set<std::string>> interactionWrites;  // modifies lists
  std::vector<int> constantInvariants;  // invariants reading no reactive (warned)
};

struct OverlapReport {
  std::map<std::string, std::set<std::string>> reaches;
  std::map<std::string, std::set<int>> invariantOverlaps;
  std::set<std::pair<std::string, std::string>> interactionPairs;  // name-ordered pairs
};

DataflowGraph build_graph(const CheckedProgram& cp);

std::set<std::string> reaches(const DataflowGraph& g, const CheckedProgram& cp,
                              const std::string& interaction);

bool overlaps(const DataflowGraph& g, const CheckedProgram& cp,
              const std::string& interaction, int invariantId);

OverlapReport overlapping_pairs(const DataflowGraph& g, const CheckedProgram& cp);

std::string to_dot(const DataflowGraph& g, const CheckedProgram& cp);

}  // namespace lore
