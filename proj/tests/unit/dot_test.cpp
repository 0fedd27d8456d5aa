#include <gtest/gtest.h>

#include <regex>
#include <sstream>
#include <set>

#include "alfred/fixtures.hpp"
#include "alfred/synthesizer.hpp"
#include "alfred/textfmt.hpp"
#include "alfred/weaver.hpp"

namespace alfred {
namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

/// Minimal shape check for the digraph subset we emit.
void expect_well_formed(const std::string& dot) {
  ASSERT_EQ(dot.rfind("digraph ", 0), 0u);
  EXPECT_EQ(count(dot, "{"), count(dot, "}"));
  EXPECT_EQ(count(dot, "\"") % 2, 0u);
  EXPECT_EQ(dot.back(), '\n');
  EXPECT_EQ(dot.substr(dot.size() - 2), "}\n");
}

TEST(ModelDotTest, ExampleHasThreeDashedDependencyEdges) {
  std::string dot = textfmt::export_dot(load_fixture("example_fig2"));
  expect_well_formed(dot);
  EXPECT_EQ(count(dot, "style=dashed"), 3u);
  EXPECT_EQ(count(dot, "subgraph \"cluster_"), 4u);
  EXPECT_NE(dot.find("\"f1\" -> \"CPU\" [style=dashed]"), std::string::npos);
  EXPECT_NE(dot.find("label=\"AND\""), std::string::npos);
  EXPECT_NE(dot.find("label=\"a\""), std::string::npos);
}

TEST(ModelDotTest, SingleComponentHasOneCluster) {
  ArchitectureModel m = textfmt::parse(
      "layer sw\ncomponent solo layer sw\n  event e\n  outfm f = e\nend\n");
  std::string dot = textfmt::export_dot(m);
  expect_well_formed(dot);
  EXPECT_EQ(count(dot, "subgraph "), 1u);
  EXPECT_EQ(count(dot, "->"), 1u);
}

TEST(ModelDotTest, WovenImportsAreGreyAndOrderIsDeterministic) {
  ArchitectureModel woven = weave(load_fixture("example_fig2")).model;
  std::string dot = textfmt::export_dot(woven);
  expect_well_formed(dot);
  EXPECT_EQ(count(dot, "[color=grey]"), 3u);
  ArchitectureModel reordered = woven;
  std::swap(reordered.components.front(), reordered.components.back());
  EXPECT_EQ(textfmt::export_dot(reordered), dot);
}

TEST(TreeDotTest, SynthesizedTreeHasExactlyOneRoot) {
  FaultTree tree = synthesize(weave(load_fixture("example_fig2")),
                              TopEventRef::parse("f2.loss-of"));
  std::string dot = textfmt::export_dot(tree);
  expect_well_formed(dot);

  std::set<std::string> nodes, targets;
  std::regex node_re(R"(^  (n\d+) \[)"), edge_re(R"(^  n\d+ -> (n\d+);)");
  std::istringstream lines(dot);
  for (std::string line; std::getline(lines, line);) {
    std::smatch m;
    if (std::regex_search(line, m, edge_re)) {
      targets.insert(m[1]);
    } else if (std::regex_search(line, m, node_re)) {
      nodes.insert(m[1]);
    }
  }
  std::size_t roots = 0;
  for (const std::string& n : nodes) roots += targets.count(n) ? 0 : 1;
  EXPECT_EQ(roots, 1u);
  EXPECT_EQ(count(dot, "shape=triangle"), 2u);  // ext@p1, ext@p2
}

}  // namespace
}  // namespace alfred
