#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>
#include <set>

#include "alfred/error.hpp"
#include "alfred/fixtures.hpp"
#include "alfred/model.hpp"
#include "alfred/textfmt.hpp"
#include "model_generator.hpp"

namespace alfred {
namespace {

std::vector<std::string> codes(const ValidationReport& report,
                               Severity severity) {
  std::vector<std::string> out;
  for (const Finding& f : report.findings) {
    if (f.severity == severity) out.push_back(f.code + ":" + f.element);
  }
  return out;
}

bool has_error(const ValidationReport& report, const std::string& code) {
  for (const Finding& f : report.findings) {
    if (f.severity == Severity::Error && f.code == code) return true;
  }
  return false;
}

const char* kTwoComponents = R"(
layer sw
component x layer sw
  out o
  event e
  outfm o.loss = e
end
component y layer sw
  in i
  infm i.loss
  outfm loss = i.loss
end
connect x.o -> y.i
)";

TEST(ValidateTest, ExampleHasNoErrorsAndWarnsAboutUnconnectedSensors) {
  ValidationReport report = validate(load_fixture("example_fig2"));
  EXPECT_EQ(report.error_count(), 0u);
  EXPECT_EQ(codes(report, Severity::Warning),
            (std::vector<std::string>{"unconnected-in-port:f1.p1",
                                      "unconnected-in-port:f1.p2"}));
}

TEST(ValidateTest, EmptyModel) {
  ValidationReport report = validate(ArchitectureModel{});
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.findings.front().code, "empty-model");
  EXPECT_EQ(report.findings.front().message, "no layers/components");
}

TEST(ValidateTest, DependencyCycle) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.dependencies = {{"x", "y"}, {"y", "x"}};
  EXPECT_TRUE(has_error(validate(m), "dependency-cycle"));
}

TEST(ValidateTest, SelfAndDuplicateDependency) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.dependencies = {{"x", "x"}};
  EXPECT_TRUE(has_error(validate(m), "self-dependency"));
  m.dependencies = {{"y", "x"}, {"y", "x"}};
  EXPECT_TRUE(has_error(validate(m), "duplicate-dependency"));
}

TEST(ValidateTest, ProviderWithoutCftIsAWarning) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.components[0].cft.reset();
  m.components[0].out_ports.clear();
  m.connections.clear();
  m.dependencies = {{"y", "x"}};
  ValidationReport report = validate(m);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(codes(report, Severity::Warning),
            (std::vector<std::string>{"provider-without-cft:y->x",
                                      "unconnected-in-port:y.i"}));
}

TEST(ValidateTest, ConnectionInvariants) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.connections.push_back({{"x", "o"}, {"y", "i"}});
  EXPECT_TRUE(has_error(validate(m), "multiple-incoming"));

  m = textfmt::parse(kTwoComponents);
  m.connections = {{{"y", "i"}, {"x", "o"}}};
  EXPECT_TRUE(has_error(validate(m), "bad-endpoint"));

  m = textfmt::parse(kTwoComponents);
  m.components[0].in_ports.push_back("back");
  m.connections.push_back({{"x", "o"}, {"x", "back"}});
  EXPECT_TRUE(has_error(validate(m), "self-connection"));
}

TEST(ValidateTest, PortsMustBeDisjoint) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.components[0].in_ports.push_back("o");
  EXPECT_TRUE(has_error(validate(m), "duplicate-port"));
}

TEST(ValidateTest, CftStructure) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  ComponentFaultTree& cft = *m.components[0].cft;
  cft.gates.push_back({"a", GateKind::Or, {"b"}});
  cft.gates.push_back({"b", GateKind::And, {"a", "e"}});
  EXPECT_TRUE(has_error(validate(m), "cft-cycle"));

  m = textfmt::parse(kTwoComponents);
  m.components[0].cft->gates.push_back({"n", GateKind::Not, {"e", "e"}});
  EXPECT_TRUE(has_error(validate(m), "gate-arity"));

  m = textfmt::parse(kTwoComponents);
  m.components[0].cft->gates.push_back({"n", GateKind::Or, {}});
  EXPECT_TRUE(has_error(validate(m), "gate-arity"));

  m = textfmt::parse(kTwoComponents);
  m.components[0].cft->output_fms[0].driver.clear();
  EXPECT_TRUE(has_error(validate(m), "missing-driver"));

  m = textfmt::parse(kTwoComponents);
  m.components[0].cft->output_fms[0].driver = "nowhere";
  EXPECT_TRUE(has_error(validate(m), "unresolved-reference"));

  m = textfmt::parse(kTwoComponents);
  m.components[0].cft->events.push_back({"e", "x.e"});
  EXPECT_TRUE(has_error(validate(m), "duplicate-node"));

  m = textfmt::parse(kTwoComponents);
  m.components[1].cft->input_fms.push_back({"loss", "nope"});
  EXPECT_TRUE(has_error(validate(m), "unknown-port"));

  m = textfmt::parse(kTwoComponents);
  m.components[0].cft = ComponentFaultTree{};
  EXPECT_TRUE(has_error(validate(m), "empty-cft"));
}

TEST(ValidateTest, IdentitiesMustNameRootEvents) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.components[1].cft->events.push_back({"f", "x.missing"});
  EXPECT_TRUE(has_error(validate(m), "unknown-identity"));

  m = textfmt::parse(kTwoComponents);
  m.components[1].cft->events.push_back({"f", "x.e"});
  m.components[1].cft->events.push_back({"g", "y.f"});
  EXPECT_TRUE(has_error(validate(m), "identity-chain"));
}

TEST(ValidateTest, UnmatchedFailureModeIsAWarning) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.components[1].cft->input_fms[0].name = "value";
  m.components[1].cft->output_fms[0].driver = "i.value";
  ValidationReport report = validate(m);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(codes(report, Severity::Warning),
            (std::vector<std::string>{"unmatched-failure-mode:y.i.value"}));
}

TEST(ValidateTest, Deterministic) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.dependencies = {{"x", "x"}, {"y", "z"}};
  m.connections.push_back({{"x", "o"}, {"y", "i"}});
  EXPECT_EQ(validate(m).findings, validate(m).findings);
}

TEST(ValidateTest, GeneratedModelsSatisfyGraphInvariants) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    ArchitectureModel m = testing::generate_model(rng);
    ASSERT_TRUE(validate(m).ok());
    std::map<Endpoint, int> incoming;
    for (const PortConnection& pc : m.connections) ++incoming[pc.to];
    for (const auto& [port, count] : incoming) EXPECT_LE(count, 1);

    // Independent cycle search over the dependency graph.
    std::map<std::string, std::vector<std::string>> edges;
    for (const AlfredDependency& d : m.dependencies) {
      edges[d.dependent].push_back(d.provider);
    }
    std::set<std::string> done;
    std::function<bool(const std::string&, std::set<std::string>&)> acyclic =
        [&](const std::string& n, std::set<std::string>& path) {
          if (path.count(n)) return false;
          if (done.count(n)) return true;
          path.insert(n);
          for (const std::string& next : edges[n]) {
            if (!acyclic(next, path)) return false;
          }
          path.erase(n);
          done.insert(n);
          return true;
        };
    for (const Component& c : m.components) {
      std::set<std::string> path;
      EXPECT_TRUE(acyclic(c.name, path));
    }
  }
}

TEST(DependencyClosureTest, DirectProvidersInDeclarationOrder) {
  ArchitectureModel example = load_fixture("example_fig2");
  EXPECT_EQ(dependency_closure(example, "f1"),
            (std::vector<std::string>{"CPU", "RAM"}));
  EXPECT_EQ(dependency_closure(example, "f2"), (std::vector<std::string>{"RAM"}));
  EXPECT_TRUE(dependency_closure(example, "RAM").empty());
  EXPECT_TRUE(dependency_closure(example, "CPU").empty());
  EXPECT_EQ(dependency_closure(load_fixture("vehicle"), "EBC"),
            (std::vector<std::string>{"M"}));
}

TEST(DependencyClosureTest, NotTransitive) {
  ArchitectureModel m = textfmt::parse(kTwoComponents);
  m.components.push_back({"z", "sw", {}, {}, ComponentFaultTree{{{"e", "z.e"}},
                                                                {}, {}, {}, {}}});
  m.dependencies = {{"y", "x"}, {"z", "y"}};
  EXPECT_EQ(dependency_closure(m, "z"), (std::vector<std::string>{"y"}));
}

TEST(DependencyClosureTest, UnknownComponentThrows) {
  EXPECT_THROW(dependency_closure(load_fixture("example_fig2"), "GPU"),
               ModelError);
}

TEST(TopEventRefTest, ParsesPortedAndPortless) {
  TopEventRef a = TopEventRef::parse("f2.loss-of");
  EXPECT_EQ(a.component, "f2");
  EXPECT_EQ(a.failure_mode, "loss-of");
  TopEventRef b = TopEventRef::parse("f1.p3.loss-of");
  EXPECT_EQ(b.component, "f1");
  EXPECT_EQ(b.failure_mode, "p3.loss-of");
  EXPECT_EQ(b.str(), "f1.p3.loss-of");
  EXPECT_THROW(TopEventRef::parse("f2"), ModelError);
  EXPECT_THROW(TopEventRef::parse("a.b.c.d"), ModelError);
  EXPECT_THROW(TopEventRef::parse(".x"), ModelError);
}

TEST(IdentifierTest, Charset) {
  EXPECT_TRUE(is_identifier("False-negative"));
  EXPECT_TRUE(is_identifier("HW-defect_PartCount"));
  EXPECT_FALSE(is_identifier(""));
  EXPECT_FALSE(is_identifier("U1.x"));
  EXPECT_FALSE(is_identifier("a b"));
}

}  // namespace
}  // namespace alfred
