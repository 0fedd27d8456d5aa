#include <gtest/gtest.h>

#include <random>

#include "alfred/error.hpp"
#include "alfred/fixtures.hpp"
#include "alfred/synthesizer.hpp"
#include "alfred/textfmt.hpp"
#include "alfred/weaver.hpp"
#include "model_generator.hpp"
#include "oracle.hpp"

namespace alfred {
namespace {

TEST(WeaveTest, ExampleDependentGainsProviderFailureModes) {
  WovenModel woven = weave(load_fixture("example_fig2"));
  const ComponentFaultTree& f1 = *woven.model.component("f1").cft;
  const OutputFailureMode* out = f1.find_output_fm("p3.loss-of");
  ASSERT_NE(out, nullptr);
  const Gate* top = f1.find_gate(out->driver);
  ASSERT_NE(top, nullptr);
  EXPECT_EQ(top->kind, GateKind::Or);
  ASSERT_EQ(top->inputs.size(), 3u);
  EXPECT_EQ(top->inputs[0], "both-lost");

  const ImportedFailureMode* cpu = f1.find_import(top->inputs[1]);
  const ImportedFailureMode* ram = f1.find_import(top->inputs[2]);
  ASSERT_TRUE(cpu && ram);
  EXPECT_EQ(cpu->provider, "CPU");
  EXPECT_EQ(cpu->failure_mode, "loss-of");
  EXPECT_EQ(ram->provider, "RAM");
  EXPECT_EQ(ram->failure_mode, "p5.loss-of");

  EXPECT_EQ(woven.provenance,
            (std::vector<Injection>{
                {"f1", "CPU_loss-of", "CPU", "loss-of",
                 Injection::Kind::FailureMode},
                {"f1", "RAM_loss-of", "RAM", "p5.loss-of",
                 Injection::Kind::FailureMode},
                {"f2", "RAM_loss-of", "RAM", "p5.loss-of",
                 Injection::Kind::FailureMode}}));
}

TEST(WeaveTest, ComponentsWithoutDependenciesAreCopiedUnchanged) {
  ArchitectureModel original = load_fixture("example_fig2");
  WovenModel woven = weave(original);
  for (const char* name : {"CPU", "RAM"}) {
    EXPECT_EQ(woven.model.component(name), original.component(name));
  }
}

TEST(WeaveTest, InputModelIsNotModified) {
  ArchitectureModel original = load_fixture("vehicle");
  const ArchitectureModel copy = original;
  WovenModel a = weave(original);
  EXPECT_EQ(original, copy);
  WovenModel b = weave(original);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(a.provenance, b.provenance);
}

TEST(WeaveTest, PortlessProviderContributesItsBasicEvents) {
  WovenModel woven = weave(load_fixture("vehicle"));
  const ComponentFaultTree& ebc = *woven.model.component("EBC").cft;
  const BasicEvent* hw = ebc.find_event("HW-defect_PartCount");
  const BasicEvent* power = ebc.find_event("Loss-of-power");
  ASSERT_TRUE(hw && power);
  EXPECT_EQ(hw->identity, "M.HW-defect_PartCount");
  EXPECT_EQ(power->identity, "M.Loss-of-power");

  const ComponentFaultTree& u1 = *woven.model.component("U1").cft;
  ASSERT_NE(u1.find_event("Battery-omission"), nullptr);
  EXPECT_EQ(u1.find_event("Battery-omission")->identity, "B.Battery-omission");

  // One disjunct per (dependent, provider), shared by all output modes.
  const Gate* supplement = u1.find_gate("alfred-B");
  ASSERT_NE(supplement, nullptr);
  for (const OutputFailureMode& fm : u1.output_fms) {
    const Gate* g = u1.find_gate(fm.driver);
    ASSERT_NE(g, nullptr);
    EXPECT_EQ(g->inputs.back(), "alfred-B");
  }
  EXPECT_TRUE(validate(woven.model).ok());
}

TEST(WeaveTest, ProviderWithoutFailureBehaviorIsAnError) {
  ArchitectureModel m = textfmt::parse(
      "layer sw\nlayer hw\n"
      "component app layer sw\n  event e\n  outfm f = e\nend\n"
      "component psu layer hw\nend\n"
      "alfred app -> psu\n");
  EXPECT_THROW(
      {
        try {
          weave(m);
        } catch (const WeaveError& e) {
          EXPECT_NE(std::string(e.what()).find(
                        "dependency provider has empty failure behavior"),
                    std::string::npos);
          throw;
        }
      },
      WeaveError);
}

TEST(WeaveTest, RejectsInvalidModels) {
  ArchitectureModel m = load_fixture("example_fig2");
  m.dependencies.push_back({"RAM", "f2"});
  m.dependencies.push_back({"f2", "f2"});
  EXPECT_THROW(weave(m), ModelError);
}

TEST(WeaveTest, InjectedNamesAvoidCollisions) {
  ArchitectureModel m = textfmt::parse(
      "layer sw\nlayer hw\n"
      "component app layer sw\n  event Battery\n  gate alfred-psu or Battery\n"
      "  outfm f = alfred-psu\nend\n"
      "component psu layer hw\n  event Battery\n  event Fuse\nend\n"
      "alfred app -> psu\n");
  WovenModel woven = weave(m);
  const ComponentFaultTree& app = *woven.model.component("app").cft;
  ASSERT_NE(app.find_event("psu_Battery"), nullptr);
  EXPECT_EQ(app.find_event("psu_Battery")->identity, "psu.Battery");
  EXPECT_EQ(app.find_event("Fuse")->identity, "psu.Fuse");
  EXPECT_NE(app.find_gate("alfred-psu_2"), nullptr);
  EXPECT_TRUE(validate(woven.model).ok());
}

TEST(WeaveTest, TransitiveChainsFlowThroughImports) {
  // app -> os -> cpu: os is woven first, so app's import of os carries cpu.
  ArchitectureModel m = textfmt::parse(
      "layer a\nlayer b\nlayer c\n"
      "component app layer a\n  event bug\n  outfm fail = bug\nend\n"
      "component os layer b\n  event panic\n  outfm fail = panic\nend\n"
      "component cpu layer c\n  event burn\nend\n"
      "alfred app -> os\nalfred os -> cpu\n");
  FaultTree tree = synthesize(weave(m), TopEventRef::parse("app.fail"));
  EXPECT_EQ(tree.identities(),
            (std::set<std::string>{"app.bug", "cpu.burn", "os.panic"}));
}

TEST(WeaveTest, ProvenanceSidecar) {
  EXPECT_EQ(provenance_tsv(weave(load_fixture("example_fig2"))),
            "injected-node\tprovider\tdependent\n"
            "f1.CPU_loss-of\tCPU.loss-of\tf1\n"
            "f1.RAM_loss-of\tRAM.p5.loss-of\tf1\n"
            "f2.RAM_loss-of\tRAM.p5.loss-of\tf2\n");
}

TEST(WeaveTest, ConservativeOnGeneratedModels) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 150; ++round) {
    ArchitectureModel m = testing::generate_model(rng);
    ArchitectureModel woven = weave(m).model;
    for (const TopEventRef& top : testing::all_output_failure_modes(m)) {
      auto vars = oracle::network_variables(woven, top);
      EXPECT_TRUE(oracle::implies(oracle::table_of_network(m, top, {}, vars),
                                  oracle::table_of_network(woven, top, {}, vars)))
          << top.str() << "\n" << textfmt::serialize(m);
    }
  }
}

TEST(WeaveTest, ReweavingIsTruthStable) {
  std::mt19937_64 rng(22);
  for (int round = 0; round < 100; ++round) {
    ArchitectureModel m = testing::generate_model(rng);
    ArchitectureModel once = weave(m).model;
    ArchitectureModel twice = weave(once).model;
    for (const TopEventRef& top : testing::all_output_failure_modes(m)) {
      auto vars = oracle::network_variables(once, top);
      EXPECT_TRUE(
          oracle::equivalent(oracle::table_of_network(once, top, {}, vars),
                             oracle::table_of_network(twice, top, {}, vars)))
          << top.str();
    }
  }
}

}  // namespace
}  // namespace alfred
