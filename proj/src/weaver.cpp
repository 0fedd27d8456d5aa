#include "alfred/weaver.hpp"

#include <algorithm>
#include <sstream>

#include "alfred/error.hpp"

namespace alfred {

namespace {

/// Providers before dependents; ties broken by declaration order.
std::vector<std::string> weaving_order(const ArchitectureModel& model) {
  std::vector<std::string> order;
  std::vector<bool> placed(model.components.size(), false);
  auto ready = [&](const Component& c) {
    for (const std::string& p : dependency_closure(model, c.name)) {
      if (std::find(order.begin(), order.end(), p) == order.end()) {
        return false;
      }
    }
    return true;
  };
  while (order.size() < model.components.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < model.components.size(); ++i) {
      if (placed[i] || !ready(model.components[i])) continue;
      placed[i] = true;
      order.push_back(model.components[i].name);
      progressed = true;
      break;
    }
    if (!progressed) throw ModelError("dependency cycle");
  }
  return order;
}

std::string fresh_name(const ComponentFaultTree& cft,
                       std::initializer_list<std::string> candidates) {
  for (const std::string& name : candidates) {
    if (!cft.has_node(name)) return name;
  }
  const std::string& base = *(candidates.end() - 1);
  for (int n = 2;; ++n) {
    std::string name = base + "_" + std::to_string(n);
    if (!cft.has_node(name)) return name;
  }
}

}  // namespace

WovenModel weave(const ArchitectureModel& model) {
  require_valid(model);
  WovenModel woven{model, {}};
  for (const std::string& name : weaving_order(model)) {
    const std::vector<std::string> providers = dependency_closure(model, name);
    if (providers.empty()) continue;
    Component& dependent = *std::find_if(
        woven.model.components.begin(), woven.model.components.end(),
        [&](const Component& c) { return c.name == name; });
    if (!dependent.cft || dependent.cft->output_fms.empty()) continue;
    ComponentFaultTree& cft = *dependent.cft;

    std::vector<std::string> disjuncts;
    for (const std::string& provider_name : providers) {
      const Component& provider = model.component(provider_name);
      std::vector<std::string> contributions;
      if (provider.cft && !provider.cft->output_fms.empty()) {
        for (const OutputFailureMode& fm : provider.cft->output_fms) {
          std::string node =
              fresh_name(cft, {provider_name + "_" + fm.name});
          cft.imports.push_back({node, provider_name, fm.ref()});
          woven.provenance.push_back({name, node, provider_name, fm.ref(),
                                      Injection::Kind::FailureMode});
          contributions.push_back(std::move(node));
        }
      } else if (provider.cft && !provider.cft->events.empty()) {
        for (const BasicEvent& e : provider.cft->events) {
          std::string node =
              fresh_name(cft, {e.name, provider_name + "_" + e.name});
          cft.events.push_back({node, e.identity});
          woven.provenance.push_back({name, node, provider_name, e.name,
                                      Injection::Kind::BasicEvent});
          contributions.push_back(std::move(node));
        }
      } else {
        throw WeaveError("dependency provider has empty failure behavior: " +
                         name + " -> " + provider_name);
      }
      if (contributions.size() == 1) {
        disjuncts.push_back(contributions.front());
      } else {
        std::string gate = fresh_name(cft, {"alfred-" + provider_name});
        cft.gates.push_back({gate, GateKind::Or, std::move(contributions)});
        disjuncts.push_back(std::move(gate));
      }
    }

    for (OutputFailureMode& fm : cft.output_fms) {
      std::string gate = fresh_name(
          cft, {"woven-" + (fm.port ? *fm.port + "_" : "") + fm.name});
      Gate woven_gate{gate, GateKind::Or, {fm.driver}};
      woven_gate.inputs.insert(woven_gate.inputs.end(), disjuncts.begin(),
                               disjuncts.end());
      cft.gates.push_back(std::move(woven_gate));
      fm.driver = std::move(gate);
    }
  }
  return woven;
}

std::string provenance_tsv(const WovenModel& woven) {
  std::ostringstream out;
  out << "injected-node\tprovider\tdependent\n";
  for (const Injection& i : woven.provenance) {
    out << qualified(i.dependent, i.node) << '\t'
        << qualified(i.provider, i.provider_element) << '\t' << i.dependent
        << '\n';
  }
  return out.str();
}

}  // namespace alfred
