#include "alfred/synthesizer.hpp"

#include <map>
#include <set>
#include <utility>

#include "alfred/error.hpp"

namespace alfred {

namespace {

class Synthesizer {
 public:
  explicit Synthesizer(const ArchitectureModel& model) : model_(model) {}

  FaultTree run(const TopEventRef& top) {
    const Component& c = model_.component(top.component);
    const OutputFailureMode* fm =
        c.cft ? c.cft->find_output_fm(top.failure_mode) : nullptr;
    if (!fm) {
      throw ModelError("unknown top event '" + top.str() + "'");
    }
    tree_.top = top.str();
    tree_.root = resolve(c, fm->driver);
    return std::move(tree_);
  }

 private:
  std::size_t add(FaultTreeNode node) {
    tree_.nodes.push_back(std::move(node));
    return tree_.nodes.size() - 1;
  }

  std::size_t resolve(const Component& c, const std::string& ref) {
    auto key = std::make_pair(c.name, ref);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!active_.insert(key).second) {
      throw SynthesisError("propagation cycle through " +
                           qualified(c.name, ref));
    }
    std::size_t index = build(c, ref);
    active_.erase(key);
    memo_.emplace(std::move(key), index);
    return index;
  }

  std::size_t build(const Component& c, const std::string& ref) {
    const ComponentFaultTree& cft = *c.cft;
    if (const BasicEvent* e = cft.find_event(ref)) {
      FaultTreeNode leaf;
      leaf.kind = NodeKind::BasicEvent;
      leaf.identity = e->identity;
      leaf.label = qualified(c.name, e->name);
      leaf.owner = c.name;
      return add(std::move(leaf));
    }
    if (const Gate* g = cft.find_gate(ref)) {
      FaultTreeNode node;
      node.kind = g->kind == GateKind::And  ? NodeKind::And
                  : g->kind == GateKind::Or ? NodeKind::Or
                                            : NodeKind::Not;
      for (const std::string& in : g->inputs) {
        node.children.push_back(resolve(c, in));
      }
      return add(std::move(node));
    }
    if (const InputFailureMode* f = cft.find_input_fm(ref)) {
      const PortConnection* pc =
          f->port ? model_.incoming(c.name, *f->port) : nullptr;
      if (!pc) {
        FaultTreeNode leaf;
        leaf.kind = NodeKind::ExternalEvent;
        leaf.identity = "ext@" + qualified(c.name, f->ref());
        leaf.label = leaf.identity;
        leaf.owner = c.name;
        return add(std::move(leaf));
      }
      const Component& up = model_.component(pc->from.component);
      return resolve_output(up, qualified(pc->from.port, f->name),
                            qualified(c.name, f->ref()));
    }
    if (const ImportedFailureMode* i = cft.find_import(ref)) {
      return resolve_output(model_.component(i->provider), i->failure_mode,
                            qualified(c.name, i->name));
    }
    // Unreachable for a validated model.
    throw ModelError("unresolved reference " + qualified(c.name, ref));
  }

  std::size_t resolve_output(const Component& c, const std::string& fm_ref,
                             const std::string& consumer) {
    const OutputFailureMode* fm =
        c.cft ? c.cft->find_output_fm(fm_ref) : nullptr;
    if (!fm) {
      throw SynthesisError("unmatched failure mode: " + consumer +
                           " expects " + qualified(c.name, fm_ref));
    }
    return resolve(c, fm->driver);
  }

  const ArchitectureModel& model_;
  FaultTree tree_;
  std::map<std::pair<std::string, std::string>, std::size_t> memo_;
  std::set<std::pair<std::string, std::string>> active_;
};

}  // namespace

FaultTree synthesize(const ArchitectureModel& model, const TopEventRef& top) {
  require_valid(model);
  return Synthesizer(model).run(top);
}

FaultTree synthesize(const WovenModel& woven, const TopEventRef& top) {
  return synthesize(woven.model, top);
}

}  // namespace alfred
