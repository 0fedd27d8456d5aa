#include "alfred/model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "alfred/error.hpp"

namespace alfred {

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '-';
  });
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::And:
      return "and";
    case GateKind::Or:
      return "or";
    case GateKind::Not:
      return "not";
  }
  return "?";
}

std::string failure_mode_ref(const std::optional<std::string>& port,
                             const std::string& name) {
  return port ? *port + "." + name : name;
}

std::string qualified(std::string_view owner, std::string_view name) {
  std::string out(owner);
  out += '.';
  out += name;
  return out;
}

std::string InputFailureMode::ref() const {
  return failure_mode_ref(port, name);
}

std::string OutputFailureMode::ref() const {
  return failure_mode_ref(port, name);
}

namespace {

template <class T, class Key>
const T* find_by(const std::vector<T>& items, Key key, std::string_view want) {
  auto it = std::find_if(items.begin(), items.end(),
                         [&](const T& item) { return key(item) == want; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

bool ComponentFaultTree::empty() const {
  return events.empty() && gates.empty() && input_fms.empty() &&
         imports.empty() && output_fms.empty();
}

const BasicEvent* ComponentFaultTree::find_event(std::string_view name) const {
  return find_by(events, [](const BasicEvent& e) { return e.name; }, name);
}

const Gate* ComponentFaultTree::find_gate(std::string_view name) const {
  return find_by(gates, [](const Gate& g) { return g.name; }, name);
}

const InputFailureMode* ComponentFaultTree::find_input_fm(
    std::string_view ref) const {
  return find_by(input_fms, [](const InputFailureMode& f) { return f.ref(); },
                 ref);
}

const ImportedFailureMode* ComponentFaultTree::find_import(
    std::string_view name) const {
  return find_by(imports, [](const ImportedFailureMode& i) { return i.name; },
                 name);
}

const OutputFailureMode* ComponentFaultTree::find_output_fm(
    std::string_view ref) const {
  return find_by(output_fms,
                 [](const OutputFailureMode& f) { return f.ref(); }, ref);
}

bool ComponentFaultTree::has_node(std::string_view ref) const {
  return find_event(ref) || find_gate(ref) || find_input_fm(ref) ||
         find_import(ref);
}

bool Component::has_in_port(std::string_view port) const {
  return std::find(in_ports.begin(), in_ports.end(), port) != in_ports.end();
}

bool Component::has_out_port(std::string_view port) const {
  return std::find(out_ports.begin(), out_ports.end(), port) !=
         out_ports.end();
}

const Component* ArchitectureModel::find_component(
    std::string_view name) const {
  return find_by(components, [](const Component& c) { return c.name; }, name);
}

const Component& ArchitectureModel::component(std::string_view name) const {
  const Component* c = find_component(name);
  if (!c) throw ModelError("unknown component '" + std::string(name) + "'");
  return *c;
}

std::vector<const Component*> ArchitectureModel::components_in(
    std::string_view layer) const {
  std::vector<const Component*> out;
  for (const Component& c : components) {
    if (c.layer == layer) out.push_back(&c);
  }
  return out;
}

const PortConnection* ArchitectureModel::incoming(
    std::string_view component, std::string_view port) const {
  for (const PortConnection& pc : connections) {
    if (pc.to.component == component && pc.to.port == port) return &pc;
  }
  return nullptr;
}

TopEventRef TopEventRef::parse(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos) {
    throw ModelError("top event '" + std::string(text) +
                     "' must be <component>.[<port>.]<failure-mode>");
  }
  TopEventRef ref{std::string(text.substr(0, dot)),
                  std::string(text.substr(dot + 1))};
  std::string_view rest = ref.failure_mode;
  auto second = rest.find('.');
  bool ok = is_identifier(ref.component);
  if (second == std::string_view::npos) {
    ok = ok && is_identifier(rest);
  } else {
    ok = ok && is_identifier(rest.substr(0, second)) &&
         is_identifier(rest.substr(second + 1));
  }
  if (!ok) {
    throw ModelError("top event '" + std::string(text) +
                     "' must be <component>.[<port>.]<failure-mode>");
  }
  return ref;
}

std::string TopEventRef::str() const {
  return qualified(component, failure_mode);
}

std::size_t ValidationReport::error_count() const {
  return std::count_if(findings.begin(), findings.end(), [](const Finding& f) {
    return f.severity == Severity::Error;
  });
}

std::size_t ValidationReport::warning_count() const {
  return findings.size() - error_count();
}

std::string to_string(const Finding& finding) {
  std::ostringstream out;
  out << (finding.severity == Severity::Error ? "error" : "warning") << '['
      << finding.code << "] " << finding.element << ": " << finding.message;
  return out.str();
}

namespace {

class Validator {
 public:
  explicit Validator(const ArchitectureModel& model) : model_(model) {}

  ValidationReport run() {
    if (model_.layers.empty() || model_.components.empty()) {
      error("empty-model", "<model>", "no layers/components");
    }
    check_layers();
    for (const Component& c : model_.components) check_component(c);
    check_connections();
    check_dependencies();
    check_identities();
    check_unconnected_ports();
    return std::move(report_);
  }

 private:
  void error(std::string code, std::string element, std::string message) {
    report_.findings.push_back(
        {Severity::Error, std::move(code), std::move(element),
         std::move(message)});
  }

  void warning(std::string code, std::string element, std::string message) {
    report_.findings.push_back(
        {Severity::Warning, std::move(code), std::move(element),
         std::move(message)});
  }

  void check_layers() {
    std::set<std::string> seen;
    for (const Layer& layer : model_.layers) {
      if (!is_identifier(layer.name)) {
        error("invalid-identifier", layer.name, "invalid layer name");
      }
      if (!seen.insert(layer.name).second) {
        error("duplicate-layer", layer.name, "layer declared twice");
      }
      if (model_.components_in(layer.name).empty()) {
        warning("empty-layer", layer.name, "layer has no components");
      }
    }
  }

  void check_component(const Component& c) {
    if (!is_identifier(c.name)) {
      error("invalid-identifier", c.name, "invalid component name");
    }
    if (std::count_if(model_.components.begin(), model_.components.end(),
                      [&](const Component& o) { return o.name == c.name; }) >
            1 &&
        model_.find_component(c.name) == &c) {
      error("duplicate-component", c.name, "component declared twice");
    }
    if (std::none_of(model_.layers.begin(), model_.layers.end(),
                     [&](const Layer& l) { return l.name == c.layer; })) {
      error("unknown-layer", c.name, "unknown layer '" + c.layer + "'");
    }
    std::set<std::string> ports;
    for (const auto* list : {&c.in_ports, &c.out_ports}) {
      for (const std::string& p : *list) {
        if (!is_identifier(p)) {
          error("invalid-identifier", qualified(c.name, p),
                "invalid port name");
        }
        if (!ports.insert(p).second) {
          error("duplicate-port", qualified(c.name, p),
                "port name used twice");
        }
      }
    }
    if (c.cft) check_cft(c, *c.cft);
  }

  void check_cft(const Component& c, const ComponentFaultTree& cft) {
    if (cft.empty()) {
      error("empty-cft", c.name, "component fault tree has no elements");
      return;
    }
    std::set<std::string> nodes;
    auto declare = [&](const std::string& ref) {
      if (!nodes.insert(ref).second) {
        error("duplicate-node", qualified(c.name, ref),
              "node name used twice in component fault tree");
      }
    };
    for (const BasicEvent& e : cft.events) {
      if (!is_identifier(e.name)) {
        error("invalid-identifier", qualified(c.name, e.name),
              "invalid event name");
      }
      if (e.identity.empty()) {
        error("missing-identity", qualified(c.name, e.name),
              "basic event has no identity");
      }
      declare(e.name);
    }
    for (const Gate& g : cft.gates) {
      if (!is_identifier(g.name)) {
        error("invalid-identifier", qualified(c.name, g.name),
              "invalid gate name");
      }
      declare(g.name);
    }
    for (const InputFailureMode& f : cft.input_fms) {
      if (!is_identifier(f.name)) {
        error("invalid-identifier", qualified(c.name, f.ref()),
              "invalid failure mode name");
      }
      if (f.port && !c.has_in_port(*f.port)) {
        error("unknown-port", qualified(c.name, f.ref()),
              "input failure mode bound to '" + *f.port +
                  "', which is not an in port");
      }
      declare(f.ref());
    }
    for (const ImportedFailureMode& i : cft.imports) {
      if (!is_identifier(i.name)) {
        error("invalid-identifier", qualified(c.name, i.name),
              "invalid import name");
      }
      declare(i.name);
      const Component* provider = model_.find_component(i.provider);
      if (!provider || provider == &c) {
        error("unknown-provider", qualified(c.name, i.name),
              "imported failure mode names invalid provider '" + i.provider +
                  "'");
      } else if (!provider->cft ||
                 !provider->cft->find_output_fm(i.failure_mode)) {
        error("unknown-failure-mode", qualified(c.name, i.name),
              "provider has no output failure mode '" + i.failure_mode + "'");
      }
    }
    std::set<std::string> outputs;
    for (const OutputFailureMode& f : cft.output_fms) {
      const std::string element = qualified(c.name, f.ref());
      if (!is_identifier(f.name)) {
        error("invalid-identifier", element, "invalid failure mode name");
      }
      if (f.port && !c.has_out_port(*f.port)) {
        error("unknown-port", element,
              "output failure mode bound to '" + *f.port +
                  "', which is not an out port");
      }
      if (!outputs.insert(f.ref()).second) {
        error("duplicate-node", element, "output failure mode declared twice");
      }
      if (f.driver.empty()) {
        error("missing-driver", element, "output failure mode has no driver");
      } else if (!cft.has_node(f.driver)) {
        error("unresolved-reference", element,
              "driver '" + f.driver + "' is not a node of the fault tree");
      }
    }
    for (const Gate& g : cft.gates) {
      const std::string element = qualified(c.name, g.name);
      if (g.inputs.empty()) {
        error("gate-arity", element, "gate has no inputs");
      } else if (g.kind == GateKind::Not && g.inputs.size() != 1) {
        error("gate-arity", element, "NOT gate needs exactly one input");
      }
      for (const std::string& in : g.inputs) {
        if (!cft.has_node(in)) {
          error("unresolved-reference", element,
                "input '" + in + "' is not a node of the fault tree");
        }
      }
    }
    check_cft_acyclic(c, cft);
  }

  void check_cft_acyclic(const Component& c, const ComponentFaultTree& cft) {
    // 0 = unvisited, 1 = on stack, 2 = done
    std::map<std::string, int> state;
    std::function<bool(const Gate&)> visit = [&](const Gate& g) {
      int& s = state[g.name];
      if (s == 1) return false;
      if (s == 2) return true;
      s = 1;
      for (const std::string& in : g.inputs) {
        if (const Gate* next = cft.find_gate(in); next && !visit(*next)) {
          return false;
        }
      }
      state[g.name] = 2;
      return true;
    };
    for (const Gate& g : cft.gates) {
      if (!visit(g)) {
        error("cft-cycle", qualified(c.name, g.name),
              "component fault tree contains a cycle");
        return;
      }
    }
  }

  void check_connections() {
    std::set<Endpoint> fed;
    for (const PortConnection& pc : model_.connections) {
      const std::string element = qualified(pc.from.component, pc.from.port) +
                                  "->" +
                                  qualified(pc.to.component, pc.to.port);
      const Component* from = model_.find_component(pc.from.component);
      const Component* to = model_.find_component(pc.to.component);
      if (!from || !from->has_out_port(pc.from.port)) {
        error("bad-endpoint", element, "source is not an existing out port");
      }
      if (!to || !to->has_in_port(pc.to.port)) {
        error("bad-endpoint", element, "target is not an existing in port");
      }
      if (pc.from.component == pc.to.component) {
        error("self-connection", element,
              "connection must join two different components");
      }
      if (!fed.insert(pc.to).second) {
        error("multiple-incoming", element,
              "in port already has an incoming connection");
      }
    }
  }

  void check_dependencies() {
    std::set<std::pair<std::string, std::string>> seen;
    for (const AlfredDependency& d : model_.dependencies) {
      const std::string element = d.dependent + "->" + d.provider;
      const Component* dependent = model_.find_component(d.dependent);
      const Component* provider = model_.find_component(d.provider);
      if (!dependent || !provider) {
        error("unknown-component", element,
              "dependency refers to an unknown component");
      }
      if (d.dependent == d.provider) {
        error("self-dependency", element,
              "component cannot depend on itself");
      }
      if (!seen.insert({d.dependent, d.provider}).second) {
        error("duplicate-dependency", element, "dependency declared twice");
      }
      if (provider && !provider->cft) {
        warning("provider-without-cft", element,
                "dependency provider has no CFT");
      }
    }
    std::map<std::string, int> state;
    std::function<bool(const std::string&)> visit =
        [&](const std::string& name) {
          int& s = state[name];
          if (s == 1) return false;
          if (s == 2) return true;
          s = 1;
          for (const AlfredDependency& d : model_.dependencies) {
            if (d.dependent == name && d.dependent != d.provider &&
                !visit(d.provider)) {
              return false;
            }
          }
          state[name] = 2;
          return true;
        };
    for (const Component& c : model_.components) {
      if (state[c.name] == 0 && !visit(c.name)) {
        error("dependency-cycle", c.name, "dependency cycle");
        return;
      }
    }
  }

  void check_identities() {
    for (const Component& c : model_.components) {
      if (!c.cft) continue;
      for (const BasicEvent& e : c.cft->events) {
        if (e.identity.empty() || e.identity == qualified(c.name, e.name)) {
          continue;
        }
        auto dot = e.identity.find('.');
        const BasicEvent* root = nullptr;
        if (dot != std::string::npos) {
          const Component* owner =
              model_.find_component(e.identity.substr(0, dot));
          if (owner && owner->cft) {
            root = owner->cft->find_event(e.identity.substr(dot + 1));
          }
        }
        if (!root) {
          error("unknown-identity", qualified(c.name, e.name),
                "identity '" + e.identity + "' names no basic event");
        } else if (root->identity != e.identity) {
          error("identity-chain", qualified(c.name, e.name),
                "identity '" + e.identity +
                    "' is itself aliased; common cause must name a root event");
        }
      }
    }
  }

  void check_unconnected_ports() {
    for (const Component& c : model_.components) {
      for (const std::string& p : c.in_ports) {
        const PortConnection* pc = model_.incoming(c.name, p);
        if (!pc) {
          warning("unconnected-in-port", qualified(c.name, p),
                  "in_port without connection");
          continue;
        }
        const Component* up = model_.find_component(pc->from.component);
        if (!c.cft || !up) continue;
        for (const InputFailureMode& f : c.cft->input_fms) {
          if (f.port != p) continue;
          bool matched = up->cft && up->cft->find_output_fm(
                                        qualified(pc->from.port, f.name));
          if (!matched) {
            warning("unmatched-failure-mode", qualified(c.name, f.ref()),
                    "upstream " + qualified(up->name, pc->from.port) +
                        " has no output failure mode '" + f.name + "'");
          }
        }
      }
    }
  }

  const ArchitectureModel& model_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const ArchitectureModel& model) {
  return Validator(model).run();
}

void require_valid(const ArchitectureModel& model) {
  for (const Finding& f : validate(model).findings) {
    if (f.severity == Severity::Error) {
      throw ModelError("model does not validate: " + to_string(f));
    }
  }
}

std::vector<std::string> dependency_closure(const ArchitectureModel& model,
                                            std::string_view component) {
  model.component(component);
  std::vector<std::string> providers;
  for (const AlfredDependency& d : model.dependencies) {
    if (d.dependent == component) providers.push_back(d.provider);
  }
  return providers;
}

ArchitectureModel canonicalize(const ArchitectureModel& model) {
  ArchitectureModel out = model;
  auto by_name = [](const auto& a, const auto& b) { return a.name < b.name; };
  std::sort(out.layers.begin(), out.layers.end(), by_name);
  std::sort(out.components.begin(), out.components.end(),
            [](const Component& a, const Component& b) {
              return std::tie(a.layer, a.name) < std::tie(b.layer, b.name);
            });
  for (Component& c : out.components) {
    std::sort(c.in_ports.begin(), c.in_ports.end());
    std::sort(c.out_ports.begin(), c.out_ports.end());
    if (!c.cft) continue;
    ComponentFaultTree& cft = *c.cft;
    std::sort(cft.events.begin(), cft.events.end(), by_name);
    std::sort(cft.gates.begin(), cft.gates.end(), by_name);
    std::sort(cft.imports.begin(), cft.imports.end(), by_name);
    std::sort(cft.input_fms.begin(), cft.input_fms.end(),
              [](const auto& a, const auto& b) { return a.ref() < b.ref(); });
    std::sort(cft.output_fms.begin(), cft.output_fms.end(),
              [](const auto& a, const auto& b) { return a.ref() < b.ref(); });
  }
  std::sort(out.connections.begin(), out.connections.end());
  std::sort(out.dependencies.begin(), out.dependencies.end());
  return out;
}

bool structurally_equal(const ArchitectureModel& a,
                        const ArchitectureModel& b) {
  return canonicalize(a) == canonicalize(b);
}

}  // namespace alfred
