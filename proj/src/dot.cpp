#include <sstream>

#include "alfred/fault_tree.hpp"
#include "alfred/textfmt.hpp"

namespace alfred::textfmt {

namespace {

std::string quote(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

std::string node_id(const std::string& component, std::string_view kind,
                    const std::string& name) {
  return quote(component + "/" + std::string(kind) + "/" + name);
}

/// DOT id of a CFT node referenced as `ref` inside `c`.
std::string cft_node_id(const Component& c, const std::string& ref) {
  const ComponentFaultTree& cft = *c.cft;
  if (cft.find_input_fm(ref)) return node_id(c.name, "infm", ref);
  if (cft.find_import(ref)) return node_id(c.name, "import", ref);
  return node_id(c.name, "node", ref);
}

std::string upper(GateKind kind) {
  std::string s(to_string(kind));
  for (char& ch : s) ch = static_cast<char>(ch - 'a' + 'A');
  return s;
}

}  // namespace

std::string export_dot(const ArchitectureModel& model) {
  const ArchitectureModel m = canonicalize(model);
  std::ostringstream out;
  out << "digraph model {\n";
  out << "  compound=true;\n";
  out << "  rankdir=BT;\n";
  for (const Component& c : m.components) {
    out << "  subgraph " << quote("cluster_" + c.name) << " {\n";
    out << "    label=" << quote(c.name + " [" + c.layer + "]") << ";\n";
    out << "    " << quote(c.name) << " [shape=component,label="
        << quote(c.name) << "];\n";
    for (const std::string& p : c.in_ports) {
      out << "    " << node_id(c.name, "port", p)
          << " [shape=box,style=rounded,label=" << quote("in " + p)
          << "];\n";
    }
    for (const std::string& p : c.out_ports) {
      out << "    " << node_id(c.name, "port", p)
          << " [shape=box,style=rounded,label=" << quote("out " + p)
          << "];\n";
    }
    if (c.cft) {
      const ComponentFaultTree& cft = *c.cft;
      for (const BasicEvent& e : cft.events) {
        out << "    " << node_id(c.name, "node", e.name)
            << " [shape=ellipse,label=" << quote(e.name) << "];\n";
      }
      for (const InputFailureMode& f : cft.input_fms) {
        out << "    " << node_id(c.name, "infm", f.ref())
            << " [shape=invtriangle,label=" << quote(f.ref()) << "];\n";
      }
      for (const ImportedFailureMode& i : cft.imports) {
        out << "    " << node_id(c.name, "import", i.name)
            << " [shape=invtriangle,style=filled,fillcolor=lightgrey,label="
            << quote(i.provider + "." + i.failure_mode) << "];\n";
      }
      for (const Gate& g : cft.gates) {
        out << "    " << node_id(c.name, "node", g.name)
            << " [shape=box,label=" << quote(upper(g.kind)) << "];\n";
      }
      for (const OutputFailureMode& f : cft.output_fms) {
        out << "    " << node_id(c.name, "outfm", f.ref())
            << " [shape=triangle,style=filled,fillcolor=black,fontcolor=white,"
               "label="
            << quote(f.ref()) << "];\n";
      }
    }
    out << "  }\n";
  }
  for (const Component& c : m.components) {
    if (!c.cft) continue;
    const ComponentFaultTree& cft = *c.cft;
    for (const InputFailureMode& f : cft.input_fms) {
      if (f.port) {
        out << "  " << node_id(c.name, "port", *f.port) << " -> "
            << node_id(c.name, "infm", f.ref()) << ";\n";
      }
    }
    for (const Gate& g : cft.gates) {
      for (const std::string& in : g.inputs) {
        out << "  " << cft_node_id(c, in) << " -> "
            << node_id(c.name, "node", g.name) << ";\n";
      }
    }
    for (const OutputFailureMode& f : cft.output_fms) {
      out << "  " << cft_node_id(c, f.driver) << " -> "
          << node_id(c.name, "outfm", f.ref()) << ";\n";
      if (f.port) {
        out << "  " << node_id(c.name, "outfm", f.ref()) << " -> "
            << node_id(c.name, "port", *f.port) << ";\n";
      }
    }
    for (const ImportedFailureMode& i : cft.imports) {
      out << "  " << node_id(i.provider, "outfm", i.failure_mode) << " -> "
          << node_id(c.name, "import", i.name) << " [color=grey];\n";
    }
  }
  for (const PortConnection& pc : m.connections) {
    out << "  " << node_id(pc.from.component, "port", pc.from.port) << " -> "
        << node_id(pc.to.component, "port", pc.to.port) << ";\n";
  }
  for (const AlfredDependency& d : m.dependencies) {
    out << "  " << quote(d.dependent) << " -> " << quote(d.provider)
        << " [style=dashed];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_dot(const FaultTree& tree) {
  std::ostringstream out;
  out << "digraph fault_tree {\n";
  out << "  label=" << quote(tree.top) << ";\n";
  // Only nodes reachable from the root are emitted.
  std::vector<bool> live(tree.nodes.size(), false);
  if (!tree.nodes.empty()) {
    std::vector<std::size_t> stack{tree.root};
    while (!stack.empty()) {
      std::size_t n = stack.back();
      stack.pop_back();
      if (live[n]) continue;
      live[n] = true;
      for (std::size_t c : tree.nodes[n].children) stack.push_back(c);
    }
  }
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (!live[i]) continue;
    const FaultTreeNode& n = tree.nodes[i];
    out << "  n" << i << " [";
    if (n.kind == NodeKind::BasicEvent) {
      out << "shape=ellipse,label=" << quote(n.label);
    } else if (n.kind == NodeKind::ExternalEvent) {
      out << "shape=triangle,label=" << quote(n.label);
    } else {
      out << "shape=box,label=" << quote(to_string(n.kind));
    }
    out << "];\n";
  }
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    if (!live[i]) continue;
    for (std::size_t c : tree.nodes[i].children) {
      out << "  n" << i << " -> n" << c << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace alfred::textfmt
