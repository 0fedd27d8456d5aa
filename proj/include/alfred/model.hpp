#pragma once

/// @file model.hpp
/// Domain model for vertically layered architectures whose components carry
/// component fault trees (CFTs), connected horizontally by data-flow ports
/// and vertically by ALFRED failure dependencies.
///
/// All types are plain values. A model is built once (by the parser, the
/// weaver or a test generator) and is then only read; nothing in the
/// library mutates a model it was handed.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace alfred {

/// True for a non-empty token of ASCII letters, digits, `_` and `-`.
bool is_identifier(std::string_view text);

enum class GateKind { And, Or, Not };

std::string_view to_string(GateKind kind);

/// Internal failure cause. Several events in different CFTs may share one
/// identity (common cause); by default the identity is `<owner>.<name>`.
struct BasicEvent {
  std::string name;
  std::string identity;

  friend bool operator==(const BasicEvent&, const BasicEvent&) = default;
};

struct Gate {
  std::string name;
  GateKind kind = GateKind::Or;
  /// Node references, in declaration order.
  std::vector<std::string> inputs;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Failure entering the component. A failure mode bound to a port is
/// referenced inside its CFT as `<port>.<name>`; a port-less one as `<name>`.
struct InputFailureMode {
  std::string name;
  std::optional<std::string> port;

  std::string ref() const;

  friend bool operator==(const InputFailureMode&,
                         const InputFailureMode&) = default;
};

/// Failure visible at an output, driven by exactly one node of the CFT.
struct OutputFailureMode {
  std::string name;
  std::optional<std::string> port;
  std::string driver;

  std::string ref() const;

  friend bool operator==(const OutputFailureMode&,
                         const OutputFailureMode&) = default;
};

/// Source node standing for an output failure mode of another component.
/// Only produced by weaving: it is how a woven model records that a provider
/// failure mode was injected into a dependent CFT.
struct ImportedFailureMode {
  std::string name;
  std::string provider;
  /// Reference of the provider's output failure mode (`[port.]name`).
  std::string failure_mode;

  friend bool operator==(const ImportedFailureMode&,
                         const ImportedFailureMode&) = default;
};

struct ComponentFaultTree {
  std::vector<BasicEvent> events;
  std::vector<Gate> gates;
  std::vector<InputFailureMode> input_fms;
  std::vector<ImportedFailureMode> imports;
  std::vector<OutputFailureMode> output_fms;

  bool empty() const;

  const BasicEvent* find_event(std::string_view name) const;
  const Gate* find_gate(std::string_view name) const;
  const InputFailureMode* find_input_fm(std::string_view ref) const;
  const ImportedFailureMode* find_import(std::string_view name) const;
  const OutputFailureMode* find_output_fm(std::string_view ref) const;

  /// True if `ref` names a node usable as a gate input or driver.
  bool has_node(std::string_view ref) const;

  friend bool operator==(const ComponentFaultTree&,
                         const ComponentFaultTree&) = default;
};

struct Component {
  std::string name;
  std::string layer;
  std::vector<std::string> in_ports;
  std::vector<std::string> out_ports;
  std::optional<ComponentFaultTree> cft;

  bool has_in_port(std::string_view port) const;
  bool has_out_port(std::string_view port) const;

  friend bool operator==(const Component&, const Component&) = default;
};

struct Layer {
  std::string name;

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct Endpoint {
  std::string component;
  std::string port;

  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct PortConnection {
  Endpoint from;  // out port
  Endpoint to;    // in port

  friend auto operator<=>(const PortConnection&,
                          const PortConnection&) = default;
};

/// `dependent` relies on the correct function of `provider`.
struct AlfredDependency {
  std::string dependent;
  std::string provider;

  friend auto operator<=>(const AlfredDependency&,
                          const AlfredDependency&) = default;
};

struct ArchitectureModel {
  std::vector<Layer> layers;
  std::vector<Component> components;
  std::vector<PortConnection> connections;
  std::vector<AlfredDependency> dependencies;

  const Component* find_component(std::string_view name) const;
  /// Throws ModelError for an unknown name.
  const Component& component(std::string_view name) const;

  /// Components of `layer` in declaration order.
  std::vector<const Component*> components_in(std::string_view layer) const;

  /// The connection feeding `component.port`, if any.
  const PortConnection* incoming(std::string_view component,
                                 std::string_view port) const;

  friend bool operator==(const ArchitectureModel&,
                         const ArchitectureModel&) = default;
};

/// Names an output failure mode: `<component>.<name>` for a port-less one,
/// `<component>.<port>.<name>` for a ported one.
struct TopEventRef {
  std::string component;
  std::string failure_mode;  // `[port.]name`

  /// Throws ModelError when `text` is not of the form above.
  static TopEventRef parse(std::string_view text);
  std::string str() const;

  friend bool operator==(const TopEventRef&, const TopEventRef&) = default;
};

/// Builds `[port.]name`.
std::string failure_mode_ref(const std::optional<std::string>& port,
                             const std::string& name);

/// `<owner>.<name>`, the default identity of an event.
std::string qualified(std::string_view owner, std::string_view name);

// Validation ---------------------------------------------------------------

enum class Severity { Error, Warning };

struct Finding {
  Severity severity = Severity::Error;
  /// Stable kebab-case diagnostic code, e.g. `dependency-cycle`.
  std::string code;
  /// Offending element in qualified form, e.g. `f1.p1`.
  std::string element;
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  std::size_t error_count() const;
  std::size_t warning_count() const;
  bool ok() const { return error_count() == 0; }
};

std::string to_string(const Finding& finding);

/// Checks every structural invariant of the model. Never throws; findings are
/// emitted in a fixed order for a given model.
ValidationReport validate(const ArchitectureModel& model);

/// Throws ModelError carrying the first error of validate(model).
void require_valid(const ArchitectureModel& model);

/// Direct providers of `component` (not transitive), in declaration order.
std::vector<std::string> dependency_closure(const ArchitectureModel& model,
                                            std::string_view component);

/// Copy with every order-insensitive collection sorted. Gate input order is
/// kept.
ArchitectureModel canonicalize(const ArchitectureModel& model);

/// Equality up to declaration order.
bool structurally_equal(const ArchitectureModel& a,
                        const ArchitectureModel& b);

}  // namespace alfred
