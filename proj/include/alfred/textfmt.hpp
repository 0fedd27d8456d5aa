#pragma once

/// @file textfmt.hpp
/// Line-oriented `.alfred` model format and Graphviz export.
///
/// ```
/// # comment
/// layer sw
/// component f1 layer sw
///   in p1
///   out p3
///   event e
///   infm p1.loss-of
///   import CPU_loss-of <- CPU.loss-of
///   gate g or e p1.loss-of CPU_loss-of
///   outfm p3.loss-of = g
/// end
/// connect f1.p3 -> f2.p4
/// alfred f1 -> CPU
/// common-cause U2.Battery = U1.Battery
/// ```
///
/// One declaration per line. Inside a component block, names may be used
/// before they are declared; across the document, components may be
/// referenced before their block.

#include <set>
#include <string>
#include <string_view>

#include "alfred/error.hpp"
#include "alfred/model.hpp"

namespace alfred {

struct FaultTree;

/// First error found while parsing. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string token,
             std::set<std::string> expected, std::string message);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& token() const { return token_; }
  const std::set<std::string>& expected() const { return expected_; }
  /// Message without the location prefix.
  const std::string& reason() const { return reason_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string token_;
  std::set<std::string> expected_;
  std::string reason_;
};

namespace textfmt {

/// Throws ParseError on lexical errors, unknown keywords, references to
/// undeclared names and duplicate declarations. Structural checks beyond
/// those are left to validate().
ArchitectureModel parse(std::string_view text);

/// Canonical text: layers by name, component blocks by (layer, name),
/// declarations in fixed kind order then by name, then connections,
/// dependencies and common-cause aliases, each sorted.
std::string serialize(const ArchitectureModel& model);

/// One cluster per component, CFT nodes labelled by gate kind or event name,
/// ALFRED dependencies as dashed edges and imported failure modes in grey.
std::string export_dot(const ArchitectureModel& model);

/// Tree rendering: gate nodes labelled AND/OR/NOT, basic events as ellipses,
/// external events as triangles.
std::string export_dot(const FaultTree& tree);

}  // namespace textfmt
}  // namespace alfred
