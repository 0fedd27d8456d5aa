#include "alfred/textfmt.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace alfred {

namespace {

std::string located(std::size_t line, std::size_t column,
                    const std::string& reason) {
  return "line " + std::to_string(line) + ", column " +
         std::to_string(column) + ": " + reason;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string token,
                       std::set<std::string> expected, std::string message)
    : Error(located(line, column, message)),
      line_(line),
      column_(column),
      token_(std::move(token)),
      expected_(std::move(expected)),
      reason_(std::move(message)) {}

namespace textfmt {

namespace {

enum class Tok { Ident, Dot, Arrow, LArrow, Equals, EndOfLine };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_' || c == '-';
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    std::size_t col = i + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Tok::Arrow, "->", line_no, col});
      i += 2;
    } else if (c == '<' && i + 1 < line.size() && line[i + 1] == '-') {
      out.push_back({Tok::LArrow, "<-", line_no, col});
      i += 2;
    } else if (c == '.') {
      out.push_back({Tok::Dot, ".", line_no, col});
      ++i;
    } else if (c == '=') {
      out.push_back({Tok::Equals, "=", line_no, col});
      ++i;
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < line.size() && ident_char(line[j]) &&
             !(line[j] == '-' && j + 1 < line.size() && line[j + 1] == '>')) {
        ++j;
      }
      out.push_back({Tok::Ident, std::string(line.substr(i, j - i)), line_no,
                     col});
      i = j;
    } else {
      std::string shown;
      if (static_cast<unsigned char>(c) < 0x20 ||
          static_cast<unsigned char>(c) >= 0x7f) {
        std::ostringstream hex;
        hex << "\\x" << std::hex << static_cast<int>(static_cast<unsigned char>(c));
        shown = hex.str();
      } else {
        shown = std::string(1, c);
      }
      throw ParseError(line_no, col, shown, {},
                       "unexpected character '" + shown + "'");
    }
  }
  out.push_back({Tok::EndOfLine, "<end of line>", line_no, line.size() + 1});
  return out;
}

const std::set<std::string> kTopKeywords = {"layer", "component", "connect",
                                            "alfred", "common-cause"};
const std::set<std::string> kComponentKeywords = {
    "in", "out", "event", "gate", "infm", "import", "outfm", "end"};

/// A name used at a position, checked once its scope is complete.
struct Reference {
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Parser {
 public:
  ArchitectureModel run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto nl = text.find('\n', start);
      std::string_view line = text.substr(
          start, nl == std::string_view::npos ? text.size() - start
                                              : nl - start);
      ++line_no;
      tokens_ = tokenize(line, line_no);
      pos_ = 0;
      if (tokens_.front().kind != Tok::EndOfLine) statement();
      last_line_ = line_no;
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    if (current_) {
      throw ParseError(last_line_ + 1, 1, "<end of input>", {"end"},
                       "component '" + current_->name + "' is missing 'end'");
    }
    if (model_.layers.empty()) {
      throw ParseError(last_line_ == 0 ? 1 : last_line_, 1, "<end of input>",
                       {"layer"}, "no layer declared");
    }
    resolve_document();
    return std::move(model_);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& take() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const Token& at, std::set<std::string> expected,
                         const std::string& message) {
    throw ParseError(at.line, at.column, at.text, std::move(expected),
                     message);
  }

  [[noreturn]] void fail_ref(const Reference& ref, const std::string& message) {
    throw ParseError(ref.line, ref.column, ref.text, {}, message);
  }

  const Token& expect(Tok kind, const std::string& what) {
    const Token& t = peek();
    if (t.kind != kind) {
      fail(t, {what}, "expected " + what + ", found '" + t.text + "'");
    }
    return take();
  }

  Reference identifier(const std::string& what) {
    const Token& t = expect(Tok::Ident, what);
    return {t.text, t.line, t.column};
  }

  void end_of_line() { expect(Tok::EndOfLine, "<end of line>"); }

  /// `a` or `a.b`
  Reference dotted(const std::string& what, int max_parts) {
    Reference ref = identifier(what);
    int parts = 1;
    while (peek().kind == Tok::Dot && parts < max_parts) {
      take();
      ref.text += '.';
      ref.text += identifier(what).text;
      ++parts;
    }
    return ref;
  }

  /// `<component>.<name>`
  std::pair<Reference, Reference> qualified_pair(const std::string& what) {
    Reference first = identifier(what);
    expect(Tok::Dot, "'.'");
    Reference second = identifier(what);
    return {first, second};
  }

  void statement() {
    const Token& head = peek();
    if (current_) {
      if (head.kind != Tok::Ident || !kComponentKeywords.count(head.text)) {
        fail(head, kComponentKeywords,
             "unknown keyword '" + head.text + "' in component block");
      }
      component_statement();
      return;
    }
    if (head.kind != Tok::Ident || !kTopKeywords.count(head.text)) {
      fail(head, kTopKeywords, "unknown keyword '" + head.text + "'");
    }
    const std::string keyword = take().text;
    if (keyword == "layer") {
      Reference name = identifier("layer name");
      end_of_line();
      if (std::any_of(model_.layers.begin(), model_.layers.end(),
                      [&](const Layer& l) { return l.name == name.text; })) {
        fail_ref(name, "duplicate declaration of layer '" + name.text + "'");
      }
      model_.layers.push_back({name.text});
    } else if (keyword == "component") {
      Reference name = identifier("component name");
      const Token& kw = peek();
      if (kw.kind != Tok::Ident || kw.text != "layer") {
        fail(kw, {"layer"}, "expected 'layer' after component name");
      }
      take();
      Reference layer = identifier("layer name");
      end_of_line();
      if (model_.find_component(name.text)) {
        fail_ref(name,
                 "duplicate declaration of component '" + name.text + "'");
      }
      model_.components.push_back({name.text, layer.text, {}, {}, {}});
      layer_refs_.push_back(layer);
      begin_component();
    } else if (keyword == "connect") {
      auto [from_c, from_p] = qualified_pair("out port");
      expect(Tok::Arrow, "'->'");
      auto [to_c, to_p] = qualified_pair("in port");
      end_of_line();
      PortConnection pc{{from_c.text, from_p.text}, {to_c.text, to_p.text}};
      if (std::find(model_.connections.begin(), model_.connections.end(),
                    pc) != model_.connections.end()) {
        fail_ref(from_c, "duplicate declaration of connection");
      }
      model_.connections.push_back(pc);
      connection_refs_.push_back({from_c, from_p, to_c, to_p});
    } else if (keyword == "alfred") {
      Reference dependent = identifier("component name");
      expect(Tok::Arrow, "'->'");
      Reference provider = identifier("component name");
      end_of_line();
      AlfredDependency dep{dependent.text, provider.text};
      if (std::find(model_.dependencies.begin(), model_.dependencies.end(),
                    dep) != model_.dependencies.end()) {
        fail_ref(dependent, "duplicate declaration of dependency " +
                                dependent.text + " -> " + provider.text);
      }
      model_.dependencies.push_back(dep);
      dependency_refs_.push_back({dependent, provider});
    } else {
      auto [lhs_c, lhs_e] = qualified_pair("event");
      expect(Tok::Equals, "'='");
      auto [rhs_c, rhs_e] = qualified_pair("event");
      end_of_line();
      std::string lhs = qualified(lhs_c.text, lhs_e.text);
      std::string rhs = qualified(rhs_c.text, rhs_e.text);
      if (lhs == rhs) fail_ref(lhs_c, "event '" + lhs + "' aliased to itself");
      if (aliases_.count(lhs)) {
        fail_ref(lhs_c, "duplicate declaration of common cause for '" + lhs +
                            "'");
      }
      aliases_.emplace(lhs, rhs);
      alias_refs_.push_back({lhs_c, lhs_e, rhs_c, rhs_e});
    }
  }

  void begin_component() {
    current_ = &model_.components.back();
    cft_ = ComponentFaultTree{};
    nodes_.clear();
    outputs_.clear();
    ports_.clear();
    node_refs_.clear();
    port_refs_.clear();
  }

  void declare_node(const Reference& at, const std::string& ref) {
    if (!nodes_.insert(ref).second) {
      fail_ref(at, "duplicate declaration of '" + ref + "' in component '" +
                       current_->name + "'");
    }
  }

  void component_statement() {
    const std::string keyword = take().text;
    if (keyword == "end") {
      end_of_line();
      finish_component();
      return;
    }
    if (keyword == "in" || keyword == "out") {
      Reference port = identifier("port name");
      end_of_line();
      if (!ports_.insert(port.text).second) {
        fail_ref(port, "duplicate declaration of port '" + port.text + "'");
      }
      (keyword == "in" ? current_->in_ports : current_->out_ports)
          .push_back(port.text);
    } else if (keyword == "event") {
      Reference name = identifier("event name");
      end_of_line();
      declare_node(name, name.text);
      cft_.events.push_back({name.text, qualified(current_->name, name.text)});
    } else if (keyword == "gate") {
      Reference name = identifier("gate name");
      const Token& kind = peek();
      GateKind gk;
      if (kind.kind == Tok::Ident && kind.text == "and") {
        gk = GateKind::And;
      } else if (kind.kind == Tok::Ident && kind.text == "or") {
        gk = GateKind::Or;
      } else if (kind.kind == Tok::Ident && kind.text == "not") {
        gk = GateKind::Not;
      } else {
        fail(kind, {"and", "not", "or"}, "expected gate kind");
      }
      take();
      Gate gate{name.text, gk, {}};
      while (peek().kind != Tok::EndOfLine) {
        Reference in = dotted("node reference", 2);
        gate.inputs.push_back(in.text);
        node_refs_.push_back(in);
      }
      if (gate.inputs.empty()) {
        fail(peek(), {"node reference"}, "gate needs at least one input");
      }
      end_of_line();
      declare_node(name, name.text);
      cft_.gates.push_back(std::move(gate));
    } else if (keyword == "infm") {
      Reference first = identifier("failure mode");
      InputFailureMode fm{first.text, std::nullopt};
      if (peek().kind == Tok::Dot) {
        take();
        fm.port = first.text;
        fm.name = identifier("failure mode").text;
        port_refs_.push_back({first, true});
      }
      end_of_line();
      declare_node(first, fm.ref());
      cft_.input_fms.push_back(std::move(fm));
    } else if (keyword == "import") {
      Reference name = identifier("import name");
      expect(Tok::LArrow, "'<-'");
      Reference provider = identifier("component name");
      expect(Tok::Dot, "'.'");
      Reference fm = dotted("failure mode", 2);
      end_of_line();
      declare_node(name, name.text);
      cft_.imports.push_back({name.text, provider.text, fm.text});
      import_refs_.push_back({current_->name, provider, fm});
    } else {  // outfm
      Reference first = identifier("failure mode");
      OutputFailureMode fm{first.text, std::nullopt, {}};
      if (peek().kind == Tok::Dot) {
        take();
        fm.port = first.text;
        fm.name = identifier("failure mode").text;
        port_refs_.push_back({first, false});
      }
      expect(Tok::Equals, "'='");
      Reference driver = dotted("node reference", 2);
      end_of_line();
      fm.driver = driver.text;
      node_refs_.push_back(driver);
      if (!outputs_.insert(fm.ref()).second) {
        fail_ref(first,
                 "duplicate declaration of output failure mode '" + fm.ref() +
                     "'");
      }
      cft_.output_fms.push_back(std::move(fm));
    }
    if (!cft_.empty()) has_cft_ = true;
  }

  void finish_component() {
    for (const auto& [ref, inbound] : port_refs_) {
      bool ok = inbound ? current_->has_in_port(ref.text)
                        : current_->has_out_port(ref.text);
      if (!ok) {
        fail_ref(ref, std::string("reference to undeclared ") +
                          (inbound ? "in" : "out") + " port '" + ref.text +
                          "'");
      }
    }
    for (const Reference& ref : node_refs_) {
      if (!nodes_.count(ref.text)) {
        fail_ref(ref, "reference to undeclared node '" + ref.text + "'");
      }
    }
    if (has_cft_) current_->cft = std::move(cft_);
    has_cft_ = false;
    current_ = nullptr;
  }

  const Component& require_component(const Reference& ref) {
    const Component* c = model_.find_component(ref.text);
    if (!c) fail_ref(ref, "reference to undeclared component '" + ref.text + "'");
    return *c;
  }

  void resolve_document() {
    for (const Reference& layer : layer_refs_) {
      if (std::none_of(model_.layers.begin(), model_.layers.end(),
                       [&](const Layer& l) { return l.name == layer.text; })) {
        fail_ref(layer, "reference to undeclared layer '" + layer.text + "'");
      }
    }
    for (const auto& [from_c, from_p, to_c, to_p] : connection_refs_) {
      if (!require_component(from_c).has_out_port(from_p.text)) {
        fail_ref(from_p, "reference to undeclared out port '" +
                             qualified(from_c.text, from_p.text) + "'");
      }
      if (!require_component(to_c).has_in_port(to_p.text)) {
        fail_ref(to_p, "reference to undeclared in port '" +
                           qualified(to_c.text, to_p.text) + "'");
      }
    }
    for (const auto& [dependent, provider] : dependency_refs_) {
      require_component(dependent);
      require_component(provider);
    }
    for (const auto& [owner, provider, fm] : import_refs_) {
      const Component& p = require_component(provider);
      if (!p.cft || !p.cft->find_output_fm(fm.text)) {
        fail_ref(fm, "reference to undeclared output failure mode '" +
                         qualified(provider.text, fm.text) + "'");
      }
    }
    for (const auto& [lhs_c, lhs_e, rhs_c, rhs_e] : alias_refs_) {
      require_event(lhs_c, lhs_e);
      require_event(rhs_c, rhs_e);
    }
    for (Component& c : model_.components) {
      if (!c.cft) continue;
      for (BasicEvent& e : c.cft->events) {
        auto it = aliases_.find(e.identity);
        if (it != aliases_.end()) e.identity = it->second;
      }
    }
  }

  void require_event(const Reference& component, const Reference& event) {
    const Component& c = require_component(component);
    if (!c.cft || !c.cft->find_event(event.text)) {
      fail_ref(event, "reference to undeclared event '" +
                          qualified(component.text, event.text) + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;

  ArchitectureModel model_;
  Component* current_ = nullptr;
  ComponentFaultTree cft_;
  bool has_cft_ = false;
  std::set<std::string> nodes_;
  std::set<std::string> outputs_;
  std::set<std::string> ports_;
  std::vector<Reference> node_refs_;
  std::vector<std::pair<Reference, bool>> port_refs_;

  std::vector<Reference> layer_refs_;
  std::vector<std::tuple<Reference, Reference, Reference, Reference>>
      connection_refs_;
  std::vector<std::pair<Reference, Reference>> dependency_refs_;
  std::vector<std::tuple<std::string, Reference, Reference>> import_refs_;
  std::vector<std::tuple<Reference, Reference, Reference, Reference>>
      alias_refs_;
  std::map<std::string, std::string> aliases_;
};

}  // namespace

ArchitectureModel parse(std::string_view text) { return Parser().run(text); }

std::string serialize(const ArchitectureModel& model) {
  const ArchitectureModel m = canonicalize(model);
  std::ostringstream out;
  for (const Layer& layer : m.layers) out << "layer " << layer.name << '\n';
  for (const Component& c : m.components) {
    out << '\n' << "component " << c.name << " layer " << c.layer << '\n';
    for (const std::string& p : c.in_ports) out << "  in " << p << '\n';
    for (const std::string& p : c.out_ports) out << "  out " << p << '\n';
    if (c.cft) {
      const ComponentFaultTree& cft = *c.cft;
      for (const BasicEvent& e : cft.events) out << "  event " << e.name << '\n';
      for (const InputFailureMode& f : cft.input_fms) {
        out << "  infm " << f.ref() << '\n';
      }
      for (const ImportedFailureMode& i : cft.imports) {
        out << "  import " << i.name << " <- " << i.provider << '.'
            << i.failure_mode << '\n';
      }
      for (const Gate& g : cft.gates) {
        out << "  gate " << g.name << ' ' << to_string(g.kind);
        for (const std::string& in : g.inputs) out << ' ' << in;
        out << '\n';
      }
      for (const OutputFailureMode& f : cft.output_fms) {
        out << "  outfm " << f.ref() << " = " << f.driver << '\n';
      }
    }
    out << "end\n";
  }
  if (!m.connections.empty()) out << '\n';
  for (const PortConnection& pc : m.connections) {
    out << "connect " << pc.from.component << '.' << pc.from.port << " -> "
        << pc.to.component << '.' << pc.to.port << '\n';
  }
  if (!m.dependencies.empty()) out << '\n';
  for (const AlfredDependency& d : m.dependencies) {
    out << "alfred " << d.dependent << " -> " << d.provider << '\n';
  }
  std::vector<std::pair<std::string, std::string>> aliases;
  for (const Component& c : m.components) {
    if (!c.cft) continue;
    for (const BasicEvent& e : c.cft->events) {
      std::string self = qualified(c.name, e.name);
      if (e.identity != self) aliases.emplace_back(self, e.identity);
    }
  }
  std::sort(aliases.begin(), aliases.end());
  if (!aliases.empty()) out << '\n';
  for (const auto& [event, identity] : aliases) {
    out << "common-cause " << event << " = " << identity << '\n';
  }
  return out.str();
}

}  // namespace textfmt
}  // namespace alfred
