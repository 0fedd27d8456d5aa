#include "alfred/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "alfred/analyzer.hpp"
#include "alfred/synthesizer.hpp"
#include "alfred/textfmt.hpp"
#include "alfred/weaver.hpp"

namespace alfred::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// Raised for problems the user fixes on the command line.
struct UsageError {
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read '" + path + "'"};
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) {
    throw UsageError{"cannot write '" + path + "'"};
  }
}

ArchitectureModel load(const std::string& path, std::ostream& err,
                       bool report_warnings) {
  ArchitectureModel model;
  try {
    model = textfmt::parse(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ":" + std::to_string(e.line()) + ":" +
                std::to_string(e.column()) + ": " + e.reason());
  }
  const ValidationReport report = validate(model);
  for (const Finding& f : report.findings) {
    if (report_warnings || f.severity == Severity::Error) {
      err << path << ": " << to_string(f) << '\n';
    }
  }
  if (!report.ok()) throw Error("validation failed");
  return model;
}

struct Options {
  std::string file;
  std::string output;
  std::string provenance;
  std::string top;
  std::string stage = "reduced";
  std::string format = "text";
  bool dot = false;
  bool no_weave = false;
  bool woven = false;
};

ArchitectureModel prepared(const Options& opt, std::ostream& err) {
  ArchitectureModel model = load(opt.file, err, false);
  if (opt.no_weave) return model;
  return weave(model).model;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Layered component fault tree analysis"};
  app.name("alfred");
  app.require_subcommand(1);
  Options opt;

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check a model and list findings");
  validate_cmd->add_option("file", opt.file, ".alfred model")->required();

  CLI::App* weave_cmd = app.add_subcommand(
      "weave", "Inject provider failure behavior into dependents");
  weave_cmd->add_option("file", opt.file, ".alfred model")->required();
  weave_cmd->add_option("-o,--output", opt.output,
                        "Write the woven model here instead of stdout");
  weave_cmd->add_option("--provenance", opt.provenance,
                        "Provenance sidecar path (default with -o: "
                        "<output>.provenance.tsv)");

  CLI::App* synth_cmd = app.add_subcommand(
      "synthesize", "Flatten the woven model into one fault tree");
  synth_cmd->add_option("file", opt.file, ".alfred model")->required();
  synth_cmd->add_option("--top", opt.top, "Top event <component>.<outfm>")
      ->required();
  synth_cmd->add_flag("--dot", opt.dot, "Emit Graphviz DOT");
  synth_cmd->add_flag("--no-weave", opt.no_weave,
                      "Input is already woven; skip weaving");

  CLI::App* cutsets_cmd =
      app.add_subcommand("cutsets", "Minimal cutsets of a top event");
  cutsets_cmd->add_option("file", opt.file, ".alfred model")->required();
  cutsets_cmd->add_option("--top", opt.top, "Top event <component>.<outfm>")
      ->required();
  cutsets_cmd->add_option("--stage", opt.stage, "pre or reduced")
      ->check(CLI::IsMember({"pre", "reduced"}));
  cutsets_cmd->add_option("--format", opt.format, "text or tsv")
      ->check(CLI::IsMember({"text", "tsv"}));
  cutsets_cmd->add_flag("--no-weave", opt.no_weave,
                        "Input is already woven; skip weaving");

  CLI::App* dot_cmd =
      app.add_subcommand("export-dot", "Render the model as Graphviz DOT");
  dot_cmd->add_option("file", opt.file, ".alfred model")->required();
  dot_cmd->add_flag("--woven", opt.woven, "Render the woven model");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (validate_cmd->parsed()) {
      const ArchitectureModel model = [&] {
        try {
          return textfmt::parse(read_file(opt.file));
        } catch (const ParseError& e) {
          throw Error(opt.file + ":" + std::to_string(e.line()) + ":" +
                      std::to_string(e.column()) + ": " + e.reason());
        }
      }();
      const ValidationReport report = validate(model);
      for (const Finding& f : report.findings) {
        err << opt.file << ": " << to_string(f) << '\n';
      }
      out << opt.file << ": " << report.error_count() << " error(s), "
          << report.warning_count() << " warning(s)\n";
      return report.ok() ? kOk : kFailure;
    }
    if (weave_cmd->parsed()) {
      const WovenModel woven = weave(load(opt.file, err, false));
      const std::string text = textfmt::serialize(woven.model);
      std::string sidecar = opt.provenance;
      if (opt.output.empty()) {
        out << text;
      } else {
        write_file(opt.output, text);
        if (sidecar.empty()) sidecar = opt.output + ".provenance.tsv";
      }
      if (!sidecar.empty()) write_file(sidecar, provenance_tsv(woven));
      return kOk;
    }
    if (synth_cmd->parsed()) {
      const FaultTree tree =
          synthesize(prepared(opt, err), TopEventRef::parse(opt.top));
      out << (opt.dot ? textfmt::export_dot(tree) : to_prefix(tree) + "\n");
      return kOk;
    }
    if (cutsets_cmd->parsed()) {
      const FaultTree tree =
          synthesize(prepared(opt, err), TopEventRef::parse(opt.top));
      const CutSetReport report = cutsets(tree, parse_stage(opt.stage));
      out << (opt.format == "tsv" ? format_tsv(report) : format_text(report));
      return kOk;
    }
    if (dot_cmd->parsed()) {
      ArchitectureModel model = load(opt.file, err, false);
      if (opt.woven) model = weave(model).model;
      out << textfmt::export_dot(model);
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "alfred: " << e.message << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "alfred: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace alfred::cli
