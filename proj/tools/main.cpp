#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "critweb/commands.hpp"

namespace {

constexpr int kParseExit = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw critweb::parse_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

critweb::GammaChoice gamma_choice(const std::string& flag) {
  critweb::GammaChoice choice;
  if (flag == "auto") {
    choice.mode = critweb::GammaMode::automatic;
  } else if (flag == "none") {
    choice.mode = critweb::GammaMode::none;
  } else if (flag.empty()) {
    choice.mode = critweb::GammaMode::from_document;
  } else {
    choice.mode = critweb::GammaMode::supplied;
    choice.supplied = critweb::parse_gamma_file(read_file(flag));
  }
  return choice;
}

int emit(const critweb::CommandResult& result, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << result.output;
    return result.exit_code;
  }
  if (result.exit_code != 0) {
    std::cerr << result.output;
    return result.exit_code;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << result.output)) {
    std::cerr << "cannot write output file: " << out_path << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combinatorics of critical portraits: validation, symbolic dynamics, webs,\n"
               "Levy-obstruction diagnostics, untwisting solvers and figures."};
  app.require_subcommand(1);

  std::string input, gamma_flag, out_path;
  std::string partition_path, theta_str, labels_flag;
  std::string degrees_csv, differences_csv;
  int pullback_n = 0;

  auto add_doc_options = [&](CLI::App* cmd, bool with_gamma = true) {
    cmd->add_option("--input,-i", input, "portrait document (JSON)")->required();
    if (with_gamma) {
      cmd->add_option("--gamma", gamma_flag,
                      "special arguments: auto | none | PATH (default: document, else auto)");
    }
    cmd->add_option("--out,-o", out_path, "write output to a file instead of stdout");
  };

  CLI::App* validate = app.add_subcommand("validate", "check portrait admissibility");
  add_doc_options(validate);

  CLI::App* classes = app.add_subcommand("classes", "special arguments and class families");
  add_doc_options(classes);

  CLI::App* web = app.add_subcommand("web", "abstract web, self-map and edge classes");
  add_doc_options(web);

  CLI::App* levy = app.add_subcommand("levy", "Levy-obstruction diagnostic");
  add_doc_options(levy);
  levy->add_option("--partition", partition_path,
                   "candidate partition file (JSON list of lists); default: canonical classes");

  CLI::App* twist = app.add_subcommand("twist", "solve the cyclic untwisting system");
  twist->add_option("degrees", degrees_csv, "comma-separated local degrees")->required();
  twist->add_option("differences", differences_csv, "comma-separated twist differences (p/q)")
      ->required();
  twist->add_option("--out,-o", out_path, "write output to a file instead of stdout");

  CLI::App* pullback = app.add_subcommand("pullback", "arcs matching the first n addresses");
  add_doc_options(pullback, false);
  pullback->add_option("theta", theta_str, "angle p/q")->required();
  pullback->add_option("n", pullback_n, "number of addresses to match")->required();

  CLI::App* svg = app.add_subcommand("svg", "render the portrait and web as SVG");
  add_doc_options(svg);
  svg->add_option("--labels", labels_flag, "on|off (default: document render options)")
      ->check(CLI::IsMember({"on", "off"}));

  CLI11_PARSE(app, argc, argv);

  try {
    critweb::CommandResult result;
    if (*validate) {
      result = critweb::cmd_validate(read_file(input), gamma_choice(gamma_flag));
    } else if (*classes) {
      result = critweb::cmd_classes(read_file(input), gamma_choice(gamma_flag));
    } else if (*web) {
      result = critweb::cmd_web(read_file(input), gamma_choice(gamma_flag));
    } else if (*levy) {
      std::optional<std::string> partition_text;
      if (!partition_path.empty()) partition_text = read_file(partition_path);
      result = critweb::cmd_levy(read_file(input), gamma_choice(gamma_flag),
                                 partition_text ? &*partition_text : nullptr);
    } else if (*twist) {
      result = critweb::cmd_twist(degrees_csv, differences_csv);
    } else if (*pullback) {
      result = critweb::cmd_pullback(read_file(input), theta_str, pullback_n);
    } else if (*svg) {
      std::optional<bool> labels;
      if (labels_flag == "on") labels = true;
      if (labels_flag == "off") labels = false;
      result = critweb::cmd_svg(read_file(input), gamma_choice(gamma_flag), labels);
    }
    return emit(result, out_path);
  } catch (const critweb::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
