#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rfx/error.hpp"
#include "session.hpp"

namespace {

enum Exit { AllHold = 0, SomeFail = 1, Usage = 2, Inconclusive = 3 };

rfx::Field parse_field(const std::string& s) {
  if (s == "QQ") return rfx::Field::rationals();
  std::string digits;
  if (s.rfind("Fp:", 0) == 0) digits = s.substr(3);
  else if (s.rfind("GF(", 0) == 0 && s.back() == ')') digits = s.substr(3, s.size() - 4);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
    throw rfx::Error("--field expects QQ or Fp:p, got '" + s + "'");
  return rfx::Field::prime(static_cast<std::uint32_t>(std::stoul(digits)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rfx: modules over quotient rings, stable reflexivity, approximation and stabilization"};
  std::string script, json_path, order = "degrevlex", field = "QQ";
  int window = 6;
  bool minimal = false;
  app.add_option("script", script, "script file (.rfx), or - for standard input")->required();
  app.add_option("--window", window, "window for n-stable reflexivity, Ext tables and depth")
      ->check(CLI::Range(1, 64));
  app.add_option("--order", order, "monomial order of declared rings")->check(CLI::IsMember({"degrevlex", "lex"}));
  app.add_option("--field", field, "coefficient field for k and knudsen families: QQ or Fp:p");
  app.add_option("--json", json_path, "write the machine-readable report to this path (- for standard output)");
  app.add_flag("--minimal", minimal, "minimal approximations");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Usage;
  }

  rfx::cli::Options opt;
  opt.window = window;
  opt.order = order;
  opt.minimal = minimal;
  try {
    opt.field = parse_field(field);
  } catch (const rfx::Error& e) {
    std::cerr << "rfx: " << e.what() << "\n";
    return Usage;
  }

  std::stringstream buf;
  if (script == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(script);
    if (!in) {
      std::cerr << "rfx: cannot open " << script << "\n";
      return Usage;
    }
    buf << in.rdbuf();
  }
  std::string label = script == "-" ? "<stdin>" : script;
  bool text = json_path != "-";

  std::vector<rfx::cli::Statement> statements;
  try {
    statements = rfx::cli::parse_script(buf.str());
  } catch (const rfx::cli::ScriptError& e) {
    std::cerr << label << ":" << e.pos().line << ":" << e.pos().col << ": syntax error: " << e.what() << "\n";
    return Usage;
  }

  rfx::cli::Session session(opt);
  nlohmann::ordered_json reports = nlohmann::ordered_json::array();
  int code = AllHold;
  bool inconclusive = false;
  for (const auto& st : statements) {
    try {
      auto r = session.run(st);
      if (!r) continue;
      if (text) std::cout << r->to_text() << std::flush;
      reports.push_back(r->to_json());
      if (r->verdict == "fails" || r->verdict == "error") code = SomeFail;
      if (r->verdict == "inconclusive") inconclusive = true;
    } catch (const rfx::cli::ScriptError& e) {
      std::cerr << label << ":" << e.pos().line << ":" << e.pos().col << ": error: " << e.what() << "\n";
      code = Usage;
      break;
    } catch (const std::exception& e) {
      std::cerr << label << ":" << st.pos.line << ":" << st.pos.col << ": internal error: " << e.what() << "\n";
      code = Inconclusive;
      break;
    }
  }
  if (code == AllHold && inconclusive) code = Inconclusive;

  if (!json_path.empty()) {
    std::string dump = reports.dump(2) + "\n";
    if (json_path == "-") {
      std::cout << dump;
    } else {
      std::ofstream out(json_path);
      if (!out) {
        std::cerr << "rfx: cannot write " << json_path << "\n";
        return Usage;
      }
      out << dump;
    }
  }
  return code;
}
