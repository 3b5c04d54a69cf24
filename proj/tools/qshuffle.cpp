#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "qshuffle/parse.hpp"
#include "qshuffle/suite.hpp"

using namespace qshuffle;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "1=2,2=1" keyed by vertex id; unmentioned vertices get 0
DimVector parse_dims(const Quiver& q, const std::string& text) {
  DimVector d = dim_zero(q);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("bad dimension entry \"" + item + "\" (want vertex=count)");
    int i = q.vertex_index(item.substr(0, eq));
    d[static_cast<size_t>(i)] = std::stoi(item.substr(eq + 1));
    if (d[static_cast<size_t>(i)] < 0) throw std::runtime_error("negative dimension");
  }
  return d;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quiver shuffle algebra calculator"};
  app.require_subcommand(1);

  std::string quiver_path, dim_text, mode = "residue", suite_name;
  std::vector<std::string> exprs;
  uint64_t seed = 1;
  int max_hdeg = 2;

  auto* mul = app.add_subcommand("mul", "shuffle product of two expressions");
  mul->add_option("--quiver", quiver_path)->required();
  mul->add_option("--expr", exprs)->required()->expected(2, 2);

  auto* member = app.add_subcommand("member", "integral form membership check");
  member->add_option("--quiver", quiver_path)->required();
  member->add_option("--expr", exprs)->required()->expected(1, 1);

  auto* phi = app.add_subcommand("phi", "image as a q-difference operator");
  phi->add_option("--quiver", quiver_path)->required();
  phi->add_option("--dim", dim_text)->required();
  phi->add_option("--mode", mode)->check(CLI::IsMember({"residue", "closed"}));
  phi->add_option("--expr", exprs)->required()->expected(1, 1);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--quiver", quiver_path)->required();
  verify->add_option("--suite", suite_name)->required();
  verify->add_option("--seed", seed);
  verify->add_option("--max-hdeg", max_hdeg);
  verify->add_option("--dim", dim_text);

  CLI11_PARSE(app, argc, argv);

  try {
    Quiver q = parse_quiver(slurp(quiver_path));

    if (mul->parsed()) {
      ShuffleElement a = parse_shuffle_expr(q, exprs[0]);
      ShuffleElement b = parse_shuffle_expr(q, exprs[1]);
      ShuffleElement p = shuffle_mul(q, a, b);
      std::cout << to_string(p.poly()) << "\n";
      return 0;
    }

    if (member->parsed()) {
      ShuffleElement e = parse_shuffle_expr(q, exprs[0]);
      IntegralityResult r = is_integral(q, e);
      if (r.pass) {
        std::cout << "PASS\n";
        return 0;
      }
      std::cout << "FAIL\n";
      std::cout << "partition: " << parts_to_string(r.witness.parts) << "\n";
      std::cout << "remainder: " << to_string(r.remainder) << "\n";
      return 1;
    }

    if (phi->parsed()) {
      CoulombContext ctx(q, parse_dims(q, dim_text));
      auto tree = parse_expr_tree(q, exprs[0]);
      DiffOp op;
      if (mode == "closed") {
        if (tree->kind != ExprNode::Gen)
          throw std::runtime_error("closed mode requires a single generator expression");
        op = phi_gen(ctx, tree->side, tree->dims, tree->poly);
      } else {
        op = phi_residue(ctx, eval_expr(q, *tree));
      }
      std::cout << to_string(op) << "\n";
      return 0;
    }

    if (verify->parsed()) {
      SuiteConfig cfg;
      cfg.suite = suite_name;
      cfg.seed = seed;
      cfg.max_hdeg = max_hdeg;
      if (!dim_text.empty()) cfg.d = parse_dims(q, dim_text);
      VerificationReport rep = run_suite(q, cfg);
      std::cout << format(rep);
      return rep.all_pass() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
