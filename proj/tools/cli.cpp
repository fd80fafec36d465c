#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>

#include "dpt/canonical.hpp"
#include "dpt/explore.hpp"
#include "dpt/invariant.hpp"
#include "dpt/io.hpp"
#include "dpt/moves.hpp"
#include "dpt/realize.hpp"
#include "dpt/revolution.hpp"

namespace dpt::cli {

namespace {

using io::Json;

// Raised when a check fails after its report was already written.
struct Failed {};

void emit_tree(std::ostream& out, const Tree& t, const std::string& format) {
  if (format == "dot") out << io::to_dot(t);
  else if (format == "pretty") out << io::to_pretty(t);
  else out << io::to_json(t).dump() << '\n';
}

CLI::Option* add_format(CLI::App* cmd, std::string& format, std::vector<std::string> allowed) {
  return cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(std::move(allowed)))->capture_default_str();
}

Tree load_tree(const std::string& path) { return io::tree_from_json(io::load(path)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double point trees of immersed spheres: invariant F, moves, search and realization", "dpt"};
  app.require_subcommand(1);
  std::function<void()> action;

  std::string format = "json";
  std::string tree_path, tree_path2, vertex1, vertex2, move_path, curve_path;

  auto* validate_cmd = app.add_subcommand("validate", "Check every structural rule of a tree");
  validate_cmd->add_option("tree", tree_path, "Tree JSON file")->required();
  add_format(validate_cmd, format, {"json", "pretty"});
  validate_cmd->callback([&] {
    action = [&] {
      const Tree t = load_tree(tree_path);
      const ValidationReport r = validate(t);
      if (format == "pretty") {
        out << (r.ok ? "ok" : "invalid") << '\n';
        for (const auto& v : r.violations) {
          out << "  " << rule_name(v.rule);
          for (const auto& w : v.witness) out << ' ' << w;
          out << '\n';
        }
      } else {
        out << io::to_json(r).dump() << '\n';
      }
      if (!r.ok) throw Failed{};
    };
  });

  auto* invariant_cmd = app.add_subcommand("invariant", "Compute F of a tree");
  invariant_cmd->add_option("tree", tree_path, "Tree JSON file")->required();
  add_format(invariant_cmd, format, {"json", "pretty"});
  invariant_cmd->callback([&] {
    action = [&] {
      const InvariantVector v = invariant_of(load_tree(tree_path));
      if (format == "pretty") out << to_string(v) << '\n';
      else out << io::to_json(v).dump() << '\n';
    };
  });

  auto* negate_cmd = app.add_subcommand("negate", "Negate every degree");
  negate_cmd->add_option("tree", tree_path, "Tree JSON file")->required();
  add_format(negate_cmd, format, {"json", "dot", "pretty"});
  negate_cmd->callback([&] {
    action = [&] {
      const Tree t = load_tree(tree_path);
      require_valid(t);
      emit_tree(out, negate(t), format);
    };
  });

  bool with_relabel = false;
  auto* sum_cmd = app.add_subcommand("sum", "Connected sum along two delta-1 vertices");
  sum_cmd->add_option("tree1", tree_path, "First tree")->required();
  sum_cmd->add_option("vertex1", vertex1, "Merge vertex in the first tree")->required();
  sum_cmd->add_option("tree2", tree_path2, "Second tree")->required();
  sum_cmd->add_option("vertex2", vertex2, "Merge vertex in the second tree")->required();
  sum_cmd->add_flag("--with-relabel", with_relabel, "Also print the relabeling of the second tree");
  add_format(sum_cmd, format, {"json", "dot", "pretty"});
  sum_cmd->callback([&] {
    action = [&] {
      const SumResult s = connected_sum(load_tree(tree_path), vertex1, load_tree(tree_path2), vertex2);
      if (with_relabel && format == "json") {
        out << Json{{"tree", io::to_json(s.tree)}, {"vertex_relabel", s.vertex_relabel}, {"edge_relabel", s.edge_relabel}}.dump()
            << '\n';
      } else {
        emit_tree(out, s.tree, format);
      }
    };
  });

  int max_reattach = MoveLimits{}.max_reattach_degree;
  auto* moves_cmd = app.add_subcommand("moves", "List every applicable move");
  moves_cmd->add_option("tree", tree_path, "Tree JSON file")->required();
  moves_cmd->add_option("--max-reattach", max_reattach, "Largest vertex degree offering reattach subsets")->capture_default_str();
  add_format(moves_cmd, format, {"json", "pretty"});
  moves_cmd->callback([&] {
    action = [&] {
      const auto moves = enumerate_moves(load_tree(tree_path), MoveLimits{max_reattach});
      if (format == "pretty") {
        for (const Move& m : moves) out << describe(m) << '\n';
      } else {
        Json arr = Json::array();
        for (const Move& m : moves) arr.push_back(io::to_json(m));
        out << arr.dump() << '\n';
      }
    };
  });

  auto* apply_cmd = app.add_subcommand("apply", "Apply a move, or an array of moves in order");
  apply_cmd->add_option("tree", tree_path, "Tree JSON file")->required();
  apply_cmd->add_option("moves", move_path, "Move JSON file")->required();
  add_format(apply_cmd, format, {"json", "dot", "pretty"});
  apply_cmd->callback([&] {
    action = [&] {
      Tree t = load_tree(tree_path);
      const Json j = io::load(move_path);
      std::vector<Move> moves;
      if (j.is_array()) {
        for (const auto& m : j) moves.push_back(io::move_from_json(m));
      } else {
        moves.push_back(io::move_from_json(j));
      }
      for (const Move& m : moves) t = apply_move(t, m);
      emit_tree(out, t, format);
    };
  });

  ReachLimits reach_limits;
  auto* reach_cmd = app.add_subcommand("reach", "Search for a move sequence between two trees");
  reach_cmd->add_option("source", tree_path, "Source tree")->required();
  reach_cmd->add_option("target", tree_path2, "Target tree")->required();
  reach_cmd->add_option("--max-steps", reach_limits.max_steps, "Search depth")->capture_default_str();
  reach_cmd->add_option("--max-vertices", reach_limits.max_vertices, "Largest intermediate tree")->capture_default_str();
  reach_cmd->add_option("--max-reattach", reach_limits.max_reattach_degree, "Reattach subset degree cap")->capture_default_str();
  reach_cmd->add_option("--max-states", reach_limits.max_states, "Distinct states kept")->capture_default_str();
  reach_cmd->callback([&] {
    action = [&] {
      const ReachResult r = reachable(load_tree(tree_path), load_tree(tree_path2), reach_limits);
      out << io::to_json(r).dump() << '\n';
    };
  });

  int max_vertices = 5;
  int delta_bound = 3;
  EnumerationLimits enum_limits;
  auto* enum_cmd = app.add_subcommand("enum", "Enumerate all valid trees up to isomorphism");
  enum_cmd->add_option("--max-vertices", max_vertices, "Vertex bound")->capture_default_str();
  enum_cmd->add_option("--delta-bound", delta_bound, "Bound on |delta|")->capture_default_str();
  enum_cmd->add_option("--max-candidates", enum_limits.max_candidates, "Resource limit")->capture_default_str();
  enum_cmd->callback([&] {
    action = [&] {
      for (const auto& e : enumerate_trees(max_vertices, delta_bound, enum_limits))
        out << e.code.hex() << ' ' << io::to_json(e.tree).dump() << '\n';
    };
  });

  std::vector<std::string> coeffs;
  auto* realize_cmd = app.add_subcommand("realize", "Build a tree with a prescribed invariant");
  realize_cmd->add_option("--coeff", coeffs, "Coefficient as k:c; repeatable")->required();
  add_format(realize_cmd, format, {"json", "dot", "pretty"});
  realize_cmd->callback([&] {
    action = [&] {
      InvariantVector h;
      for (const auto& c : coeffs) {
        auto [k, x] = parse_term(c);
        h.add_at(k, x);
      }
      const Tree t = realize(h);
      emit_tree(out, t, format);
      err << "invariant " << to_string(invariant_of(t)) << '\n';
    };
  });

  RevolutionOptions rev;
  double tol = 0;
  auto* curve_cmd = app.add_subcommand("from-curve", "Tree of the sphere of revolution of a generating curve");
  curve_cmd->add_option("curve", curve_path, "Curve JSON file")->required();
  curve_cmd->add_flag("--flip-orientation", rev.flip_orientation, "Use the opposite normal");
  curve_cmd->add_option("--tol", tol, "Override the curve's tolerance");
  curve_cmd->add_option("--min-angle", rev.min_angle_degrees, "Smallest accepted crossing angle, degrees")->capture_default_str();
  add_format(curve_cmd, format, {"json", "dot", "pretty"});
  curve_cmd->callback([&] {
    action = [&] {
      GeneratingCurve c = io::curve_from_json(io::load(curve_path));
      if (tol > 0) c.tolerance = tol;
      emit_tree(out, tree_of_revolution(c, rev), format);
    };
  });

  auto* dot_cmd = app.add_subcommand("dot", "Graphviz rendering of a tree");
  dot_cmd->add_option("tree", tree_path, "Tree JSON file")->required();
  dot_cmd->callback([&] { action = [&] { out << io::to_dot(load_tree(tree_path)); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (action) action();
    return 0;
  } catch (const Failed&) {
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return 1;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return 2;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return 2;
  } catch (const std::overflow_error& e) {
    err << "overflow: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace dpt::cli
