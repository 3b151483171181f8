#include <CLI11.hpp>

#include "hybridlink/commands.hpp"
#include "hybridlink/version.hpp"

#include <iostream>

namespace {

using hybridlink::ResultTable;
using hybridlink::Scenario;

struct CommonOpts {
  std::string scenario_path;
  std::string out_path;
  std::vector<std::string> params;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--scenario", opts.scenario_path, "scenario JSON file");
  cmd->add_option("--out", opts.out_path, "output CSV path (default: stdout)");
  cmd->add_option("--param", opts.params, "key=value override (wins over the scenario file)");
}

Scenario build_scenario(const CommonOpts& opts) {
  Scenario s = opts.scenario_path.empty() ? Scenario() : Scenario::from_file(opts.scenario_path);
  for (const auto& kv : opts.params) s.apply_override(kv);
  return s;
}

void emit(const ResultTable& table, const CommonOpts& opts) {
  if (opts.out_path.empty()) {
    std::cout << table.to_csv();
  } else {
    table.write(opts.out_path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid entanglement swapping: closed forms, oracles, figure data"};
  app.set_version_flag("--version", hybridlink::kVersion);
  app.require_subcommand(1);

  struct Cmd {
    std::string name;
    std::string desc;
    ResultTable (*fn)(const Scenario&);
    std::vector<std::string> aliases;
  };
  const std::vector<Cmd> cmds = {
      {"fig2", "lossy hybrid-state entanglement vs alpha", hybridlink::cmd_fig2, {}},
      {"alpha-sweep", "post-swap entanglement vs alpha at fixed distances",
       hybridlink::cmd_alpha_sweep, {"fig3"}},
      {"distance-sweep", "post-swap entanglement vs distance",
       hybridlink::cmd_distance_sweep, {"fig4"}},
      {"fig5", "maximum distance vs alpha at key-rate targets", hybridlink::cmd_fig5, {}},
      {"fig6", "key rate vs distance per detector efficiency", hybridlink::cmd_fig6, {}},
      {"fidelity", "loss-vs-thermal channel fidelity sweep", hybridlink::cmd_fidelity, {}},
      {"point", "all protocol quantities at one parameter point", hybridlink::cmd_point, {}},
  };

  std::vector<std::unique_ptr<CommonOpts>> opt_blocks;
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.desc);
    for (const auto& alias : c.aliases) sub->alias(alias);
    auto opts = std::make_unique<CommonOpts>();
    add_common(sub, *opts);
    CommonOpts* optr = opts.get();
    auto fn = c.fn;
    sub->callback([fn, optr] { emit(fn(build_scenario(*optr)), *optr); });
    opt_blocks.push_back(std::move(opts));
  }

  auto* check = app.add_subcommand("oracle-check", "analytic-vs-oracle equivalence suites");
  auto check_opts = std::make_unique<CommonOpts>();
  add_common(check, *check_opts);
  bool check_failed = false;
  check->callback([&check_failed, optr = check_opts.get()] {
    const auto rep = hybridlink::cmd_oracle_check(build_scenario(*optr));
    std::cout << rep.to_text();
    check_failed = !rep.all_pass;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::domain_error& e) {
    std::cerr << "error: validation: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: validation: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: runtime: " << e.what() << "\n";
    return 4;
  }
  return check_failed ? 5 : 0;
}
