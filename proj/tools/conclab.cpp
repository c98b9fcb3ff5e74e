// conclab: batch runner for the concentration experiments.
//
//   conclab tube|free-group|folner|hamming|fibre|report --config <file>
//           [--seed N] [--svg] [--out DIR] [--threads N] [--<key> <value>]...
//
// Every config key can be overridden by a flag of the same name; values are
// read as JSON when they parse, as plain strings otherwise.
// Exit codes: 0 success, 2 usage or config error, 3 numerical non-convergence.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "conclab/experiments.hpp"
#include "conclab/incomplete_beta.hpp"

namespace ex = conclab::experiments;
using nlohmann::json;

namespace {

json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ex::ConfigError("cannot open config '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ex::ConfigError("config '" + path + "': " + e.what());
  }
}

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception&) {
    return text;
  }
}

struct Subcommand {
  ex::Kind kind;
  CLI::App* app = nullptr;
  std::string config;
  std::map<std::string, std::string> overrides;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concentration-of-measure and amenability experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ex::kToolVersion));

  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> threads;
  std::optional<std::string> out_dir;
  bool svg = false;

  std::vector<Subcommand> subs;
  subs.reserve(6);
  for (ex::Kind k : {ex::Kind::tube, ex::Kind::free_group, ex::Kind::folner,
                     ex::Kind::hamming, ex::Kind::fibre, ex::Kind::report}) {
    subs.push_back({k});
    Subcommand& s = subs.back();
    s.app = app.add_subcommand(ex::to_string(k), "run the " + ex::to_string(k) + " experiment");
    s.app->add_option("--config", s.config, "JSON config file");
    s.app->add_option("--seed", seed, "master seed");
    s.app->add_option("--threads", threads, "worker threads (0 = all cores)");
    s.app->add_option("--out", out_dir, "output directory");
    s.app->add_flag("--svg", svg, "write SVG line charts");
    for (const auto& key : ex::schema(k)) {
      if (key.name == "seed" || key.name == "threads" || key.name == "out" ||
          key.name == "svg" || key.name == "experiment") {
        continue;
      }
      s.app->add_option_function<std::string>(
          "--" + key.name,
          [&s, name = key.name](const std::string& v) { s.overrides[name] = v; },
          key.help + " (default " + key.default_value.dump() + ")");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    for (Subcommand& s : subs) {
      if (!s.app->parsed()) continue;
      json user = s.config.empty() ? json::object() : read_config(s.config);
      if (!user.is_object()) throw ex::ConfigError("config must be a JSON object");
      for (const auto& [key, value] : s.overrides) user[key] = parse_value(value);
      if (seed) user["seed"] = *seed;
      if (threads) user["threads"] = *threads;
      if (out_dir) user["out"] = *out_dir;
      if (svg) user["svg"] = true;
      const json cfg = ex::resolve_config(s.kind, user);
      const ex::Output out = ex::run(s.kind, cfg);
      const std::string dir = cfg.at("out").get<std::string>();
      ex::write_output(out, dir);
      for (const auto& [name, table] : out.tables) {
        std::cout << dir << "/" << name << " (" << table.rows.size() << " rows)\n";
      }
      for (const auto& f : out.files) std::cout << dir << "/" << f.first << "\n";
    }
  } catch (const ex::ConfigError& e) {
    std::cerr << "conclab: " << e.what() << "\n";
    return 2;
  } catch (const conclab::ConvergenceError& e) {
    std::cerr << "conclab: numerical non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "conclab: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
