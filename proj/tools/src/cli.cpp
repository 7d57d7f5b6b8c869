#include "cli.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "experiments.hpp"

namespace orlicz::cli {

namespace {

// flag name -> config key, and whether the value is an integer
struct FlagSpec {
  std::string flag, key;
  bool integer = false;
  std::string help;
};

const std::map<std::string, std::vector<FlagSpec>>& flag_table() {
  static const std::map<std::string, std::vector<FlagSpec>> t = {
      {"young", {{"young", "young", false, "family literal or JSON file"}, {"points", "points", true, "test points"}}},
      {"balance", {{"pair", "pair", false, "A:B"}, {"expect", "expect", false, "admissible | inadmissible"}}},
      {"norm",
       {{"field", "field", false, "field CSV"},
        {"u", "u", false, "function id or CSV sampled on --domain"},
        {"domain", "domain", false, "disk | square | polygon JSON"},
        {"grid", "grid", true, "cells across"},
        {"young", "young", false, "Young function"}}},
      {"bogovskii",
       {{"domain", "domain", false, "disk | square | lshape | polygon JSON"},
        {"f", "f", false, "function id or CSV"},
        {"grid", "grid", true, "cells across"},
        {"quad", "quad", true, "Gauss nodes per ray"},
        {"pair", "pair", false, "A:B"}}},
      {"decomposition",
       {{"f", "f", false, "function id or CSV"}, {"grid", "grid", true, "cells across"}, {"pair", "pair", false, "A:B"}}},
      {"negnorm",
       {{"u", "u", false, "function id or CSV"},
        {"pair", "pair", false, "A:B"},
        {"family-depth", "depth", true, "dyadic depth"},
        {"domain", "domain", false, "disk | square | polygon JSON"},
        {"grid", "grid", true, "cells across"},
        {"v", "v", false, "function for the sup-approximation"}}},
      {"fem",
       {{"mesh", "mesh", false, "square:1/4,1/8 | polygon JSON"},
        {"pair", "pair", false, "A:B"},
        {"k", "k", true, "velocity degree"},
        {"m", "m", true, "pressure degree"},
        {"law", "law", false, "power:nu:kappa:p | eyring:nu:lambda"},
        {"pi", "pi", false, "manufactured pressure id"},
        {"young", "young", false, "Young function for projection"}}},
  };
  return t;
}

struct Common {
  std::string config, out, name;
  std::optional<long long> seed;
  int jobs = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "JSON config file");
  app->add_option("--out", c.out, "output directory");
  app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::Range(1, 256));
  app->add_option("--name", c.name, "report name");
  app->add_option("--seed", c.seed, "random seed");
}

std::filesystem::path output_dir(const Common& c, const Json& config) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("ORLICZ_OUT"); env && *env) return env;
  if (config.is_object() && config.contains("output")) {
    if (!config["output"].is_string()) throw UsageError("config: 'output' must be a string");
    return config["output"].get<std::string>();
  }
  return "out";
}

int finish(const Report& r, const std::filesystem::path& dir, bool print) {
  write_report(r, dir);
  if (print) std::cout << dump(r.to_json());
  for (const auto& a : r.assertions)
    if (!a.pass) std::cerr << "FAIL " << r.name << ": " << a.name << (a.detail.empty() ? "" : " (" + a.detail + ")") << "\n";
  return r.passed() ? 0 : 1;
}

struct Failure {
  std::string name, what;
  bool usage = false;
};

// Entries of {"experiments": [...]}, run on up to `jobs` threads; reports come back in order.
int run_many(const Json& doc, const std::filesystem::path& base, const Common& c) {
  for (const auto& [k, v] : doc.items())
    if (k != "experiments" && k != "output") throw UsageError("config: unknown top-level key '" + k + "'");
  const Json& list = doc["experiments"];
  if (!list.is_array() || list.empty()) throw UsageError("config: 'experiments' must be a non-empty array");
  std::vector<Json> entries;
  std::vector<std::filesystem::path> bases;
  for (const auto& e : list) {
    if (e.is_string()) {
      std::filesystem::path p = e.get<std::string>();
      if (p.is_relative()) p = base / p;
      entries.push_back(load_json_file(p.string()));
      bases.push_back(p.parent_path());
    } else {
      entries.push_back(e);
      bases.push_back(base);
    }
  }
  const auto dir = output_dir(c, doc);
  const std::size_t n = entries.size();
  std::vector<std::optional<Report>> reports(n);
  std::vector<std::optional<Failure>> failures(n);
  std::mutex m;
  std::size_t next = 0;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(m);
        if (next == n) return;
        i = next++;
      }
      const std::string label = entries[i].value("name", entries[i].value("experiment", std::string("?")));
      try {
        reports[i] = run_experiment(entries[i], {1, bases[i]});
      } catch (const UsageError& e) {
        failures[i] = Failure{label, e.what(), true};
      } catch (const std::exception& e) {
        failures[i] = Failure{label, e.what(), false};
      }
    }
  };
  const int threads = std::min<int>(c.jobs, static_cast<int>(n));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  Json summary = {{"schema", 1}, {"experiments", Json::array()}};
  for (std::size_t i = 0; i < n; ++i) {
    if (failures[i]) {
      std::cerr << "orlicz: " << failures[i]->name << ": " << failures[i]->what << "\n";
      summary["experiments"].push_back({{"name", failures[i]->name}, {"passed", false}, {"error", failures[i]->what}});
      code = std::max(code, failures[i]->usage ? 2 : 1);
      continue;
    }
    const Report& r = *reports[i];
    if (finish(r, dir, false) != 0) code = std::max(code, 1);
    summary["experiments"].push_back({{"name", r.name}, {"experiment", r.experiment}, {"passed", r.passed()}});
  }
  summary["passed"] = code == 0;
  std::cout << dump(summary);
  return code;
}

Json config_from_flags(const std::string& id, const Common& c, const std::map<std::string, std::string>& flags,
                       const std::string& verb) {
  Json cfg = Json::object();
  if (!c.config.empty()) {
    cfg = load_json_file(c.config);
    if (!cfg.is_object() || cfg.contains("experiments"))
      throw UsageError("--config: expected a single experiment object for '" + id + "'");
    if (cfg.contains("experiment") && cfg["experiment"] != id)
      throw UsageError("--config: file is for experiment '" + cfg["experiment"].get<std::string>() + "', not '" + id +
                       "'");
  }
  cfg["experiment"] = id;
  if (!verb.empty()) cfg["verb"] = verb;
  for (const auto& spec : flag_table().at(id)) {
    const auto it = flags.find(spec.flag);
    if (it == flags.end() || it->second.empty()) continue;
    if (spec.integer) {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing");
        cfg[spec.key] = v;
      } catch (const std::exception&) {
        throw UsageError("invalid --" + spec.flag + " '" + it->second + "': expected an integer");
      }
    } else {
      cfg[spec.key] = it->second;
    }
  }
  if (!c.name.empty()) cfg["name"] = c.name;
  if (c.seed) cfg["seed"] = *c.seed;
  return cfg;
}

}  // namespace

int main_cli(int argc, char** argv) {
  // "run <experiment> ..." is the same as "<experiment> ..."
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() >= 2 && args[0] == "run" && !args[1].empty() && args[1][0] != '-') args.erase(args.begin());
  std::reverse(args.begin(), args.end());

  CLI::App app{"Orlicz-space experiments: Young functions, Bogovskii operator, negative norms, FEM pressure"};
  app.require_subcommand(1);
  std::map<std::string, Common> common;
  std::map<std::string, std::map<std::string, std::string>> flags;
  std::string verb;

  CLI::App* run = app.add_subcommand("run", "run a config file (one experiment or {\"experiments\": [...]})");
  add_common(run, common["run"]);
  for (const auto& [id, specs] : flag_table()) {
    const auto* e = find_experiment(id);
    CLI::App* sub = app.add_subcommand(id, e ? e->summary : id);
    add_common(sub, common[id]);
    if (id == "fem")
      sub->add_option("verb", verb, "infsup | pressure | projection")
          ->required()
          ->check(CLI::IsMember({"infsup", "pressure", "projection"}));
    for (const auto& s : specs) sub->add_option("--" + s.flag, flags[id][s.flag], s.help);
  }

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      const Common& c = common["run"];
      if (c.config.empty()) throw UsageError("run: --config or an experiment name is required");
      const Json doc = load_json_file(c.config);
      const auto base = std::filesystem::path(c.config).parent_path();
      if (doc.is_object() && doc.contains("experiments")) return run_many(doc, base, c);
      Json cfg = doc;
      if (cfg.is_object()) {
        if (!c.name.empty()) cfg["name"] = c.name;
        if (c.seed) cfg["seed"] = *c.seed;
      }
      const Report r = run_experiment(cfg, {c.jobs, base});
      return finish(r, output_dir(c, cfg), true);
    }
    for (const auto& [id, specs] : flag_table()) {
      CLI::App* sub = app.get_subcommand(id);
      if (!sub->parsed()) continue;
      const Common& c = common[id];
      const Json cfg = config_from_flags(id, c, flags[id], id == "fem" ? verb : "");
      const auto base = c.config.empty() ? std::filesystem::path() : std::filesystem::path(c.config).parent_path();
      try {
        const Report r = run_experiment(cfg, {c.jobs, base});
        return finish(r, output_dir(c, cfg), true);
      } catch (const UsageError&) {
        throw;
      } catch (const std::exception& e) {
        std::cerr << "orlicz: " << id << ": " << e.what() << "\n";
        return 1;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "orlicz: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "orlicz: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace orlicz::cli
