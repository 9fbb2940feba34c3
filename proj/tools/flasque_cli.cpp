// Command-line front end.
//
//   flasque analyze --preset PGL --n 3
//   flasque resolve --kind flasque --input torus.json
//   flasque cohomology --degree 2 --subgroup 4 --preset torus_norm_one --group V4
//   flasque verify --suite all --seed 7
//   flasque catalog list
//
// Exit codes: 0 success, 1 input error, 2 failed cross-check.

#include "flasque.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using flasque::Json;

struct Flags {
  std::string input, preset, group, format, kind, suite;
  long n = 0, d = 0, rank = 0;
  int degree = -1;
  long subgroup = -1;
  uint64_t seed = 0;
  size_t order_cap = 0;
  bool matrices = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw flasque::InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Merges command-line flags into one input document.
Json apply_flags(Json doc, const std::string& task, const Flags& f, const CLI::App& cmd) {
  if (!doc.is_object()) throw flasque::InputError("/: expected a JSON object");
  auto given = [&](const char* name) {
    const CLI::Option* o = cmd.get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  doc["task"] = task;
  if (!f.preset.empty()) {
    if (doc.contains("preset") || doc.contains("root_datum") || doc.contains("module"))
      throw flasque::InputError("give the input either with --input or with --preset, not both");
    doc["preset"] = f.preset;
  }
  if (given("--n")) doc["n"] = f.n;
  if (given("--d")) doc["d"] = f.d;
  if (given("--rank")) doc["rank"] = f.rank;
  if (given("--group")) doc["group"] = f.group;
  if (given("--format")) doc["format"] = f.format;
  Json& o = doc["options"];
  if (o.is_null()) o = Json::object();
  if (given("--seed")) o["seed"] = f.seed;
  if (given("--order-cap")) o["order_cap"] = f.order_cap;
  if (given("--kind")) o["kind"] = f.kind;
  if (given("--degree")) o["degree"] = f.degree;
  if (given("--subgroup")) o["subgroup"] = f.subgroup;
  if (given("--suite")) o["suite"] = f.suite;
  if (given("--matrices")) o["matrices"] = true;
  return doc;
}

void add_input_flags(CLI::App* c, Flags& f) {
  c->add_option("--input", f.input, "Input document (schema 1); a JSON list runs a batch");
  c->add_option("--preset", f.preset, "Preset name (see `catalog list`)");
  c->add_option("--n", f.n, "Preset parameter n");
  c->add_option("--d", f.d, "Preset parameter d (SL_mod_mu)");
  c->add_option("--rank", f.rank, "Preset parameter rank (torus_split)");
  c->add_option("--group", f.group, "Catalog group for torus presets");
  c->add_option("--order-cap", f.order_cap, "Largest group order accepted");
  c->add_flag("--matrices", f.matrices, "Include resolution matrices");
}

void add_common_flags(CLI::App* c, Flags& f) {
  c->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  c->add_option("--seed", f.seed, "Seed for randomized steps");
}

int emit(const std::vector<flasque::Report>& reports, bool batch, bool text, double seconds) {
  int code = 0;
  if (text) {
    for (size_t i = 0; i < reports.size(); ++i) {
      if (batch) std::cout << "== job " << i + 1 << " ==\n";
      std::cout << reports[i].text();
    }
    std::cout << "elapsed: " << seconds << "s\n";
  } else if (batch) {
    Json all = Json::array();
    for (const auto& r : reports) all.push_back(r.document);
    std::cout << all.dump(2) << "\n";
  } else {
    std::cout << reports.front().json();
  }
  for (const auto& r : reports) code = std::max(code, r.exit_code);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flasque resolutions, Galois lattices and invariants of reductive groups"};
  app.require_subcommand(1);
  Flags f;
  auto* analyze = app.add_subcommand("analyze", "pi1, Pic, unramified Brauer group, flags and cross-checks");
  auto* resolve = app.add_subcommand("resolve", "Coflasque or flasque resolution of pi1");
  auto* cohom = app.add_subcommand("cohomology", "H^i(h, pi1) for a subgroup representative");
  auto* verify = app.add_subcommand("verify", "Seeded property suites");
  auto* catalog = app.add_subcommand("catalog", "List presets and groups");
  for (auto* c : {analyze, resolve, cohom}) {
    add_input_flags(c, f);
    add_common_flags(c, f);
  }
  resolve->add_option("--kind", f.kind, "Resolution kind")->check(CLI::IsMember({"coflasque", "flasque"}));
  cohom->add_option("--degree", f.degree, "Degree 0, 1 or 2")->check(CLI::Range(0, 2));
  cohom->add_option("--subgroup", f.subgroup, "Subgroup representative id (see report)");
  add_common_flags(verify, f);
  verify->add_option("--suite", f.suite, "Suite")
      ->check(CLI::IsMember({"all", "resolutions", "brauer", "appendixA", "pic"}));
  add_common_flags(catalog, f);
  std::string what;
  catalog->add_option("what", what, "Only `list` is supported")->check(CLI::IsMember({"list"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string task = cmd->get_name();
  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<Json> docs;
    bool batch = false;
    if (!f.input.empty()) {
      Json parsed = flasque::parse_json_text(read_file(f.input));
      if (parsed.is_array()) {
        batch = true;
        for (auto& d : parsed) docs.push_back(d);
      } else {
        docs.push_back(std::move(parsed));
      }
    } else {
      docs.push_back(Json::object());
    }
    if (docs.empty()) throw flasque::InputError("/: empty batch");
    std::vector<flasque::Report> reports;
    bool text = false;
    for (size_t i = 0; i < docs.size(); ++i) {
      flasque::JobSpec job;
      try {
        job = flasque::job_from_json(apply_flags(docs[i], task, f, *cmd));
      } catch (const flasque::InputError& e) {
        if (batch) throw flasque::InputError("job " + std::to_string(i + 1) + ": " + e.what());
        throw;
      }
      if (i == 0) text = job.format == flasque::OutputFormat::Text;
      if (job.task != flasque::Task::Verify && job.task != flasque::Task::Catalog && !job.has_input())
        throw flasque::InputError("no input: give --preset or --input");
      reports.push_back(flasque::run(job));
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(reports, batch, text, seconds);
  } catch (const flasque::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
