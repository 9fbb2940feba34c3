#pragma once

// Input documents (schema 1) and job specifications.
//
// A document names exactly one input source: a preset ("preset" plus its
// parameters), or inline data ("group" with "root_datum" or "module").
// Groups are catalog names or permutation generators keyed by name, each a
// cycle string "(1 2)(3 4)" or a 1-based image list [2, 1, 4, 3]. Matrices are
// lists of rows; "roots", "coroots" and "relations" are lists of vectors.

#include "flasque/errors.hpp"
#include "flasque/reductive.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace flasque {

using Json = nlohmann::ordered_json;

enum class Task { Analyze, Resolve, Cohomology, Verify, Catalog };
enum class OutputFormat { Text, Json };

inline std::string to_string(Task t) {
  switch (t) {
    case Task::Analyze: return "analyze";
    case Task::Resolve: return "resolve";
    case Task::Cohomology: return "cohomology";
    case Task::Verify: return "verify";
    case Task::Catalog: return "catalog";
  }
  return "analyze";
}

inline Task task_from_string(const std::string& s) {
  for (Task t : {Task::Analyze, Task::Resolve, Task::Cohomology, Task::Verify, Task::Catalog})
    if (to_string(t) == s) return t;
  throw InputError("/task: unknown task \"" + s + "\"");
}

struct JobOptions {
  size_t order_cap = kDefaultOrderCap;
  uint64_t seed = 0;
  PermutationSearchOptions search;
  ResolutionKind kind = ResolutionKind::Coflasque;
  int degree = 1;
  size_t subgroup = 0;  // index into the subgroup representatives
  std::string suite = "all";
  bool include_matrices = false;

  friend bool operator==(const JobOptions& a, const JobOptions& b) {
    return a.order_cap == b.order_cap && a.seed == b.seed && a.search.coefficient_bound == b.search.coefficient_bound &&
           a.search.candidate_budget == b.search.candidate_budget &&
           a.search.vector_budget == b.search.vector_budget && a.kind == b.kind && a.degree == b.degree &&
           a.subgroup == b.subgroup && a.suite == b.suite && a.include_matrices == b.include_matrices;
  }
};

struct PresetRef {
  std::string name;
  PresetParams params;
  friend bool operator==(const PresetRef&, const PresetRef&) = default;
};

struct JobSpec {
  Task task = Task::Analyze;
  OutputFormat format = OutputFormat::Json;
  std::optional<PresetRef> preset;
  Json inline_input;  // {"group": ..., "root_datum" | "module": ...} when there is no preset
  JobOptions options;

  [[nodiscard]] bool has_input() const { return preset.has_value() || !inline_input.is_null(); }
  [[nodiscard]] Json to_json() const;
  friend bool operator==(const JobSpec& a, const JobSpec& b) { return a.to_json() == b.to_json(); }
};

namespace io {

inline std::string sub(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string sub(const std::string& path, size_t i) { return path + "/" + std::to_string(i); }

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) {
  throw InputError((path.empty() ? std::string("/") : path) + ": " + msg);
}

inline Integer parse_integer(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
      fail(path, "not an integer: " + j.get<std::string>());
    }
  }
  fail(path, "expected an integer");
}

inline Json integer_json(const Integer& x) {
  if (x.is_small()) return Json(static_cast<long long>(x.to_int64()));
  return Json(x.str());
}

inline long parse_long(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return static_cast<long>(j.get<long long>());
}

inline size_t parse_count(const Json& j, const std::string& path) {
  long v = parse_long(j, path);
  if (v < 0) fail(path, "expected a non-negative integer");
  return static_cast<size_t>(v);
}

inline IntVector parse_vector(const Json& j, const std::string& path, size_t len) {
  if (!j.is_array()) fail(path, "expected a list of integers");
  if (j.size() != len) fail(path, "expected " + std::to_string(len) + " entries, got " + std::to_string(j.size()));
  IntVector v;
  for (size_t i = 0; i < j.size(); ++i) v.push_back(parse_integer(j[i], sub(path, i)));
  return v;
}

// Rows of a rows x cols matrix.
inline IntMatrix parse_matrix(const Json& j, const std::string& path, size_t rows, size_t cols) {
  if (!j.is_array()) fail(path, "expected a matrix (list of rows)");
  if (j.size() != rows) fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  IntMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r) {
    IntVector row = parse_vector(j[r], sub(path, r), cols);
    for (size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

// A list of vectors of length len, as the columns of a len x k matrix.
inline IntMatrix parse_columns(const Json& j, const std::string& path, size_t len) {
  if (!j.is_array()) fail(path, "expected a list of vectors");
  IntMatrix m(len, j.size());
  for (size_t c = 0; c < j.size(); ++c) m.set_column(c, parse_vector(j[c], sub(path, c), len));
  return m;
}

inline Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(integer_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json columns_json(const IntMatrix& m) { return matrix_json(transpose(m)); }

struct ParsedGroup {
  GroupPtr group;
  std::vector<std::string> generator_names;
};

inline ParsedGroup parse_group(const Json& j, const std::string& path, size_t order_cap) {
  ParsedGroup out;
  if (j.is_null()) {
    out.group = FiniteGroup::trivial();
    return out;
  }
  if (j.is_string()) {
    try {
      out.group = named_group(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
    if (out.group->order() > order_cap)
      fail(path, "group order " + std::to_string(out.group->order()) + " exceeds the order cap " +
                     std::to_string(order_cap));
    for (size_t i = 0; i < out.group->num_generators(); ++i) out.generator_names.push_back("g" + std::to_string(i + 1));
    return out;
  }
  if (!j.is_object()) fail(path, "expected a group name or an object with \"generators\"");
  if (!j.contains("generators")) fail(sub(path, "generators"), "missing");
  const Json& gens = j["generators"];
  if (!gens.is_object()) fail(sub(path, "generators"), "expected an object mapping names to permutations");
  size_t degree = 0;
  if (j.contains("degree")) degree = parse_count(j["degree"], sub(path, "degree"));
  for (const auto& [name, p] : gens.items()) {
    if (p.is_array())
      for (size_t i = 0; i < p.size(); ++i) degree = std::max(degree, parse_count(p[i], sub(sub(sub(path, "generators"), name), i)));
  }
  for (const auto& [name, p] : gens.items()) {
    if (!p.is_string()) continue;
    std::string s = p.get<std::string>();
    size_t num = 0;
    bool in_num = false;
    for (char ch : s) {
      if (ch >= '0' && ch <= '9') {
        num = (in_num ? num * 10 : 0) + static_cast<size_t>(ch - '0');
        in_num = true;
        degree = std::max(degree, num);
      } else {
        in_num = false;
      }
    }
  }
  if (degree == 0) degree = 1;
  std::vector<Permutation> perms;
  for (const auto& [name, p] : gens.items()) {
    const std::string gp = sub(sub(path, "generators"), name);
    Permutation perm;
    if (p.is_string()) {
      try {
        perm = parse_cycles(p.get<std::string>(), degree);
      } catch (const std::invalid_argument& e) {
        fail(gp, e.what());
      }
    } else if (p.is_array()) {
      if (p.size() != degree) fail(gp, "image list must have " + std::to_string(degree) + " entries");
      std::vector<bool> seen(degree);
      for (size_t i = 0; i < degree; ++i) {
        size_t v = parse_count(p[i], sub(gp, i));
        if (v < 1 || v > degree || seen[v - 1]) fail(gp, "not a permutation of 1.." + std::to_string(degree));
        seen[v - 1] = true;
        perm.push_back(static_cast<int>(v - 1));
      }
    } else {
      fail(gp, "expected a cycle string or an image list");
    }
    out.generator_names.push_back(name);
    perms.push_back(std::move(perm));
  }
  try {
    out.group = FiniteGroup::from_permutations(perms, degree, order_cap, j.value("name", std::string()));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return out;
}

// Action matrices keyed by generator name, or a list in generator order.
inline std::vector<IntMatrix> parse_action(const Json& j, const std::string& path, const ParsedGroup& g, size_t n) {
  std::vector<IntMatrix> out;
  const auto& names = g.generator_names;
  if (names.empty()) {
    if (!j.is_null() && !(j.is_object() && j.empty()) && !(j.is_array() && j.empty()))
      fail(path, "the group has no generators, so no action matrices are expected");
    return out;
  }
  if (j.is_null()) fail(sub(path, names.front()), "missing action matrix for generator \"" + names.front() + "\"");
  if (j.is_array()) {
    if (j.size() != names.size())
      fail(path, "expected " + std::to_string(names.size()) + " action matrices, got " + std::to_string(j.size()));
    for (size_t i = 0; i < names.size(); ++i) out.push_back(parse_matrix(j[i], sub(path, i), n, n));
    return out;
  }
  if (!j.is_object()) fail(path, "expected an object mapping generator names to matrices");
  for (const auto& [key, v] : j.items())
    if (std::find(names.begin(), names.end(), key) == names.end()) fail(sub(path, key), "unknown generator \"" + key + "\"");
  for (const auto& name : names) {
    if (!j.contains(name)) fail(sub(path, name), "missing action matrix for generator \"" + name + "\"");
    out.push_back(parse_matrix(j[name], sub(path, name), n, n));
  }
  return out;
}

inline ReductiveDatum build_inline(const Json& doc, size_t order_cap) {
  ParsedGroup g = parse_group(doc.contains("group") ? doc["group"] : Json(), "/group", order_cap);
  ReductiveDatum d;
  d.label = doc.value("label", std::string("custom"));
  try {
    if (doc.contains("root_datum")) {
      const Json& rd = doc["root_datum"];
      if (!rd.is_object()) fail("/root_datum", "expected an object");
      if (!rd.contains("rank")) fail("/root_datum/rank", "missing");
      size_t n = parse_count(rd["rank"], "/root_datum/rank");
      IntMatrix roots = rd.contains("roots") ? parse_columns(rd["roots"], "/root_datum/roots", n) : IntMatrix(n, 0);
      IntMatrix coroots =
          rd.contains("coroots") ? parse_columns(rd["coroots"], "/root_datum/coroots", n) : IntMatrix(n, 0);
      auto act = parse_action(rd.contains("action") ? rd["action"] : Json(), "/root_datum/action", g, n);
      RootDatum datum{GLattice(g.group, n, std::move(act)), std::move(roots), std::move(coroots)};
      auto diag = validate_root_datum(datum);
      if (!diag.ok()) {
        std::string msg = "invalid root datum:";
        for (const auto& p : diag.problems) msg += " " + p + ";";
        msg.pop_back();
        fail("/root_datum", msg);
      }
      d.root_datum = std::move(datum);
    } else if (doc.contains("module")) {
      const Json& m = doc["module"];
      if (!m.is_object()) fail("/module", "expected an object");
      if (!m.contains("rank")) fail("/module/rank", "missing");
      size_t n = parse_count(m["rank"], "/module/rank");
      auto act = parse_action(m.contains("action") ? m["action"] : Json(), "/module/action", g, n);
      IntMatrix rel = m.contains("relations") ? parse_columns(m["relations"], "/module/relations", n) : IntMatrix(n, 0);
      d.direct_pi1 = FgGModule(g.group, n, std::move(act), std::move(rel));
      if (m.contains("torus")) {
        if (!m["torus"].is_boolean()) fail("/module/torus", "expected true or false");
        d.torus = m["torus"].get<bool>();
        if (d.torus && !d.direct_pi1->structure().torsion().is_trivial())
          fail("/module/torus", "a torus has a torsion-free fundamental group");
      }
    } else {
      fail("/", "inline input needs \"root_datum\" or \"module\"");
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(doc.contains("root_datum") ? "/root_datum" : "/module", e.what());
  }
  return d;
}

inline const std::vector<std::string>& top_level_keys() {
  static const std::vector<std::string> keys = {"schema", "task",     "format", "preset",     "n",      "d",
                                                "rank",   "group",    "label",  "root_datum", "module", "options"};
  return keys;
}

inline JobOptions parse_options(const Json& j) {
  JobOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) fail("/options", "expected an object");
  for (const auto& [key, v] : j.items()) {
    const std::string p = sub("/options", key);
    if (key == "order_cap") {
      o.order_cap = parse_count(v, p);
    } else if (key == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        fail(p, "expected a non-negative integer");
      o.seed = v.get<uint64_t>();
    } else if (key == "coefficient_bound") {
      o.search.coefficient_bound = static_cast<int>(parse_count(v, p));
    } else if (key == "candidate_budget") {
      o.search.candidate_budget = parse_count(v, p);
    } else if (key == "vector_budget") {
      o.search.vector_budget = parse_count(v, p);
    } else if (key == "kind") {
      if (!v.is_string()) fail(p, "expected \"coflasque\" or \"flasque\"");
      std::string k = v.get<std::string>();
      if (k == "coflasque") o.kind = ResolutionKind::Coflasque;
      else if (k == "flasque") o.kind = ResolutionKind::Flasque;
      else fail(p, "expected \"coflasque\" or \"flasque\"");
    } else if (key == "degree") {
      long deg = parse_long(v, p);
      if (deg < 0 || deg > 2) fail(p, "degree must be 0, 1 or 2");
      o.degree = static_cast<int>(deg);
    } else if (key == "subgroup") {
      o.subgroup = parse_count(v, p);
    } else if (key == "suite") {
      if (!v.is_string()) fail(p, "expected a suite name");
      o.suite = v.get<std::string>();
      static const std::vector<std::string> suites = {"all", "resolutions", "brauer", "appendixA", "pic"};
      if (std::find(suites.begin(), suites.end(), o.suite) == suites.end()) fail(p, "unknown suite \"" + o.suite + "\"");
    } else if (key == "matrices") {
      if (!v.is_boolean()) fail(p, "expected true or false");
      o.include_matrices = v.get<bool>();
    } else {
      fail(p, "unknown option");
    }
  }
  return o;
}

inline std::string line_column(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace io

inline JobSpec job_from_json(const Json& doc) {
  using namespace io;
  if (!doc.is_object()) fail("", "expected a JSON object");
  for (const auto& [key, v] : doc.items())
    if (std::find(top_level_keys().begin(), top_level_keys().end(), key) == top_level_keys().end())
      fail(sub("", key), "unknown field");
  if (doc.contains("schema") && !(doc["schema"].is_number_integer() && doc["schema"].get<long long>() == 1))
    fail("/schema", "unsupported schema version (expected 1)");
  JobSpec job;
  if (doc.contains("task")) {
    if (!doc["task"].is_string()) fail("/task", "expected a string");
    job.task = task_from_string(doc["task"].get<std::string>());
  }
  if (doc.contains("format")) {
    std::string f = doc["format"].is_string() ? doc["format"].get<std::string>() : "";
    if (f == "json") job.format = OutputFormat::Json;
    else if (f == "text") job.format = OutputFormat::Text;
    else fail("/format", "expected \"text\" or \"json\"");
  }
  job.options = parse_options(doc.contains("options") ? doc["options"] : Json());
  const bool has_preset = doc.contains("preset");
  const bool has_inline = doc.contains("root_datum") || doc.contains("module");
  if (has_preset && has_inline) fail("/", "give either \"preset\" or inline \"root_datum\"/\"module\", not both");
  if (doc.contains("root_datum") && doc.contains("module")) fail("/", "give either \"root_datum\" or \"module\", not both");
  if (has_preset) {
    if (!doc["preset"].is_string()) fail("/preset", "expected a preset name");
    PresetRef ref;
    ref.name = doc["preset"].get<std::string>();
    if (doc.contains("n")) ref.params.n = parse_long(doc["n"], "/n");
    if (doc.contains("d")) ref.params.d = parse_long(doc["d"], "/d");
    if (doc.contains("rank")) ref.params.rank = parse_long(doc["rank"], "/rank");
    if (doc.contains("group")) {
      if (!doc["group"].is_string()) fail("/group", "presets take a catalog group name");
      ref.params.group = doc["group"].get<std::string>();
    }
    if (doc.contains("label")) fail("/label", "labels are only accepted with inline input");
    try {
      (void)preset(ref.name, ref.params);
    } catch (const std::invalid_argument& e) {
      fail("/preset", e.what());
    }
    job.preset = std::move(ref);
  } else if (has_inline) {
    for (const char* k : {"n", "d", "rank"})
      if (doc.contains(k)) fail(sub("", k), "preset parameter given without \"preset\"");
    Json in = Json::object();
    for (const char* k : {"group", "label", "root_datum", "module"})
      if (doc.contains(k)) in[k] = doc[k];
    (void)build_inline(in, job.options.order_cap);  // full audit now, so errors surface at parse time
    job.inline_input = std::move(in);
  } else {
    for (const char* k : {"n", "d", "rank", "group", "label"})
      if (doc.contains(k)) fail(sub("", k), "given without an input source");
  }
  return job;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string what = e.what();
    auto pos = what.find("syntax error");
    throw InputError("malformed JSON at " + io::line_column(text, e.byte) + ": " +
                     (pos == std::string::npos ? what : what.substr(pos)));
  }
}

// Parses a schema-1 document. Errors carry a line and column for malformed
// JSON and a JSON pointer for schema violations.
inline JobSpec parse_input(const std::string& text) { return job_from_json(parse_json_text(text)); }

inline Json JobSpec::to_json() const {
  Json j = Json::object();
  j["schema"] = 1;
  j["task"] = flasque::to_string(task);
  j["format"] = format == OutputFormat::Json ? "json" : "text";
  if (preset) {
    j["preset"] = preset->name;
    if (preset->params.n) j["n"] = preset->params.n;
    if (preset->params.d) j["d"] = preset->params.d;
    if (preset->params.rank) j["rank"] = preset->params.rank;
    if (!preset->params.group.empty()) j["group"] = preset->params.group;
  } else if (!inline_input.is_null()) {
    for (const auto& [k, v] : inline_input.items()) j[k] = v;
  }
  Json o = Json::object();
  o["order_cap"] = options.order_cap;
  o["seed"] = options.seed;
  o["coefficient_bound"] = options.search.coefficient_bound;
  o["candidate_budget"] = options.search.candidate_budget;
  o["vector_budget"] = options.search.vector_budget;
  o["kind"] = flasque::to_string(options.kind);
  o["degree"] = options.degree;
  o["subgroup"] = options.subgroup;
  o["suite"] = options.suite;
  o["matrices"] = options.include_matrices;
  j["options"] = std::move(o);
  return j;
}

inline ReductiveDatum materialize(const JobSpec& job) {
  if (job.preset) {
    auto d = preset(job.preset->name, job.preset->params);
    if (d.group()->order() > job.options.order_cap)
      throw InputError("/group: group order " + std::to_string(d.group()->order()) + " exceeds the order cap " +
                       std::to_string(job.options.order_cap));
    return d;
  }
  if (job.inline_input.is_null()) throw InputError("no input: give a preset or inline data");
  return io::build_inline(job.inline_input, job.options.order_cap);
}

}  // namespace flasque
