#pragma once

// Job execution and report rendering. Reports are ordered JSON with a
// deterministic layout; the text form is rendered from the same document.

#include "flasque/io.hpp"
#include "flasque/random_modules.hpp"

#include <functional>
#include <sstream>
#include <string>

namespace flasque {

struct Report {
  Json document;
  int exit_code = 0;  // 2 when a verification check failed

  [[nodiscard]] std::string json() const { return document.dump(2) + "\n"; }
  [[nodiscard]] std::string text() const;
};

namespace report {

inline Json group_json(const FiniteGroup& g) {
  Json j = Json::object();
  j["name"] = g.name().empty() ? "G" : g.name();
  j["order"] = g.order();
  Json gens = Json::array();
  for (size_t s : g.generators()) gens.push_back(g.element_label(s));
  j["generators"] = std::move(gens);
  return j;
}

inline Json subgroup_json(const FiniteGroup& g, const Subgroup& h, size_t index) {
  Json j = Json::object();
  j["id"] = index;
  j["order"] = h.order();
  Json gens = Json::array();
  for (size_t s : h.generators()) gens.push_back(g.element_label(s));
  j["generators"] = std::move(gens);
  return j;
}

inline Json module_json(const FgGModule& m, bool matrices = true) {
  Json j = Json::object();
  j["structure"] = m.structure().to_string();
  j["rank"] = m.rank();
  if (matrices) {
    j["relations"] = io::columns_json(m.relations());
    Json act = Json::array();
    for (const auto& a : m.generator_action()) act.push_back(io::matrix_json(a));
    j["action"] = std::move(act);
  }
  return j;
}

inline Json routes_json(const TwoRouteResult& r, const char* a, const char* b, const char* c) {
  Json j = Json::object();
  j["value"] = r.value().to_string();
  j[a] = r.route_a.to_string();
  j[b] = r.route_b.to_string();
  if (r.route_c) j[c] = r.route_c->to_string();
  j["agree"] = r.agree();
  return j;
}

// Elements acting trivially on the module.
inline size_t action_kernel_order(const FgGModule& m) {
  const auto& g = *m.group();
  size_t count = 0;
  for (size_t e = 0; e < g.order(); ++e)
    if (lattice_contains(m.relations(), m.action(e) - identity_matrix(m.rank()))) ++count;
  return count;
}

inline std::vector<std::string> caveats() {
  return {
      "unramified Brauer group: the identification with H^1(k, S*) holds up to p-primary torsion in characteristic "
      "p > 0; the characteristic is not modelled",
      "local_h1 assumes the decomposition group acts through the given finite group",
      "inner forms are not represented: the input is the quasi-split *-action",
  };
}

inline Json resolution_json(const Resolution& r, bool matrices) {
  Json j = Json::object();
  j["kind"] = to_string(r.kind);
  j["left_rank"] = r.left.rank();
  j["middle_rank"] = r.middle.rank();
  const GLattice& perm = r.kind == ResolutionKind::Coflasque ? r.middle : r.left;
  if (perm.certificate()) {
    Json blocks = Json::array();
    for (const auto& h : perm.certificate()->blocks) blocks.push_back(h.order());
    j["permutation_blocks"] = std::move(blocks);  // stabilizer orders
  }
  auto audit = audit_resolution(r);
  Json a = Json::object();
  a["exact"] = audit.exactness.ok();
  a["end_condition"] = audit.end_condition;
  a["permutation_certified"] = audit.permutation_certified;
  a["ok"] = audit.ok();
  j["audit"] = std::move(a);
  if (matrices) {
    j["left"] = module_json(r.left.module());
    j["middle"] = module_json(r.middle.module());
    j["inclusion"] = io::matrix_json(r.inclusion.matrix);
    j["projection"] = io::matrix_json(r.projection.matrix);
  }
  return j;
}

inline Json analyze(const ReductiveDatum& d, const JobOptions& opt) {
  Json j = Json::object();
  j["label"] = d.label;
  j["group"] = group_json(*d.group());
  const FgGModule p = pi1(d);
  Json pj = module_json(p);
  auto rt = pi1_round_trip(d);
  pj["via_resolution"] = rt.via_resolution.structure().to_string();
  pj["round_trip"] = rt.agree();
  j["pi1"] = std::move(pj);
  j["pic"] = routes_json(pic_group(d), "coker_invariants", "coinvariant_torsion", "");
  j["brauer_nr"] = routes_json(brauer_nr(d), "h1_s_star", "sha1_qz_dual", "sha2_characters");
  j["local_h1"] = local_h1(d).to_string();
  auto cl = classify(d, opt.search);
  Json c = Json::object();
  c["torus"] = cl.is_torus;
  c["semisimple"] = cl.is_semisimple;
  c["simply_connected"] = cl.is_simply_connected;
  c["quasi_trivial"] = to_string(cl.is_quasi_trivial);
  c["quasi_trivial_reason"] = cl.quasi_trivial_reason;
  c["coflasque"] = cl.is_coflasque;
  j["classification"] = std::move(c);
  if (d.root_datum) {
    auto mu = mu_minus_one(*d.root_datum);
    Json m = Json::object();
    m["torsion"] = mu.torsion.structure().to_string();
    m["saturation_route"] = mu.saturation.structure().to_string();
    m["agree"] = mu.agree;
    j["mu_minus_one"] = std::move(m);
    Json r = Json::object();
    r["pi1_rank"] = p.structure().free_rank();
    r["root_orthogonal_rank"] = root_orthogonal_rank(*d.root_datum);
    j["rank_check"] = std::move(r);
    j["borovoi_vs_resolution"] = borovoi_vs_resolution(*d.root_datum).ok();
  }
  Json s = Json::object();
  s["group_order"] = d.group()->order();
  s["kernel_on_pi1"] = action_kernel_order(p);
  s["kernel_on_resolution_middle"] = action_kernel_order(rt.resolution.middle.module());
  j["splitting"] = std::move(s);
  if (opt.include_matrices) j["resolution"] = resolution_json(rt.resolution, true);
  j["caveats"] = caveats();
  return j;
}

inline Json cohomology(const ReductiveDatum& d, const JobOptions& opt) {
  const FgGModule p = pi1(d);
  const auto& g = *p.group();
  const auto& reps = g.subgroup_reps();
  if (opt.subgroup >= reps.size())
    throw InputError("/options/subgroup: subgroup id " + std::to_string(opt.subgroup) + " out of range (0.." +
                     std::to_string(reps.size() - 1) + ")");
  Json j = Json::object();
  j["label"] = d.label;
  j["group"] = group_json(g);
  Json subs = Json::array();
  for (size_t i = 0; i < reps.size(); ++i) subs.push_back(subgroup_json(g, reps[i], i));
  j["subgroups"] = std::move(subs);
  j["module"] = module_json(p);
  auto res = h_i(reps[opt.subgroup], p, opt.degree);
  Json r = Json::object();
  r["subgroup"] = opt.subgroup;
  r["degree"] = opt.degree;
  r["group"] = res.group.to_string();
  Json reps_json = Json::array();
  for (const auto& v : res.representatives) {
    Json cochain = Json::array();
    for (const auto& x : v) cochain.push_back(io::integer_json(x));
    reps_json.push_back(std::move(cochain));
  }
  r["representatives"] = std::move(reps_json);
  j["cohomology"] = std::move(r);
  return j;
}

inline Json resolve(const ReductiveDatum& d, const JobOptions& opt) {
  const FgGModule p = pi1(d);
  Json j = Json::object();
  j["label"] = d.label;
  j["group"] = group_json(*p.group());
  j["module"] = module_json(p);
  ResolutionOptions ro;
  Resolution r = opt.kind == ResolutionKind::Coflasque ? coflasque_resolution(p, ro) : flasque_resolution(p, ro);
  j["resolution"] = resolution_json(r, true);
  if (r.kind == ResolutionKind::Coflasque) {
    auto q = dualize_resolution(r);
    auto a = audit_four_term(q, p);
    Json f = Json::object();
    f["t_star_rank"] = q.t_star.rank();
    f["p_star_rank"] = q.p_star.rank();
    f["s_star_rank"] = q.s_star.rank();
    f["mu_star"] = q.mu_star.structure().to_string();
    f["ok"] = a.ok();
    j["dual_sequence"] = std::move(f);
  }
  return j;
}

inline Json catalog_list() {
  Json j = Json::object();
  Json entries = Json::array();
  for (const auto& e : catalog()) {
    Json x = Json::object();
    x["preset"] = e.name;
    if (e.params.n) x["n"] = e.params.n;
    if (e.params.d) x["d"] = e.params.d;
    if (e.name == "torus_split") x["rank"] = e.params.rank;
    if (!e.params.group.empty()) x["group"] = e.params.group;
    x["label"] = preset(e.name, e.params).label;
    entries.push_back(std::move(x));
  }
  j["presets"] = std::move(entries);
  j["preset_names"] = {"GL",           "SL",         "PGL",           "SL_mod_mu",      "Sp",
                       "SU_quasi_split", "PGU_quasi_split", "torus_split", "torus_norm", "torus_norm_one"};
  j["groups"] = small_group_names();
  return j;
}

// Records a named check; exceptions count as failures with their message.
class CheckList {
 public:
  void run(const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    Json c = Json::object();
    c["check"] = name;
    c["passed"] = ok;
    if (!detail.empty()) c["detail"] = detail;
    checks_.push_back(std::move(c));
    ok ? ++passed_ : ++failed_;
  }
  [[nodiscard]] size_t failed() const { return failed_; }
  [[nodiscard]] Json json() const {
    Json j = Json::object();
    j["passed"] = passed_;
    j["failed"] = failed_;
    j["checks"] = checks_;
    return j;
  }

 private:
  Json checks_ = Json::array();
  size_t passed_ = 0, failed_ = 0;
};

inline constexpr size_t kVerifyRandomModules = 12;
inline constexpr size_t kVerifyRandomDiagrams = 12;

inline void suite_resolutions(CheckList& cl, uint64_t seed) {
  for (size_t k = 0; k < kVerifyRandomModules; ++k) {
    auto c = random_case(Rng::derive(seed, k));
    const std::string tag = "random module " + std::to_string(k) + " over " + c.group_name;
    cl.run(tag + ": coflasque resolution audit", [&](std::string& det) {
      auto r = coflasque_resolution(c.module);
      det = "P rank " + std::to_string(r.middle.rank()) + ", S rank " + std::to_string(r.left.rank());
      return audit_resolution(r).ok() && audit_four_term(dualize_resolution(r), c.module).ok();
    });
    cl.run(tag + ": flasque resolution audit", [&](std::string& det) {
      auto r = flasque_resolution(c.module);
      det = "F rank " + std::to_string(r.middle.rank()) + ", P rank " + std::to_string(r.left.rank());
      return audit_resolution(r).ok();
    });
    cl.run(tag + ": greedy and full constructions agree on H^1(h, S*)", [&](std::string&) {
      ResolutionOptions full;
      full.greedy = false;
      return compare_resolutions(coflasque_resolution(c.module), coflasque_resolution(c.module, full)).consistent;
    });
  }
}

inline void suite_brauer(CheckList& cl, uint64_t seed) {
  for (const auto& e : catalog()) {
    cl.run(describe(e) + ": Brauer routes", [&](std::string& det) {
      auto r = brauer_nr(preset(e.name, e.params));
      det = r.value().to_string();
      return r.agree();
    });
  }
  for (size_t k = 0; k < kVerifyRandomModules; ++k) {
    auto c = random_case(Rng::derive(seed ^ 0xb7a0ULL, k));
    cl.run("random module " + std::to_string(k) + " over " + c.group_name + ": H^1(G, S*) = Sha^1_omega(dual)",
           [&](std::string& det) {
             auto r = coflasque_resolution(c.module);
             auto a = h_i(c.module.group()->whole(), dual(r.left).module(), 1).group;
             auto b = sha1_omega_qz_dual(c.module);
             det = a.to_string() + " / " + b.to_string();
             return a == b;
           });
  }
}

inline void suite_pic(CheckList& cl, uint64_t seed) {
  for (const auto& e : catalog()) {
    cl.run(describe(e) + ": Pic routes and local formula", [&](std::string& det) {
      auto d = preset(e.name, e.params);
      auto r = pic_group(d);
      det = r.value().to_string();
      return r.agree() && r.value() == local_h1(d);
    });
  }
  for (size_t k = 0; k < kVerifyRandomModules; ++k) {
    auto c = random_case(Rng::derive(seed ^ 0x91cULL, k));
    cl.run("random module " + std::to_string(k) + " over " + c.group_name + ": Pic routes", [&](std::string& det) {
      ReductiveDatum d{"random", std::nullopt, c.module};
      auto r = pic_group(d);
      det = r.value().to_string();
      return r.agree();
    });
  }
}

inline void suite_splice(CheckList& cl, uint64_t seed) {
  for (size_t k = 0; k < kVerifyRandomDiagrams; ++k) {
    auto rd = random_nine_diagram(Rng::derive(seed ^ 0xa11ULL, k));
    cl.run("random 3x3 diagram " + std::to_string(k) + " over " + rd.group_name + ": splice quasi-isomorphisms",
           [&](std::string&) { return splice(rd.diagram).ok(); });
  }
  cl.run("norm-one torus for V4: torus diagram splice",
         [&](std::string&) { return splice(torus_nine_diagram(preset_torus_norm_one("V4"))).ok(); });
  for (const auto& e : catalog()) {
    cl.run(describe(e) + ": Borovoi complex vs [S+ -> P+]", [&](std::string&) {
      auto d = preset(e.name, e.params);
      return borovoi_vs_resolution(*d.root_datum).ok() && pi1_round_trip(d).agree();
    });
  }
}

inline Json verify(const JobOptions& opt) {
  CheckList cl;
  const auto& s = opt.suite;
  if (s == "all" || s == "resolutions") suite_resolutions(cl, opt.seed);
  if (s == "all" || s == "brauer") suite_brauer(cl, opt.seed);
  if (s == "all" || s == "pic") suite_pic(cl, opt.seed);
  if (s == "all" || s == "appendixA") suite_splice(cl, opt.seed);
  Json j = Json::object();
  j["suite"] = s;
  j["seed"] = opt.seed;
  j["result"] = cl.json();
  return j;
}

inline void render_text(std::ostream& os, const Json& j, const std::string& indent) {
  auto scalar = [](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  auto is_flat = [](const Json& v) {
    return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_object(); });
  };
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      os << indent << k << ":\n";
      render_text(os, v, indent + "  ");
    } else if (v.is_array() && !is_flat(v)) {
      os << indent << k << ":\n";
      for (const auto& x : v) {
        if (x.is_object()) {
          os << indent << "  -\n";
          render_text(os, x, indent + "    ");
        } else {
          os << indent << "  - " << scalar(x) << "\n";
        }
      }
    } else if (v.is_array() && !v.empty() && v.front().is_string()) {
      os << indent << k << ":\n";
      for (const auto& x : v) os << indent << "  - " << x.get<std::string>() << "\n";
    } else {
      os << indent << k << ": " << scalar(v) << "\n";
    }
  }
}

}  // namespace report

inline std::string Report::text() const {
  std::ostringstream os;
  report::render_text(os, document, "");
  return os.str();
}

// Runs a job. Invariant violations propagate as InvariantViolation; failed
// verification checks are reported and set exit_code to 2.
inline Report run(const JobSpec& job) {
  Report r;
  r.document = Json::object();
  r.document["input"] = job.to_json();
  switch (job.task) {
    case Task::Catalog:
      r.document["catalog"] = report::catalog_list();
      break;
    case Task::Verify: {
      Json v = report::verify(job.options);
      if (v["result"]["failed"].get<size_t>() > 0) r.exit_code = 2;
      r.document["verify"] = std::move(v);
      break;
    }
    case Task::Analyze:
      r.document["analysis"] = report::analyze(materialize(job), job.options);
      break;
    case Task::Resolve:
      r.document["resolve"] = report::resolve(materialize(job), job.options);
      break;
    case Task::Cohomology:
      r.document["cohomology"] = report::cohomology(materialize(job), job.options);
      break;
  }
  return r;
}

}  // namespace flasque
