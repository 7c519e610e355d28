#include "kap/cli.hpp"

#include <CLI11.hpp>
#include <ostream>
#include <sstream>

#include "kap/io.hpp"
#include "kap/reconstruct.hpp"
#include "kap/tangent.hpp"

namespace kap::cli {

namespace {

Json linear_form_json(const LinearForm& form) {
  Json coeffs = Json::object();
  for (const auto& [key, v] : form.terms()) {
    std::string name =
        "x[" + std::to_string(key.first) + "][" + Label::from_code(key.second).str() + "]";
    coeffs[name] = v.str();
  }
  return coeffs;
}

int cmd_equations(int n, const std::string& format, std::ostream& out) {
  std::vector<MinorIndex> gens = generators(n);
  if (format == "json") {
    Json arr = Json::array();
    for (const auto& g : gens) {
      Json j = minor_to_json(g);
      j["polynomial"] = minor_polynomial_text(g);
      arr.push_back(j);
    }
    Json doc;
    doc["n"] = n;
    doc["count"] = gens.size();
    doc["generators"] = arr;
    out << doc.dump(2) << "\n";
  } else {
    for (const auto& g : gens) out << minor_polynomial_text(g) << "\n";
  }
  return 0;
}

int cmd_embed(const std::string& curve_file, std::ostream& out) {
  MarkedCurve c = curve_from_json(load_json_file(curve_file));
  out << multipoint_to_json(omega(c)).dump(2) << "\n";
  return 0;
}

int cmd_check(const std::string& point_file, bool json, std::ostream& out, std::ostream& err) {
  MultiPoint p = multipoint_from_json(load_json_file(point_file));
  MembershipReport rep = is_member(p);
  if (json) {
    Json doc;
    doc["member"] = rep.member();
    Json viol = Json::array();
    for (const auto& v : rep.violations) {
      Json j = minor_to_json(v.index);
      j["value"] = v.value.str();
      viol.push_back(j);
    }
    doc["violations"] = viol;
    out << doc.dump(2) << "\n";
  } else if (rep.member()) {
    out << "member: all " << generator_count(p.n()) << " generators vanish\n";
  } else {
    out << "not a member: " << rep.violations.size() << " generator(s) violated\n";
  }
  for (const auto& v : rep.violations)
    err << v.index.str() << " = " << v.value.str() << "\n";
  return rep.member() ? 0 : 2;
}

int cmd_reconstruct(const std::string& point_file, std::ostream& out, std::ostream& err) {
  MultiPoint p = multipoint_from_json(load_json_file(point_file));
  try {
    MarkedCurve c = reconstruct(p);
    out << curve_to_json(c).dump(2) << "\n";
    return 0;
  } catch (const MembershipError& e) {
    err << "not in image\n";
    for (const auto& v : e.violations()) err << v.index.str() << " = " << v.value.str() << "\n";
    return 2;
  }
}

int cmd_tangent(const std::string& curve_file, const std::string& method, std::ostream& out) {
  MarkedCurve c = curve_from_json(load_json_file(curve_file));
  int n = c.n();
  MultiPoint p = omega(c);
  Json doc;
  doc["n"] = n;
  doc["method"] = method;
  if (method == "jacobian" || method == "both") {
    ChartIndex ci = chart(p);
    std::vector<LinearForm> forms = linearize_all(generators(n), p, ci);
    Json eqs = Json::array();
    for (size_t g = 0; g < forms.size(); ++g) {
      if (forms[g].is_zero()) continue;
      Json e;
      e["minor"] = minor_to_json(generators(n)[g]);
      e["coeffs"] = linear_form_json(forms[g]);
      eqs.push_back(e);
    }
    doc["jacobian_equations"] = eqs;
    doc["nullity"] = jacobian_nullity(p);
  }
  if (method == "constructive" || method == "both") {
    Json eqs = Json::array();
    int count = 0;
    for (int level = 2; level <= n; ++level) {
      TangentSystem sys = constructive_system(restrict_curve(c, level), level);
      for (size_t q = 0; q < sys.equations.size(); ++q) {
        Json e;
        e["level"] = level;
        e["rule"] = tangent_rule_name(sys.provenance[q].rule);
        e["minor"] = minor_to_json(sys.provenance[q].minor);
        e["coeffs"] = linear_form_json(sys.equations[q]);
        eqs.push_back(e);
        ++count;
      }
    }
    doc["constructive_equations"] = eqs;
    doc["constructive_count"] = count;
    if (method == "constructive") doc["nullity"] = jacobian_nullity(p);
  }
  if (method == "both") doc["subspace_equal"] = kernel_equals_constructive(c);
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_random_curve(int n, std::uint64_t seed, int nodes, std::ostream& out) {
  out << curve_to_json(random_curve(n, seed, nodes)).dump(2) << "\n";
  return 0;
}

struct TrialResult {
  bool ran = false;
  bool ok = true;
  std::string detail;
};

int cmd_verify(int n, int trials, std::uint64_t seed, const std::string& checks_arg, bool json,
               std::ostream& out) {
  const std::vector<std::string> all_checks = {"membership", "round-trip", "nullity",
                                               "constructive-agreement", "separation"};
  std::vector<std::string> checks;
  {
    std::stringstream ss(checks_arg.empty() ? std::string() : checks_arg);
    std::string item;
    while (std::getline(ss, item, ',')) checks.push_back(item);
    if (checks.empty()) checks = all_checks;
    for (const auto& c : checks) {
      bool known = false;
      for (const auto& k : all_checks) known |= (c == k);
      if (!known) {
        out << "unknown check: " << c << "\n";
        return 1;
      }
    }
  }
  auto enabled = [&](const std::string& name) {
    for (const auto& c : checks)
      if (c == name) return true;
    return false;
  };

  // Trial i uses curve random_curve(n, splitmix64(seed + i), i mod (n+1));
  // results are aggregated in trial order regardless of execution order.
  std::vector<std::map<std::string, TrialResult>> results(static_cast<size_t>(trials));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) {
    auto& slot = results[static_cast<size_t>(i)];
    try {
      std::uint64_t curve_seed = trial_seed(seed, static_cast<std::uint64_t>(i));
      MarkedCurve c = random_curve(n, curve_seed, i % (n + 1));
      MultiPoint p = omega(c);
      if (enabled("membership")) {
        auto& r = slot["membership"];
        r.ran = true;
        r.ok = is_member(p).member();
        if (!r.ok) r.detail = "violated generator";
      }
      if (enabled("round-trip")) {
        auto& r = slot["round-trip"];
        r.ran = true;
        try {
          r.ok = same_moduli_point(reconstruct(p), c);
          if (!r.ok) r.detail = "canonical forms differ";
        } catch (const Error& e) {
          r.ok = false;
          r.detail = e.what();
        }
      }
      if (enabled("nullity")) {
        auto& r = slot["nullity"];
        r.ran = true;
        int nul = jacobian_nullity(p);
        r.ok = (nul == n);
        if (!r.ok) r.detail = "nullity " + std::to_string(nul);
      }
      if (enabled("constructive-agreement") && n >= 2) {
        auto& r = slot["constructive-agreement"];
        r.ran = true;
        r.ok = kernel_equals_constructive(c);
        if (!r.ok) r.detail = "kernel mismatch";
      }
      if (enabled("separation")) {
        auto& r = slot["separation"];
        r.ran = true;
        for (int level = 2; level <= n && r.ok; ++level) {
          MarkedCurve lower = restrict_curve(c, level - 1);
          LeafColoring coloring =
              color_leaves(lower.tree, p.factors[static_cast<size_t>(level) - 1]);
          auto bad = scan_bad_configurations(lower.tree, coloring);
          if (!bad.empty()) {
            r.ok = false;
            r.detail = "level " + std::to_string(level) + ": " + bad.front().str();
          }
        }
      }
    } catch (const std::exception& e) {
      auto& r = slot["error"];
      r.ran = true;
      r.ok = false;
      r.detail = e.what();
    }
  }

  std::map<std::string, int> passes;
  std::vector<std::string> failures;
  for (int i = 0; i < trials; ++i)
    for (const auto& [name, r] : results[static_cast<size_t>(i)]) {
      if (!r.ran) continue;
      if (r.ok) {
        passes[name] += 1;
      } else {
        failures.push_back("trial " + std::to_string(i) + " seed " +
                           std::to_string(trial_seed(seed, static_cast<std::uint64_t>(i))) +
                           " [" + name + "]: " + r.detail);
      }
    }

  if (json) {
    Json doc;
    doc["n"] = n;
    doc["trials"] = trials;
    doc["seed"] = seed;
    Json ch = Json::object();
    for (const auto& [name, count] : passes) ch[name] = count;
    doc["passes"] = ch;
    doc["failures"] = failures;
    out << doc.dump(2) << "\n";
  } else {
    out << "verify: n=" << n << " trials=" << trials << " seed=" << seed << "\n";
    for (const auto& [name, count] : passes)
      out << "  " << name << ": " << count << "/" << trials << " pass\n";
    for (const auto& f : failures) out << "  FAIL " << f << "\n";
  }
  return failures.empty() ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computations with stable rational curves via the iterated Kapranov embedding"};
  app.require_subcommand(1);

  auto* eq = app.add_subcommand("equations", "print the defining equations");
  int eq_n = 2;
  std::string eq_format = "text";
  eq->add_option("--n", eq_n, "number of projective factors")->required()->check(CLI::Range(1, 64));
  eq->add_option("--format", eq_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* em = app.add_subcommand("embed", "embed a curve file");
  std::string em_curve;
  em->add_option("--curve", em_curve, "curve JSON file")->required();

  auto* ck = app.add_subcommand("check", "test a point against the equations");
  std::string ck_point;
  bool ck_json = false;
  ck->add_option("--point", ck_point, "multipoint JSON file")->required();
  ck->add_flag("--json", ck_json, "machine-readable output");

  auto* rc = app.add_subcommand("reconstruct", "invert the embedding on a point");
  std::string rc_point;
  rc->add_option("--point", rc_point, "multipoint JSON file")->required();

  auto* tg = app.add_subcommand("tangent", "tangent space at the image of a curve");
  std::string tg_curve, tg_method = "both";
  tg->add_option("--curve", tg_curve, "curve JSON file")->required();
  tg->add_option("--method", tg_method, "jacobian, constructive or both")
      ->check(CLI::IsMember({"jacobian", "constructive", "both"}));

  auto* rnd = app.add_subcommand("random-curve", "deterministic random curve");
  int rnd_n = 2, rnd_nodes = 0;
  std::uint64_t rnd_seed = 0;
  rnd->add_option("--n", rnd_n, "top marked point")->required()->check(CLI::Range(1, 64));
  rnd->add_option("--seed", rnd_seed, "seed")->required();
  rnd->add_option("--nodes", rnd_nodes, "number of internal edges");

  auto* vf = app.add_subcommand("verify", "seeded randomized verification suite");
  int vf_n = 4, vf_trials = 20;
  std::uint64_t vf_seed = 0;
  std::string vf_checks;
  bool vf_json = false;
  vf->add_option("--n", vf_n, "top marked point")->required()->check(CLI::Range(1, 64));
  vf->add_option("--trials", vf_trials, "number of trials")->required()->check(CLI::PositiveNumber);
  vf->add_option("--seed", vf_seed, "seed")->required();
  vf->add_option("--checks", vf_checks, "comma-separated subset of "
                                        "membership,round-trip,nullity,constructive-agreement,separation");
  vf->add_flag("--json", vf_json, "machine-readable output");

  std::vector<std::string> argv = args;
  try {
    std::vector<const char*> raw;
    raw.push_back("kapranov");
    for (const auto& a : argv) raw.push_back(a.c_str());
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (eq->parsed()) return cmd_equations(eq_n, eq_format, out);
    if (em->parsed()) return cmd_embed(em_curve, out);
    if (ck->parsed()) return cmd_check(ck_point, ck_json, out, err);
    if (rc->parsed()) return cmd_reconstruct(rc_point, out, err);
    if (tg->parsed()) return cmd_tangent(tg_curve, tg_method, out);
    if (rnd->parsed()) return cmd_random_curve(rnd_n, rnd_seed, rnd_nodes, out);
    if (vf->parsed()) return cmd_verify(vf_n, vf_trials, vf_seed, vf_checks, vf_json, out);
  } catch (const MembershipError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace kap::cli
