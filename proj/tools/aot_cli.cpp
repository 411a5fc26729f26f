// Command-line surface for the AND-OR tree cost analysis: polynomial
// families, monotone-ratio certificates, the threshold root, constrained
// equilibria, and the independent-vs-correlated comparison.  Reports are
// JSON (or CSV plot data for the polynomial/ratio commands); exact
// rationals print as "num/den", floats with 12 significant digits.
//
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or
// input error, 3 structurally valid input beyond a capability bound.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "aot/distribution.hpp"
#include "aot/equilibrium.hpp"
#include "aot/families.hpp"
#include "aot/strategy.hpp"

namespace {

using nlohmann::ordered_json;

struct Opts {
  std::string gate = "and";
  int height = 2;
  double r = 0.5;
  int grid = 1000;
  double tol = 1e-6;
  std::string emit = "json";
  std::string out;
  unsigned long seed = 12345;
};

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Floats are rounded through their 12-significant-digit text form so the
// JSON stream is stable across runs and platforms.
ordered_json jnum(double v) { return ordered_json::parse(fmt12(v)); }

ordered_json jcoeffs(const aot::RatPoly& p) {
  ordered_json arr = ordered_json::array();
  for (int k = 0; k <= std::max(0, p.degree()); ++k)
    arr.push_back(aot::rat_to_string(p.coeff(k)));
  return arr;
}

ordered_json jcert(const aot::SignCertificate& c) {
  ordered_json j;
  j["ok"] = c.ok;
  j["root_count"] = c.root_count;
  j["sample_sign"] = c.sample_sign;
  j["detail"] = c.detail;
  return j;
}

ordered_json base_report(const char* command) {
  ordered_json j;
  j["schema_version"] = 1;
  j["command"] = command;
  return j;
}

aot::GateKind parse_gate(const std::string& g) {
  return g == "and" ? aot::GateKind::And : aot::GateKind::Or;
}

void write_text(const Opts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + o.out);
  f << text;
}

void write_json(const Opts& o, const ordered_json& j) { write_text(o, j.dump(2) + "\n"); }

// ---- poly: coefficient lists, or dense plot data ----

int cmd_poly(const Opts& o) {
  const aot::GateKind gate = parse_gate(o.gate);
  if (o.emit == "csv") {
    std::ostringstream csv;
    csv << "x,cost,prob,cost_over_prob,dcost_over_dprob\n";
    for (int j = 1; j < o.grid; ++j) {
      const double x = static_cast<double>(j) / o.grid;
      const auto v = aot::cost_prob_at<double>(gate, o.height, x);
      csv << fmt12(x) << ',' << fmt12(v.cost) << ',' << fmt12(v.prob) << ','
          << fmt12(v.cost / v.prob) << ',' << fmt12(v.dcost / v.dprob) << '\n';
    }
    write_text(o, csv.str());
    std::cerr << "rows=" << (o.grid - 1) << "\n";
    return 0;
  }
  const auto fam = aot::cost_prob(gate, o.height);
  ordered_json j = base_report("poly");
  j["gate"] = o.gate;
  j["height"] = o.height;
  j["cost_coefficients"] = jcoeffs(fam.cost);
  j["prob_coefficients"] = jcoeffs(fam.prob);
  write_json(o, j);
  return 0;
}

// ---- lemma1 / lemma2: monotone-ratio certificates ----

int cmd_lemma(const Opts& o, bool second) {
  const auto cert =
      second ? aot::lemma2_certificate(o.height) : aot::lemma1_certificate(o.height);
  if (o.emit == "csv") {
    std::ostringstream csv;
    csv << (second ? "x,dcost_over_dprob\n" : "x,cost_over_prob\n");
    for (int j = 1; j < o.grid; ++j) {
      const double x = static_cast<double>(j) / o.grid;
      const auto v = aot::cost_prob_at<double>(aot::GateKind::Or, o.height, x);
      csv << fmt12(x) << ',' << fmt12(second ? v.dcost / v.dprob : v.cost / v.prob) << '\n';
    }
    write_text(o, csv.str());
    std::cerr << "certificate=" << (cert.ok ? "true" : "false") << "\n";
    return cert.ok ? 0 : 1;
  }
  ordered_json j = base_report(second ? "lemma2" : "lemma1");
  j["height"] = o.height;
  j["claim"] = second ? "dcost/dprob strictly decreasing on (0,1)"
                      : "cost/prob strictly decreasing on (0,1)";
  j["certificate"] = jcert(cert);
  write_json(o, j);
  return cert.ok ? 0 : 1;
}

// ---- duality: AND-rooted family mirrors the OR-rooted one ----

int cmd_duality(const Opts& o) {
  const bool ok = aot::duality_check(o.height, o.grid);
  ordered_json j = base_report("duality");
  j["height"] = o.height;
  j["ok"] = ok;
  write_json(o, j);
  return ok ? 0 : 1;
}

// ---- identities: exact polynomial cross-checks ----

int cmd_identities(const Opts& o) {
  const bool two_level = aot::two_level_consistency(o.height);
  const bool threshold_id = aot::identity38_check();
  const bool threshold_fact = aot::factorization35_check();
  ordered_json j = base_report("identities");
  j["height"] = o.height;
  j["two_level_consistency"] = two_level;
  j["threshold_identity"] = threshold_id;
  j["threshold_factorization"] = threshold_fact;
  const bool ok = two_level && threshold_id && threshold_fact;
  j["ok"] = ok;
  write_json(o, j);
  return ok ? 0 : 1;
}

// ---- alpha: the threshold root of the odd-height sextic ----

int cmd_alpha(const Opts& o) {
  const auto root = aot::find_alpha(o.tol);
  ordered_json j = base_report("alpha");
  j["tol"] = jnum(o.tol);
  j["value"] = jnum(root.value);
  j["lower"] = aot::rat_to_string(root.lower);
  j["upper"] = aot::rat_to_string(root.upper);
  j["root_count"] = root.root_count;
  const bool ok = root.root_count == 1;
  j["ok"] = ok;
  write_json(o, j);
  return ok ? 0 : 1;
}

// ---- cep1: constrained child-probability extremum ----

int cmd_cep1(const Opts& o) {
  const auto res = aot::cep1_solve(o.height, aot::RootConstraint(o.r), o.tol);
  const double closed = 1.0 - std::sqrt(1.0 - o.r);
  ordered_json j = base_report("cep1");
  j["height"] = o.height;
  j["r"] = jnum(o.r);
  j["tol"] = jnum(o.tol);
  j["z"] = jnum(res.argmax.z);
  j["w"] = jnum(res.argmax.w);
  j["value"] = jnum(res.value);
  j["f1_decreasing"] = res.f1_decreasing;
  j["evaluations"] = res.evaluations;
  j["closed_form_z"] = jnum(closed);
  j["closed_form_gap"] = jnum(std::abs(res.argmax.z - closed));
  write_json(o, j);
  return res.f1_decreasing ? 0 : 1;
}

// ---- eigen: maximin search over constrained independent distributions ----

int cmd_eigen(const Opts& o) {
  const aot::TreeShape shape(parse_gate(o.gate), o.height);
  const auto rep = aot::eigen_search(shape, aot::RootConstraint(o.r), o.tol, 8, o.seed);
  ordered_json j = base_report("eigen");
  j["gate"] = o.gate;
  j["height"] = o.height;
  j["r"] = jnum(o.r);
  j["tol"] = jnum(o.tol);
  j["seed"] = rep.seed;
  j["starts"] = rep.starts;
  j["value"] = jnum(rep.value);
  ordered_json probs = ordered_json::array();
  for (const double v : rep.leaf_zero_prob) probs.push_back(jnum(v));
  j["leaf_zero_prob"] = probs;
  j["mean"] = jnum(rep.mean);
  j["deviation"] = jnum(rep.deviation);
  j["residual"] = jnum(rep.residual);
  j["iterations"] = rep.iterations;
  j["certified_iid"] = rep.certified_iid;
  j["converged"] = rep.converged;
  write_json(o, j);
  return rep.certified_iid ? 0 : 1;
}

// ---- prop: closed-form forced-root costs, with lattice checks ----

int cmd_prop(const Opts& o) {
  const aot::TreeShape shape(parse_gate(o.gate), o.height);
  ordered_json j = base_report("prop");
  j["gate"] = o.gate;
  j["height"] = o.height;
  j["forced_0_cost"] = aot::proposition_values(shape, 0);
  j["forced_1_cost"] = aot::proposition_values(shape, 1);
  bool ok = true;
  if (o.height <= 3) {
    const int grid = std::min(o.grid, 16);
    const bool c0 = aot::proposition_check(shape, 0, grid);
    const bool c1 = aot::proposition_check(shape, 1, grid);
    j["lattice_grid"] = grid;
    j["lattice_check_0"] = c0;
    j["lattice_check_1"] = c1;
    ok = c0 && c1;
  }
  j["ok"] = ok;
  write_json(o, j);
  return ok ? 0 : 1;
}

// ---- isets: reluctant assignment sets ----

int cmd_isets(const Opts& o) {
  const aot::TreeShape shape(parse_gate(o.gate), o.height);
  ordered_json j = base_report("isets");
  j["gate"] = o.gate;
  j["height"] = o.height;
  j["count_0"] = aot::reluctant_count(shape, 0).str();
  j["count_1"] = aot::reluctant_count(shape, 1).str();
  if (o.height <= 3) {
    for (const int i : {0, 1}) {
      const auto s = aot::enumerate_reluctant(shape, i);
      ordered_json members = ordered_json::array();
      for (const auto& a : s.members) members.push_back(a.to_string());
      j[i == 0 ? "members_0" : "members_1"] = members;
      j[i == 0 ? "uniform_weight_0" : "uniform_weight_1"] =
          aot::rat_to_string(aot::Rat(aot::Int(1), aot::Int(s.members.size())));
    }
  }
  write_json(o, j);
  return 0;
}

// ---- compare: independent optimum vs the mixed correlated witness ----

int cmd_compare(const Opts& o) {
  const aot::TreeShape shape(parse_gate(o.gate), o.height);
  const auto rep = aot::compare_id_vs_correlated(shape, aot::Rat(o.r));
  ordered_json j = base_report("compare");
  j["gate"] = o.gate;
  j["height"] = o.height;
  j["r"] = aot::rat_to_string(rep.r);
  j["witness"] = "mix(uniform 0-set, uniform 1-set)";
  j["lhs"] = jnum(rep.lhs);
  j["lhs_bound"] = aot::rat_to_string(rep.lhs_bound);
  j["rhs_witness"] = aot::rat_to_string(rep.rhs_witness);
  j["set0_size"] = rep.set0_size;
  j["set1_size"] = rep.set1_size;
  j["search_consistent"] = rep.search_consistent;
  j["strict"] = rep.strict;
  write_json(o, j);
  return rep.strict ? 0 : 1;
}

// ---- maxiid: unconstrained equal-probability maximum ----

int cmd_maxiid(const Opts& o) {
  const aot::TreeShape shape(parse_gate(o.gate), o.height);
  const auto res = aot::maximize_iid(shape, o.tol);
  ordered_json j = base_report("maxiid");
  j["gate"] = o.gate;
  j["height"] = o.height;
  j["tol"] = jnum(o.tol);
  j["x_star"] = jnum(res.x_star);
  j["value"] = jnum(res.value);
  j["derivative_roots"] = res.derivative_roots;
  j["unimodal"] = res.unimodal;
  write_json(o, j);
  return res.unimodal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alpha-beta pruning cost analysis on uniform binary AND-OR trees"};
  app.require_subcommand(1);

  Opts o;
  const auto add_gate = [&o](CLI::App* s) {
    s->add_option("--gate", o.gate, "root gate")
        ->check(CLI::IsMember({"and", "or"}))
        ->capture_default_str();
  };
  const auto add_height = [&o](CLI::App* s) {
    s->add_option("--height", o.height, "tree height")->capture_default_str();
  };
  const auto add_r = [&o](CLI::App* s) {
    s->add_option("--r", o.r, "root zero-probability")->capture_default_str();
  };
  const auto add_grid = [&o](CLI::App* s) {
    s->add_option("--grid", o.grid, "grid resolution")->capture_default_str();
  };
  const auto add_tol = [&o](CLI::App* s) {
    s->add_option("--tol", o.tol, "tolerance")->capture_default_str();
  };
  const auto add_emit = [&o](CLI::App* s) {
    s->add_option("--emit", o.emit, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  };
  const auto add_out = [&o](CLI::App* s) {
    s->add_option("--out", o.out, "write the report to this path instead of stdout");
  };

  CLI::App* poly = app.add_subcommand("poly", "cost/probability polynomial family");
  add_gate(poly), add_height(poly), add_grid(poly), add_emit(poly), add_out(poly);
  CLI::App* lemma1 = app.add_subcommand("lemma1", "certificate: cost/prob ratio decreasing");
  add_height(lemma1), add_grid(lemma1), add_emit(lemma1), add_out(lemma1);
  CLI::App* lemma2 =
      app.add_subcommand("lemma2", "certificate: derivative ratio decreasing");
  add_height(lemma2), add_grid(lemma2), add_emit(lemma2), add_out(lemma2);
  CLI::App* duality = app.add_subcommand("duality", "AND/OR family reflection identity");
  add_height(duality), add_grid(duality), add_out(duality);
  CLI::App* identities = app.add_subcommand("identities", "exact polynomial cross-checks");
  add_height(identities), add_out(identities);
  CLI::App* alpha = app.add_subcommand("alpha", "threshold root of the odd-height sextic");
  add_tol(alpha), add_out(alpha);
  CLI::App* cep1 = app.add_subcommand("cep1", "constrained child-probability extremum");
  add_height(cep1), add_r(cep1), add_tol(cep1), add_out(cep1);
  CLI::App* eigen = app.add_subcommand("eigen", "constrained maximin over independents");
  add_gate(eigen), add_height(eigen), add_r(eigen), add_tol(eigen), add_out(eigen);
  eigen->add_option("--seed", o.seed, "multi-start seed")->capture_default_str();
  CLI::App* prop = app.add_subcommand("prop", "forced-root closed forms and lattice checks");
  add_gate(prop), add_height(prop), add_grid(prop), add_out(prop);
  CLI::App* isets = app.add_subcommand("isets", "reluctant assignment sets");
  add_gate(isets), add_height(isets), add_out(isets);
  CLI::App* compare =
      app.add_subcommand("compare", "independent optimum vs correlated witness");
  add_gate(compare), add_height(compare), add_r(compare), add_out(compare);
  CLI::App* maxiid = app.add_subcommand("maxiid", "unconstrained equal-probability maximum");
  add_gate(maxiid), add_height(maxiid), add_tol(maxiid), add_out(maxiid);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (o.grid < 2) {
    std::cerr << "invalid input: --grid must be at least 2\n";
    return 2;
  }
  if (!(o.tol > 0)) {
    std::cerr << "invalid input: --tol must be positive\n";
    return 2;
  }
  if (!(o.r >= 0.0 && o.r <= 1.0)) {
    std::cerr << "invalid input: --r must lie in [0,1]\n";
    return 2;
  }

  try {
    if (poly->parsed()) return cmd_poly(o);
    if (lemma1->parsed()) return cmd_lemma(o, false);
    if (lemma2->parsed()) return cmd_lemma(o, true);
    if (duality->parsed()) return cmd_duality(o);
    if (identities->parsed()) return cmd_identities(o);
    if (alpha->parsed()) return cmd_alpha(o);
    if (cep1->parsed()) return cmd_cep1(o);
    if (eigen->parsed()) return cmd_eigen(o);
    if (prop->parsed()) return cmd_prop(o);
    if (isets->parsed()) return cmd_isets(o);
    if (compare->parsed()) return cmd_compare(o);
    if (maxiid->parsed()) return cmd_maxiid(o);
    std::cerr << "no command selected\n";
    return 2;
  } catch (const aot::capability_error& e) {
    std::cerr << "capability: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
