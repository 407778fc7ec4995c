#include "fqg/io.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

using namespace fqg;

struct RunConfig {
  std::string groupoid_path, matchpair_path, action_path;
  double tol = kTol;
  std::string format = "text";
  int max_pentagon_dim = 12;
};

Mpi build_instance(const RunConfig& cfg, Groupoid& g, std::optional<MatchPair>& mp) {
  g = load_groupoid(cfg.groupoid_path);
  if (!cfg.matchpair_path.empty()) {
    auto [h, k] = load_matchpair_ids(cfg.matchpair_path);
    mp = match_pair(g, h, k);
    return build_I_HK(*mp);
  }
  return build_I_G(g);
}

int emit(const RunConfig& cfg, const Report& rep, const std::string& extra_json = "",
         const std::string& extra_text = "") {
  if (cfg.format == "json") {
    std::string body = report_to_json(rep, cfg.tol);
    if (!extra_json.empty()) {
      body.pop_back();  // trailing '}'
      body += ",\n " + extra_json + "\n}";
    }
    std::cout << body << "\n";
  } else {
    std::cout << report_to_text(rep, cfg.tol);
    if (!extra_text.empty()) std::cout << extra_text;
  }
  return rep.pass(cfg.tol) ? 0 : 1;
}

int cmd_verify_mpi(const RunConfig& cfg) {
  Groupoid g;
  std::optional<MatchPair> mp;
  Mpi ii = build_instance(cfg, g, mp);
  Report rep = verify_mpi(ii, cfg.max_pentagon_dim);
  RegularityResult reg = is_regular(ii);
  rep.add("regularity", reg.residual);
  rep.merge(four_corners(ii));
  rep.sort();
  return emit(cfg, rep);
}

int cmd_wha(const RunConfig& cfg) {
  Groupoid g;
  std::optional<MatchPair> mp;
  Mpi ii = build_instance(cfg, g, mp);
  WeakHopf w = extract_wha(ii, Side::right, cfg.tol);
  Report rep = verify_weak_hopf(w);
  rep.merge(cartan(w).report);
  rep.sort();
  std::string wj = weakhopf_to_json(w);
  return emit(cfg, rep, "\"weakhopf\": " + wj, wj + "\n");
}

int cmd_haar(const RunConfig& cfg) {
  Groupoid g;
  std::optional<MatchPair> mp;
  Mpi ii = build_instance(cfg, g, mp);
  WeakHopf w = extract_wha(ii, Side::left, cfg.tol);
  w.haar = haar_solve(w, cfg.tol);
  HaarDerived hd = haar_derived(w, w.haar);
  // Report the measure per groupoid element: phi on the delta function at g
  // (the matching canonical spanning element of S in the match-pair case).
  std::vector<double> weights(g.n, 0.0);
  if (mp) {
    for (auto [k, h] : mp->cells) weights[g.at(k, h)] = w.haar_of(matchpair_S(*mp, ii, k, h)).real();
  } else {
    for (int x = 0; x < g.n; ++x) {
      Mat d = Mat::Zero(g.n, g.n);
      d(x, x) = 1.0;
      weights[x] = w.haar_of(d).real();
    }
  }
  std::string vals_json = "\"haar\": [", vals_text = "haar = [";
  for (size_t i = 0; i < weights.size(); ++i) {
    std::string v = std::to_string(weights[i]);
    vals_json += (i ? ", " : "") + v;
    vals_text += (i ? ", " : "") + v;
  }
  return emit(cfg, hd.report, vals_json + "]", vals_text + "]\n");
}

int cmd_crossed(const RunConfig& cfg) {
  GroupoidAction act = load_action(cfg.action_path);
  Report rep = validate_action(act);
  rep.merge(delta_report(act));
  CrossedProduct cp = crossed_product(act);
  rep.merge(cp.report);
  rep.sort();
  std::string dims = "\"dimension\": " + std::to_string(cp.algebra.dim());
  return emit(cfg, rep, dims, "dimension = " + std::to_string(cp.algebra.dim()) + "\n");
}

int cmd_outer(const RunConfig& cfg) {
  GroupoidAction act = load_action(cfg.action_path);
  OuterResult res = outer_test(act);
  std::string verdict = res.outer ? "outer" : "not outer";
  std::string text = "verdict: " + verdict + "\n";
  for (const auto& [h, x] : res.witnesses)
    text += "inner witness for element " + std::to_string(h) + "\n";
  return emit(cfg, res.report, "\"verdict\": \"" + verdict + "\"", text);
}

int cmd_matchpair(const RunConfig& cfg) {
  Groupoid g = load_groupoid(cfg.groupoid_path);
  auto [h, k] = load_matchpair_ids(cfg.matchpair_path);
  MatchPair mp = match_pair(g, h, k);
  Report rep = matchpair_structures(mp);
  std::string verdict = std::string("match pair structures: ") +
                        (rep.pass(cfg.tol) ? "PASS" : "FAIL") +
                        "  max_residual=" + std::to_string(rep.max_residual()) + "\n";
  return emit(cfg, rep, "", verdict);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite quantum groupoid verifier"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_flags = [&](CLI::App* c) {
    c->add_option("--tol", cfg.tol, "residual tolerance")->check(CLI::PositiveNumber);
    c->add_option("--format", cfg.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    c->add_option("--max-pentagon-dim", cfg.max_pentagon_dim,
                  "skip the pentagon check above this carrier dimension")
        ->check(CLI::PositiveNumber);
  };

  auto* vm = app.add_subcommand("verify-mpi", "verify the partial isometry axioms");
  vm->add_option("groupoid", cfg.groupoid_path)->required();
  vm->add_option("matchpair", cfg.matchpair_path);
  add_flags(vm);

  auto* wh = app.add_subcommand("wha", "extract and verify the weak Hopf structure");
  wh->add_option("groupoid", cfg.groupoid_path)->required();
  wh->add_option("matchpair", cfg.matchpair_path);
  add_flags(wh);

  auto* ha = app.add_subcommand("haar", "solve for the Haar measure");
  ha->add_option("groupoid", cfg.groupoid_path)->required();
  ha->add_option("matchpair", cfg.matchpair_path);
  add_flags(ha);

  auto* cr = app.add_subcommand("crossed-product", "build and verify a crossed product");
  cr->add_option("action", cfg.action_path)->required();
  add_flags(cr);

  auto* ou = app.add_subcommand("outer-test", "decide outerness of an action");
  ou->add_option("action", cfg.action_path)->required();
  add_flags(ou);

  auto* mc = app.add_subcommand("matchpair", "verify the match pair structures");
  mc->add_option("groupoid", cfg.groupoid_path)->required();
  mc->add_option("matchpair", cfg.matchpair_path)->required();
  add_flags(mc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (vm->parsed()) return cmd_verify_mpi(cfg);
    if (wh->parsed()) return cmd_wha(cfg);
    if (ha->parsed()) return cmd_haar(cfg);
    if (cr->parsed()) return cmd_crossed(cfg);
    if (ou->parsed()) return cmd_outer(cfg);
    if (mc->parsed()) return cmd_matchpair(cfg);
  } catch (const IoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const GroupoidError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const ShapeMismatch& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const WhaError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const ActionError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}
