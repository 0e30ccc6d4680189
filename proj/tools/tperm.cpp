#include "tperm/analysis.hpp"
#include "tperm/approximation.hpp"
#include "tperm/counting.hpp"
#include "tperm/errors.hpp"
#include "tperm/family_io.hpp"
#include "tperm/params.hpp"
#include "tperm/peeling.hpp"
#include "tperm/search.hpp"
#include "tperm/spread.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace tperm;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string dec(const BigCount& v) { return to_decimal(v); }
std::string rat(const Rational& v) { return to_string(v); }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

Json images_json(const PartialPermutation& p) {
  Json a = Json::array();
  for (int v : p.images()) a.push_back(v);
  return a;
}

Json match_json(const std::optional<AkMatch>& m) {
  if (!m) return nullptr;
  Json j;
  j["k"] = m->k;
  j["sigma"] = images_json(m->sigma);
  j["tau"] = images_json(m->tau);
  j["T"] = to_json(m->T);
  return j;
}

Json sets_json(const Family& f) {
  Json a = Json::array();
  for (const auto& m : f) a.push_back(to_json(m));
  return a;
}

int resolve_t(const Family& f, std::optional<int> flag) {
  if (flag) return *flag;
  if (f.t()) return *f.t();
  throw ValidationError("t not given on the command line or in the family file");
}

struct Output {
  std::string text;
  int code = 0;
};

Output json_out(const Json& j, int code = 0) { return {j.dump(2) + "\n", code}; }

// Subcommand state. CLI11 binds into these.
struct Args {
  int n = 0, t = 0, k = 0;
  bool exact = false, bounds = false, csv = false, all_optima = false;
  std::string eps = "1/10";
  std::uint64_t budget = 0;
  std::string t_range;
  std::string in;
  std::optional<int> q, t_opt, m;
  std::string r, p, threshold;
  std::optional<std::uint64_t> seed;
  std::uint64_t trials = 0;
  int r_int = 0;
  unsigned threads = 1;
};

Output cmd_ak_size(const Args& a) {
  Json j;
  j["n"] = a.n;
  j["t"] = a.t;
  j["k"] = a.k;
  if (a.exact || !a.bounds) j["value"] = dec(ak_size_exact(a.n, a.t, a.k));
  if (a.bounds) {
    AkBounds b = ak_size_bounds(a.n, a.t, a.k);
    j["lower"] = dec(b.lower);
    j["upper"] = dec(b.upper);
  }
  return json_out(j);
}

Output cmd_bounds_report(const Args& a) {
  Parameters params(a.n, a.t);
  const Rational eps = parse_rational(a.eps);
  const int r = choose_r(eps);
  const std::vector<std::string> cols{"k", "exact", "lower", "upper", "rough", "rough_shifted", "power", "refined"};
  std::vector<std::vector<std::string>> rows;
  for (int k = 0; k <= params.max_k(); ++k) {
    AkBounds b = ak_size_bounds(a.n, a.t, k);
    std::vector<std::string> row{std::to_string(k), dec(ak_size_exact(a.n, a.t, k)), dec(b.lower), dec(b.upper),
                                 dec(rough_bound_W_k(a.t, k)), dec(rough_bound_W_k(a.t, k, true))};
    row.push_back(k >= 1 ? rat(cor_bound_W_k(a.t, k)) : "");
    try {
      row.push_back(dec(bound_W_k_refined(a.t, k, r).value));
    } catch (const HypothesisError&) {
      row.push_back("");
    }
    rows.push_back(std::move(row));
  }
  if (a.csv) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
    return {os.str(), 0};
  }
  Json j;
  j["n"] = a.n;
  j["t"] = a.t;
  j["eps"] = rat(eps);
  j["r"] = r;
  Json arr = Json::array();
  for (const auto& row : rows) {
    Json o;
    o["k"] = std::stoi(row[0]);
    for (std::size_t i = 1; i < row.size(); ++i) o[cols[i]] = row[i].empty() ? Json(nullptr) : Json(row[i]);
    arr.push_back(std::move(o));
  }
  j["rows"] = std::move(arr);
  return json_out(j);
}

Output cmd_max_family(const Args& a) {
  MaxFamilyOptions o;
  if (a.budget) o.node_budget = a.budget;
  o.all_optima = a.all_optima;
  ExtremalResult r = max_t_intersecting(a.n, a.t, o);
  Json j;
  j["n"] = r.n;
  j["t"] = r.t;
  j["max_size"] = dec(r.max_size);
  j["conjecture_value"] = dec(r.conjecture_value);
  j["conjecture_k"] = r.conjecture_k;
  j["optimal"] = r.optimal;
  j["nodes"] = r.nodes;
  j["matched_Ak"] = match_json(r.matched_Ak);
  j["witness"] = to_json(r.witness);
  if (a.all_optima) {
    j["optima_count"] = r.optima.size();
    j["optima_truncated"] = r.optima_truncated;
  }
  return json_out(j, r.optimal ? 0 : 2);
}

std::pair<int, int> parse_t_range(const std::string& s, int n) {
  if (s.empty()) return {1, n};
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ValidationError("--t expects MIN..MAX or a single value");
  }
}

Output cmd_verify_conjecture(const Args& a) {
  auto [lo, hi] = parse_t_range(a.t_range, a.n);
  MaxFamilyOptions o;
  if (a.budget) o.node_budget = a.budget;
  ConjectureReport rep = verify_conjecture(a.n, lo, hi, o);
  Json j;
  j["n"] = rep.n;
  j["all_equal"] = rep.all_equal();
  Json rows = Json::array();
  bool optimal = true;
  for (const auto& r : rep.rows) {
    Json o2;
    o2["t"] = r.t;
    o2["max_size"] = dec(r.max_size);
    o2["conjecture_value"] = dec(r.conjecture_value);
    o2["conjecture_k"] = r.conjecture_k;
    o2["equal"] = r.equal;
    o2["optimal"] = r.optimal;
    o2["matched_Ak"] = match_json(r.matched_Ak);
    o2["optima"] = r.optima;
    o2["optima_matched"] = r.optima_matched;
    o2["optima_truncated"] = r.optima_truncated;
    o2["nodes"] = r.nodes;
    optimal = optimal && r.optimal;
    rows.push_back(std::move(o2));
  }
  j["rows"] = std::move(rows);
  return json_out(j, optimal ? 0 : 2);
}

Output cmd_peel(const Args& a) {
  Family f = load_family(a.in);
  const int t = resolve_t(f, a.t_opt);
  const int q = a.q ? *a.q : static_cast<int>(f.max_member_size());
  PeelingResult p = peel(f, t, q);
  Json j;
  j["n"] = f.n();
  j["t"] = t;
  j["q"] = q;
  j["sets"] = sets_json(p.top());
  Json layers = Json::array();
  for (const auto& [k, w] : p.W) {
    Json l;
    l["k"] = k;
    l["W_size"] = w.size();
    l["T_size"] = p.T.at(k).size();
    l["W"] = sets_json(w);
    layers.push_back(std::move(l));
  }
  j["layers"] = std::move(layers);
  j["edits"] = p.provenance.size();
  return json_out(j);
}

Output cmd_simplify(const Args& a) {
  Family f = load_family(a.in);
  const int t = resolve_t(f, a.t_opt);
  SimplifyOptions o;
  o.random_order_seed = a.seed;
  Simplified s = simplify_logged(f, t, o);
  Json j;
  j["n"] = f.n();
  j["t"] = t;
  j["sets"] = sets_json(s.family);
  Json edits = Json::array();
  for (const auto& e : s.edits) {
    Json o2;
    o2["kind"] = to_string(e.kind);
    o2["before"] = to_json(e.before);
    if (e.after) o2["after"] = to_json(*e.after);
    if (e.kept) o2["kept"] = to_json(*e.kept);
    edits.push_back(std::move(o2));
  }
  j["edits"] = std::move(edits);
  if (a.seed) j["seed"] = *a.seed;
  return json_out(j);
}

Json certificate_json(const SpreadCertificate& c) {
  Json j;
  j["r"] = rat(c.r);
  j["passed"] = c.passed();
  j["verified_up_to"] = c.verified_up_to;
  if (c.witness) {
    Json w;
    w["set"] = to_json(c.witness->set);
    w["count"] = dec(c.witness->count);
    w["threshold"] = rat(c.witness->threshold);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Output cmd_spread_check(const Args& a) {
  Family f = load_family(a.in);
  const Rational r = parse_rational(a.r);
  Json j;
  j["size"] = f.size();
  if (a.t_opt) {
    RTSpreadResult res = is_r_t_spread(f, r, *a.t_opt);
    j["r"] = rat(r);
    j["t"] = *a.t_opt;
    j["passed"] = res.passed;
    j["checked_T"] = res.checked_T;
    j["failing_T"] = res.failing_T ? to_json(*res.failing_T) : Json(nullptr);
    j["failing_certificate"] = res.failing_certificate ? certificate_json(*res.failing_certificate) : Json(nullptr);
  } else {
    j.update(certificate_json(is_r_spread(f, r)));
  }
  return json_out(j);
}

Output cmd_spread_approx(const Args& a) {
  Family f = load_family(a.in);
  ApproximationConfig cfg;
  cfg.q = a.q.value();
  cfg.r = parse_rational(a.r);
  cfg.residual_threshold = a.threshold.empty() ? Rational(1) : parse_rational(a.threshold);
  const int t = a.t_opt.value();
  SpreadApproximation s = spread_approximation(f, t, cfg);
  Json j;
  j["t"] = t;
  j["q"] = cfg.q;
  j["r"] = rat(cfg.r);
  j["threshold"] = rat(cfg.residual_threshold);
  j["seed"] = a.seed ? Json(*a.seed) : Json(nullptr);
  j["termination"] = to_string(s.termination);
  j["pieces"] = sets_json(s.pieces);
  j["residual_size"] = s.residual.size();
  j["pieces_t_intersecting"] = s.pieces_t_intersecting ? Json(*s.pieces_t_intersecting) : Json(nullptr);
  j["oversize_witness"] = s.oversize_witness ? to_json(*s.oversize_witness) : Json(nullptr);
  Json rounds = Json::array();
  for (const auto& r : s.rounds) {
    Json o;
    o["round"] = r.round;
    o["family_size"] = r.family_size;
    o["piece"] = to_json(r.piece);
    o["removed"] = r.removed;
    o["boosted"] = r.boosted;
    o["oversize"] = r.oversize;
    o["spread_ok"] = r.certificate ? Json(r.certificate->passed()) : Json(nullptr);
    rounds.push_back(std::move(o));
  }
  j["rounds"] = std::move(rounds);
  return json_out(j);
}

Output cmd_good_tuple(const Args& a) {
  Family f = load_family(a.in);
  GoodTuple gt = good_tuple_search(f, a.t, a.k, a.r_int);
  Json j;
  j["t"] = a.t;
  j["k"] = a.k;
  j["r"] = a.r_int;
  j["indices"] = gt.indices;
  j["sets"] = Json::array();
  for (const auto& s : gt.sets) j["sets"].push_back(to_json(s));
  j["U"] = to_json(gt.U);
  j["V"] = Json::array();
  for (const Cell& c : gt.V) j["V"].push_back(Json::array({c.row, c.col}));
  j["profile_a"] = gt.profile_a;
  j["min_intersection"] = gt.min_intersection;
  j["achieved_min"] = gt.achieved_min;
  j["nodes"] = gt.nodes;
  if (gt.achieved_min) {
    Json profs = Json::array();
    for (const auto& b : f) {
      MemberProfile mp = member_profile(b, gt, a.t, a.k);
      Json o;
      o["member"] = to_json(b);
      o["profile_b"] = mp.profile_b;
      o["x"] = mp.x;
      o["m"] = mp.m;
      o["failures"] = mp.failures();
      profs.push_back(std::move(o));
    }
    j["member_profiles"] = std::move(profs);
  }
  return json_out(j);
}

Output cmd_spread_lemma(const Args& a) {
  Family f = load_family(a.in);
  RandomSubsetSpec spec{parse_rational(a.p), a.seed.value()};
  const Rational r = a.r.empty() ? Rational(2) : parse_rational(a.r);
  const int m = a.m ? *a.m : best_spread_lemma_bound(r, spec.p, static_cast<int>(f.max_member_size())).m;
  SpreadLemmaEstimate e = spread_lemma_estimate(f, spec, a.trials, r, m, a.threads);
  Json j;
  j["trials"] = e.trials;
  j["hits"] = e.hits;
  j["seed"] = e.seed;
  j["p"] = rat(spec.p);
  j["r"] = rat(r);
  j["m"] = m;
  j["empirical_prob"] = rat(e.empirical_prob);
  j["bound"] = rat(e.bound.value);
  j["bound_vacuous"] = e.bound.vacuous;
  j["sigma"] = e.sigma;
  return json_out(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and bounded computations on t-intersecting families of permutations"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  std::string manifest;
  bool timing = false;
  a.threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--manifest", manifest, "write a run manifest to this path");
  app.add_option("--threads", a.threads, "worker threads for Monte Carlo commands")->check(CLI::Range(1u, 1024u));
  app.add_flag("--timing", timing, "report elapsed time on stderr");
  app.set_version_flag("--version", kVersion);

  auto* ak = app.add_subcommand("ak-size", "size of A_k");
  ak->add_option("n", a.n)->required();
  ak->add_option("t", a.t)->required();
  ak->add_option("k", a.k)->required();
  ak->add_flag("--exact", a.exact);
  ak->add_flag("--bounds", a.bounds);

  auto* br = app.add_subcommand("bounds-report", "bound tables for every k");
  br->add_option("n", a.n)->required();
  br->add_option("t", a.t)->required();
  br->add_option("--eps", a.eps);
  br->add_flag("--csv", a.csv);

  auto* mf = app.add_subcommand("max-family", "exact maximum t-intersecting family");
  mf->add_option("n", a.n)->required();
  mf->add_option("t", a.t)->required();
  mf->add_option("--budget", a.budget);
  mf->add_flag("--all-optima", a.all_optima);

  auto* vc = app.add_subcommand("verify-conjecture", "compare exact maxima with max_k |A_k|");
  vc->add_option("n", a.n)->required();
  vc->add_option("--t", a.t_range, "MIN..MAX");
  vc->add_option("--budget", a.budget);

  auto* pl = app.add_subcommand("peel", "peel a family into layers");
  pl->add_option("--in", a.in)->required();
  pl->add_option("--q", a.q);
  pl->add_option("--t", a.t_opt);

  auto* sm = app.add_subcommand("simplify", "simplify a t-intersecting family");
  sm->add_option("--in", a.in)->required();
  sm->add_option("--t", a.t_opt);
  sm->add_option("--seed", a.seed, "randomise the edit order");

  auto* sc = app.add_subcommand("spread-check", "exact r-spread check");
  sc->add_option("--in", a.in)->required();
  sc->add_option("--r", a.r)->required();
  sc->add_option("--t", a.t_opt);

  auto* sa = app.add_subcommand("spread-approx", "spread approximation");
  sa->add_option("--in", a.in)->required();
  sa->add_option("--t", a.t_opt)->required();
  sa->add_option("--q", a.q)->required();
  sa->add_option("--r", a.r)->required();
  sa->add_option("--threshold", a.threshold);
  sa->add_option("--seed", a.seed);

  auto* gt = app.add_subcommand("good-tuple", "search an r-tuple with minimum intersection");
  gt->add_option("--in", a.in)->required();
  gt->add_option("--t", a.t)->required();
  gt->add_option("--k", a.k)->required();
  gt->add_option("--r", a.r_int)->required();

  auto* sl = app.add_subcommand("spread-lemma", "Monte Carlo estimate against the spread lemma bound");
  sl->add_option("--in", a.in)->required();
  sl->add_option("--p", a.p)->required();
  sl->add_option("--trials", a.trials)->required();
  sl->add_option("--seed", a.seed)->required();
  sl->add_option("--r", a.r);
  sl->add_option("--m", a.m);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  const auto start = std::chrono::steady_clock::now();
  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Output out;
  try {
    if (sub == ak) out = cmd_ak_size(a);
    else if (sub == br) out = cmd_bounds_report(a);
    else if (sub == mf) out = cmd_max_family(a);
    else if (sub == vc) out = cmd_verify_conjecture(a);
    else if (sub == pl) out = cmd_peel(a);
    else if (sub == sm) out = cmd_simplify(a);
    else if (sub == sc) out = cmd_spread_check(a);
    else if (sub == sa) out = cmd_spread_approx(a);
    else if (sub == gt) out = cmd_good_tuple(a);
    else out = cmd_spread_lemma(a);
  } catch (const BudgetExceeded& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "budget"}}.dump() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "validation"}}.dump() << "\n";
    return 3;
  } catch (const HypothesisError& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "hypothesis"}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
    return 1;
  }
  std::cout << out.text << std::flush;
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (timing) std::cerr << "elapsed " << elapsed << " s\n";

  if (!manifest.empty()) {
    Json params = Json::array();
    for (int i = 1; i < argc; ++i) {
      std::string s = argv[i];
      if (s == "--manifest") {
        ++i;
        continue;
      }
      if (s.rfind("--manifest=", 0) == 0 || s == "--timing") continue;
      params.push_back(s);
    }
    Json m;
    m["command"] = name;
    m["parameters"] = std::move(params);
    m["seed"] = a.seed ? Json(*a.seed) : Json(nullptr);
    m["tool_version"] = kVersion;
    m["elapsed"] = elapsed;
    m["output_digest"] = sha256_hex(out.text);
    std::ofstream mo(manifest);
    if (!mo) {
      std::cerr << Json{{"error", "cannot write manifest " + manifest}}.dump() << "\n";
      return 3;
    }
    mo << m.dump(2) << "\n";
  }
  return out.code;
}
