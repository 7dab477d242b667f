// adelic: command-line front end.
//   charpoly | certify | closure | rootsys-verify | selftest
// Exit status: 0 ok, 1 error or failed check, 2 closure cap exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adelic/cli/acceptance.hpp"
#include "adelic/cli/module_io.hpp"
#include "adelic/matgroups/matgroups.hpp"
#include "adelic/rootsys/rootsys.hpp"
#include "adelic/surjcert/surjcert.hpp"
#include "json.hpp"

using namespace adelic;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string input, out, place, mode;
  int place_deg = 4;
  int prime_deg = 2;
  std::size_t cap = 50000000;
  std::uint64_t seed = 0;
  int box = 3;
  std::vector<int> only;
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream o(cfg.out, std::ios::binary);
  if (!o) throw UsageError("cannot write " + cfg.out);
  o << text;
}

ModuleSpec load_module(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  auto text = read_file(cfg.input);
  try {
    return parse_module_spec(text);
  } catch (const ModuleParseError& e) {
    throw UsageError(cfg.input + ": " + e.what());
  }
}

json frobenius_json(const Fq& k, const std::string& name, const FrobeniusData& fd, const std::vector<PrimeOfA>& aux) {
  PolyRing<Fq> A(k, "T");
  json j;
  j["module"] = name;
  j["status"] = "ok";
  j["place"] = fd.place;
  j["deg_x"] = fd.deg_x;
  j["p0"] = A.to_string(fd.p0.pi);
  j["f"] = frobenius_poly_to_string(k, fd.f);
  j["coefficients"] = json::array();
  for (auto& c : fd.f) j["coefficients"].push_back(A.to_string(c));
  auto rep = newton_check(fd, k, aux);
  j["newton"] = {{"ok", rep.ok}, {"n_x", rep.n_x}, {"violations", rep.violations}};
  auto s = trad_of(k, fd);
  j["trad"] = ratfunc_to_string(k, s.trad);
  return j;
}

int cmd_charpoly(const RunConfig& cfg) {
  auto spec = load_module(cfg);
  auto k = Fq::get(spec.q);
  auto aux = enumerate_primes(k, 2);
  if (spec.base == "finite") {
    auto phi = to_module(spec);
    auto fd = charpoly_frobenius_checked(phi);
    fd.place = "F_" + std::to_string(spec.q) + "^" + std::to_string(phi.m());
    emit(cfg, frobenius_json(k, spec.name, fd, aux).dump(2) + "\n");
    return 0;
  }
  if (cfg.place.empty()) throw UsageError("--place is required for a module over F_q(s)");
  auto var = std::get<std::string>(spec.m_or_var);
  APoly P;
  try {
    P = parse_sparse_poly(k, cfg.place, var);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--place: ") + e.what());
  }
  PolyRing<Fq> S(k, var);
  int d = S.degree(P);
  bool irreducible = false;
  if (d >= 1)
    for (auto& c : monic_irreducibles(k, d)) irreducible = irreducible || c == P;
  if (!irreducible) throw UsageError("--place: " + cfg.place + " is not a monic irreducible polynomial in " + var);
  auto fam = to_family(spec);
  auto sp = specialize(fam, P);
  if (!sp.module) {
    json j;
    j["module"] = spec.name;
    j["status"] = "bad_reduction";
    j["place"] = sp.place;
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  auto fd = charpoly_frobenius_checked(*sp.module);
  fd.place = sp.place;
  emit(cfg, frobenius_json(k, spec.name, fd, aux).dump(2) + "\n");
  return 0;
}

int cmd_certify(const RunConfig& cfg) {
  auto spec = load_module(cfg);
  if (spec.base != "rational") throw UsageError("certify needs a module over F_q(s)");
  auto fam = to_family(spec);
  CertifyOptions opt;
  opt.place_degree_bound = cfg.place_deg;
  opt.prime_degree_bound = cfg.prime_deg;
  opt.seed = cfg.seed;
  if (cfg.mode == "full")
    opt.mode = DepthMode::Full;
  else if (cfg.mode == "squares")
    opt.mode = DepthMode::Squares;
  auto rep = certify(fam, opt);
  emit(cfg, report_to_json(fam.k, rep));
  return 0;
}

// {"q": int, "n": int, "m": int, "generators": [matrix, ...]}; a matrix is n rows of n entries,
// an entry is an element code or a list of u-coefficients.
int cmd_closure(const RunConfig& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  auto text = read_file(cfg.input);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(cfg.input + ": malformed JSON at byte " + std::to_string(e.byte));
  }
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw UsageError(cfg.input + ": field " + key + ": missing");
    return j.at(key);
  };
  auto q = need("q").get<std::uint32_t>();
  int n = need("n").get<int>();
  unsigned m = need("m").get<unsigned>();
  if (n < 1 || m < 1) throw UsageError(cfg.input + ": n and m must be >= 1");
  auto k = Fq::get(q);
  TRing R(k, m);
  std::vector<TMat> gens;
  const auto& G = need("generators");
  for (std::size_t g = 0; g < G.size(); ++g) {
    std::string where = cfg.input + ": field generators[" + std::to_string(g) + "]";
    if (!G[g].is_array() || static_cast<int>(G[g].size()) != n) throw UsageError(where + ": expected " + std::to_string(n) + " rows");
    TMat M(n, n, R.zero());
    for (int r = 0; r < n; ++r) {
      if (!G[g][r].is_array() || static_cast<int>(G[g][r].size()) != n) throw UsageError(where + ": bad row " + std::to_string(r));
      for (int c = 0; c < n; ++c) {
        const auto& e = G[g][r][c];
        std::vector<std::uint32_t> coeffs;
        if (e.is_number_unsigned())
          coeffs.push_back(e.get<std::uint32_t>());
        else if (e.is_array())
          coeffs = e.get<std::vector<std::uint32_t>>();
        else
          throw UsageError(where + ": bad entry");
        if (coeffs.size() > m) throw UsageError(where + ": entry has more than m coefficients");
        for (auto x : coeffs)
          if (x >= q) throw UsageError(where + ": coefficient out of range");
        TRing::Elem v(m, 0);
        std::copy(coeffs.begin(), coeffs.end(), v.begin());
        M(r, c) = v;
      }
    }
    gens.push_back(M);
  }

  json out;
  out["q"] = q;
  out["n"] = n;
  out["m"] = m;
  out["cap"] = cfg.cap;
  bool in_sl = true;
  for (auto& g : gens) in_sl = in_sl && R.equal(mat_det(R, g), R.one());
  CongruenceClosure H;
  std::optional<StrongApproxVerdict> v;
  bool complete;
  std::size_t order;
  if (in_sl && !gens.empty()) {
    v = verify_strong_approx(k, n, m, gens, cfg.cap);
    complete = v->complete;
    order = v->order;
  } else {
    H = closure(k, n, m, gens.empty() ? std::vector<TMat>{mat_identity(R, n)} : gens, cfg.cap);
    complete = H.complete;
    order = H.order();
  }
  out["status"] = complete ? "complete" : "cap_exceeded";
  out[complete ? "order" : "elements_found"] = order;
  if (!complete) {
    emit(cfg, out.dump(2) + "\n");
    return 2;
  }
  FiltrationProfile prof = v ? v->profile : filtration_profile(H);
  json layers = json::array();
  for (auto& L : prof.layers)
    layers.push_back({{"level", L.level},
                      {"size", L.size},
                      {"fp_dim", L.fp_dim},
                      {"additive", L.additive},
                      {"has_nonscalar", L.has_nonscalar},
                      {"equals_sl", L.equals_sl}});
  out["filtration"] = {{"h0_order", prof.h0_order},
                       {"h0_det_one", prof.h0_det_one},
                       {"h0_contains_sl", prof.h0_contains_sl},
                       {"layers", layers}};
  if (v) {
    out["strong_approximation"] = {{"in_regime", v->in_regime},     {"hypotheses", v->hypotheses},
                                   {"full_order", v->full_order.str()}, {"full", v->full},
                                   {"consistent", v->consistent}};
  } else {
    out["strong_approximation"] = nullptr;
  }
  emit(cfg, out.dump(2) + "\n");
  return 0;
}

int cmd_rootsys(const RunConfig& cfg) {
  auto rep = verify_main_theorem(root_system_catalog(), cfg.box);
  json j;
  j["box"] = rep.box;
  j["systems"] = json::array();
  for (auto& s : rep.systems) {
    json cx = json::array();
    for (auto& c : s.counterexamples) cx.push_back({{"lambda", qvec_to_string(c.lambda)}, {"reason", c.reason}});
    j["systems"].push_back({{"system", s.system},
                            {"vectors", s.vectors},
                            {"orbits", s.orbits},
                            {"orbits_ab", s.orbits_ab},
                            {"orbits_abc", s.orbits_abc},
                            {"lemma_checks", s.lemma_checks},
                            {"counterexamples", cx}});
  }
  j["counterexamples"] = rep.counterexample_count();
  emit(cfg, j.dump(2) + "\n");
  return rep.counterexample_count() == 0 ? 0 : 1;
}

int cmd_selftest(const RunConfig& cfg) {
  auto res = run_acceptance(cfg.only, &std::cout);
  std::size_t passed = 0;
  for (auto& r : res) passed += r.pass;
  std::cout << passed << "/" << res.size() << " criteria passed\n";
  return passed == res.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius charpolys, trace-ring certificates and finite group checks for Drinfeld modules"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto io = [&](CLI::App* c) {
    c->add_option("--input", cfg.input, "input JSON file");
    c->add_option("--out", cfg.out, "output file (default stdout)");
  };
  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial of Frobenius at one place");
  io(charpoly);
  charpoly->add_option("--place", cfg.place, "monic irreducible P(s), e.g. \"s^2+1\"");

  auto* cert = app.add_subcommand("certify", "trace-ring surjectivity report");
  io(cert);
  cert->add_option("--place-deg", cfg.place_deg, "place degree bound")->check(CLI::PositiveNumber);
  cert->add_option("--prime-deg", cfg.prime_deg, "prime degree bound")->check(CLI::NonNegativeNumber);
  cert->add_option("--seed", cfg.seed, "seed recorded in the report");
  cert->add_option("--mode", cfg.mode, "depth-2 mode")->check(CLI::IsMember({"full", "squares"}));

  auto* clo = app.add_subcommand("closure", "BFS closure in GL_n(F_q[u]/u^m)");
  io(clo);
  clo->add_option("--cap", cfg.cap, "element cap")->check(CLI::PositiveNumber);
  clo->add_option("--seed", cfg.seed, "unused; accepted for uniformity");

  auto* rs = app.add_subcommand("rootsys-verify", "orbit conditions over the root system catalog");
  rs->add_option("--out", cfg.out, "output file (default stdout)");
  rs->add_option("--box", cfg.box, "coordinate box radius")->check(CLI::PositiveNumber);

  auto* st = app.add_subcommand("selftest", "run every acceptance criterion");
  st->add_option("--only", cfg.only, "criterion ids");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*charpoly) return cmd_charpoly(cfg);
    if (*cert) return cmd_certify(cfg);
    if (*clo) return cmd_closure(cfg);
    if (*rs) return cmd_rootsys(cfg);
    if (*st) return cmd_selftest(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
