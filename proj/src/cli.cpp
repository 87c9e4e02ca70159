#include "ncgalois/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "ncgalois/crossed.hpp"
#include "ncgalois/galois.hpp"
#include "ncgalois/modular.hpp"
#include "ncgalois/ncprob.hpp"

namespace ncgalois::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

constexpr int kFormatVersion = 1;

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json function_json(const GroupFunction& f) {
  Json out = Json::array();
  for (const auto& v : f.values()) out.push_back(complex_json(v));
  return out;
}

Json violation_json(const std::string& check, const std::string& detail) { return Json{{"check", check}, {"detail", detail}}; }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Loads referenced files and records a hash of every file it reads.
class Loader {
 public:
  explicit Loader(fs::path base) : base_(std::move(base)) {}

  const std::map<std::string, std::string>& hashes() const { return hashes_; }

  // String refs are files; objects are inline. dir receives the directory nested refs resolve against.
  Json load(const Json& ref, const fs::path& from, fs::path& dir) {
    if (ref.is_string()) {
      const fs::path p = io::resolve(ref.get<std::string>(), from);
      const std::string text = io::read_file(p);
      hashes_[ref.get<std::string>()] = io::hex64(io::fnv1a(text));
      dir = p.parent_path();
      return io::parse_json(text, ref.get<std::string>());
    }
    if (!ref.is_object()) throw Error(ErrorCode::InvalidInput, "reference must be a file name or an object");
    dir = from;
    return ref;
  }

  GroupPtr group(const Json& ref) { return group(ref, base_); }

  GroupPtr group(const Json& ref, const fs::path& from) {
    fs::path dir;
    return io::group_from_json(load(ref, from, dir));
  }

  // A rep file, an inline rep with "group", or {"regular": group}.
  UnitaryRep rep(const Json& ref) {
    fs::path dir;
    const Json j = load(ref, base_, dir);
    if (j.contains("regular")) {
      io::reject_unknown(j, {"regular"}, "representation");
      return regular_rep(group(j.at("regular"), dir));
    }
    if (!j.contains("group")) throw Error(ErrorCode::InvalidInput, "representation needs a group");
    return io::rep_from_json(j, group(j.at("group"), dir));
  }

 private:
  fs::path base_;
  std::map<std::string, std::string> hashes_;
};

// "full" | "diagonal" | "scalars", {"kind": ..., "dim": n} or {"generators": [...]}.
StarAlgebra algebra_from_ref(const Json& ref, Index n, const Tolerance& tol) {
  std::string kind;
  if (ref.is_string()) {
    kind = ref.get<std::string>();
  } else if (ref.is_object() && ref.contains("generators")) {
    io::reject_unknown(ref, {"generators"}, "algebra");
    std::vector<Matrix> gens;
    for (const auto& m : ref.at("generators")) gens.push_back(io::matrix_from_json(m));
    if (gens.empty()) throw Error(ErrorCode::InvalidInput, "generator list is empty");
    for (const auto& g : gens)
      if (g.rows() != gens.front().rows() || g.cols() != g.rows())
        throw Error(ErrorCode::DimensionMismatch, "generators must be square of equal size");
    if (n > 0 && gens.front().rows() != n) throw Error(ErrorCode::DimensionMismatch, "generator size differs from context");
    return algebra_from_generators(gens, gens.front().rows(), tol);
  } else if (ref.is_object()) {
    io::reject_unknown(ref, {"kind", "dim"}, "algebra");
    kind = ref.at("kind").get<std::string>();
    if (ref.contains("dim")) {
      const Index d = ref.at("dim").get<Index>();
      if (n > 0 && d != n) throw Error(ErrorCode::DimensionMismatch, "algebra dim differs from context");
      n = d;
    }
  } else {
    throw Error(ErrorCode::InvalidInput, "algebra must be a name or an object");
  }
  if (n <= 0) throw Error(ErrorCode::InvalidInput, "algebra size is not determined; give \"dim\"");
  if (kind == "full") return StarAlgebra::full(n);
  if (kind == "diagonal") return StarAlgebra::diagonal(n);
  if (kind == "scalars") return StarAlgebra::scalars(n);
  throw Error(ErrorCode::InvalidInput, "unknown algebra kind '" + kind + "'");
}

Json algebra_summary(const StarAlgebra& a) {
  Json out{{"ambient_dim", a.ambient_dim()}, {"dim", a.dim()}};
  const BlockStructure bs = block_structure(a);
  Json blocks = Json::array();
  for (const auto& b : bs.blocks) blocks.push_back(Json::array({b.block_dim, b.multiplicity}));
  out["blocks"] = blocks;
  out["factor"] = bs.blocks.size() == 1;
  return out;
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const std::string& command) {
  if (!seed) throw Error(ErrorCode::InvalidInput, command + " is randomized and needs a seed (spec \"seed\" or --seed)");
  return *seed;
}

struct Context {
  Loader loader;
  std::optional<std::uint64_t> seed;
  RunOptions options;
  Json violations = Json::array();

  void flag(const std::string& check, const std::string& detail) { violations.push_back(violation_json(check, detail)); }
};

Json proper_json(const ProperReport& p) {
  return Json{{"proper", p.proper},
              {"rank", p.rank},
              {"multiplicities", p.multiplicities},
              {"sigma_prime", p.sigma_prime},
              {"sigma_zero", p.sigma_zero}};
}

Json cmd_analyze_group(const Json& spec, Context& ctx) {
  io::reject_unknown(spec, {"group", "seed", "description"}, "analyze-group spec");
  const GroupPtr g = ctx.loader.group(spec.at("group"));
  Json subs = Json::array();
  for (const auto& h : enumerate_subgroups(g))
    subs.push_back(Json{{"members", h.members()}, {"order", h.order()}, {"normal", is_normal(h)}});
  bool abelian = true;
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b) abelian = abelian && g->mul(a, b) == g->mul(b, a);
  for (const auto& h : subs)
    if (g->order() % h.at("order").get<int>() != 0) ctx.flag("lagrange", "subgroup order does not divide |G|");
  return Json{{"order", g->order()},
              {"labels", g->labels()},
              {"abelian", abelian},
              {"subgroups", subs},
              {"conjugacy_classes", conjugacy_classes(*g)}};
}

Json cmd_irreps(const Json& spec, Context& ctx) {
  io::reject_unknown(spec, {"group", "seed", "description"}, "irreps spec");
  const GroupPtr g = ctx.loader.group(spec.at("group"));
  const auto table = irrep_table(g);
  Json dims = Json::array(), chars = Json::array(), mats = Json::array();
  long sum_sq = 0;
  for (int s = 0; s < table->size(); ++s) {
    dims.push_back(table->dim(s));
    sum_sq += static_cast<long>(table->dim(s) * table->dim(s));
    chars.push_back(function_json(table->characters[s]));
    mats.push_back(io::rep_to_json(table->irreps[s]));
  }
  const double pw = peter_weyl_residual(*table);
  double schur = 0.0;
  for (int a = 0; a < table->size(); ++a)
    for (int b = 0; b < table->size(); ++b)
      schur = std::max(schur, schur_check(table->irreps[a], table->irreps[b]).max_residual);
  if (sum_sq != g->order()) ctx.flag("dimension_sum", "sum of squared dimensions is " + std::to_string(sum_sq));
  if (pw >= 1e-10) ctx.flag("peter_weyl", "orthonormality residual " + fmt(pw));
  if (schur >= 1e-10) ctx.flag("schur", "orthogonality residual " + fmt(schur));
  return Json{{"order", g->order()},
              {"dims", dims},
              {"sum_dim_squares", sum_sq},
              {"characters", chars},
              {"irreps", mats},
              {"peter_weyl_residual", pw},
              {"schur_residual", schur},
              {"complete", table->complete()}};
}

Json cmd_decompose(const Json& spec, Context& ctx) {
  io::reject_unknown(spec, {"rep", "seed", "description"}, "decompose spec");
  const std::uint64_t seed = require_seed(ctx.seed, "decompose");
  const UnitaryRep rep = ctx.loader.rep(spec.at("rep"));
  const auto table = irrep_table(rep.group());
  const Decomposition d = decompose(rep, seed);
  const double res = decomposition_residual(rep, d, *table);
  const double cn = character_norm(rep);
  Json blocks = Json::array();
  for (const auto& b : d.blocks)
    blocks.push_back(Json{{"irrep", b.irrep}, {"multiplicity", b.multiplicity}, {"dim", table->dim(b.irrep)}});
  if (res >= 1e-9) ctx.flag("block_diagonal", "intertwiner residual " + fmt(res));
  if (std::abs(cn - d.commutant_dimension) > 1e-6) ctx.flag("commutant_dimension", "character norm " + fmt(cn));
  return Json{{"dim", rep.dim()},
              {"blocks", blocks},
              {"commutant_dimension", d.commutant_dimension},
              {"character_norm", cn},
              {"residual", res},
              {"intertwiner", io::matrix_to_json(d.intertwiner)}};
}

Json galois_json(const GaloisReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"members", row.subgroup.members()},
                        {"fixed_dim", row.fixed_dim},
                        {"fixed_id", row.fixed_id},
                        {"bicommutant_verified", row.bicommutant_verified},
                        {"bicommutant_residual", row.bicommutant_residual}});
  Json collisions = Json::array();
  for (const auto& [a, b] : r.collisions) collisions.push_back(Json::array({a, b}));
  return Json{{"kind", r.kind == CommutantKind::Relative ? "relative" : "ordinary"},
              {"ambient_dim", r.ambient_dim},
              {"algebra_dim", r.ambient_algebra_dim},
              {"rows", rows},
              {"equivalence_classes", r.equivalence.classes},
              {"per_irrep_classes", r.per_irrep_equivalence.classes},
              {"properness", proper_json(r.properness)},
              {"injective", r.injective},
              {"constant_on_classes", r.constant_on_classes},
              {"anti_monotone", r.anti_monotone},
              {"collisions", collisions},
              {"distinct_fixed_algebras", r.fixed_algebras.size()}};
}

Json cmd_galois(const Json& spec, Context& ctx) {
  io::reject_unknown(spec, {"rep", "algebra", "kind", "subgroups", "seed", "description"}, "galois spec");
  const UnitaryRep rep = ctx.loader.rep(spec.at("rep"));
  const StarAlgebra m = algebra_from_ref(spec.value("algebra", Json("full")), rep.dim(), ctx.options.tol);
  GaloisOptions opts;
  opts.threads = ctx.options.threads;
  opts.tol = ctx.options.tol;
  const std::string kind = spec.value("kind", std::string("relative"));
  if (kind == "relative")
    opts.kind = CommutantKind::Relative;
  else if (kind == "ordinary")
    opts.kind = CommutantKind::Ordinary;
  else
    throw Error(ErrorCode::InvalidInput, "kind must be relative or ordinary");

  GaloisReport r;
  if (spec.contains("subgroups")) {
    std::vector<Subgroup> subs;
    for (const auto& s : spec.at("subgroups")) subs.emplace_back(rep.group(), s.get<std::vector<int>>());
    std::sort(subs.begin(), subs.end());
    r = galois_map(m, rep, subs, opts);
  } else {
    r = galois_map(m, rep, opts);
  }
  for (const auto& v : r.violations) ctx.flag(v.check, v.detail);
  Json out = galois_json(r);
  const MinimalActionReport min = is_minimal_action(m, rep);
  out["minimal_action"] = Json{{"minimal", min.minimal}, {"relative_commutant_dim", min.relative_commutant_dim}};
  return out;
}

Json residual_table(const std::vector<NamedResidual>& rs, Context& ctx, const std::string& prefix, double tol) {
  Json out = Json::object();
  for (const auto& r : rs) {
    out[r.name] = r.residual;
    if (!(r.residual < tol)) ctx.flag(prefix + r.name, "residual " + fmt(r.residual));
  }
  return out;
}

Json cmd_modular(const Json& spec, Context& ctx) {
  io::reject_unknown(spec, {"dim", "algebra", "state", "kms_witness", "cocycle_states", "t_grid", "seed", "description"},
                     "modular spec");
  const std::uint64_t seed = require_seed(ctx.seed, "modular");
  Rng rng(seed);
  Index n = spec.value("dim", Index{0});
  Matrix rho;
  const Json state = spec.value("state", Json("random"));
  if (state.is_string()) {
    if (state.get<std::string>() != "random") throw Error(ErrorCode::InvalidInput, "state must be a matrix or \"random\"");
    if (n <= 0) throw Error(ErrorCode::InvalidInput, "random state needs \"dim\"");
    rho = rng.density(n);
  } else {
    rho = io::matrix_from_json(state);
    if (n > 0 && rho.rows() != n) throw Error(ErrorCode::DimensionMismatch, "state size differs from dim");
    n = rho.rows();
  }
  const State phi(rho);
  const StarAlgebra m = algebra_from_ref(spec.value("algebra", Json("full")), n, ctx.options.tol);
  std::vector<double> grid = default_t_grid();
  if (spec.contains("t_grid")) grid = spec.at("t_grid").get<std::vector<double>>();

  const GNSSpace space = gns(m, phi);
  const ModularData md = tomita(space);
  Json out;
  out["convention"] =
      "GNS coordinates over a Hilbert-Schmidt orthonormal basis of M; real-linear maps act on (re x, im x); "
      "Delta = F S, J = S Delta^-1/2; residuals are max-entry differences relative to max(1, max-entry of the right side)";
  out["gns_dim"] = space.dim();
  out["algebra"] = algebra_summary(m);
  out["representation_residual"] = space.representation_residual;
  if (space.representation_residual >= 1e-9) ctx.flag("gns_representation", "residual " + fmt(space.representation_residual));
  out["identities"] = residual_table(modular_identities(md), ctx, "identity_", 1e-9);
  out["closed_forms"] = residual_table(closed_form_residuals(space, md), ctx, "closed_form_", 1e-9);

  const TomitaTakesakiCheck tt = tomita_takesaki_check(space, md, grid, ctx.options.threads);
  out["t_grid"] = grid;
  out["jmj_in_commutant"] = tt.jmj_in_commutant;
  out["flow_invariance"] = tt.flow_invariance;
  out["flow_matches_sigma"] = tt.flow_matches_sigma;
  if (tt.jmj_in_commutant >= 1e-9) ctx.flag("jmj_in_commutant", "residual " + fmt(tt.jmj_in_commutant));
  if (tt.flow_invariance >= 1e-9) ctx.flag("flow_invariance", "residual " + fmt(tt.flow_invariance));
  if (tt.flow_matches_sigma >= 1e-9) ctx.flag("flow_matches_sigma", "residual " + fmt(tt.flow_matches_sigma));

  if (!m.is_full()) {
    const BlockTomita bt = tomita_blockwise(m, phi);
    Json blocks = Json::array();
    for (std::size_t i = 0; i < bt.blocks.size(); ++i) {
      Json ids = Json::object();
      for (const auto& r : bt.identities[i]) ids[r.name] = r.residual;
      blocks.push_back(Json{{"block_dim", bt.structure.blocks[i].block_dim},
                            {"multiplicity", bt.structure.blocks[i].multiplicity},
                            {"weight", bt.weights[i]},
                            {"identities", ids}});
    }
    out["blockwise"] = blocks;
  }

  Matrix a, b;
  if (spec.contains("kms_witness")) {
    const Json& w = spec.at("kms_witness");
    io::reject_unknown(w, {"a", "b"}, "kms_witness");
    a = io::matrix_from_json(w.at("a"));
    b = io::matrix_from_json(w.at("b"));
  } else {
    a = m.random_element(rng, false);
    b = m.random_element(rng, false);
  }
  Json kms = Json::object();
  for (double beta : {0.5, 1.0, 2.0}) {
    char key[16];
    std::snprintf(key, sizeof key, "%g", beta);
    kms[key] = kms_check(rho, a, b, beta);
  }
  if (kms["1"].get<double>() >= 1e-10) ctx.flag("kms_beta_1", "residual " + fmt(kms["1"].get<double>()));
  out["kms"] = kms;

  Matrix rho2, rho3;
  const Json cs = spec.value("cocycle_states", Json("random"));
  if (cs.is_string()) {
    rho2 = rng.density(n);
    rho3 = rng.density(n);
  } else {
    if (!cs.is_array() || cs.size() != 2) throw Error(ErrorCode::InvalidInput, "cocycle_states needs two densities");
    rho2 = io::matrix_from_json(cs[0]);
    rho3 = io::matrix_from_json(cs[1]);
  }
  if (!State(rho2).faithful() || !State(rho3).faithful()) throw Error(ErrorCode::NotFaithful, "cocycle states must be faithful");
  const CocycleReport cr = cocycle_report(rho, rho2, rho3, grid, seed, ctx.options.threads);
  out["cocycle"] = Json{{"intertwining", cr.intertwining}, {"cocycle", cr.cocycle},       {"inverse", cr.inverse},
                        {"chain_rule", cr.chain_rule},     {"unitarity", cr.unitarity},   {"balanced_lower", cr.balanced_lower},
                        {"balanced_upper", cr.balanced_upper}};
  if (cr.max_residual() >= 1e-9) ctx.flag("cocycle", "max residual " + fmt(cr.max_residual()));
  return out;
}

Json cmd_crossed(const Json& spec, Context& ctx) {
  io::reject_unknown(spec, {"base", "group", "action", "unitaries", "tables", "galois", "seed", "description"}, "crossed spec");
  const GroupPtr g = ctx.loader.group(spec.at("group"));
  const std::string action = spec.at("action").get<std::string>();
  std::optional<CrossedProduct> cp;
  if (action == "ad") {
    if (!spec.contains("unitaries")) throw Error(ErrorCode::InvalidInput, "ad action needs unitaries");
    std::vector<Matrix> mats;
    for (const auto& m : spec.at("unitaries")) mats.push_back(io::matrix_from_json(m));
    if (mats.empty()) throw Error(ErrorCode::InvalidInput, "unitaries list is empty");
    const StarAlgebra base = algebra_from_ref(spec.at("base"), mats.front().rows(), ctx.options.tol);
    cp = crossed_product(base, UnitaryRep(g, std::move(mats)));
  } else if (action == "table") {
    if (!spec.contains("tables")) throw Error(ErrorCode::InvalidInput, "table action needs tables");
    std::vector<Matrix> tables;
    for (const auto& m : spec.at("tables")) tables.push_back(io::matrix_from_json(m));
    const StarAlgebra base = algebra_from_ref(spec.at("base"), 0, ctx.options.tol);
    cp = crossed_product(base, g, tables);
  } else {
    throw Error(ErrorCode::InvalidInput, "action must be \"ad\" or \"table\"");
  }

  Json out;
  out["base"] = algebra_summary(cp->base);
  out["carrier_dim"] = cp->carrier_dim;
  out["algebra"] = algebra_summary(cp->algebra);
  out["covariance_residual"] = cp->covariance_residual;
  out["bicommutant_ok"] = cp->bicommutant_ok;
  out["carrier_properness"] = proper_json(is_proper(cp->u));
  if (cp->covariance_residual >= 1e-10) ctx.flag("covariance", "residual " + fmt(cp->covariance_residual));
  if (!cp->bicommutant_ok) ctx.flag("bicommutant", "crossed-product algebra fails A'' = A");

  if (spec.value("galois", true)) {
    const CrossedGaloisReport cg = crossed_galois(*cp, ctx.options.threads);
    for (const auto& v : cg.galois.violations) ctx.flag("crossed_galois_" + v.check, v.detail);
    Json gj = galois_json(cg.galois);
    Json dims = Json::array();
    for (const auto& p : cg.pullbacks) dims.push_back(p.dim());
    gj["pullback_ids"] = cg.pullback_ids;
    gj["pullback_dims"] = dims;
    gj["pullback_injective"] = cg.pullback_injective;
    out["galois"] = gj;
  }
  return out;
}

Json axioms_json(const CondExpReport& r) {
  Json out = Json::object();
  for (const auto& a : r.axioms) out[a.name] = Json{{"residual", a.residual}, {"passed", a.passed}, {"witness", a.witness}};
  return out;
}

Json cmd_martingale(const Json& spec, Context& ctx) {
  io::reject_unknown(spec, {"rep", "chain", "x", "state", "average_state", "axioms", "seed", "description"}, "martingale spec");
  const std::uint64_t seed = require_seed(ctx.seed, "martingale");
  const UnitaryRep rep = ctx.loader.rep(spec.at("rep"));
  const Index n = rep.dim();
  std::vector<Subgroup> chain;
  for (const auto& s : spec.at("chain")) chain.emplace_back(rep.group(), s.get<std::vector<int>>());
  const Matrix x = io::matrix_from_json(spec.at("x"));
  if (x.rows() != n || x.cols() != n) throw Error(ErrorCode::DimensionMismatch, "x size differs from the representation");
  State phi = spec.contains("state") ? State(io::matrix_from_json(spec.at("state"))) : State::tracial(n);
  if (phi.ambient_dim() != n) throw Error(ErrorCode::DimensionMismatch, "state size differs from the representation");
  if (spec.value("average_state", true)) phi = average_state(phi, rep);

  const Filtration f(chain, rep, StarAlgebra::full(n));
  const Martingale mart = martingale_from(x, f, rep, seed, ctx.options.threads);
  const ConvergenceReport conv = convergence_check(mart, f, x, phi);

  Json orders = Json::array(), dims = Json::array();
  for (std::size_t t = 0; t < f.length(); ++t) {
    orders.push_back(f.chain()[t].order());
    dims.push_back(f.algebras()[t].dim());
  }
  Json out{{"chain_orders", orders},
           {"algebra_dims", dims},
           {"top_equals_ambient", f.top_equals_ambient()},
           {"moments", conv.moments},
           {"nondecreasing", conv.nondecreasing},
           {"adaptedness_residual", mart.adaptedness_residual},
           {"martingale_residual", mart.martingale_residual},
           {"tower_residual", mart.tower_residual},
           {"terminal_trivial", conv.terminal_trivial},
           {"terminal_residual", conv.terminal_residual},
           {"state_faithful", phi.faithful()}};
  if (!f.top_equals_ambient()) ctx.flag("filtration_density", "top algebra differs from the ambient algebra");
  if (mart.tower_residual >= 1e-9) ctx.flag("tower", "residual " + fmt(mart.tower_residual));
  if (mart.martingale_residual >= 1e-9) ctx.flag("martingale", "residual " + fmt(mart.martingale_residual));
  if (mart.adaptedness_residual >= 1e-9) ctx.flag("adapted", "residual " + fmt(mart.adaptedness_residual));
  if (!conv.nondecreasing) ctx.flag("moments", "moment sequence decreases");
  if (conv.terminal_trivial && conv.terminal_residual >= 1e-10)
    ctx.flag("terminal", "residual " + fmt(conv.terminal_residual));

  if (spec.value("axioms", true)) {
    Json ax = Json::array();
    CondExpOptions co;
    co.seed = seed;
    for (std::size_t t = 0; t < f.length(); ++t) {
      const CondExpReport r = verify_cond_exp_axioms(rep, f.chain()[t], phi, co);
      for (const auto& a : r.axioms)
        if (!a.passed) ctx.flag("cond_exp_" + a.name, "chain position " + std::to_string(t) + ", residual " + fmt(a.residual));
      ax.push_back(axioms_json(r));
    }
    out["axioms"] = ax;
  }
  return out;
}

}  // namespace

Json run(const std::string& command, const Json& spec, const fs::path& base_dir, const RunOptions& options) {
  if (!spec.is_object()) throw Error(ErrorCode::InvalidInput, "experiment spec must be a JSON object");
  Context ctx{Loader(base_dir), options.seed, options, Json::array()};
  if (!ctx.seed && spec.contains("seed")) ctx.seed = spec.at("seed").get<std::uint64_t>();

  Json result;
  if (command == "analyze-group")
    result = cmd_analyze_group(spec, ctx);
  else if (command == "irreps")
    result = cmd_irreps(spec, ctx);
  else if (command == "decompose")
    result = cmd_decompose(spec, ctx);
  else if (command == "galois")
    result = cmd_galois(spec, ctx);
  else if (command == "modular")
    result = cmd_modular(spec, ctx);
  else if (command == "crossed")
    result = cmd_crossed(spec, ctx);
  else if (command == "martingale")
    result = cmd_martingale(spec, ctx);
  else
    throw Error(ErrorCode::InvalidInput, "unknown subcommand '" + command + "'");

  Json report;
  report["command"] = command;
  report["format_version"] = kFormatVersion;
  report["seed"] = ctx.seed ? Json(*ctx.seed) : Json(nullptr);
  report["tolerances"] = Json{{"abs", options.tol.abs_eps}, {"rel", options.tol.rel_eps}};
  report["fixtures"] = ctx.loader.hashes();
  report["spec_hash"] = io::hex64(io::fnv1a(io::canonical_dump(spec)));
  report["result"] = std::move(result);
  report["violations"] = std::move(ctx.violations);
  return report;
}

std::string run_file(const std::string& command, const fs::path& spec_path, const RunOptions& options) {
  const Json spec = io::parse_json(io::read_file(spec_path), spec_path.filename().string());
  return io::canonical_dump(run(command, spec, spec_path.parent_path(), options)) + "\n";
}

int main(int argc, char** argv) {
  CLI::App app{"Finite-group operator-algebra workbench"};
  std::string command, spec_path, out_path;
  std::optional<std::uint64_t> seed;
  RunOptions options;
  app.add_option("command", command, "analyze-group | irreps | decompose | galois | modular | crossed | martingale")->required();
  app.add_option("spec", spec_path, "experiment spec (JSON)")->required();
  app.add_option("--seed", seed, "seed for randomized analyses");
  app.add_option("--tol-abs", options.tol.abs_eps, "absolute rank tolerance");
  app.add_option("--tol-rel", options.tol.rel_eps, "relative rank tolerance");
  app.add_option("--out", out_path, "report path (default stdout)");
  app.add_option("--threads", options.threads, "worker threads")->check(CLI::Range(1u, 256u));

  auto emit_error = [](const std::string& name, const std::string& message, int status) {
    std::cout << io::canonical_dump(Json{{"error", name}, {"message", message}}) << "\n";
    return status;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("UsageError", e.what(), 1);
  }
  options.seed = seed;

  try {
    const std::string text = run_file(command, spec_path, options);
    if (out_path.empty())
      std::cout << text;
    else
      io::write_atomic(out_path, text);
    return 0;
  } catch (const Error& e) {
    return emit_error(error_name(e.code()), e.detail(), is_numerical(e.code()) ? 2 : 1);
  } catch (const nlohmann::json::exception& e) {
    return emit_error(error_name(ErrorCode::InvalidInput), e.what(), 1);
  } catch (const std::exception& e) {
    return emit_error("InternalError", e.what(), 2);
  }
}

}  // namespace ncgalois::cli
