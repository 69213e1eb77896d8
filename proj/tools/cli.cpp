#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "johnkit/brascamp_lieb.hpp"
#include "johnkit/generators.hpp"
#include "johnkit/john.hpp"
#include "johnkit/lp_spaces.hpp"
#include "johnkit/measures.hpp"
#include "johnkit/serialization.hpp"

namespace johnkit::cli {
namespace {

constexpr double kBoundTolerance = 1e-6;       // relative slack on deterministic bounds
constexpr double kResidualTolerance = 1e-8;
constexpr double kSigmas = 3.0;
constexpr int kGeneratorAttempts = 10;

struct Report {
  Json result = Json::object();
  Json table = Json::array();  // optional row table (reviso)
  bool pass = true;
};

Json config_json(const ExperimentConfig& c) {
  Json j = {{"command", c.command}};
  if (!c.input.empty()) j["input"] = c.input;
  if (c.command == "john") j["symmetric"] = c.symmetric;
  if (c.command == "reviso") {
    j["n"] = c.n;
    j["count"] = c.count;
    j["symmetric"] = c.symmetric;
    j["inject_extremal"] = c.inject_extremal;
    j["bound_tolerance"] = kBoundTolerance;
  } else if (c.command != "john") {
    j["samples"] = c.samples;
  }
  if (c.command == "petty") j["images"] = c.images;
  j["seed"] = c.seed;
  j["sigmas"] = kSigmas;
  j["residual_tolerance"] = kResidualTolerance;
  return j;
}

McParams mc_params(const ExperimentConfig& c) {
  McParams mc;
  mc.sample_count = c.samples;
  mc.seed = c.seed;
  mc.validate();
  return mc;
}

Json residuals_json(const DecompositionResiduals& r) {
  return {{"frobenius", r.frobenius}, {"trace_gap", r.trace_gap}, {"barycenter", r.barycenter}};
}

Report cmd_john(const ExperimentConfig& c) {
  const HPolytope p = hpolytope_from_json(read_json_file(c.input));
  const EllipsoidSolution sol = solve_max_inscribed_ellipsoid(p);
  const AffineMap map = AffineMap{sol.ellipsoid.shape, sol.ellipsoid.center}.inverse();
  const HPolytope body = apply_affine(p, map);
  const Mat contacts = contact_points(body);
  const JohnDecomposition d = john_decomposition(contacts, c.symmetric);
  const DecompositionResiduals r = d.residuals();

  Report rep;
  rep.result["ellipsoid"] = to_json(sol.ellipsoid);
  rep.result["kkt_residual"] = sol.kkt_residual;
  rep.result["newton_steps"] = sol.iterations;
  rep.result["john_map"] = to_json(map);
  rep.result["contacts"] = matrix_to_json(contacts);
  rep.result["decomposition"] = to_json(d);
  rep.result["residuals"] = residuals_json(r);
  rep.pass = r.frobenius <= kResidualTolerance && r.trace_gap <= kResidualTolerance &&
             (c.symmetric || r.barycenter <= kResidualTolerance);
  return rep;
}

struct RevisoRow {
  int facets = 0;
  int attempts = 0;
  double quotient = 0.0;
  double volume = 0.0;
};

RevisoRow measure_john_position(const HPolytope& p) {
  const VPolytope v = vrep_from_hrep(john_position(p).body);
  return {p.size(), 1, isoperimetric_quotient(v), polytope_volume(v)};
}

Report cmd_reviso(const ExperimentConfig& c) {
  if (c.n < 2 || c.n > 4) throw Error(ErrorKind::InvalidInput, "--n must be 2, 3 or 4");
  if (c.count < 1) throw Error(ErrorKind::InvalidInput, "--count must be >= 1");
  const double constant = reverse_isoperimetric_constant(c.n, c.symmetric);
  const double volume_bound = c.symmetric ? cube_volume_bound(c.n) : simplex_volume_bound(c.n);

  Report rep;
  double max_quotient = 0.0, max_volume = 0.0;
  int violations = 0;
  for (int i = 0; i < c.count; ++i) {
    RevisoRow row;
    std::string source = "random";
    if (i == 0 && c.inject_extremal) {
      row = measure_john_position(c.symmetric ? cube_hrep(c.n) : regular_simplex_hrep(c.n));
      source = c.symmetric ? "cube" : "simplex";
    } else {
      Rng rng = batch_engine(c.seed, static_cast<std::uint64_t>(i));
      for (int attempt = 1;; ++attempt) {
        try {
          row = measure_john_position(random_polytope(c.n, rng, c.symmetric));
          row.attempts = attempt;
          break;
        } catch (const Error&) {
          if (attempt == kGeneratorAttempts) throw;
        }
      }
    }
    const bool ok = row.quotient <= constant * (1.0 + kBoundTolerance) &&
                    row.volume <= volume_bound * (1.0 + kBoundTolerance);
    if (!ok) ++violations;
    max_quotient = std::max(max_quotient, row.quotient);
    max_volume = std::max(max_volume, row.volume);
    rep.table.push_back({{"index", i},
                         {"source", source},
                         {"facets", row.facets},
                         {"attempts", row.attempts},
                         {"quotient", row.quotient},
                         {"volume", row.volume},
                         {"within_bounds", ok}});
  }
  rep.result["constant"] = constant;
  rep.result["max_quotient"] = max_quotient;
  rep.result["volume_bound"] = volume_bound;
  rep.result["max_volume"] = max_volume;
  rep.result["violations"] = violations;
  rep.pass = violations == 0;
  return rep;
}

Report cmd_lp(const ExperimentConfig& c) {
  const SubspaceSpec s = subspace_from_json(read_json_file(c.input));
  const SubspaceVolumeRatio r = subspace_volume_ratio(s, mc_params(c));
  Report rep;
  rep.result["p"] = s.p;
  rep.result["lewis_residual"] = r.lewis_residual;
  rep.result["vr"] = to_json(r.vr);
  rep.result["exact_ellipsoid"] = r.exact_ellipsoid;
  rep.result["reference"] = r.reference;
  const double slack = kSigmas * r.vr.std_error;
  rep.pass = r.lewis_residual <= kResidualTolerance && r.vr.value <= r.reference + slack;
  if (s.p == 1.0) {
    const double universal = l1_vr_bound(s.n()).universal;
    rep.result["universal_bound"] = universal;
    rep.pass = rep.pass && r.vr.value <= universal + slack;
  }
  return rep;
}

Report cmd_bl(const ExperimentConfig& c) {
  const Json j = read_json_file(c.input);
  const BLSystem s = bl_system_from_json(j);
  std::vector<Density1D> densities;
  if (j.contains("densities")) {
    for (const Json& d : j.at("densities")) densities.push_back(density_from_json(d));
  } else {
    densities.assign(s.size(), Density1D::gaussian(1.0));
  }
  const Estimate ratio = bl_ratio(s, densities, mc_params(c));
  Report rep;
  Json tags = Json::array();
  for (const Density1D& d : densities) tags.push_back(to_json(d));
  rep.result["densities"] = tags;
  rep.result["residuals"] = residuals_json(verify_decomposition(s));
  rep.result["ratio"] = to_json(ratio);
  rep.pass = ratio.value <= 1.0 + kSigmas * ratio.std_error;
  return rep;
}

Report cmd_petty(const ExperimentConfig& c) {
  const Polytope parsed = polytope_from_json(read_json_file(c.input));
  const VPolytope v = std::holds_alternative<VPolytope>(parsed)
                          ? std::get<VPolytope>(parsed)
                          : vrep_from_hrep(std::get<HPolytope>(parsed));
  const McParams mc = mc_params(c);
  const Estimate base = petty_functional(v, mc);

  Report rep;
  rep.result["petty"] = to_json(base);
  Rng rng = batch_engine(c.seed, 0);
  double worst = 0.0;
  Json images = Json::array();
  for (int k = 1; k <= c.images; ++k) {
    const AffineMap t = random_affine(v.dim(), rng);
    McParams image_mc = mc;
    image_mc.seed = mix_seed(c.seed, static_cast<std::uint64_t>(k));
    const Estimate e = petty_functional(apply_affine(v, t), image_mc);
    const double z = std::abs(e.value - base.value) /
                     std::hypot(e.std_error, base.std_error);
    worst = std::max(worst, z);
    images.push_back({{"determinant", t.determinant()}, {"petty", to_json(e)}, {"z", z}});
  }
  rep.result["images"] = images;
  rep.result["max_z"] = worst;
  rep.pass = worst <= kSigmas;
  return rep;
}

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, os);
    }
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
  } else {
    os << prefix << ',' << scalar(j) << '\n';
  }
}

void write_csv(const Json& doc, const Json& table, std::ostream& os) {
  os << "field,value\n";
  for (const auto& [key, value] : doc.items()) flatten(value, key, os);
  if (table.empty()) return;
  os << '\n';
  bool first = true;
  for (const auto& [key, value] : table[0].items()) {
    os << (first ? "" : ",") << key;
    first = false;
  }
  os << '\n';
  for (const Json& row : table) {
    first = true;
    for (const auto& [key, value] : row.items()) {
      os << (first ? "" : ",") << scalar(value);
      first = false;
    }
    os << '\n';
  }
}

void emit(const ExperimentConfig& c, const Report& rep, std::ostream& out) {
  Json doc = {{"config", config_json(c)}, {"result", rep.result}};
  doc["status"] = rep.pass ? "pass" : "fail";
  std::ostringstream body;
  if (c.format == "csv") {
    write_csv(doc, rep.table, body);
  } else {
    if (!rep.table.empty()) doc["rows"] = rep.table;
    body << doc.dump(2) << '\n';
  }
  if (c.out.empty()) {
    out << body.str();
    return;
  }
  std::ofstream file(c.out);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write " + c.out);
  file << body.str();
}

void add_common(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--seed", c.seed, "Base seed");
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out, "Write the report here instead of stdout");
}

void add_sampling(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--samples", c.samples, "Monte Carlo sample count")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig c;
  CLI::App app{"Maximal ellipsoids, reverse isoperimetry and volume ratio experiments"};
  app.require_subcommand(1);

  auto* john = app.add_subcommand("john", "John ellipsoid, position and decomposition of a polytope");
  john->add_option("--input", c.input, "Polytope file")->required();
  john->add_flag("--symmetric", c.symmetric, "Declare the body centrally symmetric");
  add_common(john, c);

  auto* reviso = app.add_subcommand("reviso", "Isoperimetric quotients of random John-positioned bodies");
  reviso->add_option("--n", c.n, "Dimension (2, 3 or 4)");
  reviso->add_option("--count", c.count, "Number of bodies");
  reviso->add_flag("--symmetric", c.symmetric, "Centrally symmetric bodies");
  reviso->add_flag("--inject-extremal", c.inject_extremal,
                   "Replace body 0 by the simplex (or cube when symmetric)");
  add_common(reviso, c);

  auto* lp = app.add_subcommand("lp", "Volume ratio of a subspace of l_p^m");
  lp->add_option("--input", c.input, "Subspace file")->required();
  add_common(lp, c);
  add_sampling(lp, c);

  auto* bl = app.add_subcommand("bl", "Rank-one Brascamp-Lieb ratio");
  bl->add_option("--input", c.input, "System file")->required();
  add_common(bl, c);
  add_sampling(bl, c);

  auto* petty = app.add_subcommand("petty", "Petty functional and its affine invariance");
  petty->add_option("--input", c.input, "Polytope file")->required();
  petty->add_option("--images", c.images, "Number of random affine images")
      ->check(CLI::NonNegativeNumber);
  add_common(petty, c);
  add_sampling(petty, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kError;
  }

  try {
    Report rep;
    if (john->parsed()) {
      c.command = "john";
      rep = cmd_john(c);
    } else if (reviso->parsed()) {
      c.command = "reviso";
      rep = cmd_reviso(c);
    } else if (lp->parsed()) {
      c.command = "lp";
      rep = cmd_lp(c);
    } else if (bl->parsed()) {
      c.command = "bl";
      rep = cmd_bl(c);
    } else {
      c.command = "petty";
      rep = cmd_petty(c);
    }
    emit(c, rep, out);
    return rep.pass ? kPass : kBoundViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
}

}  // namespace johnkit::cli
