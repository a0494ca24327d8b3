// Command line front end.
//
//   orthocell build  --kind ko|k|k-subdivided|cube|rec|quotient ...
//   orthocell verify --suite cell-decomp|refinement|invariance|stabilizer|
//                            orbit|markov|all ...
//   orthocell export --kind ... --format off|json --out FILE
//
// Exit codes: 0 success (and verification passed), 1 verification failed,
// 2 bad usage or invalid input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "orthocell/orthocell.hpp"

namespace {

using namespace orthocell;

struct Options {
  std::string kind = "k";
  std::string suite = "all";
  std::string format = "json";
  std::string group = "tor";
  std::string generators_file;
  std::string out;
  int dim = 2;
  int l = 2;
  bool l_given = false;
  int lambda = 2;
  int radius = 2;
  unsigned long seed = 20260815;
  int samples = 20;
  std::string sides;
};

Vec parse_sides(const std::string& s, int fallback_dim) {
  if (s.empty()) return Vec(static_cast<std::size_t>(fallback_dim), Rat(1));
  Vec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(rat_from_string(tok));
  if (v.empty()) throw error(Error::Code::BadInput, "empty --sides");
  return v;
}

OrthotopicGroup resolve_group(const Options& o, const Vec& sides) {
  if (o.group == "tor") return torus_group(sides);
  if (o.group != "custom")
    throw error(Error::Code::BadInput, "--group must be tor or custom");
  if (o.generators_file.empty())
    throw error(Error::Code::BadInput, "--group custom needs --generators FILE");
  std::ifstream in(o.generators_file);
  if (!in) throw error(Error::Code::BadInput, "cannot read " + o.generators_file);
  json doc = json::parse(in);
  std::vector<AffineSignedIsometry> gens;
  for (const json& g : doc) gens.push_back(isometry_from_json(g));
  return make_orthotopic_group(sides, gens);
}

// The complex selected by --kind. Box-based kinds use --sides (corner box
// [0,a_i]); plain kinds live on [-1,1]^dim.
CellComplex build_kind(const Options& o) {
  if (o.kind == "ko") return build_ko(o.dim);
  if (o.kind == "k") return build_k(o.dim);
  if (o.kind == "k-subdivided") return build_k_subdivided(o.dim, o.l);
  if (o.kind == "cube") return box_face_complex(Box::centered_cube(o.dim));
  if (o.kind == "rec") {
    // Plain stretched decomposition unless a subdivision level was asked for.
    Box b = Box::corner(parse_sides(o.sides, o.dim));
    return o.l_given && o.l > 1 ? build_k_subdivided_stretched(b, o.l)
                                : build_k_stretched(b);
  }
  throw error(Error::Code::BadInput, "unknown kind " + o.kind);
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out);
  if (!out) throw error(Error::Code::BadInput, "cannot write " + o.out);
  out << text;
}

int run_build(const Options& o) {
  if (o.kind == "quotient") {
    Vec sides = parse_sides(o.sides, o.dim);
    OrthotopicGroup g = resolve_group(o, sides);
    if (o.lambda > 1) {
      LattesSystem s = build_lattes(g, o.lambda);
      std::cout << "quotient classes: coarse=" << s.coarse.class_count()
                << " fine=" << s.fine.class_count() << " lambda=" << s.lambda
                << "\n";
      if (!o.out.empty()) write_output(o, lattes_to_json(s).dump(2) + "\n");
      return 0;
    }
    Box q = Box::corner(sides);
    QuotientComplex d0 = build_quotient(g, build_k_stretched(q));
    std::cout << "quotient classes: " << d0.class_count() << " by dim:";
    for (std::size_t c : d0.class_counts_by_dim()) std::cout << " " << c;
    std::cout << " euler=" << d0.euler_characteristic() << "\n";
    if (!o.out.empty()) write_output(o, quotient_to_json(d0).dump(2) + "\n");
    return 0;
  }
  CellComplex k = build_kind(o);
  std::cout << "cells: " << k.size() << " by dim:";
  for (std::size_t c : k.count_by_dim()) std::cout << " " << c;
  std::cout << " euler=" << k.euler_characteristic() << "\n";
  if (!o.out.empty()) write_output(o, complex_to_json(k).dump(2) + "\n");
  return 0;
}

int run_export(const Options& o) {
  if (o.kind == "quotient") {
    Vec sides = parse_sides(o.sides, o.dim);
    OrthotopicGroup g = resolve_group(o, sides);
    if (o.format != "json")
      throw error(Error::Code::BadInput, "quotient export supports json only");
    if (o.lambda > 1) {
      write_output(o, lattes_to_json(build_lattes(g, o.lambda)).dump(2) + "\n");
    } else {
      QuotientComplex d0 = build_quotient(g, build_k_stretched(Box::corner(sides)));
      write_output(o, quotient_to_json(d0).dump(2) + "\n");
    }
    return 0;
  }
  CellComplex k = build_kind(o);
  if (o.format == "off") {
    write_output(o, complex_to_off(k));
  } else if (o.format == "json") {
    write_output(o, complex_to_json(k).dump(2) + "\n");
  } else {
    throw error(Error::Code::BadInput, "unknown format " + o.format);
  }
  return 0;
}

VerificationReport run_suite(const Options& o, const std::string& suite) {
  VerificationReport r;
  if (suite == "cell-decomp") {
    r.merge(verify_cell_decomposition(build_kind(o)), o.kind + ": ");
  } else if (suite == "refinement") {
    if (o.kind == "rec") {
      Box b = Box::corner(parse_sides(o.sides, o.dim));
      r.merge(verify_refinement(build_k_subdivided_stretched(b, o.l),
                                build_k_stretched(b)),
              "rec: ");
    } else {
      r.merge(verify_refinement(build_k_subdivided(o.dim, o.l), build_k(o.dim)),
              "k: ");
    }
  } else if (suite == "invariance") {
    std::vector<AffineSignedIsometry> syms = enumerate_cube_symmetries(o.dim);
    r.merge(check_family_invariance(build_kind(o), syms), o.kind + ": ");
  } else if (suite == "stabilizer") {
    std::vector<AffineSignedIsometry> syms = enumerate_cube_symmetries(o.dim);
    SampleConfig cfg;
    cfg.count = o.samples;
    cfg.seed = o.seed;
    r.merge(check_stabilizer_property_sampled(build_kind(o), syms, cfg),
            o.kind + ": ");
  } else if (suite == "orbit") {
    Vec sides = parse_sides(o.sides, o.dim);
    OrthotopicGroup g = resolve_group(o, sides);
    CellComplex k = build_k_stretched(Box::corner(sides));
    SampleConfig cfg;
    cfg.count = o.samples;
    cfg.seed = o.seed;
    r.merge(orbit_intersection_check_sampled(g, k, cfg), "orbit: ");
    r.merge(verify_normal_fundamental_domain(g, std::nullopt, o.radius), "domain: ");
  } else if (suite == "markov") {
    Vec sides = parse_sides(o.sides, o.dim);
    OrthotopicGroup g = resolve_group(o, sides);
    r.merge(verify_conjugation(g, o.lambda), "conjugation: ");
    r.merge(verify_markov(build_lattes(g, o.lambda)), "markov: ");
  } else if (suite == "all") {
    for (const char* s : {"cell-decomp", "refinement", "invariance",
                          "stabilizer", "orbit", "markov"})
      r.merge(run_suite(o, s));
  } else {
    throw error(Error::Code::BadInput, "unknown suite " + suite);
  }
  return r;
}

int run_verify(const Options& o) {
  VerificationReport r = run_suite(o, o.suite);
  std::cout << r.summary() << "\n";
  if (!o.out.empty()) write_output(o, report_to_json(r).dump(2) + "\n");
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact cell decompositions of orthotopes"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--dim", o.dim, "ambient dimension")->check(CLI::Range(0, 6));
    c->add_option("--l", o.l, "subdivision level")
        ->each([&o](const std::string&) { o.l_given = true; });
    c->add_option("--lambda", o.lambda, "expansion factor");
    c->add_option("--sides", o.sides, "box side lengths, comma separated rationals");
    c->add_option("--group", o.group, "tor or custom");
    c->add_option("--generators", o.generators_file,
                  "JSON file with point generators (for --group custom)");
    c->add_option("--seed", o.seed, "sampling seed");
    c->add_option("--samples", o.samples, "interior sample points per cell");
    c->add_option("--radius", o.radius, "translate shell radius");
    c->add_option("--out", o.out, "output file");
  };

  CLI::App* build = app.add_subcommand("build", "construct a decomposition");
  build->add_option("--kind", o.kind, "ko, k, k-subdivided, cube, rec, quotient");
  add_common(build);

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", o.suite,
                     "cell-decomp, refinement, invariance, stabilizer, orbit, "
                     "markov, all");
  verify->add_option("--kind", o.kind, "complex kind for complex suites");
  add_common(verify);

  CLI::App* exp = app.add_subcommand("export", "write a decomposition to disk");
  exp->add_option("--kind", o.kind, "ko, k, k-subdivided, cube, rec, quotient");
  exp->add_option("--format", o.format, "off or json");
  add_common(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return run_build(o);
    if (verify->parsed()) return run_verify(o);
    if (exp->parsed()) return run_export(o);
  } catch (const orthocell::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
