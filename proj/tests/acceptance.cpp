// Acceptance gate.  Runs the end-to-end checks the project promises and
// prints one PASS/FAIL line per criterion; exits nonzero if any fail.
//
// argv[1] must be the path to the command line tool; the last criterion
// spawns it on a decomposition that genuinely fails verification and expects
// exit code 1.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "orthocell/orthocell.hpp"

using namespace orthocell;

namespace {

std::string g_cli;

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Vec ones(int n) {
  Vec v;
  for (int i = 0; i < n; ++i) v.push_back(rat(1));
  return v;
}

// Each criterion returns an empty string on success, a reason on failure.
using Criterion = std::function<std::string()>;

std::string check_interval_decomposition() {
  CellComplex k = build_k(1);
  std::set<ConvexCell> expect{
      ConvexCell::point({rat(-1)}), ConvexCell::point({rat(0)}),
      ConvexCell::point({rat(1)}),
      ConvexCell::from_points(1, {{rat(-1)}, {rat(0)}}),
      ConvexCell::from_points(1, {{rat(0)}, {rat(1)}})};
  if (k.cells() != std::vector<ConvexCell>(expect.begin(), expect.end()))
    return "interval decomposition differs from the expected five cells";
  return "";
}

std::string check_cell_counts() {
  const std::vector<std::size_t> expect_interior{3, 17, 147};
  const std::vector<std::size_t> expect_all{5, 33, 293};
  const std::vector<std::size_t> expect_interior_top{2, 8, 48};
  for (int d = 1; d <= 3; ++d) {
    oracle::StrataCounts strata = oracle::strata_counts(d, 4);
    CellComplex ko = build_ko(d);
    CellComplex k = build_k(d);
    if (ko.count_by_dim() != strata.interior_by_dim ||
        k.count_by_dim() != strata.all_by_dim)
      return "counts disagree with the arrangement oracle at d = " +
             std::to_string(d);
    std::size_t i = static_cast<std::size_t>(d - 1);
    if (ko.size() != expect_interior[i] || k.size() != expect_all[i])
      return "total counts changed at d = " + std::to_string(d);
    if (ko.count_of_dim(d) != expect_interior_top[i])
      return "interior top cell count changed at d = " + std::to_string(d);
    if (k.count_of_dim(d) !=
        static_cast<std::size_t>(ipow(2, d)) *
            static_cast<std::size_t>(d == 3 ? 6 : (d == 2 ? 2 : 1)))
      return "top cell count is not 2^d * d! at d = " + std::to_string(d);
  }
  return "";
}

std::string check_decompositions_and_refinements() {
  for (int d = 1; d <= 3; ++d) {
    CellComplex k = build_k(d);
    if (!verify_cell_decomposition(k).passed())
      return "cube decomposition fails at d = " + std::to_string(d);
    if (!verify_refinement(k, box_face_complex(Box::centered_cube(d))).passed())
      return "cube decomposition does not refine the face complex at d = " +
             std::to_string(d);
  }
  const std::vector<std::pair<int, int>> pairs{
      {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};
  for (auto [n, l] : pairs) {
    CellComplex fine = build_k_subdivided(n, l);
    if (!verify_cell_decomposition(fine).passed())
      return "subdivided decomposition fails at (" + std::to_string(n) + ", " +
             std::to_string(l) + ")";
    if (!verify_refinement(fine, build_k(n)).passed())
      return "subdivision does not refine at (" + std::to_string(n) + ", " +
             std::to_string(l) + ")";
  }
  return "";
}

std::string check_simplices_and_cones() {
  for (int d = 1; d <= 3; ++d) {
    for (const ConvexCell& c : build_k(d).cells())
      if (!c.is_simplex())
        return "non-simplex cell at d = " + std::to_string(d) + ": " +
               c.to_string();
    std::set<ConvexCell> cones;
    cones.insert(ConvexCell::point(zero_vec(d)));
    CellComplex bd = boundary_k(d);
    for (const ConvexCell& c : bd.cells()) {
      std::vector<Point> pts = c.verts();
      pts.push_back(zero_vec(d));
      cones.insert(ConvexCell::from_points(d, std::move(pts)));
    }
    if (build_ko(d).cells() !=
        std::vector<ConvexCell>(cones.begin(), cones.end()))
      return "interior family is not the cone family at d = " +
             std::to_string(d);
  }
  return "";
}

std::string check_invariance() {
  for (int d = 2; d <= 3; ++d) {
    std::vector<AffineSignedIsometry> syms = enumerate_cube_symmetries(d);
    if (syms.size() != static_cast<std::size_t>(d == 2 ? 8 : 48))
      return "unexpected symmetry count at d = " + std::to_string(d);
    if (!check_family_invariance(build_ko(d), syms).passed())
      return "cone family not invariant at d = " + std::to_string(d);
    if (!check_family_invariance(build_k_subdivided(d, 2), syms).passed())
      return "subdivided family not invariant at d = " + std::to_string(d);
  }
  return "";
}

std::string check_stabilizers_and_orbits() {
  for (int d = 2; d <= 3; ++d) {
    VerificationReport r = check_stabilizer_property_sampled(
        build_k(d), enumerate_cube_symmetries(d));
    if (!r.passed())
      return "stabilizer check fails at d = " + std::to_string(d) + ": " +
             r.failures()[0].witness;
  }
  for (int n = 2; n <= 3; ++n) {
    OrthotopicGroup tor = torus_group(ones(n));
    VerificationReport r =
        orbit_intersection_check_sampled(tor, build_k_stretched(tor.domain));
    if (!r.passed())
      return "orbit check fails at n = " + std::to_string(n) + ": " +
             r.failures()[0].witness;
  }
  return "";
}

std::string check_torus_partitions() {
  const std::vector<std::pair<int, long>> pairs{
      {1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}};
  for (auto [n, lambda] : pairs) {
    std::string at =
        " at (" + std::to_string(n) + ", " + std::to_string(lambda) + ")";
    OrthotopicGroup tor = torus_group(ones(n));
    LattesSystem s = build_lattes(tor, lambda);
    VerificationReport r = verify_markov(s);
    if (!r.passed()) return "markov verification fails" + at + ": " + r.summary();
    if (s.coarse.euler_characteristic() != 0)
      return "euler characteristic nonzero" + at;
    long long deg = ipow(lambda, n);
    std::size_t d0_top = s.coarse.class_count_of_dim(n);
    std::size_t d1_top = s.fine.class_count_of_dim(n);
    if (d1_top != static_cast<std::size_t>(deg) * d0_top)
      return "subdivided top class count is not degree * coarse" + at;
    for (const std::vector<long long>& row : subdivision_matrix(s)) {
      long long sum = 0;
      for (long long e : row) sum += e;
      if (sum != deg) return "a top class lacks degree-many preimages" + at;
    }
    if (n == 2 && lambda == 2) {
      std::vector<std::size_t> want{4, 12, 8};
      if (s.coarse.class_counts_by_dim() != want)
        return "coarse quotient counts changed at (2, 2)";
      if (oracle::orbit_classes_bruteforce(tor, s.coarse.plane) != want)
        return "brute force orbit count disagrees at (2, 2)";
    }
  }
  return "";
}

std::string check_conjugation_and_fault_injection() {
  for (int n = 1; n <= 3; ++n)
    for (long lambda : {1L, 2L, 3L})
      if (!verify_conjugation(torus_group(ones(n)), lambda).passed())
        return "conjugation fails at n = " + std::to_string(n) +
               ", lambda = " + std::to_string(lambda);

  // A corrupted map table must fail with a witness.
  LattesSystem bad = build_lattes(torus_group(ones(1)), 2);
  bad.entries[0].target =
      (bad.entries[0].target + 1) % bad.coarse.class_count();
  VerificationReport r1 = verify_markov(bad);
  if (r1.passed() || r1.failures().empty() || r1.failures()[0].witness.empty())
    return "corrupted table was not rejected with a witness";

  // Overlapping interiors must fail with a witness.
  CellComplex overlap = CellComplex::from_cells(
      1,
      {ConvexCell::point({rat(-1)}), ConvexCell::point({rat(0)}),
       ConvexCell::point({rat(1)}),
       ConvexCell::from_points(1, {{rat(-1)}, {rat(1)}}),
       ConvexCell::from_points(1, {{rat(0)}, {rat(1)}})});
  VerificationReport r2 = verify_cell_decomposition(overlap);
  if (r2.passed() || r2.failures().empty() || r2.failures()[0].witness.empty())
    return "overlapping interiors were not rejected with a witness";

  // A missing boundary vertex must fail with a witness.
  CellComplex gap = CellComplex::from_cells(
      1, {ConvexCell::point({rat(-1)}), ConvexCell::point({rat(1)}),
          ConvexCell::from_points(1, {{rat(-1)}, {rat(0)}}),
          ConvexCell::from_points(1, {{rat(0)}, {rat(1)}})});
  VerificationReport r3 = verify_cell_decomposition(gap);
  if (r3.passed() || r3.failures().empty() || r3.failures()[0].witness.empty())
    return "missing boundary vertex was not rejected with a witness";

  // The command line tool must exit 1 on a failing verification.
  std::string cmd = "\"" + g_cli +
                    "\" verify --suite stabilizer --kind cube --dim 2 "
                    ">/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 1)
    return "tool did not exit with code 1 on a failing verification";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to orthocell tool>\n";
    return 2;
  }
  g_cli = argv[1];

  struct Entry {
    const char* label;
    Criterion run;
    double budget_seconds;  // 0 = untimed
  };
  const std::vector<Entry> criteria{
      {"interval decomposition matches its expected cells",
       check_interval_decomposition, 1.0},
      {"cell counts match the arrangement oracle", check_cell_counts, 60.0},
      {"decomposition and refinement checks pass",
       check_decompositions_and_refinements, 300.0},
      {"cells are simplices and cones over boundary cells",
       check_simplices_and_cones, 0.0},
      {"decompositions are invariant under all cube symmetries",
       check_invariance, 0.0},
      {"stabilizer and orbit point checks pass",
       check_stabilizers_and_orbits, 0.0},
      {"torus partitions verify with correct degrees",
       check_torus_partitions, 600.0},
      {"conjugation holds and corrupted inputs are rejected",
       check_conjugation_and_fault_injection, 0.0},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = criteria[i].run();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (reason.empty() && criteria[i].budget_seconds > 0 &&
        secs > criteria[i].budget_seconds)
      reason = "over time budget of " +
               std::to_string(criteria[i].budget_seconds) + "s";
    bool ok = reason.empty();
    all = all && ok;
    std::printf("%s  %zu/8  %-55s  %7.2fs\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].label, secs);
    if (!ok) std::printf("      %s\n", reason.c_str());
  }
  return all ? 0 : 1;
}
