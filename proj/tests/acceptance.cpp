// Runs the default verification grid and prints one line per acceptance criterion.

#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qmvop/verify.hpp"

namespace {

struct Criterion {
  int number;
  const char* title;
  std::vector<std::string> ids;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> c = {
      {1, "representation relations and Casimir scalars",
       {"rep.spin_relations", "rep.casimir", "rep.coideal_relations", "rep.casimir_tensor"}},
      {2, "branching intertwiners and Clebsch-Gordan values",
       {"cgc.isometry", "cgc.intertwining", "cgc.bottom", "cgc.half_half", "cgc.ends", "cgc.completeness"}},
      {3, "Clebsch-Gordan orthogonality sum", {"cgc.ortho_sum"}},
      {4, "orthogonality by 64-node quadrature", {"ortho.gram"}},
      {5, "LDU factorization, inverse and positivity",
       {"ldu.factorization", "ldu.inverse", "ldu.positivity", "ldu.beta"}},
      {6, "explicit vs recursive polynomials",
       {"poly.explicit", "poly.l0", "poly.rn_explicit", "rec.consistency", "rec.monic"}},
      {7, "q-difference eigenvalue equations", {"qdiff.eigen_P", "qdiff.eigen_R", "qdiff.conjugation"}},
      {8, "radial Casimir recurrence and BAB decomposition", {"radial.recurrence", "radial.bab", "radial.cm"}},
      {9, "spherical factorization and determinant identity", {"sph.factorization", "sph.determinant"}},
      {10, "vanishing sums, normalisation, commutant, J-symmetry",
       {"pn.vanishing", "pn.normalisation", "pn.commutant", "pn.jsymmetry"}},
      {11, "auxiliary identities on seeded random draws",
       {"aux.sheppard", "aux.qtaylor", "aux.e_closed", "aux.e_closed_ds", "aux.alpha_sum", "aux.triple_integral",
        "aux.triple_integral_zero", "aux.racah_sum", "aux.diffeq_n1"}},
      {12, "spin 1/2 and spin 1 examples",
       {"ex.half.weight", "ex.half.recurrence", "ex.one.weight", "ex.one.recurrence", "ex.one.pminus",
        "ex.one.qdiff"}},
      {13, "large-n asymptotics of the monic recurrence", {"asym.Y", "asym.X"}},
  };
  return c;
}

}  // namespace

int main() {
  using namespace qmvop;
  const SuiteConfig cfg = default_suite_config();
  std::vector<CheckReport> reports;
  try {
    reports = run_suite(cfg);
  } catch (const std::exception& e) {
    std::printf("suite aborted: %s\n", e.what());
    return 1;
  }

  std::map<std::string, int> owner;
  for (const auto& c : criteria())
    for (const auto& id : c.ids) owner[id] = c.number;

  struct Tally {
    int total = 0, failed = 0;
    double worst_ratio = 0;
    std::string worst_id;
  };
  std::map<int, Tally> tally;
  std::set<std::string> unmapped;
  std::map<int, std::set<std::string>> seen;
  for (const auto& r : reports) {
    auto it = owner.find(r.id);
    if (it == owner.end()) {
      unmapped.insert(r.id);
      continue;
    }
    Tally& t = tally[it->second];
    seen[it->second].insert(r.id);
    ++t.total;
    if (!r.pass) {
      ++t.failed;
      std::printf("  fail %s residual=%.3e tol=%.1e%s%s\n", r.id.c_str(), r.residual, r.tol,
                  r.error.empty() ? "" : " error=", r.error.c_str());
    }
    double ratio = r.tol > 0 ? r.residual / r.tol : (r.residual > 0 ? 1e300 : 0);
    if (ratio >= t.worst_ratio) {
      t.worst_ratio = ratio;
      t.worst_id = r.id;
    }
  }

  bool all = unmapped.empty();
  for (const auto& c : criteria()) {
    const Tally& t = tally[c.number];
    // every listed check must have run at least once
    bool complete = seen[c.number].size() == c.ids.size();
    bool ok = complete && t.total > 0 && t.failed == 0;
    all = all && ok;
    std::printf("criterion %2d: %s  %-52s %4d checks, %d failed, worst residual/tol %.2e (%s)%s\n", c.number,
                ok ? "PASS" : "FAIL", c.title, t.total, t.failed, t.worst_ratio, t.worst_id.c_str(),
                complete ? "" : " [missing checks]");
  }
  for (const auto& id : unmapped) std::printf("unmapped check id %s\n", id.c_str());
  std::printf("%s: %zu checks\n", all ? "ALL PASS" : "SOME FAIL", reports.size());
  return all ? 0 : 1;
}
