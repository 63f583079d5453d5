#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "wittrep/clifford.hpp"
#include "wittrep/errors.hpp"

using namespace wittrep;

namespace {

RingContext context(const char* scheme, const char* ring) {
  return RingContext::build(GroupScheme::parse(scheme), parse_ring(ring), {});
}

std::uint64_t total_dimension_squared(const DegreeMultiset& m) {
  std::uint64_t s = 0;
  for (const auto& [d, c] : m) s += d * d * c;
  return s;
}

std::uint64_t count(const DegreeMultiset& m) {
  std::uint64_t s = 0;
  for (const auto& [d, c] : m) s += c;
  return s;
}

}  // namespace

TEST_CASE("length-two rings") {
  const auto [e2, m2] = length_two_rings(2);
  CHECK(e2->descriptor() == "truncpoly(gf(2),r=2)");
  CHECK(m2->descriptor() == "zmod(2^2)");
  const auto [e4, m4] = length_two_rings(4);
  CHECK(e4->residue_field().order() == 4);
  CHECK(m4->descriptor().rfind("witt2(", 0) == 0);
  CHECK(m4->size() == 16);
  CHECK_THROWS_AS(length_two_rings(6), UsageError);
}

TEST_CASE("beta = 0 recovers the residue group") {
  for (const auto& [s, r] : std::vector<std::pair<const char*, const char*>>{
           {"gl(2)", "zmod(2^2)"}, {"gl(2)", "truncpoly(gf(2),r=2)"}, {"sl(2)", "zmod(3^2)"}, {"sl(2)", "witt2(gf(4))"}}) {
    const RingContext ctx = context(s, r);
    CAPTURE(ctx.group.descriptor());
    const DualFunctional zero = functional_at(ctx.lie, 0);
    CHECK(extension_exists(ctx, zero));
    const RingAnalysis a = clifford_degree_multiset(ctx, {});
    const OrbitPrediction& o = a.orbits.front();
    CHECK(o.beta_index == 0);
    CHECK(o.index == 1);
    CHECK(o.stab_order == ctx.residue_group.size());
    CHECK(o.predicted == degree_multiset(dixon_table(ctx.residue_group)));
    CHECK(o.fiber_degrees == o.predicted);
  }
}

TEST_CASE("GL2 over length-two rings with q = 2") {
  for (const char* r : {"truncpoly(gf(2),r=2)", "zmod(2^2)"}) {
    const RingContext ctx = context("gl(2)", r);
    const RingAnalysis a = clifford_degree_multiset(ctx, {});
    CHECK(a.order == 96);
    CHECK(a.oracle == DegreeMultiset{{1, 4}, {2, 5}, {3, 4}, {6, 1}});
    CHECK(total_dimension_squared(a.oracle) == 96);
    CHECK(a.predicted == a.oracle);
    CHECK(a.clifford_matches_oracle());
    CHECK(a.fiber_partition);
    CHECK(a.table_checks.all());
  }
}

TEST_CASE("per-orbit invariants") {
  for (const auto& [s, r] : std::vector<std::pair<const char*, const char*>>{
           {"gl(2)", "zmod(2^2)"}, {"sl(2)", "truncpoly(gf(3),r=2)"}, {"sl(2)", "zmod(3^2)"},
           {"gl(2)", "witt2(gf(2))"}, {"sl(2)", "witt2(gf(4))"}, {"sl(2)", "zmod(2^2)"}}) {
    const RingContext ctx = context(s, r);
    CAPTURE(ctx.group.descriptor());
    const RingAnalysis a = clifford_degree_multiset(ctx, {});
    CHECK(a.num_classes == ctx.group.classes().count());
    std::uint64_t small_total = 0, orbit_total = 0;
    for (const OrbitPrediction& o : a.orbits) {
      CAPTURE(o.beta_index);
      small_total += o.small_classes;
      orbit_total += o.orbit_size;
      CHECK(o.orbit_size * o.stab_order == ctx.residue_group.size());
      CHECK(o.index == o.orbit_size);
      CHECK(o.stabilizer_matches);
      CHECK(o.quotient_verified);
      CHECK(o.extension_exists);
      CHECK(o.extension_witness_ok);
      CHECK(o.dim_formula);
      CHECK(o.clifford_bound);
      CHECK(o.counting.n1_equals_n2());
      CHECK(o.counting.n3 == o.stab_order);
      CHECK(o.counting.n2 == o.small_classes);
      CHECK(count(o.fiber_degrees) == o.counting.n1);
      // Sum of d^2 over the fiber is |orbit| [G:N] = index^2 |C|.
      CHECK(total_dimension_squared(o.fiber_degrees) == o.index * o.index * o.stab_order);
      for (const auto& [d, c] : o.fiber_degrees) CHECK(d % o.index == 0);
      const DualFunctional beta = functional_at(ctx.lie, o.beta_index);
      CHECK(verify_counting(ctx, a.table, beta).n1 == o.counting.n1);
      CHECK(verify_dim_formula(ctx, a.table, beta));
    }
    // Irreducibles of the stabilizers account for every class of G(R).
    CHECK(small_total == a.num_classes);
    CHECK(orbit_total == functional_count(ctx.lie));
  }
}

TEST_CASE("explicit extensions") {
  const RingContext ctx = context("gl(2)", "zmod(3^2)");
  const OrbitDecomposition& orbits = ctx.orbits;
  for (const auto rep : orbits.representatives) {
    const DualFunctional beta = functional_at(ctx.lie, rep);
    const auto s = character_stabilizer(ctx.group, ctx.kernel, ctx.lie, beta);
    REQUIRE(extension_exists(ctx.group, ctx.kernel, ctx.lie, beta, s));
    const auto ext = build_extension(ctx.group, ctx.kernel, ctx.lie, beta, s);
    REQUIRE(ext.has_value());
    CHECK(ext->domain == s);
    CHECK(ext->modulus == s.size());
    CHECK(check_extension(ctx.group, ctx.kernel, ctx.lie, beta, *ext));
    // Corrupt one value off the kernel.
    LinearExtension bad = *ext;
    for (std::size_t i = 0; i < bad.domain.size(); ++i)
      if (!ctx.kernel.contains(bad.domain[i])) {
        bad.values[i] = (bad.values[i] + 1) % bad.modulus;
        break;
      }
    if (bad.domain.size() > ctx.kernel.size()) CHECK_FALSE(check_extension(ctx.group, ctx.kernel, ctx.lie, beta, bad));
  }
  // Over all of G, psi_beta for a non-central beta is nontrivial on [G, G] cap N.
  std::vector<ElementId> all(ctx.group.size());
  std::iota(all.begin(), all.end(), ElementId{0});
  std::size_t pick = 0;
  while (orbits.sizes[pick] == 1) ++pick;
  const DualFunctional beta = functional_at(ctx.lie, orbits.representatives[pick]);
  CHECK_FALSE(extension_exists(ctx.group, ctx.kernel, ctx.lie, beta, all));
  CHECK_FALSE(build_extension(ctx.group, ctx.kernel, ctx.lie, beta, all).has_value());
}

TEST_CASE("compare_rings") {
  const ComparisonReport gl2 = compare_rings(GroupScheme::parse("gl(2)"), 2);
  CHECK(gl2.verdicts.passed());
  CHECK_FALSE(gl2.verdicts.exploratory);
  CHECK(gl2.verdicts.global_equal);
  CHECK(gl2.verdicts.per_orbit_equal);
  CHECK(gl2.verdicts.per_orbit_equal_inverse);
  CHECK(gl2.verdicts.first_failure().empty());
  CHECK(gl2.rings[0].oracle == gl2.rings[1].oracle);
  CHECK_FALSE(gl2.rings[0].mixed_characteristic);
  CHECK(gl2.rings[1].mixed_characteristic);
  CHECK(gl2.pairing.size() == gl2.rings[1].orbits.size());
  for (const auto& p : gl2.pairing) CHECK(p.fibers_equal);

  const ComparisonReport sl2 = compare_rings(GroupScheme::parse("sl(2)"), 3);
  CHECK(sl2.verdicts.passed());
  CHECK_FALSE(sl2.verdicts.exploratory);
  CHECK(sl2.rings[0].order == 648);
  CHECK(sl2.rings[0].oracle == DegreeMultiset{{1, 3}, {2, 3}, {3, 1}, {4, 12}, {6, 4}, {12, 2}});

  const ComparisonReport sl2_2 = compare_rings(GroupScheme::parse("sl(2)"), 2);
  CHECK(sl2_2.verdicts.exploratory);
  CHECK(sl2_2.verdicts.passed());

  // q = 4 pairs orbits through a nontrivial sigma*.
  const ComparisonReport sl2_4 = compare_rings(GroupScheme::parse("sl(2)"), 4);
  CHECK(sl2_4.verdicts.global_equal);
  CHECK(sl2_4.rings[1].ring_descriptor.rfind("witt2(", 0) == 0);
  for (const auto& p : sl2_4.pairing) CHECK(p.fibers_equal);

  ComparisonVerdicts v;
  v.global_equal = true;
  v.clifford_matches_oracle = true;
  CHECK_FALSE(v.passed());
  CHECK(v.first_failure() == "per_orbit_equal");
  v.exploratory = true;
  CHECK(v.passed());
}

TEST_CASE("analysis respects bounds") {
  AnalysisOptions o;
  o.bounds.max_order = 500;
  CHECK_THROWS_AS(compare_rings(GroupScheme::parse("sl(2)"), 3, o), BoundExceeded);
  AnalysisOptions f;
  f.max_functionals = 10;
  CHECK_THROWS_AS(compare_rings(GroupScheme::parse("gl(2)"), 2, f), BoundExceeded);
}
