#include "wittrep/verify.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "wittrep/errors.hpp"

namespace wittrep {

namespace {

RingMatrix random_lie_element(const LieAlgebra& lie, std::mt19937_64& rng) {
  std::vector<Code> coords(static_cast<std::size_t>(lie.dimension()));
  for (auto& c : coords) c = static_cast<Code>(rng() % lie.field().order());
  return lie.from_coordinates(coords);
}

// Ad(h) X = h X h^-1 over the residue field.
RingMatrix adjoint(const GaloisField& k, const RingMatrix& h, const RingMatrix& x) {
  return mat_mul(k, mat_mul(k, h, x), mat_inverse(k, h));
}

RingMatrix twisted(const GaloisField& k, RingMatrix g_bar, int exponent) {
  for (int i = 0; i < exponent; ++i) g_bar = sigma(k, g_bar);
  return g_bar;
}

CheckResult check(std::string name, bool passed, std::string detail = {}, bool asserted = true) {
  return CheckResult{std::move(name), passed, asserted, std::move(detail)};
}

}  // namespace

bool VerificationBundle::passed() const { return first_failure().empty(); }

std::string VerificationBundle::first_failure() const {
  for (const auto& c : checks)
    if (c.asserted && !c.passed) return c.name;
  return {};
}

std::size_t twist_law_failures(const MatrixGroup& group, int exponent, std::size_t samples, std::uint64_t seed) {
  const LocalRing& ring = *group.ring();
  const GaloisField& k = ring.residue_field();
  const LieAlgebra lie(group.scheme(), k);
  std::mt19937_64 rng(seed);
  std::size_t failures = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const ElementId g = static_cast<ElementId>(rng() % group.size());
    const RingMatrix x = random_lie_element(lie, rng);
    const ElementId lhs = group.conjugate(g, group.id_of(exp_map(group, x)));
    const RingMatrix h = twisted(k, reduce_matrix(ring, group.element(g)), exponent);
    const ElementId rhs = group.id_of(exp_map(group, adjoint(k, h, x)));
    if (lhs != rhs) ++failures;
  }
  return failures;
}

VerificationBundle run_verification(const GroupScheme& scheme, const RingPtr& ring, const VerifyOptions& options) {
  VerificationBundle out;
  out.scheme = scheme.to_string();
  out.ring = ring->descriptor();
  const RingContext ctx = RingContext::build(scheme, ring, options.analysis);
  const GaloisField& k = ring->residue_field();
  const std::uint64_t p = k.characteristic();
  const MatrixGroup& g = ctx.group;
  const KernelSubgroup& n = ctx.kernel;
  const LieAlgebra& lie = ctx.lie;
  out.exploratory = !comparison_hypotheses_hold(scheme, p);
  out.twist_exponent = twist_exponent(*ring);
  std::mt19937_64 rng(options.sample_seed);

  const std::uint64_t expected = expected_group_order(scheme, *ring);
  out.checks.push_back(check("group_order", g.size() == expected,
                             std::to_string(g.size()) + " elements, formula " + std::to_string(expected)));

  {
    std::vector<std::uint64_t> fiber(ctx.residue_group.size(), 0);
    for (const ElementId r : ctx.reduction) ++fiber[r];
    const bool even = std::all_of(fiber.begin(), fiber.end(), [&](std::uint64_t f) { return f == n.size(); });
    std::vector<ElementId> ker;
    for (ElementId x = 0; x < g.size(); ++x)
      if (ctx.reduction[x] == ctx.residue_group.identity()) ker.push_back(x);
    bool hom = true;
    for (int s = 0; s < 1000 && hom; ++s) {
      const auto a = static_cast<ElementId>(rng() % g.size());
      const auto b = static_cast<ElementId>(rng() % g.size());
      hom = ctx.reduction[g.mul(a, b)] == ctx.residue_group.mul(ctx.reduction[a], ctx.reduction[b]);
    }
    out.checks.push_back(check("reduction_map", even && hom && ker == n.elements,
                               "surjective with equal fibers, kernel = congruence kernel"));
  }

  {
    bool abelian = true, normal = true, exponent_p = true;
    for (std::size_t i = 0; i < n.size(); ++i) {
      const ElementId u = n.elements[i];
      ElementId power = g.identity();
      for (std::uint64_t e = 0; e < p; ++e) power = g.mul(power, u);
      exponent_p = exponent_p && power == g.identity();
      for (const ElementId s : g.generators()) normal = normal && n.contains(g.conjugate(s, u));
    }
    for (int s = 0; s < 2000 && abelian; ++s) {
      const ElementId a = n.elements[rng() % n.size()], b = n.elements[rng() % n.size()];
      abelian = g.mul(a, b) == g.mul(b, a);
    }
    out.checks.push_back(check("kernel_structure", abelian && normal && exponent_p,
                               "abelian, normal, exponent p, order " + std::to_string(n.size())));
  }

  {
    // exp is a bijection Lie -> N with log o exp = id and exp(X+Y) = exp X exp Y.
    bool bijective = true, inverse = true, additive = true;
    std::set<ElementId> image;
    const std::uint64_t total = functional_count(lie);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      const RingMatrix x = lie.from_coordinates(functional_at(lie, idx).values);
      const RingMatrix u = exp_map(g, x);
      const auto id = g.find(u);
      if (!id || !n.contains(*id)) {
        bijective = false;
        break;
      }
      image.insert(*id);
      inverse = inverse && log_map(g, u) == x;
    }
    bijective = bijective && image.size() == n.size();
    for (int s = 0; s < 1000 && additive; ++s) {
      const RingMatrix x = random_lie_element(lie, rng), y = random_lie_element(lie, rng);
      additive = g.id_of(exp_map(g, mat_add(k, x, y))) == g.mul(g.id_of(exp_map(g, x)), g.id_of(exp_map(g, y)));
    }
    out.checks.push_back(check("exp_isomorphism", bijective && inverse && additive,
                               "exp bijective onto the kernel, additive, inverted by log"));
  }

  {
    const std::size_t failures = twist_law_failures(g, out.twist_exponent, options.twist_samples, options.sample_seed);
    out.untwisted_law_fails =
        out.twist_exponent != 0 && twist_law_failures(g, 0, options.twist_samples, options.sample_seed) > 0;
    out.checks.push_back(check("twist_law", failures == 0,
                               "i=" + std::to_string(out.twist_exponent) + ", " + std::to_string(failures) +
                                   " failures in " + std::to_string(options.twist_samples) + " samples"));
  }

  {
    // beta -> psi_beta is injective, each psi_beta is a character, and
    // psi_beta^g = psi_{Ad*(sigma^i(g_bar)) beta}.
    const std::uint64_t total = functional_count(lie);
    bool injective = true, homomorphism = true, covariant = true;
    if (total * n.size() <= 20000000) {
      std::set<std::vector<std::uint32_t>> seen;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        const DualFunctional beta = functional_at(lie, idx);
        std::vector<std::uint32_t> values(n.size());
        for (std::size_t i = 0; i < n.size(); ++i) values[i] = psi_beta(lie, beta, n.lie[i]);
        injective = injective && seen.insert(std::move(values)).second;
      }
    }
    for (int s = 0; s < 200; ++s) {
      const DualFunctional beta = functional_at(lie, rng() % total);
      const ElementId a = n.elements[rng() % n.size()], b = n.elements[rng() % n.size()];
      homomorphism = homomorphism && psi_beta(lie, n, beta, g.mul(a, b)) ==
                                         (psi_beta(lie, n, beta, a) + psi_beta(lie, n, beta, b)) % p;
      const auto x = static_cast<ElementId>(rng() % g.size());
      const RingMatrix h = twisted(k, reduce_matrix(*ring, g.element(x)), out.twist_exponent);
      const DualFunctional moved = coadjoint(lie, h, beta);
      for (std::size_t i = 0; i < n.size() && covariant; ++i) {
        const ElementId c = g.conjugate(g.inv(x), n.elements[i]);
        covariant = psi_beta(lie, n, beta, c) == psi_beta(lie, moved, n.lie[i]);
      }
    }
    out.checks.push_back(check("kernel_characters", injective && homomorphism && covariant,
                               std::to_string(total) + " characters, distinct, conjugation-covariant"));
  }

  out.analysis = clifford_degree_multiset(ctx, options.analysis);
  const RingAnalysis& a = out.analysis;
  const bool asserted = !out.exploratory;

  bool tables = a.table_checks.all();
  for (const auto& c : a.small_table_checks) tables = tables && c.all();
  out.checks.push_back(check("character_tables", tables, "full table and every stabilizer table"));

  bool stab = true, ext = true, witness = true, dim = true, bound = true, counting = true;
  std::size_t n1_eq_n3 = 0;
  for (const auto& o : a.orbits) {
    stab = stab && o.stabilizer_matches && o.quotient_verified;
    ext = ext && o.extension_exists;
    if (o.extension_exists) {
      witness = witness && o.extension_witness_ok;
      dim = dim && o.dim_formula;
      counting = counting && o.counting.n1_equals_n2();
    }
    bound = bound && o.clifford_bound;
    if (o.counting.n1_equals_n3()) ++n1_eq_n3;
  }
  const std::string orbits = std::to_string(a.orbits.size()) + " orbits";
  out.checks.push_back(check("stabilizer_formula", stab, orbits + ", brute force equals preimage formula"));
  out.checks.push_back(check("extension_exists", ext, orbits + ", commutator criterion", asserted));
  out.checks.push_back(check("extension_witness", witness, "explicit extensions are characters of S"));
  out.checks.push_back(check("dim_formula", dim, "fiber degrees equal index times stabilizer degrees", asserted));
  out.checks.push_back(check("clifford_bound", bound, "fiber degrees divisible by the orbit size"));
  out.checks.push_back(check("fiber_partition", a.fiber_partition, "each character above exactly one orbit"));
  out.checks.push_back(check("clifford_counting", counting,
                             "n1 = n2 on every orbit; n1 = n3 on " + std::to_string(n1_eq_n3) + " of " + orbits,
                             asserted));
  out.checks.push_back(check("clifford_matches_oracle", a.clifford_matches_oracle(),
                             "union of orbit predictions equals the oracle multiset", asserted));
  return out;
}

}  // namespace wittrep
