#include "wittrep/clifford.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "wittrep/errors.hpp"

namespace wittrep {

namespace {

constexpr std::uint64_t kUnset = ~std::uint64_t{0};

std::vector<std::uint32_t> psi_values(const LieAlgebra& lie, const KernelSubgroup& kernel, const DualFunctional& beta) {
  std::vector<std::uint32_t> out(kernel.size());
  for (std::size_t i = 0; i < kernel.size(); ++i) out[i] = psi_beta(lie, beta, kernel.lie[i]);
  return out;
}

// Greedy generating set of the subgroup with sorted ids `members`.
std::vector<ElementId> generating_set(const MatrixGroup& group, const std::vector<ElementId>& members) {
  std::vector<ElementId> order = members;
  std::mt19937_64 rng(members.size());
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<ElementId> gens;
  std::vector<ElementId> span{group.identity()};
  for (const ElementId s : order) {
    if (span.size() == members.size()) break;
    if (std::binary_search(span.begin(), span.end(), s)) continue;
    gens.push_back(s);
    span = group.closure(gens);
  }
  return gens;
}

DegreeMultiset scaled(const DegreeMultiset& d, std::uint64_t factor) {
  DegreeMultiset out;
  for (const auto& [deg, count] : d) out[deg * factor] += count;
  return out;
}

DegreeMultiset fiber(const CharacterTable& table, const std::vector<std::uint64_t>& multiplicities) {
  DegreeMultiset out;
  for (std::size_t chi = 0; chi < multiplicities.size(); ++chi)
    if (multiplicities[chi] > 0) ++out[table.degrees[chi]];
  return out;
}

struct OrbitWork {
  OrbitPrediction prediction;
  std::vector<std::uint64_t> multiplicities;
  TableChecks small_checks;
};

OrbitWork analyze_orbit(const RingContext& ctx, const CharacterTable& table, const DualFunctional& beta,
                        const AnalysisOptions& options) {
  OrbitWork work;
  OrbitPrediction& pred = work.prediction;
  pred.beta = beta;
  pred.beta_index = functional_index(ctx.lie, beta);
  const std::uint32_t orbit = ctx.orbits.orbit_of[pred.beta_index];
  pred.orbit_size = ctx.orbits.sizes[orbit];

  const auto stabilizer = character_stabilizer(ctx.group, ctx.kernel, ctx.lie, beta);
  pred.stabilizer_matches =
      stabilizer == predicted_stabilizer(ctx.group, ctx.residue_group, ctx.reduction, ctx.lie, beta);

  // rho(S) must be the functional centralizer, with kernel exactly N.
  std::vector<ElementId> image;
  for (const ElementId g : stabilizer) image.push_back(ctx.reduction[g]);
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  const DualFunctional target = ctx.ring->mixed_characteristic() ? sigma_star_inverse(ctx.lie, beta) : beta;
  const bool kernel_inside = std::all_of(ctx.kernel.elements.begin(), ctx.kernel.elements.end(), [&](ElementId u) {
    return std::binary_search(stabilizer.begin(), stabilizer.end(), u);
  });
  pred.quotient_verified = kernel_inside && image == functional_centralizer(ctx.lie, ctx.residue_group, target) &&
                           stabilizer.size() == image.size() * ctx.kernel.size();

  pred.stab_order = image.size();
  pred.index = ctx.residue_group.size() / image.size();
  if (pred.stab_order != ctx.orbits.stabilizer_orders[orbit])
    throw InvariantViolation("stabilizer order disagrees with the orbit decomposition");

  const MatrixGroup small = ctx.residue_group.subgroup(image);
  const CharacterTable small_table = dixon_table(small, options.dixon);
  work.small_checks = check_table(small_table, small.classes().count());
  pred.small_classes = small.classes().count();
  pred.small_degrees = degree_multiset(small_table);
  pred.predicted = scaled(pred.small_degrees, pred.index);

  pred.extension_exists = extension_exists(ctx.group, ctx.kernel, ctx.lie, beta, stabilizer);
  if (pred.extension_exists && options.build_extensions) {
    const auto ext = build_extension(ctx.group, ctx.kernel, ctx.lie, beta, stabilizer);
    pred.extension_witness_ok = ext && check_extension(ctx.group, ctx.kernel, ctx.lie, beta, *ext);
  }

  work.multiplicities = restriction_multiplicities(table, ctx.group, ctx.kernel, ctx.lie, beta);
  pred.fiber_degrees = fiber(table, work.multiplicities);
  pred.dim_formula = pred.extension_exists && pred.fiber_degrees == pred.predicted;
  pred.clifford_bound = std::all_of(pred.fiber_degrees.begin(), pred.fiber_degrees.end(),
                                    [&](const auto& entry) { return entry.first % pred.index == 0; });

  pred.counting.n1 = 0;
  for (const auto& [deg, count] : pred.fiber_degrees) pred.counting.n1 += count;
  pred.counting.n2 = pred.small_classes;
  pred.counting.n3 = pred.stab_order;
  return work;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q) {
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint32_t f = 0;
    while (q % p == 0) {
      q /= p;
      ++f;
    }
    if (q != 1) break;
    return {p, f};
  }
  throw UsageError("q must be a prime power");
}

}  // namespace

RingContext RingContext::build(const GroupScheme& scheme, const RingPtr& ring, const AnalysisOptions& options) {
  if (ring->length() != 2) throw UsageError("orbit analysis needs a ring of length two, got " + ring->descriptor());
  const Cache none;
  const Cache& cache = options.cache ? *options.cache : none;
  MatrixGroup group = cached_group(cache, scheme, ring, options.bounds);
  MatrixGroup residue = cached_group(cache, scheme, residue_ring(*ring), options.bounds);
  auto reduction = reduction_map(group, residue);
  auto kernel = kernel_subgroup(group);
  LieAlgebra lie(scheme, ring->residue_field());
  auto orbits = coadjoint_orbits(lie, residue, options.max_functionals);
  return RingContext{ring,
                     scheme,
                     std::move(group),
                     std::move(residue),
                     std::move(reduction),
                     std::move(kernel),
                     std::move(lie),
                     std::move(orbits)};
}

bool extension_exists(const MatrixGroup& group, const KernelSubgroup& kernel, const LieAlgebra& lie,
                      const DualFunctional& beta, const std::vector<ElementId>& stabilizer) {
  const auto derived = group.derived_subgroup(stabilizer);
  for (const ElementId d : derived)
    if (kernel.contains(d) && psi_beta(lie, kernel, beta, d) != 0) return false;
  return true;
}

bool extension_exists(const RingContext& ctx, const DualFunctional& beta) {
  return extension_exists(ctx.group, ctx.kernel, ctx.lie, beta,
                          character_stabilizer(ctx.group, ctx.kernel, ctx.lie, beta));
}

std::optional<LinearExtension> build_extension(const MatrixGroup& group, const KernelSubgroup& kernel,
                                               const LieAlgebra& lie, const DualFunctional& beta,
                                               const std::vector<ElementId>& stabilizer) {
  const std::uint64_t p = lie.field().characteristic();
  const std::uint64_t modulus = stabilizer.size();
  const auto psi = psi_values(lie, kernel, beta);
  const auto derived = group.derived_subgroup(stabilizer);

  // Start on H = N [S,S], where the value is psi(u) for h = u d.
  std::vector<std::uint64_t> value(group.size(), kUnset);
  std::vector<ElementId> members;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const std::uint64_t v = psi[i] * (modulus / p);
    for (const ElementId d : derived) {
      const ElementId h = group.mul(kernel.elements[i], d);
      if (value[h] == kUnset) {
        value[h] = v;
        members.push_back(h);
      } else if (value[h] != v) {
        return std::nullopt;
      }
    }
  }

  // H is normal with abelian quotient; adjoin one cyclic step at a time.
  for (const ElementId a : stabilizer) {
    if (members.size() == stabilizer.size()) break;
    if (value[a] != kUnset) continue;
    ElementId power = a;
    std::uint64_t m = 1;
    while (value[power] == kUnset) {
      power = group.mul(power, a);
      ++m;
    }
    if (value[power] % m != 0) throw InvariantViolation("extension step has no solution in Z/|S|");
    const std::uint64_t x = value[power] / m;
    const std::size_t base = members.size();
    ElementId ai = group.identity();
    for (std::uint64_t i = 1; i < m; ++i) {
      ai = group.mul(ai, a);
      for (std::size_t j = 0; j < base; ++j) {
        const ElementId y = group.mul(ai, members[j]);
        if (value[y] != kUnset) throw InvariantViolation("cosets of the extension domain overlap");
        value[y] = (i * x + value[members[j]]) % modulus;
        members.push_back(y);
      }
    }
  }
  if (members.size() != stabilizer.size()) throw InvariantViolation("extension does not cover the stabilizer");

  LinearExtension ext;
  ext.domain = stabilizer;
  ext.modulus = modulus;
  ext.values.reserve(stabilizer.size());
  for (const ElementId s : stabilizer) ext.values.push_back(value[s]);
  return ext;
}

bool check_extension(const MatrixGroup& group, const KernelSubgroup& kernel, const LieAlgebra& lie,
                     const DualFunctional& beta, const LinearExtension& ext) {
  const std::uint64_t p = lie.field().characteristic();
  auto value_of = [&](ElementId g) -> std::optional<std::uint64_t> {
    const auto it = std::lower_bound(ext.domain.begin(), ext.domain.end(), g);
    if (it == ext.domain.end() || *it != g) return std::nullopt;
    return ext.values[static_cast<std::size_t>(it - ext.domain.begin())];
  };
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    const auto v = value_of(kernel.elements[i]);
    if (!v || *v != psi_beta(lie, beta, kernel.lie[i]) * (ext.modulus / p)) return false;
  }
  // Additivity against a generating set implies additivity everywhere.
  for (const ElementId t : generating_set(group, ext.domain)) {
    const std::uint64_t vt = *value_of(t);
    for (std::size_t i = 0; i < ext.domain.size(); ++i) {
      const auto v = value_of(group.mul(ext.domain[i], t));
      if (!v || *v != (ext.values[i] + vt) % ext.modulus) return false;
    }
  }
  return true;
}

CountingRecord verify_counting(const RingContext& ctx, const CharacterTable& table, const DualFunctional& beta,
                               const DixonOptions& dixon) {
  AnalysisOptions options;
  options.dixon = dixon;
  options.build_extensions = false;
  return analyze_orbit(ctx, table, beta, options).prediction.counting;
}

bool verify_dim_formula(const RingContext& ctx, const CharacterTable& table, const DualFunctional& beta,
                        const DixonOptions& dixon) {
  AnalysisOptions options;
  options.dixon = dixon;
  options.build_extensions = false;
  return analyze_orbit(ctx, table, beta, options).prediction.dim_formula;
}

RingAnalysis clifford_degree_multiset(const RingContext& ctx, const AnalysisOptions& options) {
  RingAnalysis out;
  out.ring_descriptor = ctx.ring->descriptor();
  out.group_descriptor = ctx.group.descriptor();
  out.order = ctx.group.size();
  out.num_classes = ctx.group.classes().count();
  out.mixed_characteristic = ctx.ring->mixed_characteristic();
  out.table = options.cache ? cached_table(*options.cache, ctx.group, options.dixon)
                            : dixon_table(ctx.group, options.dixon);
  out.table_checks = check_table(out.table, out.num_classes);
  out.oracle = degree_multiset(out.table);

  std::vector<std::uint32_t> above(out.table.character_count(), 0);
  for (const std::uint64_t rep : ctx.orbits.representatives) {
    OrbitWork work = analyze_orbit(ctx, out.table, functional_at(ctx.lie, rep), options);
    for (std::size_t chi = 0; chi < above.size(); ++chi)
      if (work.multiplicities[chi] > 0) ++above[chi];
    const OrbitPrediction& pred = work.prediction;
    if (!pred.extension_exists) out.partial = true;
    for (const auto& [deg, count] : pred.predicted) out.predicted[deg] += count;
    out.small_table_checks.push_back(work.small_checks);
    out.orbits.push_back(std::move(work.prediction));
  }
  out.fiber_partition = std::all_of(above.begin(), above.end(), [](std::uint32_t c) { return c == 1; });
  return out;
}

std::string ComparisonVerdicts::first_failure() const {
  if (exploratory) return {};
  if (!global_equal) return "global_equal";
  if (!per_orbit_equal) return "per_orbit_equal";
  if (!clifford_matches_oracle) return "clifford_matches_oracle";
  return {};
}

std::pair<RingPtr, RingPtr> length_two_rings(std::uint64_t q) {
  const auto [p, f] = prime_power(q);
  const GaloisField field = GaloisField::standard(p, f);
  RingPtr equal = LocalRing::truncated_poly(field, 2);
  RingPtr mixed = f == 1 ? LocalRing::integers_mod(p, 2) : LocalRing::witt2(field);
  return {equal, mixed};
}

ComparisonReport compare_rings(const GroupScheme& scheme, std::uint64_t q, const AnalysisOptions& options) {
  using Clock = std::chrono::steady_clock;
  ComparisonReport report;
  report.scheme = scheme;
  report.q = q;
  report.seed = options.dixon.seed;
  const auto [equal, mixed] = length_two_rings(q);

  const auto t0 = Clock::now();
  const RingContext equal_ctx = RingContext::build(scheme, equal, options);
  report.rings[0] = clifford_degree_multiset(equal_ctx, options);
  const auto t1 = Clock::now();
  const RingContext mixed_ctx = RingContext::build(scheme, mixed, options);
  report.rings[1] = clifford_degree_multiset(mixed_ctx, options);
  const auto t2 = Clock::now();
  report.timings_ms[0] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  report.timings_ms[1] = std::chrono::duration<double, std::milli>(t2 - t1).count();

  // Both rings share G(F_q) and g*(F_q), hence the same orbit decomposition.
  const LieAlgebra& lie = mixed_ctx.lie;
  auto pair_up = [&](bool inverse) {
    std::vector<OrbitPairing> out;
    for (std::size_t i = 0; i < mixed_ctx.orbits.count(); ++i) {
      const DualFunctional beta = functional_at(lie, mixed_ctx.orbits.representatives[i]);
      const DualFunctional twisted = inverse ? sigma_star_inverse(lie, beta) : sigma_star(lie, beta);
      const std::uint32_t j = equal_ctx.orbits.orbit_of[functional_index(lie, twisted)];
      out.push_back({mixed_ctx.orbits.representatives[i], equal_ctx.orbits.representatives[j],
                     report.rings[1].orbits[i].fiber_degrees == report.rings[0].orbits[j].fiber_degrees});
    }
    return out;
  };
  report.pairing = pair_up(false);
  report.pairing_inverse = pair_up(true);

  ComparisonVerdicts& v = report.verdicts;
  auto all_pairs = [](const std::vector<OrbitPairing>& pairs) {
    return std::all_of(pairs.begin(), pairs.end(), [](const OrbitPairing& p) { return p.fibers_equal; });
  };
  v.global_equal = report.rings[0].oracle == report.rings[1].oracle;
  v.per_orbit_equal = all_pairs(report.pairing);
  v.per_orbit_equal_inverse = all_pairs(report.pairing_inverse);
  v.clifford_matches_oracle = report.rings[0].clifford_matches_oracle() && report.rings[1].clifford_matches_oracle();
  v.extensions_exist = !report.rings[0].partial && !report.rings[1].partial;
  v.dim_formula = v.stabilizer_formula = true;
  for (const RingAnalysis& r : report.rings)
    for (const OrbitPrediction& o : r.orbits) {
      v.dim_formula = v.dim_formula && o.dim_formula;
      v.stabilizer_formula = v.stabilizer_formula && o.stabilizer_matches && o.quotient_verified;
    }
  v.exploratory = !comparison_hypotheses_hold(scheme, equal->residue_field().characteristic());
  return report;
}

}  // namespace wittrep
