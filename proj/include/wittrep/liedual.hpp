#pragma once

// Lie algebras g(F_q), their duals, the kernel characters psi_beta, the
// coadjoint action and its orbits, and the good / very good prime tables.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "wittrep/group.hpp"

namespace wittrep {

/// Ordered F_p-rational basis of Lie(G)(F_q):
///   gl_n  E_ij in row-major order
///   sl_n  E_ij (i != j) and E_ii - E_nn (i < n), at their row-major positions
///   sp_n  J^-1 S for S = E_ij + E_ji (i < j) and E_ii, row-major over i <= j
class LieAlgebra {
public:
  LieAlgebra(GroupScheme scheme, GaloisField field);

  const GroupScheme& scheme() const noexcept { return scheme_; }
  const GaloisField& field() const noexcept { return field_; }
  int dimension() const noexcept { return static_cast<int>(basis_.size()); }
  const std::vector<RingMatrix>& basis() const noexcept { return basis_; }

  bool contains(const RingMatrix& x) const { return scheme_.lie_contains(field_, x); }
  /// Coordinates of X in the basis; throws UsageError if X is not in the algebra.
  std::vector<Code> coordinates(const RingMatrix& x) const;
  RingMatrix from_coordinates(const std::vector<Code>& coords) const;
  /// [X, Y] = XY - YX
  RingMatrix bracket(const RingMatrix& x, const RingMatrix& y) const;

private:
  GroupScheme scheme_;
  GaloisField field_;
  std::vector<RingMatrix> basis_;
};

/// beta in g*(F_q), stored as its values on the basis.
struct DualFunctional {
  std::vector<Code> values;

  auto operator<=>(const DualFunctional&) const = default;
};

/// <beta, X>
Code pairing(const LieAlgebra& lie, const DualFunctional& beta, const RingMatrix& x);

/// gl_n only: the functional X -> Tr(B X), and back.
DualFunctional from_trace_matrix(const LieAlgebra& lie, const RingMatrix& b);
RingMatrix trace_matrix(const LieAlgebra& lie, const DualFunctional& beta);

/// Ad*(g) beta = beta o Ad(g)^-1, i.e. X -> beta(g^-1 X g). g is over F_q.
DualFunctional coadjoint(const LieAlgebra& lie, const RingMatrix& g, const DualFunctional& beta);

/// Entrywise p-th power of the values (B -> sigma(B) in trace coordinates).
DualFunctional sigma_star(const LieAlgebra& lie, const DualFunctional& beta);
DualFunctional sigma_star_inverse(const LieAlgebra& lie, const DualFunctional& beta);

/// Functionals are numbered by reading the value vector as base-q digits,
/// first value most significant; index order is lexicographic order.
std::uint64_t functional_count(const LieAlgebra& lie);
std::uint64_t functional_index(const LieAlgebra& lie, const DualFunctional& beta);
DualFunctional functional_at(const LieAlgebra& lie, std::uint64_t index);

struct OrbitDecomposition {
  std::vector<std::uint64_t> representatives;  // minimal index in each orbit, ascending
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint64_t> stabilizer_orders;
  std::vector<std::uint32_t> orbit_of;  // functional index -> orbit position

  std::size_t count() const noexcept { return representatives.size(); }
};

/// Exhaustive orbit decomposition of g*(F_q) under G(F_q) by union-find over
/// the generators. Throws BoundExceeded when q^dim exceeds `max_functionals`.
OrbitDecomposition coadjoint_orbits(const LieAlgebra& lie, const MatrixGroup& residue_group,
                                    std::uint64_t max_functionals = 1000000);

/// C_{G(F_q)}(beta) under the coadjoint action, as sorted ids.
std::vector<ElementId> functional_centralizer(const LieAlgebra& lie, const MatrixGroup& residue_group,
                                              const DualFunctional& beta);

/// psi_beta(exp X) = Tr_{F_q/F_p}(<beta, X>) as an exponent in Z/p.
std::uint32_t psi_beta(const LieAlgebra& lie, const DualFunctional& beta, const RingMatrix& x);
/// Same, evaluated on an element of the kernel subgroup.
std::uint32_t psi_beta(const LieAlgebra& lie, const KernelSubgroup& kernel, const DualFunctional& beta,
                       ElementId u);

/// Brute-force stabilizer { g in G(R) : psi_beta(g^-1 u g) = psi_beta(u) for all u in N }.
std::vector<ElementId> character_stabilizer(const MatrixGroup& group, const KernelSubgroup& kernel,
                                            const LieAlgebra& lie, const DualFunctional& beta);

/// rho^-1(C(beta)) in equal characteristic, rho^-1(C((sigma*)^-1 beta)) in
/// mixed characteristic. `reduction` is the output of reduction_map.
std::vector<ElementId> predicted_stabilizer(const MatrixGroup& group, const MatrixGroup& residue_group,
                                            const std::vector<ElementId>& reduction,
                                            const LieAlgebra& lie, const DualFunctional& beta);

enum class RootType { A, B, C, D, G2, F4, E6, E7, E8 };

struct RootSystem {
  RootType type;
  int rank;
};

bool is_good_prime(const RootSystem& h, std::uint64_t p);
bool is_very_good_prime(const RootSystem& h, std::uint64_t p);

/// Parses `A1`, `B3`, `E8`, ...; throws UsageError for unknown types.
RootSystem parse_root_system(const std::string& text);

/// Whether the degree comparison is expected to hold for the scheme at p: always for
/// GL_n, otherwise p must be very good for the derived group.
bool comparison_hypotheses_hold(const GroupScheme& scheme, std::uint64_t p);

}  // namespace wittrep
