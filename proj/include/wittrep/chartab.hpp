#pragma once

// Character tables over a split prime field F_l by simultaneous
// diagonalisation of class-sum matrices (Dixon-Schneider). Character values
// never leave F_l; only degrees and multiplicities, both at most sqrt|G|,
// are lifted to the integers.

#include <cstdint>
#include <map>
#include <vector>

#include "wittrep/group.hpp"
#include "wittrep/liedual.hpp"
#include "wittrep/modular.hpp"

namespace wittrep {

/// d -> #Irr_d
using DegreeMultiset = std::map<std::uint64_t, std::uint64_t>;

struct CharacterTable {
  std::uint64_t group_order = 0;
  std::uint64_t exponent = 0;
  std::uint64_t ell = 0;   // l = 1 mod exponent, l > 2 sqrt|G|
  std::uint64_t zeta = 0;  // primitive exponent-th root of unity in F_l
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> class_sizes;
  std::vector<std::uint32_t> inverse_class;
  std::uint32_t identity_class = 0;
  ModMatrix values;  // rows: characters, columns: classes
  std::vector<std::uint64_t> degrees;

  std::size_t character_count() const noexcept { return degrees.size(); }
  std::size_t class_count() const noexcept { return class_sizes.size(); }
};

struct DixonOptions {
  std::uint64_t seed = 1;
  std::size_t max_classes = 300;
  std::uint64_t max_ell = std::uint64_t{1} << 30;
  unsigned workers = 1;
  int max_stalled_rounds = 40;
};

/// Structure constants a_ijk = #{(x, y) in K_i x K_j : xy = z} for a fixed
/// z in K_k, flattened as [(i * k + j) * k + kk]. Intended for small groups.
std::vector<std::uint32_t> class_algebra_constants(const MatrixGroup& group);

/// Smallest prime l with l = 1 (mod exponent) and l^2 > 4 |G|.
std::uint64_t split_prime(std::uint64_t exponent, std::uint64_t group_order, std::uint64_t max_ell);
/// Smallest generator of F_l^x.
std::uint64_t primitive_root(std::uint64_t ell);

CharacterTable dixon_table(const MatrixGroup& group, const DixonOptions& options = {});

DegreeMultiset degree_multiset(const CharacterTable& table);

/// Results of the standard sanity checks on a table.
struct TableChecks {
  bool count_matches_classes = false;
  bool sum_of_squares = false;
  bool row_orthogonality = false;
  bool column_orthogonality = false;
  bool degrees_divide_order = false;

  bool all() const noexcept {
    return count_matches_classes && sum_of_squares && row_orthogonality && column_orthogonality &&
           degrees_divide_order;
  }
};

TableChecks check_table(const CharacterTable& table, std::size_t class_count);

/// Multiplicity of psi_beta in the restriction of character `chi` to the
/// kernel N, computed in F_l and lifted to [0, sqrt|G|].
std::uint64_t restriction_multiplicity(const CharacterTable& table, const MatrixGroup& group,
                                       const KernelSubgroup& kernel, const LieAlgebra& lie,
                                       const DualFunctional& beta, std::size_t chi);

/// All multiplicities for one beta (one entry per character).
std::vector<std::uint64_t> restriction_multiplicities(const CharacterTable& table, const MatrixGroup& group,
                                                      const KernelSubgroup& kernel, const LieAlgebra& lie,
                                                      const DualFunctional& beta);

}  // namespace wittrep
