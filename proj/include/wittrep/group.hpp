#pragma once

// Fully enumerated finite matrix groups G(R) for G in {GL_n, SL_n, Sp_n}.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wittrep/matrix.hpp"
#include "wittrep/ring.hpp"

namespace wittrep {

using ElementId = std::uint32_t;

enum class Family { GL, SL, Sp };

struct GroupScheme {
  Family family = Family::GL;
  int n = 2;

  /// `gl(2)`, `sl(3)`, `sp(4)`.
  std::string to_string() const;
  static GroupScheme parse(std::string_view text);

  /// Dimension of the Lie algebra: n^2, n^2 - 1 or n(n+1)/2.
  int lie_dimension() const;

  /// Defining equation: det a unit (GL), det = 1 (SL), M^T J M = J (Sp).
  template <class Ring>
  bool contains(const Ring& ring, const RingMatrix& m) const {
    switch (family) {
      case Family::GL:
        return ring.is_unit(mat_det(ring, m));
      case Family::SL:
        return mat_det(ring, m) == ring.one();
      case Family::Sp: {
        const RingMatrix j = symplectic_form(ring, n);
        return mat_mul(ring, mat_mul(ring, RingMatrix(m.transpose()), j), m) == j;
      }
    }
    return false;
  }

  /// Lie algebra membership for a matrix over the residue field: any X (gl),
  /// Tr X = 0 (sl), X^T J + J X = 0 (sp).
  bool lie_contains(const GaloisField& field, const RingMatrix& x) const;

  bool operator==(const GroupScheme&) const = default;
};

/// |G(F_q)| from the closed-form order formulas.
std::uint64_t residue_group_order(const GroupScheme& scheme, std::uint64_t q);

/// |G(F_q)| * q^((r-1) dim g).
std::uint64_t expected_group_order(const GroupScheme& scheme, const LocalRing& ring);

struct ConjugacyClassData {
  std::vector<ElementId> representatives;  // minimal element of each class
  std::vector<std::uint64_t> sizes;
  std::vector<std::uint32_t> class_of;  // element id -> class index
  std::vector<std::uint64_t> centralizer_orders;

  std::size_t count() const noexcept { return representatives.size(); }
};

class MatrixGroup {
public:
  /// Builds the group from an explicit element list. Elements are sorted into
  /// canonical (row-major lexicographic) order, so ids are canonical too.
  MatrixGroup(GroupScheme scheme, RingPtr ring, int n, std::vector<RingMatrix> elements);
  ~MatrixGroup();
  MatrixGroup(MatrixGroup&&) noexcept;
  MatrixGroup& operator=(MatrixGroup&&) noexcept;

  const GroupScheme& scheme() const noexcept { return scheme_; }
  const RingPtr& ring() const noexcept { return ring_; }
  int dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return keys_.size(); }
  /// `sl(2)@zmod(2^3)`
  std::string descriptor() const;

  RingMatrix element(ElementId id) const {
    RingMatrix m(n_, n_);
    const Code* e = entries_.data() + std::size_t{id} * n_ * n_;
    for (int i = 0; i < n_ * n_; ++i) m(i / n_, i % n_) = e[i];
    return m;
  }
  std::uint64_t key(ElementId id) const { return keys_[id]; }
  std::optional<ElementId> find(const RingMatrix& m) const;
  /// Like find but throws InvariantViolation when m is not in the group.
  ElementId id_of(const RingMatrix& m) const;

  ElementId identity() const noexcept { return identity_; }
  ElementId mul(ElementId a, ElementId b) const;
  ElementId inv(ElementId a) const { return inverse_[a]; }
  /// g x g^-1
  ElementId conjugate(ElementId g, ElementId x) const { return mul(mul(g, x), inverse_[g]); }
  std::uint64_t element_order(ElementId a) const;
  /// lcm of element orders.
  std::uint64_t exponent() const;

  /// A small deterministic generating set.
  const std::vector<ElementId>& generators() const;
  /// Conjugacy classes, computed on first use (thread-safe).
  const ConjugacyClassData& classes() const;
  /// Installs a previously computed class partition (e.g. from a cache).
  /// Ignored when classes were already computed; sizes are validated.
  void adopt_classes(ConjugacyClassData data) const;

  std::vector<ElementId> centralizer(ElementId x) const;
  /// Subgroup on the given element ids (closure is checked).
  MatrixGroup subgroup(const std::vector<ElementId>& ids) const;

  /// Elements of the subgroup generated by `gens`, as sorted ids.
  std::vector<ElementId> closure(const std::vector<ElementId>& gens) const;
  /// Derived subgroup of the subgroup with the given (sorted) element ids.
  std::vector<ElementId> derived_subgroup(const std::vector<ElementId>& subgroup_ids) const;

private:
  struct Lazy;

  GroupScheme scheme_;
  RingPtr ring_;
  int n_;
  std::vector<std::uint64_t> keys_;  // sorted
  std::vector<Code> entries_;        // row-major, n*n per element
  std::vector<ElementId> inverse_;
  ElementId identity_ = 0;
  std::unique_ptr<Lazy> lazy_;
};

struct EnumerationBounds {
  std::uint64_t max_order = 100000;
  std::uint64_t max_scan = 50000000;
};

/// Enumerates G(R): scan G(F_q), lift each point, correct the lift onto the
/// defining equation, then multiply by every element of the reduction kernel.
/// Throws BoundExceeded before doing any work if |G(R)| exceeds the bound.
MatrixGroup enumerate_points(const GroupScheme& scheme, const RingPtr& ring,
                             const EnumerationBounds& bounds = {});

/// Residue field as a length-one ring.
RingPtr residue_ring(const LocalRing& ring);

/// Entrywise reduction G(R) -> G(F_q): image id of every element.
std::vector<ElementId> reduction_map(const MatrixGroup& group, const MatrixGroup& residue_group);

/// The last congruence layer {I + eps X : X in Lie(G)(F_q)}, eps as in
/// LocalRing::top_embed. For length two this is the whole reduction kernel.
struct KernelSubgroup {
  std::vector<ElementId> elements;   // ids in the parent group, sorted
  std::vector<RingMatrix> lie;       // X over the residue field, same order
  std::vector<std::int32_t> index_of;  // parent id -> position, -1 outside

  bool contains(ElementId g) const { return index_of[g] >= 0; }
  std::size_t size() const noexcept { return elements.size(); }
};

KernelSubgroup kernel_subgroup(const MatrixGroup& group);

/// exp(X) = I + eps X for a length-two ring; X must lie in the Lie algebra.
RingMatrix exp_map(const MatrixGroup& group, const RingMatrix& x);
/// Inverse of exp_map on the kernel.
RingMatrix log_map(const MatrixGroup& group, const RingMatrix& u);

/// 0 for equal characteristic, 1 for mixed: conjugation on the kernel is
/// g exp(X) g^-1 = exp(Ad(sigma^i(g_bar)) X) with sigma the p-power map.
int twist_exponent(const LocalRing& ring);

/// Entrywise p-th power of a matrix over F_q.
RingMatrix sigma(const GaloisField& field, const RingMatrix& m);

/// Entrywise reduction / lift between R and F_q.
RingMatrix reduce_matrix(const LocalRing& ring, const RingMatrix& m);
RingMatrix lift_matrix(const LocalRing& ring, const RingMatrix& m);

}  // namespace wittrep
