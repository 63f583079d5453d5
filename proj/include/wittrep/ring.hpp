#pragma once

// Finite fields F_q and the finite local rings F_q[t]/t^r, Z/p^r and W_2(F_q).
//
// Elements of every field or ring are encoded as small integers ("codes").
// The encoding is chosen so that comparing codes compares coordinate tuples
// lexicographically:
//   F_q           code = sum c_i p^i for the polynomial sum c_i x^i
//   F_q[t]/t^r    code = sum c_i q^(r-1-i) for sum c_i t^i (constant term first)
//   Z/p^r         the integer itself
//   W_2(F_q)      code = a0 * q + a1
// Everything is immutable after construction; a LocalRing may be shared by
// any number of threads.

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace wittrep {

using Code = std::uint32_t;

class GaloisField {
public:
  /// `modulus` holds the coefficients of a monic irreducible polynomial of
  /// degree `degree`, lowest degree first. Irreducibility is verified.
  GaloisField(std::uint32_t p, std::uint32_t degree, std::vector<std::uint32_t> modulus);

  /// F_p^f with the smallest monic irreducible modulus (coefficients read
  /// as a base-p number, constant term least significant).
  static GaloisField standard(std::uint32_t p, std::uint32_t degree = 1);

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return f_; }
  std::uint32_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return 1; }
  Code add(Code a, Code b) const { return add_[a * q_ + b]; }
  Code mul(Code a, Code b) const { return mul_[a * q_ + b]; }
  Code neg(Code a) const { return neg_[a]; }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  bool is_unit(Code a) const noexcept { return a != 0; }
  /// Throws UsageError for a == 0.
  Code inv(Code a) const;
  Code pow(Code a, std::uint64_t e) const;
  /// x -> x^p
  Code frobenius(Code a) const { return frob_[a]; }
  /// Tr_{F_q/F_p}, returned as an integer in [0, p).
  std::uint32_t trace(Code a) const { return trace_[a]; }
  /// Embeds n mod p.
  Code from_integer(std::int64_t n) const;
  std::vector<std::uint32_t> coefficients(Code a) const;
  Code from_coefficients(const std::vector<std::uint32_t>& c) const;
  /// Element whose polynomial representative is x (the generator); 1 if f == 1.
  Code generator() const noexcept { return f_ > 1 ? p_ : 1; }

  /// Canonical text form: `gf(2)`, `gf(9;x^2+1)`.
  std::string to_string() const;

  bool operator==(const GaloisField& other) const noexcept {
    return p_ == other.p_ && f_ == other.f_ && modulus_ == other.modulus_;
  }

private:
  Code raw_mul(Code a, Code b) const;

  std::uint32_t p_;
  std::uint32_t f_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Code> add_, mul_, neg_, inv_, frob_;
  std::vector<std::uint32_t> trace_;
};

/// True iff the monic polynomial (lowest coefficient first) is irreducible
/// over F_p, checked by trial division by every monic polynomial of degree
/// at most deg/2.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p);

bool is_prime(std::uint64_t n);

/// Parses a polynomial such as `x^2+x+1` or `x^3+2x+1` into coefficients
/// (lowest first). Coefficients are reduced mod p.
std::vector<std::uint32_t> parse_polynomial(std::string_view text, std::uint32_t p);
std::string format_polynomial(const std::vector<std::uint32_t>& coeffs);

enum class RingKind { TruncatedPoly, IntegersModPrimePower, WittLength2 };

class LocalRing {
public:
  static std::shared_ptr<const LocalRing> truncated_poly(const GaloisField& field,
                                                         std::uint32_t length);
  static std::shared_ptr<const LocalRing> integers_mod(std::uint32_t p, std::uint32_t length);
  static std::shared_ptr<const LocalRing> witt2(const GaloisField& field);

  /// Same ring with the Frobenius ring automorphism taken relative to the
  /// subfield of degree `base_degree` (which must divide the residue degree).
  std::shared_ptr<const LocalRing> with_base_degree(std::uint32_t base_degree) const;

  RingKind kind() const noexcept { return kind_; }
  const GaloisField& residue_field() const noexcept { return field_; }
  std::uint32_t length() const noexcept { return length_; }
  std::uint32_t size() const noexcept { return size_; }
  std::uint32_t base_degree() const noexcept { return base_degree_; }
  /// Additive order of 1.
  std::uint32_t characteristic() const noexcept { return char_; }
  bool mixed_characteristic() const noexcept { return char_ != field_.characteristic(); }

  Code zero() const noexcept { return 0; }
  Code one() const noexcept { return one_; }

  Code add(Code a, Code b) const { return tables_ ? add_[a * size_ + b] : raw_add(a, b); }
  Code mul(Code a, Code b) const { return tables_ ? mul_[a * size_ + b] : raw_mul(a, b); }
  Code neg(Code a) const { return neg_[a]; }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  bool is_unit(Code a) const { return field_code(a) != 0; }
  /// Throws UsageError for a non-unit.
  Code inv(Code a) const;
  Code from_integer(std::int64_t n) const;

  /// Residue map onto F_q.
  Code reduce(Code a) const { return reduce_[a]; }
  /// Coordinate section F_q -> R (constant polynomial, integer lift, or
  /// Teichmuller representative).
  Code lift(Code x) const;
  /// x -> eps * lift(x) with eps = t^(r-1), p^(r-1), or V(x) = (0, x) for Witt
  /// vectors. This identifies F_q with the last layer m^(r-1).
  Code top_embed(Code x) const;
  /// Inverse of top_embed on m^(r-1).
  Code top_extract(Code a) const;
  bool in_maximal_ideal(Code a) const { return reduce(a) == 0; }
  bool in_top_layer(Code a) const;

  /// Coordinatewise x -> x^(p^base_degree); identity on Z/p^r.
  Code frobenius(Code a) const;

  std::vector<Code> coordinates(Code a) const;
  Code from_coordinates(const std::vector<Code>& coords) const;

  /// Canonical text form, e.g. `truncpoly(gf(4;x^2+x+1),r=2)`, `zmod(2^3)`,
  /// `witt2(gf(3))`.
  std::string descriptor() const;

  /// Witt vector arithmetic on coordinates (a0, a1); valid for any residue field.
  static std::pair<Code, Code> witt_sum(const GaloisField& k, Code a0, Code a1, Code b0,
                                        Code b1);
  static std::pair<Code, Code> witt_product(const GaloisField& k, Code a0, Code a1, Code b0,
                                            Code b1);

  bool same_as(const LocalRing& other) const noexcept {
    return kind_ == other.kind_ && length_ == other.length_ && field_ == other.field_;
  }

private:
  LocalRing(RingKind kind, GaloisField field, std::uint32_t length);
  void build();
  Code raw_add(Code a, Code b) const;
  Code raw_mul(Code a, Code b) const;
  Code field_code(Code a) const { return reduce_[a]; }

  RingKind kind_;
  GaloisField field_;
  std::uint32_t length_;
  std::uint32_t size_ = 0;
  std::uint32_t base_degree_ = 1;
  std::uint32_t char_ = 0;
  Code one_ = 0;
  bool tables_ = false;
  std::vector<Code> add_, mul_, neg_, reduce_;
};

using RingPtr = std::shared_ptr<const LocalRing>;

/// Parses `gf(..)`, `truncpoly(..)`, `zmod(..)`, `witt2(..)`. A bare field
/// `gf(q)` parses as the length-one ring truncpoly(gf(q),r=1).
RingPtr parse_ring(std::string_view text);
GaloisField parse_field(std::string_view text);

/// Value type for a single ring element.
class RingElement {
public:
  RingElement(RingPtr ring, Code code);

  const RingPtr& ring() const noexcept { return ring_; }
  Code code() const noexcept { return code_; }
  std::vector<Code> coordinates() const { return ring_->coordinates(code_); }

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement operator-() const { return {ring_, ring_->neg(code_)}; }

  bool operator==(const RingElement& other) const noexcept {
    return code_ == other.code_ && ring_->same_as(*other.ring_);
  }
  /// Lexicographic on coordinates (equivalently on codes).
  std::strong_ordering operator<=>(const RingElement& other) const noexcept {
    return code_ <=> other.code_;
  }

private:
  RingPtr ring_;
  Code code_;
};

/// Witt vector operations; operands must live in a WittLength2 ring.
RingElement witt_add(const RingElement& a, const RingElement& b);
RingElement witt_mul(const RingElement& a, const RingElement& b);
RingElement verschiebung(const RingPtr& witt_ring, Code x);
RingElement teichmuller(const RingPtr& witt_ring, Code x);
Code reduce(const RingElement& x);
RingElement frobenius_ring_auto(const RingElement& x);

/// Integer coefficients binom(p, i) / p mod p for i = 1..p-1 (index i-1).
std::vector<std::uint32_t> witt_sum_coefficients(std::uint32_t p);

enum class LengthTwoClass { DualNumbers, Witt };

struct RingClassification {
  LengthTwoClass kind;
  GaloisField residue_field;
};

/// Length-two rings are either F_q[t]/t^2 (characteristic p) or W_2(F_q)
/// (characteristic p^2). Throws UsageError for other lengths.
RingClassification classify_local_ring(const LocalRing& ring);

}  // namespace wittrep
