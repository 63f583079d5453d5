#include "wittrep/ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "wittrep/errors.hpp"

namespace wittrep {

namespace {

constexpr std::uint32_t kMaxFieldOrder = 1024;
constexpr std::uint32_t kMaxTableRing = 1024;
constexpr std::uint32_t kMaxRingSize = 1u << 16;

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Remainder of a modulo monic b over F_p (both lowest coefficient first).
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a,
                                    const std::vector<std::uint32_t>& b, std::uint32_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint32_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i)
        a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
    }
    a.pop_back();
  }
  return a;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  if (poly.size() < 2 || poly.back() != 1) return false;
  const std::uint32_t deg = static_cast<std::uint32_t>(poly.size() - 1);
  for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
    const std::uint64_t count = ipow(p, d);
    for (std::uint64_t lower = 0; lower < count; ++lower) {
      std::vector<std::uint32_t> divisor(d + 1, 0);
      std::uint64_t v = lower;
      for (std::uint32_t i = 0; i < d; ++i, v /= p) divisor[i] = static_cast<std::uint32_t>(v % p);
      divisor[d] = 1;
      auto rem = poly_rem(poly, divisor, p);
      if (std::all_of(rem.begin(), rem.end(), [](std::uint32_t c) { return c == 0; }))
        return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> parse_polynomial(std::string_view text, std::uint32_t p) {
  std::vector<std::int64_t> coeffs;
  std::size_t pos = 0;
  auto fail = [&](const char* why) {
    throw UsageError("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&](std::int64_t& out) {
    const auto* begin = text.data() + pos;
    auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), out);
    if (ec != std::errc{}) return false;
    pos += static_cast<std::size_t>(ptr - begin);
    return true;
  };
  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    std::int64_t sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip_ws();
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    std::int64_t coeff = 1;
    bool have_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      read_int(coeff);
      have_coeff = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') ++pos;
      skip_ws();
    }
    std::int64_t exponent = 0;
    if (pos < text.size() && text[pos] == 'x') {
      ++pos;
      exponent = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        if (!read_int(exponent) || exponent < 0) fail("bad exponent");
      }
    } else if (!have_coeff) {
      fail("expected a term");
    }
    if (exponent > 64) fail("degree too large");
    if (coeffs.size() <= static_cast<std::size_t>(exponent)) coeffs.resize(exponent + 1, 0);
    coeffs[exponent] += sign * coeff;
  }
  if (coeffs.empty()) fail("empty");
  std::vector<std::uint32_t> out(coeffs.size());
  const auto pp = static_cast<std::int64_t>(p);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    out[i] = static_cast<std::uint32_t>(((coeffs[i] % pp) + pp) % pp);
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::string format_polynomial(const std::vector<std::uint32_t>& coeffs) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    const std::uint32_t c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += 'x';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// GaloisField

GaloisField::GaloisField(std::uint32_t p, std::uint32_t degree, std::vector<std::uint32_t> modulus)
    : p_(p), f_(degree), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
  if (degree < 1 || degree > 4) throw UsageError("extension degree must be in [1, 4]");
  const std::uint64_t q = ipow(p, degree);
  if (q > kMaxFieldOrder) throw BoundExceeded("field order too large", q, kMaxFieldOrder);
  q_ = static_cast<std::uint32_t>(q);
  if (degree == 1) {
    modulus_ = {0, 1};
  } else if (modulus_.size() != degree + 1 || !is_irreducible_mod_p(modulus_, p)) {
    throw UsageError("modulus " + format_polynomial(modulus_) + " is not a monic irreducible of degree " +
                     std::to_string(degree) + " over F_" + std::to_string(p));
  }

  add_.resize(std::size_t{q_} * q_);
  mul_.resize(std::size_t{q_} * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  frob_.resize(q_);
  trace_.resize(q_);
  for (Code a = 0; a < q_; ++a) {
    const auto ca = coefficients(a);
    std::vector<std::uint32_t> n(f_);
    for (std::uint32_t i = 0; i < f_; ++i) n[i] = (p_ - ca[i]) % p_;
    neg_[a] = from_coefficients(n);
    for (Code b = 0; b < q_; ++b) {
      const auto cb = coefficients(b);
      std::vector<std::uint32_t> s(f_);
      for (std::uint32_t i = 0; i < f_; ++i) s[i] = (ca[i] + cb[i]) % p_;
      add_[a * q_ + b] = from_coefficients(s);
      mul_[a * q_ + b] = raw_mul(a, b);
    }
  }
  for (Code a = 1; a < q_; ++a)
    for (Code b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = b;
        break;
      }
  for (Code a = 0; a < q_; ++a) {
    Code x = 1;
    for (std::uint32_t i = 0; i < p_; ++i) x = mul(x, a);
    frob_[a] = x;
  }
  for (Code a = 0; a < q_; ++a) {
    Code sum = 0;
    Code x = a;
    for (std::uint32_t i = 0; i < f_; ++i) {
      sum = add(sum, x);
      x = frob_[x];
    }
    // Tr lands in the prime field, whose codes are 0..p-1.
    if (sum >= p_) throw InvariantViolation("field trace left the prime field");
    trace_[a] = sum;
  }
}

GaloisField GaloisField::standard(std::uint32_t p, std::uint32_t degree) {
  if (!is_prime(p)) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
  if (degree < 1 || degree > 4) throw UsageError("extension degree must be in [1, 4]");
  if (degree == 1) return GaloisField(p, 1, {0, 1});
  const std::uint64_t count = ipow(p, degree);
  for (std::uint64_t lower = 0; lower < count; ++lower) {
    std::vector<std::uint32_t> poly(degree + 1);
    std::uint64_t v = lower;
    for (std::uint32_t i = 0; i < degree; ++i, v /= p) poly[i] = static_cast<std::uint32_t>(v % p);
    poly[degree] = 1;
    if (is_irreducible_mod_p(poly, p)) return GaloisField(p, degree, std::move(poly));
  }
  throw InvariantViolation("no irreducible polynomial found");
}

Code GaloisField::raw_mul(Code a, Code b) const {
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  std::vector<std::uint32_t> prod(2 * f_ - 1, 0);
  for (std::uint32_t i = 0; i < f_; ++i)
    for (std::uint32_t j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
  auto rem = poly_rem(std::move(prod), modulus_, p_);
  rem.resize(f_, 0);
  return from_coefficients(rem);
}

Code GaloisField::inv(Code a) const {
  if (a == 0) throw UsageError("inverse of zero in " + to_string());
  return inv_[a];
}

Code GaloisField::pow(Code a, std::uint64_t e) const {
  Code result = 1;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Code GaloisField::from_integer(std::int64_t n) const {
  const auto p = static_cast<std::int64_t>(p_);
  return static_cast<Code>(((n % p) + p) % p);
}

std::vector<std::uint32_t> GaloisField::coefficients(Code a) const {
  std::vector<std::uint32_t> c(f_);
  for (std::uint32_t i = 0; i < f_; ++i, a /= p_) c[i] = a % p_;
  return c;
}

Code GaloisField::from_coefficients(const std::vector<std::uint32_t>& c) const {
  Code a = 0;
  for (std::size_t i = c.size(); i-- > 0;) a = a * p_ + c[i];
  return a;
}

std::string GaloisField::to_string() const {
  if (f_ == 1) return "gf(" + std::to_string(p_) + ")";
  return "gf(" + std::to_string(q_) + ";" + format_polynomial(modulus_) + ")";
}

// ---------------------------------------------------------------------------
// Witt vectors of length two

std::vector<std::uint32_t> witt_sum_coefficients(std::uint32_t p) {
  if (!is_prime(p) || p > 61) throw UsageError("unsupported prime for Witt vectors");
  std::vector<std::uint32_t> out;
  std::uint64_t binom = 1;  // binom(p, i), exact over the integers
  for (std::uint32_t i = 1; i < p; ++i) {
    binom = binom * (p - i + 1) / i;
    out.push_back(static_cast<std::uint32_t>((binom / p) % p));
  }
  return out;
}

std::pair<Code, Code> LocalRing::witt_sum(const GaloisField& k, Code a0, Code a1, Code b0, Code b1) {
  const std::uint32_t p = k.characteristic();
  // S_1 = a1 + b1 - sum_{i=1}^{p-1} (binom(p,i)/p) a0^i b0^(p-i)
  static thread_local std::uint32_t cached_p = 0;
  static thread_local std::vector<std::uint32_t> coeffs;
  if (cached_p != p) {
    coeffs = witt_sum_coefficients(p);
    cached_p = p;
  }
  Code correction = 0;
  for (std::uint32_t i = 1; i < p; ++i) {
    const Code term = k.mul(k.pow(a0, i), k.pow(b0, p - i));
    correction = k.add(correction, k.mul(k.from_integer(coeffs[i - 1]), term));
  }
  return {k.add(a0, b0), k.sub(k.add(a1, b1), correction)};
}

std::pair<Code, Code> LocalRing::witt_product(const GaloisField& k, Code a0, Code a1, Code b0,
                                              Code b1) {
  const std::uint32_t p = k.characteristic();
  return {k.mul(a0, b0), k.add(k.mul(k.pow(a0, p), b1), k.mul(k.pow(b0, p), a1))};
}

// ---------------------------------------------------------------------------
// LocalRing

LocalRing::LocalRing(RingKind kind, GaloisField field, std::uint32_t length)
    : kind_(kind), field_(std::move(field)), length_(length) {}

std::shared_ptr<const LocalRing> LocalRing::truncated_poly(const GaloisField& field,
                                                           std::uint32_t length) {
  if (length < 1 || length > 4) throw UsageError("truncated polynomial length must be in [1, 4]");
  std::shared_ptr<LocalRing> ring(new LocalRing(RingKind::TruncatedPoly, field, length));
  ring->build();
  return ring;
}

std::shared_ptr<const LocalRing> LocalRing::integers_mod(std::uint32_t p, std::uint32_t length) {
  if (length < 1 || length > 6) throw UsageError("Z/p^r length must be in [1, 6]");
  std::shared_ptr<LocalRing> ring(
      new LocalRing(RingKind::IntegersModPrimePower, GaloisField::standard(p, 1), length));
  ring->build();
  return ring;
}

std::shared_ptr<const LocalRing> LocalRing::witt2(const GaloisField& field) {
  std::shared_ptr<LocalRing> ring(new LocalRing(RingKind::WittLength2, field, 2));
  ring->build();
  return ring;
}

std::shared_ptr<const LocalRing> LocalRing::with_base_degree(std::uint32_t base_degree) const {
  if (base_degree < 1 || field_.degree() % base_degree != 0)
    throw UsageError("base degree must divide the residue degree");
  auto copy = std::make_shared<LocalRing>(*this);
  copy->base_degree_ = base_degree;
  return copy;
}

void LocalRing::build() {
  const std::uint64_t size = ipow(field_.order(), length_);
  if (size > kMaxRingSize) throw BoundExceeded("ring too large", size, kMaxRingSize);
  size_ = static_cast<std::uint32_t>(size);
  base_degree_ = field_.degree();
  one_ = kind_ == RingKind::TruncatedPoly ? static_cast<Code>(ipow(field_.order(), length_ - 1))
         : kind_ == RingKind::WittLength2 ? field_.order()
                                          : 1;

  reduce_.resize(size_);
  for (Code a = 0; a < size_; ++a) reduce_[a] = coordinates(a)[0];
  neg_.resize(size_);
  for (Code a = 0; a < size_; ++a)
    for (Code b = 0; b < size_; ++b)
      if (raw_add(a, b) == 0) {
        neg_[a] = b;
        break;
      }
  if (size_ <= kMaxTableRing) {
    add_.resize(std::size_t{size_} * size_);
    mul_.resize(std::size_t{size_} * size_);
    for (Code a = 0; a < size_; ++a)
      for (Code b = 0; b < size_; ++b) {
        add_[a * size_ + b] = raw_add(a, b);
        mul_[a * size_ + b] = raw_mul(a, b);
      }
    tables_ = true;
  }
  char_ = 1;
  for (Code x = one_; x != 0; x = add(x, one_)) ++char_;
}

std::vector<Code> LocalRing::coordinates(Code a) const {
  switch (kind_) {
    case RingKind::TruncatedPoly: {
      std::vector<Code> c(length_);
      for (std::uint32_t i = length_; i-- > 0; a /= field_.order()) c[i] = a % field_.order();
      return c;
    }
    case RingKind::IntegersModPrimePower:
      // First coordinate is the residue; the full integer follows.
      return {a % field_.characteristic(), a};
    case RingKind::WittLength2:
      return {a / field_.order(), a % field_.order()};
  }
  return {};
}

Code LocalRing::from_coordinates(const std::vector<Code>& c) const {
  switch (kind_) {
    case RingKind::TruncatedPoly: {
      Code a = 0;
      for (std::uint32_t i = 0; i < length_; ++i) a = a * field_.order() + c.at(i);
      return a;
    }
    case RingKind::IntegersModPrimePower:
      return c.at(1) % size_;
    case RingKind::WittLength2:
      return c.at(0) * field_.order() + c.at(1);
  }
  return 0;
}

Code LocalRing::raw_add(Code a, Code b) const {
  const GaloisField& k = field_;
  switch (kind_) {
    case RingKind::TruncatedPoly: {
      auto ca = coordinates(a);
      const auto cb = coordinates(b);
      for (std::uint32_t i = 0; i < length_; ++i) ca[i] = k.add(ca[i], cb[i]);
      return from_coordinates(ca);
    }
    case RingKind::IntegersModPrimePower:
      return (a + b) % size_;
    case RingKind::WittLength2: {
      const auto [s0, s1] = witt_sum(k, a / k.order(), a % k.order(), b / k.order(), b % k.order());
      return s0 * k.order() + s1;
    }
  }
  return 0;
}

Code LocalRing::raw_mul(Code a, Code b) const {
  const GaloisField& k = field_;
  switch (kind_) {
    case RingKind::TruncatedPoly: {
      const auto ca = coordinates(a);
      const auto cb = coordinates(b);
      std::vector<Code> c(length_, 0);
      for (std::uint32_t i = 0; i < length_; ++i)
        for (std::uint32_t j = 0; i + j < length_; ++j) c[i + j] = k.add(c[i + j], k.mul(ca[i], cb[j]));
      return from_coordinates(c);
    }
    case RingKind::IntegersModPrimePower:
      return static_cast<Code>((std::uint64_t{a} * b) % size_);
    case RingKind::WittLength2: {
      const auto [m0, m1] =
          witt_product(k, a / k.order(), a % k.order(), b / k.order(), b % k.order());
      return m0 * k.order() + m1;
    }
  }
  return 0;
}

Code LocalRing::inv(Code a) const {
  if (!is_unit(a)) throw UsageError("inverse of a non-unit in " + descriptor());
  // |R^x| = q^(r-1) (q-1)
  const std::uint64_t units = ipow(field_.order(), length_ - 1) * (field_.order() - 1);
  std::uint64_t e = units - 1;
  Code result = one_, base = a;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Code LocalRing::from_integer(std::int64_t n) const {
  const auto c = static_cast<std::int64_t>(char_);
  std::uint64_t m = static_cast<std::uint64_t>(((n % c) + c) % c);
  Code result = 0, base = one_;
  while (m > 0) {
    if (m & 1) result = add(result, base);
    base = add(base, base);
    m >>= 1;
  }
  return result;
}

Code LocalRing::lift(Code x) const {
  switch (kind_) {
    case RingKind::TruncatedPoly:
      return x * static_cast<Code>(ipow(field_.order(), length_ - 1));
    case RingKind::IntegersModPrimePower:
      return x;
    case RingKind::WittLength2:
      return x * field_.order();
  }
  return 0;
}

Code LocalRing::top_embed(Code x) const {
  if (length_ < 2) throw UsageError("top layer of a field is not a proper ideal");
  switch (kind_) {
    case RingKind::TruncatedPoly:
      return x;
    case RingKind::IntegersModPrimePower:
      return static_cast<Code>(x * ipow(field_.characteristic(), length_ - 1));
    case RingKind::WittLength2:
      return x;
  }
  return 0;
}

bool LocalRing::in_top_layer(Code a) const {
  switch (kind_) {
    case RingKind::TruncatedPoly:
    case RingKind::WittLength2:
      return a < field_.order();
    case RingKind::IntegersModPrimePower:
      return a % ipow(field_.characteristic(), length_ - 1) == 0;
  }
  return false;
}

Code LocalRing::top_extract(Code a) const {
  if (!in_top_layer(a)) throw UsageError("element is not in the last layer of the maximal ideal");
  if (kind_ == RingKind::IntegersModPrimePower)
    return static_cast<Code>(a / ipow(field_.characteristic(), length_ - 1));
  return a;
}

Code LocalRing::frobenius(Code a) const {
  if (kind_ == RingKind::IntegersModPrimePower) return a;
  auto c = coordinates(a);
  for (auto& x : c)
    for (std::uint32_t i = 0; i < base_degree_; ++i) x = field_.frobenius(x);
  return from_coordinates(c);
}

std::string LocalRing::descriptor() const {
  std::string base;
  if (base_degree_ != field_.degree())
    base = ",base=" + GaloisField::standard(field_.characteristic(), base_degree_).to_string();
  switch (kind_) {
    case RingKind::TruncatedPoly:
      return "truncpoly(" + field_.to_string() + ",r=" + std::to_string(length_) + base + ")";
    case RingKind::IntegersModPrimePower:
      return "zmod(" + std::to_string(field_.characteristic()) + "^" + std::to_string(length_) + ")";
    case RingKind::WittLength2:
      return "witt2(" + field_.to_string() + base + ")";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Descriptor parsing

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint64_t parse_uint(std::string_view s, std::string_view context) {
  s = trim(s);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw UsageError("expected an integer in '" + std::string(context) + "'");
  return v;
}

// Splits "name(args)" into name and args; args may contain nested parens.
std::pair<std::string_view, std::string_view> split_call(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw UsageError("malformed descriptor '" + std::string(text) + "'");
  return {trim(text.substr(0, open)), text.substr(open + 1, text.size() - open - 2)};
}

// Splits on top-level commas.
std::vector<std::string_view> split_args(std::string_view args) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == '(') ++depth;
    else if (args[i] == ')') --depth;
    else if (args[i] == ',' && depth == 0) {
      out.push_back(trim(args.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(args.substr(start)));
  return out;
}

// p^f decomposition of a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q, std::string_view context) {
  for (std::uint64_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    std::uint32_t f = 0;
    while (q % p == 0) {
      q /= p;
      ++f;
    }
    if (q != 1) break;
    return {static_cast<std::uint32_t>(p), f};
  }
  throw UsageError("'" + std::string(context) + "' is not a prime power");
}

struct KeyValue {
  std::string_view key;
  std::string_view value;
};

KeyValue split_kv(std::string_view arg) {
  const auto eq = arg.find('=');
  if (eq == std::string_view::npos) return {{}, arg};
  return {trim(arg.substr(0, eq)), trim(arg.substr(eq + 1))};
}

}  // namespace

GaloisField parse_field(std::string_view text) {
  auto [name, args] = split_call(text);
  if (name != "gf") throw UsageError("expected gf(...), got '" + std::string(text) + "'");
  const auto semi = args.find(';');
  const auto [p, f] = prime_power(parse_uint(args.substr(0, semi), text), text);
  if (semi == std::string_view::npos) return GaloisField::standard(p, f);
  auto modulus = parse_polynomial(trim(args.substr(semi + 1)), p);
  if (f == 1) {
    if (modulus.size() != 2 || modulus[1] != 1)
      throw UsageError("prime field modulus must be linear and monic");
    return GaloisField(p, 1, {0, 1});
  }
  return GaloisField(p, f, std::move(modulus));
}

RingPtr parse_ring(std::string_view text) {
  auto [name, args] = split_call(text);
  const auto parts = split_args(args);
  std::uint32_t base_degree = 0;
  auto apply_base = [&](RingPtr ring) {
    return base_degree == 0 ? ring : ring->with_base_degree(base_degree);
  };
  auto read_base = [&](std::string_view value, const GaloisField& field) {
    const GaloisField base = parse_field(value);
    if (base.characteristic() != field.characteristic())
      throw UsageError("base field has the wrong characteristic");
    base_degree = base.degree();
  };
  if (name == "gf") return LocalRing::truncated_poly(parse_field(text), 1);
  if (name == "truncpoly") {
    if (parts.size() < 2) throw UsageError("truncpoly needs a field and r=<length>");
    const GaloisField field = parse_field(parts[0]);
    std::uint32_t r = 0;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto kv = split_kv(parts[i]);
      if (kv.key == "r") r = static_cast<std::uint32_t>(parse_uint(kv.value, text));
      else if (kv.key == "base") read_base(kv.value, field);
      else throw UsageError("unknown truncpoly argument '" + std::string(parts[i]) + "'");
    }
    return apply_base(LocalRing::truncated_poly(field, r));
  }
  if (name == "zmod") {
    if (parts.size() != 1) throw UsageError("zmod takes one argument");
    const auto caret = parts[0].find('^');
    if (caret == std::string_view::npos) {
      const auto [p, r] = prime_power(parse_uint(parts[0], text), text);
      return LocalRing::integers_mod(p, r);
    }
    const auto p = parse_uint(parts[0].substr(0, caret), text);
    const auto r = parse_uint(parts[0].substr(caret + 1), text);
    if (!is_prime(p)) throw UsageError("zmod base must be prime");
    return LocalRing::integers_mod(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(r));
  }
  if (name == "witt2") {
    const GaloisField field = parse_field(parts.at(0));
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto kv = split_kv(parts[i]);
      if (kv.key == "base") read_base(kv.value, field);
      else throw UsageError("unknown witt2 argument '" + std::string(parts[i]) + "'");
    }
    return apply_base(LocalRing::witt2(field));
  }
  throw UsageError("unknown ring '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// RingElement and free functions

RingElement::RingElement(RingPtr ring, Code code) : ring_(std::move(ring)), code_(code) {
  if (!ring_ || code_ >= ring_->size()) throw UsageError("ring element out of range");
}

namespace {
void require_same(const RingElement& a, const RingElement& b) {
  if (!a.ring()->same_as(*b.ring()))
    throw UsageError("operands live in different rings: " + a.ring()->descriptor() + " vs " +
                     b.ring()->descriptor());
}
void require_witt(const RingPtr& ring) {
  if (ring->kind() != RingKind::WittLength2)
    throw UsageError("expected a Witt vector ring, got " + ring->descriptor());
}
}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  return {a.ring_, a.ring_->add(a.code_, b.code_)};
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  return {a.ring_, a.ring_->sub(a.code_, b.code_)};
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  require_same(a, b);
  return {a.ring_, a.ring_->mul(a.code_, b.code_)};
}

RingElement witt_add(const RingElement& a, const RingElement& b) {
  require_witt(a.ring());
  return a + b;
}

RingElement witt_mul(const RingElement& a, const RingElement& b) {
  require_witt(a.ring());
  return a * b;
}

RingElement verschiebung(const RingPtr& witt_ring, Code x) {
  require_witt(witt_ring);
  return {witt_ring, witt_ring->from_coordinates({0, x})};
}

RingElement teichmuller(const RingPtr& witt_ring, Code x) {
  require_witt(witt_ring);
  return {witt_ring, witt_ring->from_coordinates({x, 0})};
}

Code reduce(const RingElement& x) { return x.ring()->reduce(x.code()); }

RingElement frobenius_ring_auto(const RingElement& x) {
  return {x.ring(), x.ring()->frobenius(x.code())};
}

RingClassification classify_local_ring(const LocalRing& ring) {
  if (ring.length() != 2)
    throw UsageError("classification is only defined for length-two rings, got " +
                     ring.descriptor());
  const std::uint32_t p = ring.residue_field().characteristic();
  if (ring.characteristic() == p) return {LengthTwoClass::DualNumbers, ring.residue_field()};
  if (ring.characteristic() == p * p) return {LengthTwoClass::Witt, ring.residue_field()};
  throw InvariantViolation("length-two ring with characteristic " +
                           std::to_string(ring.characteristic()));
}

}  // namespace wittrep
