#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "wittrep/errors.hpp"
#include "wittrep/group.hpp"

using namespace wittrep;

namespace {

MatrixGroup make(const char* scheme, const char* ring) {
  return enumerate_points(GroupScheme::parse(scheme), parse_ring(ring));
}

// Every n x n matrix over the ring satisfying the defining predicate.
std::set<std::uint64_t> brute_force_points(const GroupScheme& scheme, const LocalRing& ring) {
  const int n = scheme.n;
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= ring.size();
  std::set<std::uint64_t> out;
  for (std::uint64_t key = 0; key < total; ++key) {
    const RingMatrix m = matrix_from_key(key, ring.size(), n);
    if (scheme.contains(ring, m)) out.insert(key);
  }
  return out;
}

// Class partition by conjugating with every element.
std::vector<std::set<ElementId>> brute_force_classes(const MatrixGroup& g) {
  std::vector<char> seen(g.size(), 0);
  std::vector<std::set<ElementId>> out;
  for (ElementId x = 0; x < g.size(); ++x) {
    if (seen[x]) continue;
    std::set<ElementId> cls;
    for (ElementId h = 0; h < g.size(); ++h) cls.insert(g.conjugate(h, x));
    for (const ElementId y : cls) seen[y] = 1;
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace

TEST_CASE("scheme descriptors") {
  CHECK(GroupScheme::parse("sl(2)").to_string() == "sl(2)");
  CHECK(GroupScheme::parse("sp(4)").lie_dimension() == 10);
  CHECK(GroupScheme::parse("gl(3)").lie_dimension() == 9);
  CHECK(GroupScheme::parse("sl(3)").lie_dimension() == 8);
  CHECK_THROWS_AS(GroupScheme::parse("sp(3)"), UsageError);
  CHECK_THROWS_AS(GroupScheme::parse("so(3)"), UsageError);
  CHECK(make("sl(2)", "zmod(2^3)").descriptor() == "sl(2)@zmod(2^3)");
}

TEST_CASE("group orders") {
  CHECK(make("sl(2)", "zmod(2^2)").size() == 48);
  CHECK(make("gl(2)", "truncpoly(gf(2),r=2)").size() == 96);
  CHECK(make("sl(2)", "zmod(2^3)").size() == 384);
  CHECK(make("sp(4)", "gf(2)").size() == 720);
  for (const auto& [s, r] : std::vector<std::pair<const char*, const char*>>{
           {"gl(1)", "zmod(5^2)"}, {"gl(2)", "zmod(3^2)"}, {"sl(2)", "witt2(gf(4))"}, {"sl(3)", "gf(2)"},
           {"sl(2)", "truncpoly(gf(3),r=3)"}, {"gl(2)", "truncpoly(gf(4),r=2)"}, {"sp(2)", "zmod(5^2)"},
           {"sp(4)", "gf(3)"}, {"gl(3)", "gf(2)"}}) {
    CAPTURE(s);
    CAPTURE(r);
    const RingPtr ring = parse_ring(r);
    const GroupScheme scheme = GroupScheme::parse(s);
    CHECK(enumerate_points(scheme, ring).size() == expected_group_order(scheme, *ring));
  }
}

TEST_CASE("enumeration agrees with a brute-force scan") {
  for (const auto& [s, r] : std::vector<std::pair<const char*, const char*>>{
           {"gl(2)", "zmod(2^2)"}, {"sl(2)", "zmod(2^3)"}, {"gl(2)", "truncpoly(gf(3),r=2)"},
           {"sl(2)", "witt2(gf(4))"}, {"sp(4)", "gf(2)"}, {"sl(2)", "truncpoly(gf(2),r=3)"}}) {
    CAPTURE(s);
    CAPTURE(r);
    const GroupScheme scheme = GroupScheme::parse(s);
    const RingPtr ring = parse_ring(r);
    const MatrixGroup g = enumerate_points(scheme, ring);
    const auto expected = brute_force_points(scheme, *ring);
    REQUIRE(g.size() == expected.size());
    for (ElementId id = 0; id < g.size(); ++id) REQUIRE(expected.contains(g.key(id)));
    // Ids follow the canonical (lexicographic) order.
    for (ElementId id = 1; id < g.size(); ++id) REQUIRE(g.key(id - 1) < g.key(id));
  }
}

TEST_CASE("closure under products and inverses") {
  for (const auto& [s, r] : std::vector<std::pair<const char*, const char*>>{
           {"sl(2)", "zmod(2^3)"}, {"gl(2)", "zmod(3^2)"}}) {
    const MatrixGroup g = make(s, r);
    CAPTURE(g.descriptor());
    const RingMatrix id = identity_matrix(*g.ring(), 2);
    CHECK(g.element(g.identity()) == id);
    std::size_t failures = 0;
    for (ElementId a = 0; a < g.size(); ++a) {
      failures += mat_mul(*g.ring(), g.element(a), g.element(g.inv(a))) != id;
      for (ElementId b = 0; b < g.size(); ++b)
        failures += !g.find(mat_mul(*g.ring(), g.element(a), g.element(b)));
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("conjugacy class counts") {
  CHECK(make("sl(2)", "truncpoly(gf(2),r=3)").classes().count() == 24);
  CHECK(make("sl(2)", "zmod(2^3)").classes().count() == 30);
  CHECK(make("gl(1)", "zmod(2^2)").classes().count() == 2);
  CHECK(make("sp(4)", "gf(2)").classes().count() == 11);  // Sp4(F2) = S6
  CHECK(make("sl(2)", "gf(3)").classes().count() == 7);
}

TEST_CASE("classes agree with brute-force conjugation") {
  for (const auto& [s, r] : std::vector<std::pair<const char*, const char*>>{
           {"sl(2)", "zmod(2^3)"}, {"sl(2)", "truncpoly(gf(2),r=3)"}, {"gl(2)", "zmod(2^2)"},
           {"sp(4)", "gf(2)"}}) {
    const MatrixGroup g = make(s, r);
    CAPTURE(g.descriptor());
    const auto& cls = g.classes();
    const auto expected = brute_force_classes(g);
    REQUIRE(cls.count() == expected.size());
    std::uint64_t total = 0;
    for (const auto& members : expected) {
      const std::uint32_t c = cls.class_of[*members.begin()];
      for (const ElementId x : members) REQUIRE(cls.class_of[x] == c);
      CHECK(cls.sizes[c] == members.size());
      CHECK(cls.representatives[c] == *members.begin());
      total += members.size();
    }
    CHECK(total == g.size());
    for (std::size_t c = 0; c < cls.count(); ++c) {
      CHECK(cls.sizes[c] * cls.centralizer_orders[c] == g.size());
      CHECK(g.centralizer(cls.representatives[c]).size() == cls.centralizer_orders[c]);
    }
  }
}

TEST_CASE("element centralizers") {
  const MatrixGroup g = make("gl(2)", "zmod(3^2)");
  CHECK(g.centralizer(g.identity()).size() == g.size());
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto x = static_cast<ElementId>(rng() % g.size());
    const auto c = g.centralizer(x);
    CHECK(g.closure(c) == c);
    CHECK(c.size() * g.classes().sizes[g.classes().class_of[x]] == g.size());
  }
}

TEST_CASE("reduction map and congruence kernel") {
  for (const auto& [s, r] : std::vector<std::pair<const char*, const char*>>{
           {"gl(2)", "witt2(gf(4))"}, {"sl(2)", "zmod(3^2)"}, {"sl(2)", "zmod(2^3)"},
           {"gl(2)", "truncpoly(gf(2),r=3)"}, {"sp(2)", "truncpoly(gf(3),r=2)"}}) {
    const MatrixGroup g = make(s, r);
    CAPTURE(g.descriptor());
    const LocalRing& ring = *g.ring();
    const MatrixGroup res = enumerate_points(g.scheme(), residue_ring(ring));
    const auto rho = reduction_map(g, res);
    std::vector<std::uint64_t> fiber(res.size(), 0);
    for (const ElementId x : rho) ++fiber[x];
    const std::uint64_t q = ring.residue_field().order();
    std::uint64_t expected = 1;
    for (std::uint32_t i = 1; i < ring.length(); ++i)
      for (int d = 0; d < g.scheme().lie_dimension(); ++d) expected *= q;
    CHECK(std::all_of(fiber.begin(), fiber.end(), [&](std::uint64_t f) { return f == expected; }));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
      const auto a = static_cast<ElementId>(rng() % g.size()), b = static_cast<ElementId>(rng() % g.size());
      REQUIRE(rho[g.mul(a, b)] == res.mul(rho[a], rho[b]));
    }

    const KernelSubgroup n = kernel_subgroup(g);
    std::uint64_t order = 1;
    for (int d = 0; d < g.scheme().lie_dimension(); ++d) order *= q;
    CHECK(n.size() == order);
    std::vector<ElementId> full_kernel;
    for (ElementId x = 0; x < g.size(); ++x)
      if (rho[x] == res.identity()) full_kernel.push_back(x);
    if (ring.length() == 2) CHECK(full_kernel == n.elements);
    for (const ElementId u : n.elements) {
      CHECK(std::binary_search(full_kernel.begin(), full_kernel.end(), u));
      for (const ElementId v : n.elements) REQUIRE(g.mul(u, v) == g.mul(v, u));
      for (const ElementId h : g.generators()) REQUIRE(n.contains(g.conjugate(h, u)));
      ElementId power = g.identity();
      for (std::uint32_t e = 0; e < ring.residue_field().characteristic(); ++e) power = g.mul(power, u);
      CHECK(power == g.identity());
    }
    // Abelian: class count equals order.
    CHECK(g.subgroup(n.elements).classes().count() == n.size());
  }
}

TEST_CASE("exp and log on the kernel") {
  for (const char* r : {"truncpoly(gf(3),r=2)", "witt2(gf(4))", "zmod(3^2)", "witt2(gf(2))"}) {
    for (const char* s : {"gl(2)", "sl(2)"}) {
      const MatrixGroup g = make(s, r);
      CAPTURE(g.descriptor());
      const GaloisField& k = g.ring()->residue_field();
      const KernelSubgroup n = kernel_subgroup(g);
      const RingMatrix zero = RingMatrix::Zero(2, 2);
      CHECK(exp_map(g, zero) == identity_matrix(*g.ring(), 2));
      std::set<ElementId> image;
      for (std::size_t i = 0; i < n.size(); ++i) {
        const RingMatrix& x = n.lie[i];
        const RingMatrix u = exp_map(g, x);
        image.insert(g.id_of(u));
        CHECK(log_map(g, u) == x);
        const RingMatrix minus = mat_scale(k, k.neg(1), x);
        CHECK(g.mul(g.id_of(u), g.id_of(exp_map(g, minus))) == g.identity());
      }
      CHECK(std::vector<ElementId>(image.begin(), image.end()) == n.elements);
      std::mt19937_64 rng(11);
      for (int i = 0; i < 300; ++i) {
        const RingMatrix& x = n.lie[rng() % n.size()];
        const RingMatrix& y = n.lie[rng() % n.size()];
        REQUIRE(g.id_of(exp_map(g, mat_add(k, x, y))) == g.mul(g.id_of(exp_map(g, x)), g.id_of(exp_map(g, y))));
      }
    }
  }
  const MatrixGroup sl = make("sl(2)", "truncpoly(gf(3),r=2)");
  RingMatrix not_traceless = RingMatrix::Zero(2, 2);
  not_traceless(0, 0) = 1;
  CHECK_THROWS_AS(exp_map(sl, not_traceless), UsageError);
}

TEST_CASE("twisted conjugation law") {
  CHECK(twist_exponent(*parse_ring("truncpoly(gf(4),r=2)")) == 0);
  CHECK(twist_exponent(*parse_ring("witt2(gf(4))")) == 1);
  CHECK(twist_exponent(*parse_ring("zmod(3^2)")) == 1);
  for (const auto& [s, r] : std::vector<std::pair<const char*, const char*>>{
           {"gl(2)", "truncpoly(gf(4),r=2)"}, {"gl(2)", "witt2(gf(4))"}, {"sl(2)", "witt2(gf(4))"},
           {"gl(2)", "zmod(3^2)"}, {"sl(2)", "truncpoly(gf(4),r=2)"}}) {
    const MatrixGroup g = make(s, r);
    CAPTURE(g.descriptor());
    const LocalRing& ring = *g.ring();
    const GaloisField& k = ring.residue_field();
    const int i = twist_exponent(ring);
    const KernelSubgroup n = kernel_subgroup(g);
    std::mt19937_64 rng(1000);
    std::size_t failures = 0, untwisted_failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const auto x = static_cast<ElementId>(rng() % g.size());
      const RingMatrix& lie = n.lie[rng() % n.size()];
      const ElementId lhs = g.conjugate(x, g.id_of(exp_map(g, lie)));
      RingMatrix h = reduce_matrix(ring, g.element(x));
      const RingMatrix plain = mat_mul(k, mat_mul(k, h, lie), mat_inverse(k, h));
      for (int e = 0; e < i; ++e) h = sigma(k, h);
      const RingMatrix twisted = mat_mul(k, mat_mul(k, h, lie), mat_inverse(k, h));
      failures += lhs != g.id_of(exp_map(g, twisted));
      untwisted_failures += lhs != g.id_of(exp_map(g, plain));
    }
    CHECK(failures == 0);
    // Over a non-prime residue field the Frobenius twist is visible.
    if (i == 1 && k.degree() > 1) CHECK(untwisted_failures > 0);
  }
}

TEST_CASE("bound refusal") {
  EnumerationBounds bounds;
  bounds.max_order = 1000;
  try {
    enumerate_points(GroupScheme::parse("gl(2)"), parse_ring("zmod(3^2)"), bounds);
    FAIL("expected refusal");
  } catch (const BoundExceeded& e) {
    CHECK(e.required() == 3888);
    CHECK(e.bound() == 1000);
  }
}
