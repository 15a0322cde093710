//
// gcat - exact computation with finite categories and group actions
//

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "gcat/actions.hpp"
#include "gcat/corpus.hpp"
#include "gcat/fincat.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"
#include "gcat/weq.hpp"

using namespace gcat;

namespace {

  // {1, a} with a·a = a.
  FinMonoid idempotent() {
    return FinMonoid::make({"1", "a"}, {0, 1, 1, 1}, 0);
  }

  // {1, g, 0} with g² = 1 and 0 absorbing.
  FinMonoid with_zero() {
    return FinMonoid::make({"1", "g", "0"}, {0, 1, 2, 1, 0, 2, 2, 2, 2}, 0);
  }

  int divisors(int n) {
    int k = 0;
    for (int d = 1; d <= n; ++d) {
      k += n % d == 0;
    }
    return k;
  }

}  // namespace

TEST_CASE("monoid tables are checked", "[monoid]") {
  REQUIRE_THROWS_AS(FinMonoid::make({"1", "a"}, {0, 1, 1, 0}, 1), Error);
  // a·(a·b) != (a·a)·b
  REQUIRE_THROWS_AS(FinMonoid::make({"1", "a", "b"}, {0, 1, 2, 1, 2, 0, 2, 2, 2}, 0),
                    Error);
  REQUIRE(cyclic_group(5)->is_group());
  REQUIRE_FALSE(idempotent().is_group());
}

TEST_CASE("units and good subgroups", "[monoid]") {
  auto g = symmetric_group(3);
  std::vector<int> all(g->size());
  std::iota(all.begin(), all.end(), 0);
  REQUIRE(units_group(*g) == all);
  REQUIRE(units_group(idempotent()) == Subgroup{0});
  REQUIRE(units_group(with_zero()) == Subgroup{0, 1});

  REQUIRE_FALSE(is_good_subgroup(with_zero(), {0, 1}));
  REQUIRE(is_good_subgroup(with_zero(), {0}));
  REQUIRE(is_good_subgroup(idempotent(), {0}));
}

TEST_CASE("every subgroup of a group is good", "[monoid][property]") {
  std::vector<MonoidPtr> groups = {trivial_group(), cyclic_group(2), cyclic_group(4),
                                   cyclic_group(6), symmetric_group(3)};
  for (auto const& g : groups) {
    for (auto const& h : all_subgroups(*g)) {
      REQUIRE(is_subgroup(*g, h));
      REQUIRE(is_good_subgroup(*g, h));
    }
  }
}

TEST_CASE("subgroup counts", "[monoid]") {
  for (int n = 1; n <= 8; ++n) {
    REQUIRE(static_cast<int>(all_subgroups(*cyclic_group(n)).size()) == divisors(n));
  }
  REQUIRE(all_subgroups(*symmetric_group(3)).size() == 6);
  auto s3 = symmetric_group(3);
  for (auto const& h : all_subgroups(*s3)) {
    for (int g = 0; g < static_cast<int>(s3->size()); ++g) {
      auto c = conjugate(*s3, h, g);
      REQUIRE(c.size() == h.size());
      REQUIRE(is_subgroup(*s3, c));
    }
  }
}

TEST_CASE("homomorphism counts", "[monoid]") {
  for (int n = 1; n <= 6; ++n) {
    for (int m = 1; m <= 6; ++m) {
      auto homs = all_homomorphisms(*cyclic_group(n), *cyclic_group(m));
      REQUIRE(static_cast<int>(homs.size()) == std::gcd(n, m));
      for (auto const& phi : homs) {
        check_homomorphism(*cyclic_group(n), *cyclic_group(m), phi);
      }
    }
  }
  auto s3 = symmetric_group(3);
  // identity, three transpositions
  REQUIRE(all_homomorphisms(*cyclic_group(2), *s3).size() == 4);
  // trivial, two generators of A3
  REQUIRE(all_homomorphisms(*cyclic_group(3), *s3).size() == 3);
  // trivial, sign
  REQUIRE(all_homomorphisms(*s3, *cyclic_group(2)).size() == 2);
}

TEST_CASE("graph subgroups", "[monoid]") {
  auto z2 = cyclic_group(2);
  auto z4 = cyclic_group(4);
  auto gr = graph_subgroup(z2, {0, 2}, z4);
  REQUIRE(gr.elements == Subgroup{0, 6});
  auto diag = graph_subgroup(z2, {0, 1}, z2);
  REQUIRE(diag.elements == Subgroup{0, 3});
  auto triv = graph_subgroup(z2, {0, 0}, z4);
  REQUIRE(triv.elements == Subgroup{0, 4});
  REQUIRE_THROWS_AS(graph_subgroup(z2, {0, 1}, z4), Error);
}

TEST_CASE("fixed categories", "[actions]") {
  auto z2 = cyclic_group(2);
  auto tr = chaotic_left_translation(z2);
  auto f  = fixed_category(tr, {0, 1});
  REQUIRE(f.category->num_objects() == 0);

  auto e    = chaotic_category({"a", "b", "c"});
  auto swap = chaotic_action(z2, e, {{0, 1, 2}, {1, 0, 2}});
  auto fs   = fixed_category(swap, {0, 1});
  REQUIRE(fs.category->num_objects() == 1);
  REQUIRE(fs.category->num_morphisms() == 1);
  REQUIRE(e->object_name(fs.inclusion.obj(0)) == "c");

  auto triv = trivial_action(z2, ordinal(2));
  REQUIRE(fixed_category(triv, {0, 1}).category->num_morphisms() == 6);
}

TEST_CASE("chaotic categories and deloopings", "[actions]") {
  auto e = chaotic_category({"a", "b"});
  REQUIRE(e->num_morphisms() == 4);
  for (MorId f = 0; f < 4; ++f) {
    REQUIRE(e->inverse(f) != kNone);
  }
  REQUIRE(chaotic_category({"x"})->num_morphisms() == 1);

  auto b = delooping(*cyclic_group(2));
  REQUIRE(b->num_objects() == 1);
  REQUIRE(b->num_morphisms() == 2);
  REQUIRE(b->inverse(0) != kNone);
  REQUIRE(b->inverse(1) != kNone);
  REQUIRE(delooping(*trivial_group())->num_morphisms() == 1);

  // Right translation of E(G) is free.
  auto g  = symmetric_group(3);
  auto eg = chaotic_left_translation(g);
  auto rt = chaotic_right_translations(g, eg.carrier);
  for (int h = 0; h < static_cast<int>(g->size()); ++h) {
    if (h == g->unit()) {
      continue;
    }
    for (ObjId x = 0; x < static_cast<ObjId>(eg.carrier->num_objects()); ++x) {
      REQUIRE(rt[h].obj(x) != x);
    }
  }
}

TEST_CASE("fixed points commute with products", "[actions][property]") {
  auto cats     = g_categories(17, 8);
  int  compared = 0;
  for (std::size_t a = 0; a < cats.size(); ++a) {
    for (std::size_t b = a; b < cats.size(); ++b) {
      auto const& s = cats[a].action;
      auto const& c = cats[b].action;
      if (s.monoid->names() != c.monoid->names()) {
        continue;
      }
      if (s.carrier->num_morphisms() * c.carrier->num_morphisms() > 2000) {
        continue;
      }
      auto prod = product_category(s.carrier, c.carrier, Limits::sized(4096, 1 << 16));
      auto pa   = product_action(s, c, prod);
      for (auto const& h : all_subgroups(*s.monoid)) {
        auto lhs = fixed_category(pa, h).category;
        auto rhs = product_category(fixed_category(s, h).category,
                                    fixed_category(c, h).category,
                                    Limits::sized(4096, 1 << 16));
        REQUIRE(lhs->num_objects() == rhs->num_objects());
        REQUIRE(lhs->num_morphisms() == rhs->num_morphisms());
        REQUIRE(find_isomorphism(lhs, rhs, Limits::sized(4096, 1 << 16)).has_value());
        ++compared;
      }
    }
  }
  CHECK(compared >= 10);
}

TEST_CASE("equivariant retraction", "[actions][property]") {
  std::mt19937_64 rng(2024);
  std::vector<MonoidPtr> groups = {cyclic_group(2), cyclic_group(3), symmetric_group(3)};
  for (auto const& h : groups) {
    int order = static_cast<int>(h->size());
    for (int copies = 1; copies <= 3; ++copies) {
      // copies of H, relabelled at random
      int n = copies * order;
      std::vector<int> label(n);
      std::iota(label.begin(), label.end(), 0);
      std::shuffle(label.begin(), label.end(), rng);
      std::vector<std::vector<int>> right(n, std::vector<int>(order));
      for (int c = 0; c < copies; ++c) {
        for (int x = 0; x < order; ++x) {
          for (int k = 0; k < order; ++k) {
            right[label[c * order + x]][k] = label[c * order + h->mul(x, k)];
          }
        }
      }
      auto r = equivariant_retraction(*h, right);
      for (int s = 0; s < n; ++s) {
        for (int k = 0; k < order; ++k) {
          REQUIRE(r[right[s][k]] == h->mul(r[s], k));
        }
      }
      // least member of each orbit goes to the unit
      for (int c = 0; c < copies; ++c) {
        int least = n;
        for (int x = 0; x < order; ++x) {
          least = std::min(least, label[c * order + x]);
        }
        REQUIRE(r[least] == h->unit());
      }
    }
  }
  auto z2 = cyclic_group(2);
  REQUIRE(equivariant_retraction(*z2, {{0, 1}, {1, 0}}) == std::vector<int>{0, 1});
  try {
    (void) equivariant_retraction(*z2, {{0, 0}});
    FAIL("expected a freeness violation");
  } catch (Error const& e) {
    REQUIRE(e.kind() == ErrorKind::action_not_free);
  }
}

TEST_CASE("free quotients divide counts", "[actions][property]") {
  for (auto const& g : {cyclic_group(2), cyclic_group(3), symmetric_group(3)}) {
    auto eg = chaotic_left_translation(g);
    auto q  = quotient_by_free_action(eg);
    REQUIRE(q.category->num_objects() == 1);
    REQUIRE(q.category->num_morphisms() == g->size());
    // E(G)/G ≅ BG
    REQUIRE(find_isomorphism(q.category, delooping(*g)).has_value());

    auto p    = ordinal(2);
    auto prod = product_category(eg.carrier, p);
    auto pa   = product_action(eg, trivial_action(g, p), prod);
    auto qp   = quotient_by_free_action(pa);
    REQUIRE(qp.category->num_objects() * g->size() == prod->num_objects());
    REQUIRE(qp.category->num_morphisms() * g->size() == prod->num_morphisms());
    // fibres of the projection are exactly the orbits
    for (ObjId x = 0; x < static_cast<ObjId>(prod->num_objects()); ++x) {
      for (int k = 0; k < static_cast<int>(g->size()); ++k) {
        REQUIRE(qp.projection.obj(pa.act[k].obj(x)) == qp.projection.obj(x));
      }
    }
    std::vector<int> fibre(qp.category->num_objects(), 0);
    for (ObjId x = 0; x < static_cast<ObjId>(prod->num_objects()); ++x) {
      ++fibre[qp.projection.obj(x)];
    }
    for (int f : fibre) {
      REQUIRE(f == static_cast<int>(g->size()));
    }
  }
  auto bad = trivial_action(cyclic_group(2), ordinal(1));
  REQUIRE_THROWS_AS(quotient_by_free_action(bad), Error);
}

TEST_CASE("nerves of chaotic categories", "[actions][sset]") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::string> names;
    for (int k = 0; k < n; ++k) {
      names.push_back("x" + std::to_string(k));
    }
    auto x = nerve(chaotic_category(names), 3);
    std::size_t p = 1;
    for (int d = 0; d <= 3; ++d) {
      p *= n;
      REQUIRE(x->total_count(d) == p);
    }
  }
}

TEST_CASE("cell quotients", "[actions]") {
  auto z2 = cyclic_group(2);
  auto one = trivial_group();
  auto a  = chaotic_cell(z2, {0, 1}, {0, 0}, one);
  REQUIRE(a.quotient.category->num_objects() == 1);
  auto b  = chaotic_cell(z2, {0, 1}, {0, 1}, z2);
  REQUIRE(b.quotient.category->num_objects() == 2);
  auto z4 = cyclic_group(4);
  auto c  = chaotic_cell(z2, {0, 1}, {0, 2}, z4);
  REQUIRE(c.quotient.category->num_objects() == 4);
  check_action(c.action);
  check_avatar(cell_avatar(c));
}

TEST_CASE("equivariant equivalences", "[actions]") {
  auto z2   = cyclic_group(2);
  auto e    = chaotic_category({"a", "b"});
  auto swap = chaotic_action(z2, e, {{0, 1}, {1, 0}});
  auto one  = trivial_action(z2, terminal_category());
  auto f    = make_functor(e, one.carrier, {0, 0}, {0, 0, 0, 0});
  // A fixed point would be needed for an equivariant quasi-inverse.
  REQUIRE(find_equivalence(f).has_value());
  REQUIRE_FALSE(find_equivariant_equivalence(f, swap, one).has_value());

  auto tr = chaotic_left_translation(z2);
  auto id = identity_functor(tr.carrier);
  auto w  = find_equivariant_equivalence(id, tr, tr);
  REQUIRE(w.has_value());
  REQUIRE(is_equivariant_equivalence(*w, tr, tr));
}

TEST_CASE("actions are checked", "[actions]") {
  auto z2 = cyclic_group(2);
  auto a  = ordinal(1);
  auto id = identity_functor(a);
  REQUIRE_NOTHROW(make_action(z2, a, {id, id}));
  auto e = chaotic_category({"a", "b"});
  auto sw = make_functor(e, e, {1, 0}, {3, 2, 1, 0});
  REQUIRE_THROWS_AS(make_action(cyclic_group(3), e, {identity_functor(e), sw, sw}), Error);
}
