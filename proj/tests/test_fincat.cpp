//
// gcat - exact computation with finite categories and group actions
//

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <variant>

#include "gcat/actions.hpp"
#include "gcat/corpus.hpp"
#include "gcat/fincat.hpp"
#include "gcat/monoid.hpp"

using namespace gcat;

namespace {

  bool leq(FinCat const& p, ObjId x, ObjId y) {
    return !p.hom(x, y).empty();
  }

  // Brute-force monotone maps between posets, by object tables.
  std::vector<std::vector<ObjId>> monotone_maps(FinCat const& p, FinCat const& q) {
    std::vector<std::vector<ObjId>> out;
    std::size_t n = p.num_objects();
    std::vector<ObjId> f(n, 0);
    while (true) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) {
        for (std::size_t y = 0; y < n && ok; ++y) {
          if (leq(p, x, y) && !leq(q, f[x], f[y])) {
            ok = false;
          }
        }
      }
      if (ok) {
        out.push_back(f);
      }
      std::size_t k = 0;
      while (k < n && ++f[k] == static_cast<ObjId>(q.num_objects())) {
        f[k++] = 0;
      }
      if (k == n) {
        break;
      }
    }
    return out;
  }

  // Three composable arrows with the two bracketings sent to different
  // parallel morphisms.
  FinCat::Builder broken_chain() {
    FinCat::Builder b;
    for (auto n : {"0", "1", "2", "3"}) {
      b.add_object(n);
    }
    for (int x = 0; x < 4; ++x) {
      b.add_identity(x, "id" + std::to_string(x));
    }
    MorId h  = b.add_morphism("h", 0, 1);
    MorId f  = b.add_morphism("f", 1, 2);
    MorId g  = b.add_morphism("g", 2, 3);
    MorId fh = b.add_morphism("fh", 0, 2);
    MorId gf = b.add_morphism("gf", 1, 3);
    MorId u  = b.add_morphism("u", 0, 3);
    MorId v  = b.add_morphism("v", 0, 3);
    b.set_compose(f, h, fh);
    b.set_compose(g, f, gf);
    b.set_compose(g, fh, u);
    b.set_compose(gf, h, v);
    return b;
  }

}  // namespace

TEST_CASE("terminal and arrow categories", "[fincat]") {
  auto one = terminal_category();
  REQUIRE(one->num_objects() == 1);
  REQUIRE(one->num_morphisms() == 1);
  auto a = ordinal(1);
  REQUIRE(a->num_objects() == 2);
  REQUIRE(a->num_morphisms() == 3);
  REQUIRE(a->is_poset());
  check_category_axioms(*a);
}

TEST_CASE("associativity violations are named", "[fincat]") {
  auto b = broken_chain();
  try {
    (void) std::move(b).build();
    FAIL("expected an associativity violation");
  } catch (Error const& e) {
    REQUIRE(e.kind() == ErrorKind::associativity_violation);
    std::string msg = e.what();
    CHECK(msg.find('g') != std::string::npos);
    CHECK(msg.find('h') != std::string::npos);
  }
}

TEST_CASE("raw documents are validated and sorted", "[fincat]") {
  RawCategory raw;
  raw.objects   = {"b", "a"};
  raw.morphisms = {{"ib", "b", "b"}, {"ia", "a", "a"}, {"f", "a", "b"}};
  raw.identity  = {{"a", "ia"}, {"b", "ib"}};
  raw.compose   = {{"ia", "ia", "ia"}, {"ib", "ib", "ib"}, {"f", "ia", "f"}, {"ib", "f", "f"}};
  auto c = FinCat::validate(raw);
  REQUIRE(c.object_name(0) == "a");
  REQUIRE(c.morphism_name(0) == "f");
  raw.compose.pop_back();
  raw.compose.push_back({"ib", "f", "ia"});
  REQUIRE_THROWS_AS(FinCat::validate(raw), Error);
  raw.compose.back() = {"ib", "f", "ghost"};
  try {
    (void) FinCat::validate(raw);
    FAIL("expected a dangling reference");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::dangling_reference);
  }
}

TEST_CASE("size caps are reported", "[fincat]") {
  Limits tight = Limits::sized(3, 100);
  try {
    (void) product_category(ordinal(1), ordinal(1), tight);
    FAIL("expected a size cap");
  } catch (Error const& e) {
    CHECK(e.kind() == ErrorKind::size_cap_exceeded);
  }
}

TEST_CASE("products", "[fincat]") {
  auto sq = product_category(ordinal(1), ordinal(1));
  REQUIRE(sq->num_objects() == 4);
  REQUIRE(sq->num_morphisms() == 9);
  check_category_axioms(*sq);

  auto p = product_category(terminal_category(), ordinal(2));
  REQUIRE(find_isomorphism(p, ordinal(2)).has_value());

  auto e4 = product_category(chaotic_category({"a", "b"}), chaotic_category({"c", "d"}));
  REQUIRE(find_isomorphism(e4, chaotic_category({"0", "1", "2", "3"})).has_value());
}

TEST_CASE("functor categories", "[fincat]") {
  auto c   = ordinal(2);
  auto fc  = functor_category(terminal_category(), c);
  REQUIRE(find_isomorphism(fc.category, c).has_value());

  auto tc = functor_category(chaotic_category({"0", "1"}), terminal_category());
  REQUIRE(tc.category->num_objects() == 1);
  REQUIRE(tc.category->num_morphisms() == 1);

  // Z/2 is abelian, so intertwiners between distinct endomorphisms vanish
  // and each endomorphism has both elements as automorphisms.
  auto bz2 = delooping(*cyclic_group(2));
  auto fb  = functor_category(bz2, bz2);
  REQUIRE(fb.category->num_objects() == 2);
  for (ObjId x = 0; x < 2; ++x) {
    for (ObjId y = 0; y < 2; ++y) {
      std::size_t expect = 0;
      for (MorId g = 0; g < 2; ++g) {
        bool ok = true;
        for (MorId m = 0; m < 2; ++m) {
          auto const& f1 = fb.functors[x];
          auto const& f2 = fb.functors[y];
          ok = ok && bz2->compose(g, f1.mor(m)) == bz2->compose(f2.mor(m), g);
        }
        expect += ok;
      }
      CHECK(fb.category->hom(x, y).size() == expect);
    }
  }
}

TEST_CASE("functor categories between posets match pointwise order",
          "[fincat][property]") {
  Rng rng(101);
  for (int round = 0; round < 25; ++round) {
    auto p  = random_poset(rng, 1 + static_cast<int>(rng() % 3), 0.5, "p");
    auto q  = random_poset(rng, 1 + static_cast<int>(rng() % 4), 0.5, "q");
    auto fc = functor_category(p, q);
    auto maps = monotone_maps(*p, *q);
    REQUIRE(fc.category->num_objects() == maps.size());
    std::size_t arrows = 0;
    for (auto const& f : maps) {
      for (auto const& g : maps) {
        bool below = true;
        for (std::size_t x = 0; x < f.size(); ++x) {
          below = below && leq(*q, f[x], g[x]);
        }
        arrows += below;
      }
    }
    REQUIRE(fc.category->num_morphisms() == arrows);
    check_category_axioms(*fc.category);
  }
}

TEST_CASE("exponential law", "[fincat][property]") {
  auto bz2 = delooping(*cyclic_group(2));
  std::vector<std::array<CatPtr, 3>> cases = {
      {ordinal(1), ordinal(1), ordinal(1)},
      {ordinal(1), bz2, bz2},
      {chaotic_category({"a", "b"}), ordinal(1), ordinal(1)},
  };
  Rng rng(5);
  for (int k = 0; k < 6; ++k) {
    cases.push_back({random_poset(rng, 2, 0.5, "s"), random_poset(rng, 2, 0.5, "t"),
                     random_poset(rng, 2, 0.6, "c")});
  }
  for (auto const& [s, t, c] : cases) {
    auto lhs   = functor_category(product_category(s, t), c);
    auto inner = functor_category(t, c);
    auto rhs   = functor_category(s, inner.category);
    REQUIRE(find_isomorphism(lhs.category, rhs.category).has_value());
  }
}

TEST_CASE("equivalence search examples", "[fincat]") {
  auto one = terminal_category();
  auto e   = chaotic_category({"a", "b"});
  auto id  = identity_functor(ordinal(2));
  auto w   = find_equivalence(id);
  REQUIRE(w.has_value());
  REQUIRE(is_valid_equivalence(*w));
  REQUIRE(w->inverse == id);

  auto collapse = make_functor(e, one, {0, 0}, {0, 0, 0, 0});
  auto w2       = find_equivalence(collapse);
  REQUIRE(w2.has_value());
  REQUIRE(is_valid_equivalence(*w2));

  auto a  = ordinal(1);
  auto to = make_functor(a, one, {0, 0}, {0, 0, 0});
  REQUIRE_FALSE(find_equivalence(to).has_value());
}

TEST_CASE("equivalence search agrees with the exhaustive predicate",
          "[fincat][property]") {
  Rng rng(77);
  int found = 0;
  for (int round = 0; round < 60; ++round) {
    auto p = random_poset(rng, 1 + static_cast<int>(rng() % 4), 0.5, "p");
    auto q = random_poset(rng, 1 + static_cast<int>(rng() % 3), 0.5, "q");
    auto f = random_monotone(rng, p, q);
    // For posets, isomorphic objects are equal: equivalences are the
    // surjective order embeddings.
    bool full = true;
    for (ObjId x = 0; x < static_cast<ObjId>(p->num_objects()); ++x) {
      for (ObjId y = 0; y < static_cast<ObjId>(p->num_objects()); ++y) {
        full = full && leq(*p, x, y) == leq(*q, f.obj(x), f.obj(y));
      }
    }
    std::vector<char> hit(q->num_objects(), 0);
    for (ObjId x = 0; x < static_cast<ObjId>(p->num_objects()); ++x) {
      hit[f.obj(x)] = 1;
    }
    bool surj = std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
    auto w    = find_equivalence(f);
    REQUIRE(w.has_value() == (full && surj));
    if (w) {
      ++found;
      REQUIRE(is_valid_equivalence(*w));
    }
  }
  CHECK(found > 0);
}

TEST_CASE("isomorphism search finds relabelled posets", "[fincat][property]") {
  Rng rng(31);
  for (int round = 0; round < 20; ++round) {
    int  n = 2 + static_cast<int>(rng() % 4);
    auto p = random_poset(rng, n, 0.5, "p");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::string> names;
    for (int k = 0; k < n; ++k) {
      names.push_back("r" + std::to_string(k));
    }
    // r_k stands for p_{perm[k]}
    auto q = poset_category(names, [&](int a, int b) { return leq(*p, perm[a], perm[b]); });
    auto iso = find_isomorphism(p, q);
    REQUIRE(iso.has_value());
    REQUIRE(is_isomorphism(*iso));
    if (p->num_morphisms() != ordinal(n - 1)->num_morphisms()) {
      REQUIRE_FALSE(find_isomorphism(p, ordinal(n - 1)).has_value());
    }
  }
}

TEST_CASE("presented pushout examples", "[fincat]") {
  auto one = terminal_category();
  auto a   = ordinal(1);
  auto i   = make_functor(one, a, {0}, {a->identity(0)});
  auto c   = make_functor(one, a, {1}, {a->identity(1)});
  auto r   = presented_pushout(i, c);
  REQUIRE(std::holds_alternative<PresentedPushout>(r));
  auto const& p = std::get<PresentedPushout>(r);
  REQUIRE(p.category->num_objects() == 3);
  REQUIRE(p.category->num_morphisms() == 6);
  REQUIRE(find_isomorphism(p.category, ordinal(2)).has_value());
  REQUIRE(compose(p.from_c, c) == compose(p.from_b, i));

  auto same = presented_pushout(identity_functor(one), identity_functor(one));
  REQUIRE(std::holds_alternative<PresentedPushout>(same));
  REQUIRE(std::get<PresentedPushout>(same).category->num_objects() == 1);

  // Gluing both ends of [1] to one point makes a free loop.
  auto two  = discrete_category({"a", "b"});
  auto ends = make_functor(two, a, {0, 1}, {a->identity(0), a->identity(1)});
  auto pt   = make_functor(two, one, {0, 0}, {0, 0});
  auto loop = presented_pushout(ends, pt, 2);
  REQUIRE(std::holds_alternative<Inconclusive>(loop));
}

TEST_CASE("presented pushouts are cocones", "[fincat][property]") {
  auto spans = dwyer_spans(4242, 15, 8);
  int  closed = 0;
  for (auto const& s : spans) {
    auto r = presented_pushout(s.i, s.c);
    if (auto const* p = std::get_if<PresentedPushout>(&r)) {
      ++closed;
      REQUIRE(compose(p->from_c, s.c) == compose(p->from_b, s.i));
      check_category_axioms(*p->category);
      // Every morphism of D is a composite of images of B and C.
      auto const& d = *p->category;
      std::vector<char> reach(d.num_morphisms(), 0);
      for (auto const* leg : {&p->from_b, &p->from_c}) {
        for (MorId m : leg->morphisms) {
          reach[m] = 1;
        }
      }
      for (bool grew = true; grew;) {
        grew = false;
        for (MorId f = 0; f < static_cast<MorId>(d.num_morphisms()); ++f) {
          for (MorId g = 0; g < static_cast<MorId>(d.num_morphisms()); ++g) {
            if (reach[f] && reach[g]) {
              MorId gf = d.compose(g, f);
              if (gf != kNone && !reach[gf]) {
                reach[gf] = 1;
                grew      = true;
              }
            }
          }
        }
      }
      REQUIRE(std::all_of(reach.begin(), reach.end(), [](char c) { return c; }));
    }
  }
  CHECK(closed == static_cast<int>(spans.size()));
}

TEST_CASE("subcategories", "[fincat]") {
  auto a = ordinal(2);
  auto s = full_subcategory(a, {0, 2});
  REQUIRE(s.category->num_objects() == 2);
  REQUIRE(s.category->num_morphisms() == 3);
  REQUIRE(is_fully_faithful(s.inclusion));
  auto arrow = a->hom(0, 2)[0];
  REQUIRE_THROWS_AS(subcategory(a, {0, 2}, {arrow}), Error);
}
