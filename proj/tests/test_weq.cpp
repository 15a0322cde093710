//
// gcat - exact computation with finite categories and group actions
//

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gcat/actions.hpp"
#include "gcat/corpus.hpp"
#include "gcat/dwyer.hpp"
#include "gcat/fincat.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"
#include "gcat/weq.hpp"

using namespace gcat;

namespace {

  Limits roomy() {
    return Limits::sized(4096, 1 << 18);
  }

  Functor collapse(CatPtr const& c) {
    auto one = terminal_category();
    return make_functor(c, one, std::vector<ObjId>(c->num_objects(), 0),
                        std::vector<MorId>(c->num_morphisms(), 0));
  }

  // S3 permuting E{0, 1, 2}; elements are named by their images.
  CatAction s3_on_three() {
    auto g = symmetric_group(3);
    auto e = chaotic_category({"0", "1", "2"});
    std::vector<std::vector<int>> perm;
    for (std::size_t m = 0; m < g->size(); ++m) {
      std::vector<int> p;
      for (int x = 0; x < 3; ++x) {
        p.push_back(g->name(m)[x] - '0');
      }
      perm.push_back(p);
    }
    return chaotic_action(g, e, perm);
  }

  CatAction swap_on_two() {
    auto e = chaotic_category({"a", "b"});
    return chaotic_action(cyclic_group(2), e, {{0, 1}, {1, 0}});
  }

}  // namespace

TEST_CASE("homology certificates", "[weq]") {
  auto e = chaotic_category({"a", "b"});
  auto c = homology_certificate(collapse(e), 3);
  REQUIRE(c.passed);
  REQUIRE(c.kind == CertKind::necessary);
  REQUIRE(c.pi0_bijective);

  auto id = homology_certificate(identity_functor(ordinal(2)), 3);
  REQUIRE(id.passed);

  auto bd = complex_sset(boundary_complex(2), 3);
  auto d2 = complex_sset(simplex_complex(2), 3);
  auto f  = homology_certificate(complex_inclusion(bd, d2));
  REQUIRE_FALSE(f.passed);
  REQUIRE(f.failed_degree == 1);
}

TEST_CASE("sufficient certificates", "[weq]") {
  auto id = equivalence_certificate(identity_functor(ordinal(2)));
  REQUIRE(id.has_value());
  REQUIRE(id->passed);
  REQUIRE(id->kind == CertKind::isomorphism);

  auto a = ordinal(1);
  REQUIRE_FALSE(equivalence_certificate(collapse(a)).has_value());
  // contractible, so the necessary conditions still hold
  auto nec = homology_certificate(collapse(a), 3);
  REQUIRE(nec.passed);
  REQUIRE(nec.kind == CertKind::necessary);

  auto e = equivalence_certificate(collapse(chaotic_category({"a", "b"})));
  REQUIRE(e.has_value());
  REQUIRE(e->kind == CertKind::equivalence);
  REQUIRE(is_valid_equivalence(*e->witness));
}

TEST_CASE("sufficient certificates imply the necessary conditions",
          "[weq][property]") {
  Rng rng(404);
  int sufficient = 0;
  for (int round = 0; round < 40; ++round) {
    auto p = random_poset(rng, 1 + static_cast<int>(rng() % 4), 0.5, "p");
    auto q = random_poset(rng, 1 + static_cast<int>(rng() % 3), 0.5, "q");
    auto f = random_monotone(rng, p, q);
    auto s = equivalence_certificate(f);
    if (s) {
      ++sufficient;
      REQUIRE(homology_certificate(f, 3).passed);
    }
  }
  auto e3 = chaotic_category({"a", "b", "c"});
  auto e2 = chaotic_category({"x", "y"});
  auto f  = make_functor(e3, e2, {0, 1, 1}, [&] {
    std::vector<MorId> m(e3->num_morphisms());
    for (MorId k = 0; k < static_cast<MorId>(m.size()); ++k) {
      ObjId s = e3->source(k) == 0 ? 0 : 1, t = e3->target(k) == 0 ? 0 : 1;
      m[k]    = e2->hom(s, t)[0];
    }
    return m;
  }());
  REQUIRE(equivalence_certificate(f).has_value());
  REQUIRE(homology_certificate(f, 3).passed);
  CHECK(sufficient > 0);
}

TEST_CASE("fixed-point families", "[weq]") {
  auto sw  = swap_on_two();
  auto one = trivial_action(cyclic_group(2), terminal_category());
  auto f   = collapse(sw.carrier);

  auto t1 = f_weak_equivalence(f, sw, one, {{0}}, 3);
  REQUIRE(t1.passed);
  REQUIRE(t1.rows.size() == 1);

  auto t2 = f_weak_equivalence(f, sw, one, {{0}, {0, 1}}, 3);
  REQUIRE_FALSE(t2.passed);
  REQUIRE(t2.rows[0].cert.passed);
  REQUIRE_FALSE(t2.rows[1].cert.passed);

  // the subdivision comparison of an induced cell
  auto g = cyclic_group(2);
  for (auto const& h : all_subgroups(*g)) {
    auto cell = induced_cell_sd(g, h, simplex_complex(1), 3);
    auto tab  = f_weak_equivalence(cell.comparison, cell.sd_cell.action, cell.cell.action,
                                   all_subgroups(*g));
    REQUIRE(tab.passed);
  }
}

TEST_CASE("homotopy fixed points", "[weq]") {
  auto p  = ordinal(2);
  auto z2 = cyclic_group(2);
  auto hp = homotopy_fixed_points(trivial_action(z2, p), z2, {0, 1});
  REQUIRE(find_isomorphism(hp.fixed.category, p).has_value());

  auto tr = chaotic_left_translation(z2);
  auto he = homotopy_fixed_points(tr, z2, {0, 1});
  auto const& c = *he.fixed.category;
  REQUIRE(c.num_objects() == 2);
  for (ObjId x = 0; x < 2; ++x) {
    for (ObjId y = 0; y < 2; ++y) {
      REQUIRE(c.hom(x, y).size() == 1);
    }
  }

  auto pt = homotopy_fixed_points(trivial_action(z2, terminal_category()), z2, {0, 0});
  REQUIRE(pt.fixed.category->num_objects() == 1);
  REQUIRE(pt.fixed.category->num_morphisms() == 1);

  // the swap has no fixed points but has homotopy fixed points
  auto hs = homotopy_fixed_points(swap_on_two(), z2, {0, 1});
  REQUIRE(hs.fixed.category->num_objects() == 2);
}

TEST_CASE("homotopy fixed points of posets are the posets", "[weq][property]") {
  auto posets_ = posets(61, 10, 4);
  auto g       = cyclic_group(3);
  for (auto const& p : posets_) {
    for (auto const& phi : all_homomorphisms(*cyclic_group(3), *g)) {
      auto hp = homotopy_fixed_points(trivial_action(g, p), cyclic_group(3), phi, roomy());
      REQUIRE(find_isomorphism(hp.fixed.category, p).has_value());
    }
  }
}

TEST_CASE("homotopy fixed points preserve products", "[weq][property]") {
  auto z2 = cyclic_group(2);
  std::vector<CatAction> cats = {chaotic_left_translation(z2), swap_on_two(),
                                 trivial_action(z2, ordinal(1)),
                                 trivial_action(z2, chaotic_category({"u", "v"}))};
  for (auto const& phi : all_homomorphisms(*z2, *z2)) {
    for (std::size_t a = 0; a < cats.size(); ++a) {
      for (std::size_t b = a; b < cats.size(); ++b) {
        auto prod = product_category(cats[a].carrier, cats[b].carrier);
        auto pa   = product_action(cats[a], cats[b], prod);
        auto lhs  = homotopy_fixed_points(pa, z2, phi, roomy()).fixed.category;
        auto rhs  = product_category(homotopy_fixed_points(cats[a], z2, phi).fixed.category,
                                     homotopy_fixed_points(cats[b], z2, phi).fixed.category,
                                     roomy());
        REQUIRE(find_isomorphism(lhs, rhs, roomy()).has_value());
      }
    }
  }
}

TEST_CASE("g-global equivalences", "[weq]") {
  auto sw  = swap_on_two();
  auto one = trivial_action(cyclic_group(2), terminal_category());
  auto f   = collapse(sw.carrier);
  auto z2  = cyclic_group(2);
  auto t   = g_global_we(f, sw, one, {GroupPair{z2, {0, 1}}}, 3);
  REQUIRE(t.passed);
  auto triv = g_global_we(f, sw, one, {GroupPair{trivial_group(), {0}}}, 3);
  REQUIRE(triv.passed);
  REQUIRE(triv.rows.size() == 1);
}

TEST_CASE("g-global verdicts are invariant under conjugation", "[weq][property]") {
  auto act = s3_on_three();
  auto g   = act.monoid;
  auto one = trivial_action(g, terminal_category());
  auto f   = collapse(act.carrier);
  // a map that is not an equivalence on every fixed-point category
  auto pts  = discrete_category({"0", "1", "2"});
  auto dact = make_action(g, pts, [&] {
    std::vector<Functor> v;
    for (auto const& a : act.act) {
      v.push_back(make_functor(pts, pts, a.objects, a.objects));
    }
    return v;
  }());
  auto incl = [&] {
    std::vector<MorId> m;
    for (ObjId x = 0; x < 3; ++x) {
      m.push_back(act.carrier->identity(x));
    }
    return make_functor(pts, act.carrier, {0, 1, 2}, m);
  }();
  std::vector<std::tuple<Functor, CatAction, CatAction>> maps = {{f, act, one},
                                                                 {incl, dact, act}};
  for (auto const& [map, a, b] : maps) {
    for (auto const& t : {cyclic_group(2), cyclic_group(3)}) {
      for (auto const& p : all_pairs(t, g)) {
        auto base = g_global_we(map, a, b, {p}, 3, roomy());
        for (int x = 0; x < static_cast<int>(g->size()); ++x) {
          GroupPair q{p.h, {}};
          for (int v : p.phi) {
            q.phi.push_back(g->mul(g->mul(x, v), g->inverse(x)));
          }
          auto conj = g_global_we(map, a, b, {q}, 3, roomy());
          REQUIRE(conj.passed == base.passed);
        }
      }
    }
  }
}

TEST_CASE("restriction along chaotic inclusions", "[weq]") {
  auto z2 = cyclic_group(2);
  auto c  = trivial_action(z2, ordinal(1));
  auto rc = restriction_comparison(c, z2, {0});
  REQUIRE(rc.valid);
  REQUIRE(rc.equivariant);
  REQUIRE(rc.sufficient);
  REQUIRE(rc.fixed.passed);

  auto same = restriction_comparison(c, z2, {0, 1});
  REQUIRE(same.valid);
  REQUIRE(same.sufficient);

  auto rs = restriction_comparison(swap_on_two(), z2, {0});
  REQUIRE(rs.valid);
  REQUIRE(rs.fixed.passed);
}

TEST_CASE("saturation", "[weq]") {
  auto z2 = cyclic_group(2);
  for (auto const& p : posets(5, 4, 4)) {
    auto av = trivial_avatar(p, z2, z2);
    check_avatar(av);
    auto r = saturation_check(av, all_subgroup_pairs(*z2, *z2), 3, roomy());
    REQUIRE(r.table.passed);
    for (auto const& row : r.table.rows) {
      REQUIRE(row.cert.kind == CertKind::isomorphism);
    }
  }

  // E{a, b} with Z/2 swapping and trivial G: no fixed objects, but the
  // constant functors on a and b are fixed in Fun(E(Z/2), C).
  auto one     = trivial_group();
  auto ambient = product_monoid(*z2, *one);
  auto e       = chaotic_category({"a", "b"});
  ChaoticActionAvatar av{z2, one, ambient, chaotic_action(ambient, e, {{0, 1}, {1, 0}}), {}};
  for (int m2 = 0; m2 < 2; ++m2) {
    for (int m1 = 0; m1 < 2; ++m1) {
      std::vector<MorId> s;
      for (ObjId x = 0; x < 2; ++x) {
        s.push_back(e->hom(av.action.act[m1].obj(x), av.action.act[m2].obj(x))[0]);
      }
      av.shift.push_back(s);
    }
  }
  check_avatar(av);
  auto r = saturation_check(av, {SubgroupPair{{0, 1}, {0, 0}}}, 3, roomy());
  REQUIRE_FALSE(r.table.passed);
  REQUIRE(r.fixed_fun[0].category->num_objects() == 2);
}

TEST_CASE("chaotic cells saturate for the identity pair", "[weq]") {
  auto z2   = cyclic_group(2);
  auto cell = chaotic_cell(z2, {0, 1}, {0, 1}, z2);
  auto av   = cell_avatar(cell);
  check_avatar(av);
  auto r = saturation_check(av, {SubgroupPair{{0, 1}, {0, 1}}, SubgroupPair{{0}, {0}}}, 3,
                            roomy());
  REQUIRE(r.table.rows.size() == 2);
  REQUIRE(r.table.passed);
}

TEST_CASE("generating maps", "[weq]") {
  auto z2 = cyclic_group(2);
  GeneratorSpec th;
  th.n_min = th.n_max = 0;
  auto t0 = generating_maps(th);
  REQUIRE(t0.size() == 1);
  REQUIRE(t0[0].map.source->num_objects() == 0);
  REQUIRE(t0[0].map.target->num_objects() == 1);

  GeneratorSpec gl;
  gl.model = ModelTag::global;
  gl.h     = z2;
  gl.n_min = gl.n_max = 1;
  auto g1 = generating_maps(gl);
  REQUIRE(g1.size() == 1);
  REQUIRE(g1[0].map.source->num_objects() == 2);
  REQUIRE(g1[0].map.source->num_morphisms() == 4);
  REQUIRE(g1[0].map.target->num_objects() == 5);
  REQUIRE(g1[0].map.target->num_morphisms() == 18);

  GeneratorSpec thin;
  thin.model = ModelTag::g_global_thin;
  thin.h     = z2;
  thin.g     = z2;
  thin.phi   = {0, 1};
  thin.n_min = thin.n_max = 0;
  auto c0 = generating_maps(thin);
  REQUIRE(c0.size() == 1);
  REQUIRE(c0[0].cell.carrier->num_objects() == 2);
  REQUIRE(c0[0].map.source->num_objects() == 0);
  REQUIRE(c0[0].map.target->num_objects() == 2);

  GeneratorSpec horns = gl;
  horns.acyclic       = true;
  horns.n_min         = 1;
  horns.n_max         = 2;
  REQUIRE(generating_maps(horns).size() == 5);
}

TEST_CASE("generating maps are equivariant Dwyer maps", "[weq][property]") {
  auto z2 = cyclic_group(2);
  auto s3 = symmetric_group(3);
  std::vector<GeneratorSpec> specs;
  for (bool acyclic : {false, true}) {
    GeneratorSpec f;
    f.model   = ModelTag::f_model;
    f.g       = s3;
    f.sub     = {0, 1};
    f.acyclic = acyclic;
    specs.push_back(f);
    GeneratorSpec t;
    t.model   = ModelTag::g_global_thin;
    t.h       = z2;
    t.g       = z2;
    t.phi     = {0, 0};
    t.acyclic = acyclic;
    specs.push_back(t);
    GeneratorSpec hp;
    hp.model   = ModelTag::g_homotopy_fp;
    hp.g       = z2;
    hp.sub     = {0, 1};
    hp.acyclic = acyclic;
    specs.push_back(hp);
  }
  for (auto const& s : specs) {
    for (auto const& gen : generating_maps(s, roomy())) {
      REQUIRE(is_sieve(gen.map));
      DwyerEquivariance eq{gen.source_action, gen.target_action};
      auto w = find_dwyer_witness(gen.map, eq, roomy());
      REQUIRE(w.has_value());
      REQUIRE(is_valid_witness(*w, eq));
    }
  }
}

TEST_CASE("transfer conditions", "[weq]") {
  auto z2 = cyclic_group(2);
  GeneratorSpec s;
  s.model = ModelTag::g_global_thin;
  s.h     = z2;
  s.g     = z2;
  s.phi   = {0, 1};
  s.n_min = 0;
  s.n_max = 1;
  auto i  = generating_maps(s);
  s.acyclic = true;
  auto j    = generating_maps(s);

  auto id = check_transfer_conditions(i, j, RightAdjointAvatar{}, 3, roomy());
  REQUIRE(id.passed);

  RightAdjointAvatar fun;
  fun.kind = RightAdjointAvatar::fun_chaotic;
  fun.t    = z2;
  auto fr  = check_transfer_conditions(i, j, fun, 3, roomy());
  REQUIRE(fr.passed);
  REQUIRE(fr.homotopy_pushouts.passed);

  // the cell is free, so the fixed points of everything are empty
  RightAdjointAvatar fx;
  fx.kind  = RightAdjointAvatar::fixed_points;
  fx.fixed = {0, 1};
  GeneratorSpec hp;
  hp.model   = ModelTag::g_homotopy_fp;
  hp.g       = z2;
  hp.sub     = {0};
  auto hi    = generating_maps(hp);
  hp.acyclic = true;
  auto hj    = generating_maps(hp);
  auto fxr   = check_transfer_conditions(hi, hj, fx, 3, roomy());
  REQUIRE(fxr.acyclic_images.passed);
}
