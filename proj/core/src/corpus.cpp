//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/corpus.hpp"

#include <algorithm>

#include "gcat/dwyer.hpp"
#include "gcat/weq.hpp"

namespace gcat {

  namespace {

    int uniform(Rng& rng, int lo, int hi) {
      return std::uniform_int_distribution<int>(lo, hi)(rng);
    }

    bool coin(Rng& rng, double p) {
      return std::bernoulli_distribution(p)(rng);
    }

    // Down-closure of a random set of generators.
    std::vector<ObjId> random_down_set(Rng& rng, FinCat const& p) {
      std::vector<char> keep(p.num_objects(), 0);
      for (std::size_t x = 0; x < p.num_objects(); ++x) {
        if (coin(rng, 0.35)) {
          for (std::size_t y = 0; y < p.num_objects(); ++y) {
            if (!p.hom(y, x).empty()) {
              keep[y] = 1;
            }
          }
        }
      }
      std::vector<ObjId> out;
      for (std::size_t x = 0; x < keep.size(); ++x) {
        if (keep[x]) {
          out.push_back(x);
        }
      }
      return out;
    }

    // Object permutations of the left action on G/H.
    std::vector<std::vector<int>> coset_permutations(CatAction const& cosets) {
      std::vector<std::vector<int>> perm;
      for (auto const& f : cosets.act) {
        perm.push_back(f.objects);
      }
      return perm;
    }

    CatAction chaotic_cosets(MonoidPtr const& g, Subgroup const& h) {
      CatAction d = coset_category(g, h);
      std::vector<std::string> names;
      for (std::size_t x = 0; x < d.carrier->num_objects(); ++x) {
        names.push_back(d.carrier->object_name(x));
      }
      return chaotic_action(g, chaotic_category(names), coset_permutations(d));
    }

    MonoidPtr pick_group(Rng& rng, std::string& name) {
      switch (uniform(rng, 0, 2)) {
        case 0:
          name = "Z/2";
          return cyclic_group(2);
        case 1:
          name = "Z/3";
          return cyclic_group(3);
        default:
          name = "S3";
          return symmetric_group(3);
      }
    }

  }  // namespace

  CatPtr random_poset(Rng& rng, int n, double density, std::string const& prefix) {
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a) {
      le[a][a] = 1;
      for (int b = a + 1; b < n; ++b) {
        le[a][b] = coin(rng, density) ? 1 : 0;
      }
    }
    for (int k = 0; k < n; ++k) {
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (le[a][k] && le[k][b]) {
            le[a][b] = 1;
          }
        }
      }
    }
    std::vector<std::string> names;
    for (int a = 0; a < n; ++a) {
      names.push_back(prefix + std::to_string(a));
    }
    return poset_category(names, [&](int a, int b) { return le[a][b] != 0; });
  }

  Functor poset_functor(CatPtr const& a, CatPtr const& c, std::vector<ObjId> objects) {
    Functor f{a, c, std::move(objects), {}};
    for (std::size_t m = 0; m < a->num_morphisms(); ++m) {
      auto h = c->hom(f.obj(a->source(m)), f.obj(a->target(m)));
      if (h.empty()) {
        throw Error(ErrorKind::not_a_functor, "object map is not order-preserving");
      }
      f.morphisms.push_back(h[0]);
    }
    check_functor(f);
    return f;
  }

  Functor random_monotone(Rng& rng, CatPtr const& a, CatPtr const& c) {
    FinCat const&      A = *a;
    FinCat const&      C = *c;
    int                n = A.num_objects();
    std::vector<ObjId> img(n, kNone);
    std::size_t        budget = 2000;
    // objects in index order, which extends the order of a
    auto search = [&](auto&& self, int x) -> bool {
      if (x == n) {
        return true;
      }
      if (budget-- == 0) {
        return false;
      }
      std::vector<ObjId> cand;
      for (std::size_t t = 0; t < C.num_objects(); ++t) {
        bool ok = true;
        for (int p = 0; p < x && ok; ++p) {
          if (!A.hom(p, x).empty()) {
            ok = !C.hom(img[p], t).empty();
          }
          if (!A.hom(x, p).empty()) {
            ok = ok && !C.hom(t, img[p]).empty();
          }
        }
        if (ok) {
          cand.push_back(t);
        }
      }
      std::shuffle(cand.begin(), cand.end(), rng);
      for (ObjId t : cand) {
        img[x] = t;
        if (self(self, x + 1)) {
          return true;
        }
      }
      return false;
    };
    if (C.num_objects() == 0 || !search(search, 0)) {
      if (C.num_objects() == 0 && n > 0) {
        throw Error(ErrorKind::malformed_input, "no map into an empty poset");
      }
      std::fill(img.begin(), img.end(), C.num_objects() ? uniform(rng, 0, C.num_objects() - 1) : 0);
    }
    return poset_functor(a, c, img);
  }

  std::vector<DwyerSpan> curated_spans() {
    std::vector<DwyerSpan> out;
    CatPtr one = terminal_category(), i1 = ordinal(1), i2 = ordinal(2);
    out.push_back({"[1] <- 1 -> [1]", poset_functor(one, i1, {0}), poset_functor(one, i1, {1})});
    CatPtr a = full_subcategory(i2, {0, 1}).category;
    out.push_back({"collapse {0,1} in [2]", full_subcategory(i2, {0, 1}).inclusion,
                   poset_functor(a, one, {0, 0})});
    return out;
  }

  std::vector<DwyerSpan> dwyer_spans(std::uint64_t seed, int count, int max_objects) {
    Rng                    rng(seed);
    std::vector<DwyerSpan> out;
    int                    attempts = 0;
    while (static_cast<int>(out.size()) < count) {
      if (++attempts > count * 200) {
        throw Error(ErrorKind::size_cap_exceeded, "too many rejected spans");
      }
      int         kind = uniform(rng, 0, 4);
      CatPtr      S;
      std::string sname;
      if (kind == 3) {
        S     = chaotic_category({"a", "b"});
        sname = "E{a,b} x ";
      } else if (kind == 4) {
        S     = delooping(*cyclic_group(2));
        sname = "B(Z/2) x ";
      }
      int    factor = S ? static_cast<int>(S->num_objects()) : 1;
      int    pmax   = std::max(1, std::min(8, max_objects / factor));
      CatPtr P      = random_poset(rng, uniform(rng, 1, pmax), 0.45);
      auto   down   = random_down_set(rng, *P);
      auto   sub    = full_subcategory(P, down);
      Functor i     = sub.inclusion;
      if (S) {
        CatPtr A = product_category(S, sub.category);
        CatPtr B = product_category(S, P);
        i        = product_functor(identity_functor(S), sub.inclusion, A, B);
      }
      if (!find_dwyer_witness(i)) {
        continue;
      }
      CatPtr  A = i.source;
      Functor c;
      std::string cname;
      int         ck = uniform(rng, 0, 2);
      if (ck == 0) {
        c     = identity_functor(A);
        cname = "identity";
      } else {
        CatPtr  Q = random_poset(rng, uniform(rng, 1, 5), 0.5, "y");
        Functor m = random_monotone(rng, sub.category, Q);
        if (!S) {
          c = m;
        } else if (ck == 1) {
          c = compose(m, product_projection_second(A, S, sub.category));
        } else {
          c = product_functor(identity_functor(S), m, A, product_category(S, Q));
        }
        cname = "monotone";
      }
      out.push_back({"span " + std::to_string(out.size()) + ": " + sname + "P"
                         + std::to_string(P->num_objects()) + ", |A|=" + std::to_string(A->num_objects())
                         + ", c " + cname,
                     i, c});
    }
    return out;
  }

  std::vector<EquivariantSpan> equivariant_spans(std::uint64_t seed, int count) {
    Rng                          rng(seed);
    std::vector<EquivariantSpan> out;
    int                          attempts = 0;
    while (static_cast<int>(out.size()) < count) {
      if (++attempts > count * 200) {
        throw Error(ErrorKind::size_cap_exceeded, "too many rejected spans");
      }
      std::string gname;
      MonoidPtr   G    = pick_group(rng, gname);
      auto        subs = all_subgroups(*G);
      Subgroup    H    = subs[uniform(rng, 0, subs.size() - 1)];
      bool        chaotic = coin(rng, 0.4);
      CatAction   s    = chaotic ? chaotic_cosets(G, H) : coset_category(G, H);
      int         ns   = s.carrier->num_objects();
      CatPtr      P    = random_poset(rng, uniform(rng, 1, std::max(1, 12 / ns)), 0.45);
      auto        down = random_down_set(rng, *P);
      auto        sub  = full_subcategory(P, down);
      CatPtr      A    = product_category(s.carrier, sub.category);
      CatPtr      B    = product_category(s.carrier, P);
      Functor     i    = product_functor(identity_functor(s.carrier), sub.inclusion, A, B);
      CatAction   a    = product_action(s, trivial_action(G, sub.category), A);
      CatAction   b    = product_action(s, trivial_action(G, P), B);
      if (!find_dwyer_witness(i, DwyerEquivariance{a, b})) {
        continue;
      }
      EquivariantSpan e{"", i, {}, a, b, {}};
      std::string     cname;
      switch (uniform(rng, 0, 2)) {
        case 0:
          e.c    = identity_functor(A);
          e.cact = a;
          cname  = "identity";
          break;
        case 1:
          e.c    = product_projection_first(A, s.carrier, sub.category);
          e.cact = s;
          cname  = "collapse";
          break;
        default: {
          CatPtr  Q  = random_poset(rng, uniform(rng, 1, 4), 0.5, "y");
          Functor m  = random_monotone(rng, sub.category, Q);
          CatPtr  SQ = product_category(s.carrier, Q);
          e.c        = product_functor(identity_functor(s.carrier), m, A, SQ);
          e.cact     = product_action(s, trivial_action(G, Q), SQ);
          cname      = "monotone";
        }
      }
      e.name = "espan " + std::to_string(out.size()) + ": G=" + gname + ", S="
               + (chaotic ? "E(G/H)" : "G/H") + " |H|=" + std::to_string(H.size()) + ", P"
               + std::to_string(P->num_objects()) + ", c " + cname;
      out.push_back(std::move(e));
    }
    return out;
  }

  std::vector<CatPtr> posets(std::uint64_t seed, int count, int max_objects) {
    Rng                 rng(seed);
    std::vector<CatPtr> out;
    for (int k = 0; k < count; ++k) {
      out.push_back(random_poset(rng, uniform(rng, 1, max_objects), 0.4));
    }
    return out;
  }

  std::vector<GCategory> g_categories(std::uint64_t seed, int count) {
    Rng                    rng(seed);
    std::vector<GCategory> out;
    MonoidPtr              z2 = cyclic_group(2);
    out.push_back({"E{a,b} swap", chaotic_action(z2, chaotic_category({"a", "b"}), {{0, 1}, {1, 0}})});
    out.push_back({"[1] trivial Z/2", trivial_action(z2, ordinal(1))});
    out.push_back({"E(Z/3) translation", chaotic_left_translation(cyclic_group(3))});
    for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
      std::string gname;
      MonoidPtr   G = pick_group(rng, gname);
      switch (uniform(rng, 0, 2)) {
        case 0: {
          CatPtr P = random_poset(rng, uniform(rng, 1, 5), 0.4);
          out.push_back({"poset P" + std::to_string(P->num_objects()) + " trivial " + gname,
                         trivial_action(G, P)});
          break;
        }
        case 1: {
          auto     subs = all_subgroups(*G);
          Subgroup H    = subs[uniform(rng, 0, subs.size() - 1)];
          CatAction s   = coset_category(G, H);
          CatPtr   P    = random_poset(rng, uniform(rng, 1, 3), 0.5);
          CatPtr   SP   = product_category(s.carrier, P);
          out.push_back({gname + "/H x P" + std::to_string(P->num_objects()) + " |H|="
                             + std::to_string(H.size()),
                         product_action(s, trivial_action(G, P), SP)});
          break;
        }
        default: {
          auto     subs = all_subgroups(*G);
          Subgroup H    = subs[uniform(rng, 0, subs.size() - 1)];
          if (G->size() / H.size() > 3) {
            H = subs.back();
          }
          out.push_back({"E(" + gname + "/H) |H|=" + std::to_string(H.size()), chaotic_cosets(G, H)});
        }
      }
    }
    return out;
  }

  std::vector<SSetCase> sset_corpus(std::uint64_t seed, int count, int cap) {
    std::vector<SSetCase> out;
    out.push_back({"D^0", standard_simplex(0, cap), std::nullopt});
    out.push_back({"D^1", standard_simplex(1, cap), std::nullopt});
    out.push_back({"D^2", standard_simplex(2, cap), std::nullopt});
    out.push_back({"bd D^2", standard_boundary(2, cap), std::nullopt});
    for (int k = 0; k <= 2; ++k) {
      out.push_back({"L^2_" + std::to_string(k), standard_horn(2, k, cap), std::nullopt});
    }
    MonoidPtr z2 = cyclic_group(2);
    auto add_nerve = [&](std::string name, CatAction const& a) {
      SSetPtr n = nerve(a.carrier, cap);
      out.push_back({std::move(name), n, equivariant_nerve(a, n)});
    };
    add_nerve("N(E{a,b}) swap", chaotic_action(z2, chaotic_category({"a", "b"}), {{0, 1}, {1, 0}}));
    add_nerve("N([1]) trivial Z/2", trivial_action(z2, ordinal(1)));
    {
      CatAction s  = coset_category(z2, {0});
      CatPtr    i1 = ordinal(1);
      CatPtr    sp = product_category(s.carrier, i1);
      add_nerve("N(Z/2 x [1]) swap", product_action(s, trivial_action(z2, i1), sp));
    }
    Rng rng(seed);
    for (int k = 0; k < count; ++k) {
      CatPtr P = random_poset(rng, uniform(rng, 1, 4), 0.5);
      out.push_back({"N(P" + std::to_string(k) + ")", nerve(P, cap), std::nullopt});
    }
    return out;
  }

}  // namespace gcat
