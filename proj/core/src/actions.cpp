//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/actions.hpp"

#include <algorithm>
#include <numeric>

namespace gcat {

  void check_action(CatAction const& a) {
    FinMonoid const& m = *a.monoid;
    if (a.act.size() != m.size()) {
      throw Error(ErrorKind::malformed_input,
                  "action has " + std::to_string(a.act.size())
                      + " functors for a monoid of order "
                      + std::to_string(m.size()));
    }
    for (auto const& f : a.act) {
      check_functor(f);
    }
    if (!(a.act[m.unit()] == identity_functor(a.carrier))) {
      throw Error(ErrorKind::not_a_homomorphism,
                  "the unit does not act as the identity");
    }
    for (std::size_t x = 0; x < m.size(); ++x) {
      for (std::size_t y = 0; y < m.size(); ++y) {
        if (!(a.act[m.mul(x, y)] == compose(a.act[x], a.act[y]))) {
          throw Error(ErrorKind::not_a_homomorphism,
                      "act(" + m.name(x) + "·" + m.name(y) + ") != act("
                          + m.name(x) + ")∘act(" + m.name(y) + ")");
        }
      }
    }
  }

  CatAction make_action(MonoidPtr m, CatPtr c, std::vector<Functor> act) {
    CatAction a{std::move(m), std::move(c), std::move(act)};
    check_action(a);
    return a;
  }

  CatAction trivial_action(MonoidPtr m, CatPtr c) {
    std::size_t n = m->size();
    return CatAction{std::move(m),
                     c,
                     std::vector<Functor>(n, identity_functor(c))};
  }

  bool is_equivariant(Functor const& f, CatAction const& a, CatAction const& b) {
    for (std::size_t m = 0; m < a.act.size(); ++m) {
      if (!(compose(f, a.act[m]) == compose(b.act[m], f))) {
        return false;
      }
    }
    return true;
  }

  void check_equivariant(Functor const&   f,
                         CatAction const& a,
                         CatAction const& b) {
    for (std::size_t m = 0; m < a.act.size(); ++m) {
      if (!(compose(f, a.act[m]) == compose(b.act[m], f))) {
        throw Error(ErrorKind::equivariance_violation,
                    "functor does not commute with element '"
                        + a.monoid->name(m) + "'");
      }
    }
  }

  bool is_equivariant(NatTrans const&  alpha,
                      CatAction const& a,
                      CatAction const& b) {
    for (std::size_t m = 0; m < a.act.size(); ++m) {
      for (std::size_t x = 0; x < alpha.components.size(); ++x) {
        if (b.act[m].morphisms[alpha.components[x]]
            != alpha.components[a.act[m].objects[x]]) {
          return false;
        }
      }
    }
    return true;
  }

  void require_in_units(CatAction const& a, Subgroup const& h) {
    for (int k : h) {
      if (k < 0 || static_cast<std::size_t>(k) >= a.monoid->size()
          || a.monoid->inverse(k) < 0) {
        throw Error(ErrorKind::subgroup_not_in_units,
                    "element is not invertible in the acting monoid");
      }
    }
  }

  Subcategory fixed_category(CatAction const& a, Subgroup const& h) {
    require_in_units(a, h);
    FinCat const&      c = *a.carrier;
    std::vector<ObjId> objs;
    std::vector<MorId> mors;
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
      bool fixed = true;
      for (int k : h) {
        fixed = fixed && a.act[k].objects[x] == static_cast<ObjId>(x);
      }
      if (fixed) {
        objs.push_back(x);
      }
    }
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
      bool fixed = true;
      for (int k : h) {
        fixed = fixed && a.act[k].morphisms[f] == static_cast<MorId>(f);
      }
      if (fixed) {
        mors.push_back(f);
      }
    }
    return subcategory(a.carrier, std::move(objs), std::move(mors));
  }

  namespace {
    // index of each member of a subcategory, or kNone
    std::pair<std::vector<int>, std::vector<int>>
    positions(Subcategory const& s) {
      std::vector<int> o(s.inclusion.target->num_objects(), kNone);
      std::vector<int> m(s.inclusion.target->num_morphisms(), kNone);
      for (std::size_t i = 0; i < s.inclusion.objects.size(); ++i) {
        o[s.inclusion.objects[i]] = i;
      }
      for (std::size_t i = 0; i < s.inclusion.morphisms.size(); ++i) {
        m[s.inclusion.morphisms[i]] = i;
      }
      return {o, m};
    }
  }  // namespace

  Functor fixed_functor(Functor const&     f,
                        Subcategory const& source_fixed,
                        Subcategory const& target_fixed) {
    auto [po, pm] = positions(target_fixed);
    Functor r{source_fixed.category, target_fixed.category, {}, {}};
    for (ObjId x : source_fixed.inclusion.objects) {
      ObjId y = po[f.objects[x]];
      if (y == kNone) {
        throw Error(ErrorKind::equivariance_violation,
                    "image of a fixed object is not fixed");
      }
      r.objects.push_back(y);
    }
    for (MorId g : source_fixed.inclusion.morphisms) {
      MorId h = pm[f.morphisms[g]];
      if (h == kNone) {
        throw Error(ErrorKind::equivariance_violation,
                    "image of a fixed morphism is not fixed");
      }
      r.morphisms.push_back(h);
    }
    return r;
  }

  CatAction restrict_to_subcategory(CatAction const& a, Subcategory const& s) {
    auto [po, pm] = positions(s);
    CatAction r{a.monoid, s.category, {}};
    for (auto const& F : a.act) {
      Functor g{s.category, s.category, {}, {}};
      for (ObjId x : s.inclusion.objects) {
        if (po[F.objects[x]] == kNone) {
          throw Error(ErrorKind::equivariance_violation,
                      "subcategory is not stable under the action");
        }
        g.objects.push_back(po[F.objects[x]]);
      }
      for (MorId f : s.inclusion.morphisms) {
        if (pm[F.morphisms[f]] == kNone) {
          throw Error(ErrorKind::equivariance_violation,
                      "subcategory is not stable under the action");
        }
        g.morphisms.push_back(pm[F.morphisms[f]]);
      }
      r.act.push_back(std::move(g));
    }
    return r;
  }

  CatAction restrict_action(CatAction const&        a,
                            MonoidPtr const&        h,
                            std::vector<int> const& phi) {
    check_homomorphism(*h, *a.monoid, phi);
    CatAction r{h, a.carrier, {}};
    for (std::size_t k = 0; k < h->size(); ++k) {
      r.act.push_back(a.act[phi[k]]);
    }
    return r;
  }

  CatAction product_action(CatAction const& s,
                           CatAction const& c,
                           CatPtr const&    prod) {
    CatAction r{s.monoid, prod, {}};
    for (std::size_t m = 0; m < s.act.size(); ++m) {
      r.act.push_back(product_functor(s.act[m], c.act[m], prod, prod));
    }
    return r;
  }

  CatAction external_product_action(CatAction const& s,
                                    CatAction const& c,
                                    CatPtr const&    prod) {
    CatAction r{product_monoid(*s.monoid, *c.monoid), prod, {}};
    for (std::size_t m = 0; m < s.act.size(); ++m) {
      for (std::size_t n = 0; n < c.act.size(); ++n) {
        r.act.push_back(product_functor(s.act[m], c.act[n], prod, prod));
      }
    }
    return r;
  }

  CatPtr chaotic_category(std::vector<std::string> const& names,
                          Limits const&                   limits) {
    int n = names.size();
    check_cap("chaotic category morphisms",
              static_cast<std::size_t>(n) * n,
              limits.max_morphisms);
    FinCat::Builder b;
    for (auto const& x : names) {
      b.add_object(x);
    }
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        b.add_morphism(names[x] + "->" + names[y], x, y);
      }
    }
    for (int x = 0; x < n; ++x) {
      b.set_identity(x, x * n + x);
    }
    b.compose_all([&](MorId g, MorId f) {
      return (f / n) * n + (g % n);
    });
    return std::move(b).build_shared(limits);
  }

  CatAction chaotic_action(MonoidPtr const&                     m,
                           CatPtr const&                        e,
                           std::vector<std::vector<int>> const& perm) {
    int       n = e->num_objects();
    CatAction r{m, e, {}};
    for (auto const& p : perm) {
      Functor f{e, e, p, {}};
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          f.morphisms.push_back(p[x] * n + p[y]);
        }
      }
      r.act.push_back(std::move(f));
    }
    check_action(r);
    return r;
  }

  CatAction chaotic_left_translation(MonoidPtr const& g) {
    CatPtr                        e = chaotic_category(g->names());
    std::vector<std::vector<int>> perm(g->size());
    for (std::size_t a = 0; a < g->size(); ++a) {
      for (std::size_t k = 0; k < g->size(); ++k) {
        perm[a].push_back(g->mul(a, k));
      }
    }
    return chaotic_action(g, e, perm);
  }

  std::vector<Functor> chaotic_right_translations(MonoidPtr const& g,
                                                  CatPtr const&    e) {
    int                  n = g->size();
    std::vector<Functor> out;
    for (int h = 0; h < n; ++h) {
      Functor f{e, e, {}, {}};
      for (int k = 0; k < n; ++k) {
        f.objects.push_back(g->mul(k, h));
      }
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          f.morphisms.push_back(g->mul(x, h) * n + g->mul(y, h));
        }
      }
      out.push_back(std::move(f));
    }
    return out;
  }

  CatPtr delooping(FinMonoid const& g) {
    FinCat::Builder b;
    b.add_object("*");
    for (std::size_t a = 0; a < g.size(); ++a) {
      b.add_morphism(g.name(a), 0, 0);
    }
    b.set_identity(0, g.unit());
    b.compose_all([&](MorId x, MorId y) { return g.mul(x, y); });
    return std::move(b).build_shared();
  }

  std::vector<int>
  equivariant_retraction(FinGroup const&                      h,
                         std::vector<std::vector<int>> const& right) {
    require_group(h);
    std::size_t n = right.size();
    for (std::size_t s = 0; s < n; ++s) {
      if (right[s].size() != h.size()) {
        throw Error(ErrorKind::malformed_input, "right action table has wrong width");
      }
      for (std::size_t k = 0; k < h.size(); ++k) {
        if (static_cast<int>(k) != h.unit() && right[s][k] == static_cast<int>(s)) {
          throw Error(ErrorKind::action_not_free,
                      "element " + std::to_string(s) + " is fixed by '"
                          + h.name(k) + "'");
        }
      }
    }
    std::vector<int> r(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
      if (r[s] >= 0) {
        continue;
      }
      // s is the least member of its orbit
      for (std::size_t k = 0; k < h.size(); ++k) {
        int t = right[s][k];
        if (r[t] >= 0 && r[t] != static_cast<int>(k)) {
          throw Error(ErrorKind::action_not_free,
                      "orbit of " + std::to_string(s)
                          + " reaches an element twice");
        }
        r[t] = k;
      }
    }
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t k = 0; k < h.size(); ++k) {
        if (r[right[s][k]] != h.mul(r[s], k)) {
          throw Error(ErrorKind::malformed_input,
                      "right action table is not an action");
        }
      }
    }
    return r;
  }

  Quotient quotient_by_free_action(CatAction const& a) {
    FinMonoid const& g = *a.monoid;
    require_group(g);
    FinCat const& c = *a.carrier;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (static_cast<int>(k) == g.unit()) {
        continue;
      }
      for (std::size_t x = 0; x < c.num_objects(); ++x) {
        if (a.act[k].objects[x] == static_cast<ObjId>(x)) {
          throw Error(ErrorKind::action_not_free,
                      "object '" + c.object_name(x) + "' is fixed by '"
                          + g.name(k) + "'");
        }
      }
      for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
        if (a.act[k].morphisms[f] == static_cast<MorId>(f)) {
          throw Error(ErrorKind::action_not_free,
                      "morphism '" + c.morphism_name(f) + "' is fixed by '"
                          + g.name(k) + "'");
        }
      }
    }
    std::vector<int> oo(c.num_objects(), kNone), mo(c.num_morphisms(), kNone);
    std::vector<ObjId> orep;
    std::vector<MorId> mrep;
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
      if (oo[x] != kNone) {
        continue;
      }
      for (auto const& F : a.act) {
        oo[F.objects[x]] = orep.size();
      }
      orep.push_back(x);
    }
    for (std::size_t f = 0; f < c.num_morphisms(); ++f) {
      if (mo[f] != kNone) {
        continue;
      }
      for (auto const& F : a.act) {
        mo[F.morphisms[f]] = mrep.size();
      }
      mrep.push_back(f);
    }
    FinCat::Builder b;
    for (ObjId x : orep) {
      b.add_object(c.object_name(x));
    }
    for (MorId f : mrep) {
      b.add_morphism(c.morphism_name(f), oo[c.source(f)], oo[c.target(f)]);
    }
    for (std::size_t k = 0; k < orep.size(); ++k) {
      b.set_identity(k, mo[c.identity(orep[k])]);
    }
    b.compose_all([&](MorId gq, MorId fq) {
      MorId f = mrep[fq], h = mrep[gq];
      ObjId y = c.target(f);
      for (auto const& F : a.act) {
        if (F.objects[c.source(h)] == y) {
          return mo[c.compose(F.morphisms[h], f)];
        }
      }
      return kNone;
    });
    Limits lim = Limits::sized(c.num_objects(), c.num_morphisms());
    CatPtr q   = std::move(b).build_shared(lim);
    return Quotient{q, Functor{a.carrier, q, oo, mo}};
  }

  CatAction descend_action(CatAction const& k, Quotient const& q) {
    CatAction   r{k.monoid, q.category, {}};
    auto const& p = q.projection;
    // representatives: first preimage
    std::vector<ObjId> orep(q.category->num_objects(), kNone);
    std::vector<MorId> mrep(q.category->num_morphisms(), kNone);
    for (std::size_t x = 0; x < p.objects.size(); ++x) {
      if (orep[p.objects[x]] == kNone) {
        orep[p.objects[x]] = x;
      }
    }
    for (std::size_t f = 0; f < p.morphisms.size(); ++f) {
      if (mrep[p.morphisms[f]] == kNone) {
        mrep[p.morphisms[f]] = f;
      }
    }
    for (auto const& F : k.act) {
      Functor g{q.category, q.category, {}, {}};
      for (ObjId x : orep) {
        g.objects.push_back(p.objects[F.objects[x]]);
      }
      for (MorId f : mrep) {
        g.morphisms.push_back(p.morphisms[F.morphisms[f]]);
      }
      r.act.push_back(std::move(g));
    }
    // well-definedness: every preimage gives the same answer
    for (std::size_t m = 0; m < k.act.size(); ++m) {
      if (!(compose(p, k.act[m]) == compose(r.act[m], p))) {
        throw Error(ErrorKind::equivariance_violation,
                    "action does not descend along the quotient");
      }
    }
    check_action(r);
    return r;
  }

  CatAction functor_category_action(FunctorCategory const&      fc,
                                    MonoidPtr const&            m,
                                    std::vector<Functor> const& dom,
                                    std::vector<Functor> const& cod) {
    CatAction r{m, fc.category, {}};
    for (std::size_t e = 0; e < m->size(); ++e) {
      Functor pre  = precompose(fc, fc, dom[e]);
      Functor post = postcompose(fc, fc, cod[e]);
      r.act.push_back(compose(post, pre));
    }
    check_action(r);
    return r;
  }

  bool is_equivariant_equivalence(EquivalenceWitness const& w,
                                  CatAction const&          a,
                                  CatAction const&          b) {
    return is_valid_equivalence(w) && is_equivariant(w.functor, a, b)
           && is_equivariant(w.inverse, b, a) && is_equivariant(w.unit, a, a)
           && is_equivariant(w.counit, b, b);
  }

  std::optional<EquivalenceWitness>
  find_equivariant_equivalence(Functor const&   F,
                               CatAction const& a,
                               CatAction const& b,
                               Limits const&    limits) {
    FinMonoid const& g = *a.monoid;
    require_group(g);
    check_equivariant(F, a, b);
    FinCat const& S = *F.source;
    FinCat const& T = *F.target;
    check_cap("equivalence search objects", S.num_objects(), limits.max_objects);
    check_cap("equivalence search objects", T.num_objects(), limits.max_objects);
    if (!is_fully_faithful(F)) {
      return std::nullopt;
    }
    std::size_t        nT = T.num_objects();
    std::vector<ObjId> qx(nT, kNone);
    std::vector<MorId> u(nT, kNone);
    for (std::size_t d = 0; d < nT; ++d) {
      if (qx[d] != kNone) {
        continue;
      }
      std::vector<int> stab;
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (b.act[k].objects[d] == static_cast<ObjId>(d)) {
          stab.push_back(k);
        }
      }
      // candidates (x, m : F x ≅ d) fixed by the stabiliser, identities first
      auto fixed = [&](ObjId x, MorId m) {
        for (int k : stab) {
          if (a.act[k].objects[x] != x || b.act[k].morphisms[m] != m) {
            return false;
          }
        }
        return true;
      };
      bool found = false;
      for (int pass = 0; pass < 2 && !found; ++pass) {
        for (std::size_t x = 0; x < S.num_objects() && !found; ++x) {
          for (MorId m : T.hom(F.objects[x], d)) {
            bool ok = pass == 0 ? m == T.identity(d) : T.inverse(m) != kNone;
            if (ok && fixed(x, m)) {
              qx[d] = x;
              u[d]  = m;
              found = true;
              break;
            }
          }
        }
      }
      if (!found) {
        return std::nullopt;
      }
      for (std::size_t k = 0; k < g.size(); ++k) {
        ObjId e = b.act[k].objects[d];
        if (qx[e] == kNone) {
          qx[e] = a.act[k].objects[qx[d]];
          u[e]  = b.act[k].morphisms[u[d]];
        }
      }
    }
    auto lift = [&](ObjId x, ObjId y, MorId m) {
      for (MorId f : S.hom(x, y)) {
        if (F.morphisms[f] == m) {
          return f;
        }
      }
      return kNone;
    };
    Functor Q{F.target, F.source, qx, {}};
    for (std::size_t h = 0; h < T.num_morphisms(); ++h) {
      ObjId d = T.source(h), e = T.target(h);
      Q.morphisms.push_back(
          lift(qx[d], qx[e], T.compose(T.inverse(u[e]), T.compose(h, u[d]))));
    }
    NatTrans counit{compose(F, Q), identity_functor(F.target), u};
    NatTrans unit{identity_functor(F.source), compose(Q, F), {}};
    for (std::size_t x = 0; x < S.num_objects(); ++x) {
      ObjId d = F.objects[x];
      unit.components.push_back(lift(x, qx[d], T.inverse(u[d])));
    }
    EquivalenceWitness w{F, Q, unit, counit};
    if (!is_equivariant_equivalence(w, a, b)) {
      throw Error(ErrorKind::equivariance_violation,
                  "internal: equivariant quasi-inverse failed validation");
    }
    return w;
  }

}  // namespace gcat
