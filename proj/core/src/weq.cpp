//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/weq.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace gcat {

  namespace {

    std::vector<int> all_elements(FinMonoid const& m) {
      std::vector<int> v(m.size());
      std::iota(v.begin(), v.end(), 0);
      return v;
    }

    std::string join_names(FinMonoid const& m, std::vector<int> const& xs) {
      std::string s;
      for (int x : xs) {
        s += (s.empty() ? "" : ",") + m.name(x);
      }
      return s;
    }

    // Ambient ids ↦ subcategory ids.
    std::pair<std::vector<int>, std::vector<int>> positions(Subcategory const& s) {
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

    // The functor between chaotic categories with the given object map.
    Functor chaotic_functor(CatPtr const& s, CatPtr const& t, std::vector<ObjId> objs) {
      Functor f{s, t, std::move(objs), {}};
      for (std::size_t m = 0; m < s->num_morphisms(); ++m) {
        f.morphisms.push_back(t->hom(f.obj(s->source(m)), f.obj(s->target(m)))[0]);
      }
      return f;
    }

    // A permutation of the objects of a discrete category.
    Functor discrete_functor(CatPtr const& d, std::vector<ObjId> objs) {
      Functor f{d, d, std::move(objs), std::vector<MorId>(d->num_morphisms(), kNone)};
      for (std::size_t x = 0; x < d->num_objects(); ++x) {
        f.morphisms[d->identity(x)] = d->identity(f.obj(x));
      }
      return f;
    }

    // Elements of the graph subgroup {(h, φ(h))} of H′ × G.
    Subgroup graph_elements(Subgroup const& h, std::vector<int> const& phi, std::size_t ng) {
      Subgroup out;
      for (std::size_t k = 0; k < h.size(); ++k) {
        out.push_back(h[k] * static_cast<int>(ng) + phi[k]);
      }
      std::sort(out.begin(), out.end());
      return out;
    }

    std::string phi_label(FinMonoid const& h, Subgroup const& elems,
                          std::vector<int> const& phi, FinMonoid const& g) {
      std::string s = "H={" + join_names(h, elems) + "} phi=";
      for (std::size_t k = 0; k < elems.size(); ++k) {
        s += (k ? "," : "") + h.name(elems[k]) + "->" + g.name(phi[k]);
      }
      return s;
    }

    WeakEqCertificate failed_search(Functor const& f, int cap, Limits const& limits,
                                    std::string const& why) {
      WeakEqCertificate c = homology_certificate(f, cap, limits);
      c.detail = why + "; necessary conditions " + (c.passed ? "hold" : "fail")
                 + (c.detail.empty() ? "" : ": " + c.detail);
      c.passed = false;
      return c;
    }

  }  // namespace

  char const* to_string(CertKind k) noexcept {
    switch (k) {
      case CertKind::isomorphism:
        return "isomorphism";
      case CertKind::equivalence:
        return "equivalence";
      case CertKind::necessary:
        return "necessary";
    }
    return "?";
  }

  ////////////////////////////////////////////////////////////////////////
  // Certificates
  ////////////////////////////////////////////////////////////////////////

  WeakEqCertificate homology_certificate(SSetMap const& f) {
    WeakEqCertificate c;
    c.kind = CertKind::necessary;
    c.cap  = f.source->cap();
    auto ca = components(*f.source);
    auto cb = components(*f.target);
    int  na = ca.empty() ? 0 : *std::max_element(ca.begin(), ca.end()) + 1;
    int  nb = cb.empty() ? 0 : *std::max_element(cb.begin(), cb.end()) + 1;
    std::vector<int> image(na, kNone);
    for (std::size_t v = 0; v < ca.size(); ++v) {
      image[ca[v]] = cb[f(FinSSet::nondeg(0, v)).core];
    }
    std::vector<char> hit(nb, 0);
    bool              injective = true;
    for (int t : image) {
      injective = injective && !hit[t];
      hit[t]    = 1;
    }
    c.pi0_bijective = injective && std::all_of(hit.begin(), hit.end(), [](char x) { return x; });
    auto v            = homology_isomorphism(f);
    c.source_homology = v.source;
    c.target_homology = v.target;
    c.failed_degree   = v.degree;
    c.passed          = c.pi0_bijective && v.iso;
    if (!c.pi0_bijective) {
      c.detail = "pi0: " + std::to_string(na) + " components map to " + std::to_string(nb)
                 + (injective ? " (not onto)" : " (not one-to-one)");
      c.failed_degree = 0;
    } else if (!v.iso) {
      c.detail = v.detail;
    }
    return c;
  }

  WeakEqCertificate homology_certificate(Functor const& f, int cap, Limits const& limits) {
    auto a = nerve(f.source, cap, limits);
    auto b = nerve(f.target, cap, limits);
    return homology_certificate(nerve_map(f, a, b));
  }

  std::optional<WeakEqCertificate>
  equivalence_certificate(Functor const&                   f,
                          std::optional<ActionPair> const& actions,
                          Limits const&                    limits) {
    WeakEqCertificate c;
    c.passed = true;
    if (is_isomorphism(f)) {
      FinCat const& s = *f.source;
      Functor       inv{f.target, f.source, std::vector<ObjId>(s.num_objects()),
                  std::vector<MorId>(s.num_morphisms())};
      for (std::size_t x = 0; x < s.num_objects(); ++x) {
        inv.objects[f.obj(x)] = x;
      }
      for (std::size_t m = 0; m < s.num_morphisms(); ++m) {
        inv.morphisms[f.mor(m)] = m;
      }
      c.kind    = CertKind::isomorphism;
      c.witness = EquivalenceWitness{f, inv, identity_transformation(identity_functor(f.source)),
                                     identity_transformation(identity_functor(f.target))};
      c.witness->unit.target   = compose(inv, f);
      c.witness->counit.source = compose(f, inv);
      c.detail                 = "isomorphism of categories";
      return c;
    }
    std::optional<EquivalenceWitness> w;
    if (actions) {
      w = find_equivariant_equivalence(f, actions->first, actions->second, limits);
    } else {
      w = find_equivalence(f, limits);
    }
    if (!w) {
      return std::nullopt;
    }
    c.kind    = CertKind::equivalence;
    c.witness = std::move(w);
    c.detail  = actions ? "equivariant equivalence" : "equivalence";
    return c;
  }

  EquivalenceWitness fixed_witness(EquivalenceWitness const& w,
                                   Subcategory const&        source_fixed,
                                   Subcategory const&        target_fixed) {
    EquivalenceWitness r;
    r.functor    = fixed_functor(w.functor, source_fixed, target_fixed);
    r.inverse    = fixed_functor(w.inverse, target_fixed, source_fixed);
    auto restrict = [](NatTrans const& a, Subcategory const& s, Functor src, Functor dst) {
      auto [o, m] = positions(s);
      NatTrans out{std::move(src), std::move(dst), {}};
      for (ObjId x : s.inclusion.objects) {
        MorId c = m[a.components[x]];
        if (c == kNone) {
          throw Error(ErrorKind::equivariance_violation,
                      "a component at a fixed object is not fixed");
        }
        out.components.push_back(c);
      }
      return out;
    };
    r.unit   = restrict(w.unit, source_fixed, identity_functor(source_fixed.category),
                        compose(r.inverse, r.functor));
    r.counit = restrict(w.counit, target_fixed, compose(r.functor, r.inverse),
                        identity_functor(target_fixed.category));
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Tables
  ////////////////////////////////////////////////////////////////////////

  std::string subgroup_label(FinMonoid const& g, Subgroup const& h) {
    return "{" + join_names(g, h) + "}";
  }

  CertificateTable f_weak_equivalence(Functor const&               f,
                                      CatAction const&             a,
                                      CatAction const&             b,
                                      std::vector<Subgroup> const& family,
                                      int                          cap,
                                      Limits const&                limits) {
    check_equivariant(f, a, b);
    CertificateTable t;
    t.scope = "subgroups of the supplied family";
    for (auto const& h : family) {
      require_in_units(a, h);
      require_in_units(b, h);
      auto fa   = fixed_category(a, h);
      auto fb   = fixed_category(b, h);
      auto cert = homology_certificate(fixed_functor(f, fa, fb), cap, limits);
      t.passed  = t.passed && cert.passed;
      t.rows.push_back({subgroup_label(*a.monoid, h), std::move(cert)});
    }
    return t;
  }

  CertificateTable f_weak_equivalence(SSetMap const&               f,
                                      SSetAction const&            a,
                                      SSetAction const&            b,
                                      std::vector<Subgroup> const& family) {
    if (!is_equivariant(f, a, b)) {
      throw Error(ErrorKind::equivariance_violation, "the map is not equivariant");
    }
    CertificateTable t;
    t.scope = "subgroups of the supplied family";
    for (auto const& h : family) {
      for (int x : h) {
        if (a.monoid->inverse(x) < 0) {
          throw Error(ErrorKind::subgroup_not_in_units,
                      "'" + a.monoid->name(x) + "' is not invertible");
        }
      }
      auto fa   = fixed_points(a, h);
      auto fb   = fixed_points(b, h);
      auto cert = homology_certificate(fixed_map(f, fa, fb));
      t.passed  = t.passed && cert.passed;
      t.rows.push_back({subgroup_label(*a.monoid, h), std::move(cert)});
    }
    return t;
  }

  HomotopyFixedPoints homotopy_fixed_points(CatAction const&        c,
                                            MonoidPtr const&        h,
                                            std::vector<int> const& phi,
                                            Limits const&           limits) {
    require_group(*h);
    check_homomorphism(*h, *c.monoid, phi);
    CatPtr          eh = chaotic_left_translation(h).carrier;
    FunctorCategory fc = functor_category(eh, c.carrier, limits);
    CatAction       rc = restrict_action(c, h, phi);
    CatAction act = functor_category_action(fc, h, chaotic_right_translations(h, eh), rc.act);
    Subcategory fixed = fixed_category(act, all_elements(*h));
    return HomotopyFixedPoints{std::move(fc), std::move(act), std::move(fixed)};
  }

  Functor homotopy_fixed_functor(Functor const&             f,
                                 HomotopyFixedPoints const& source,
                                 HomotopyFixedPoints const& target) {
    return fixed_functor(postcompose(source.fun, target.fun, f), source.fixed, target.fixed);
  }

  std::string pair_label(GroupPair const& p, FinMonoid const& g) {
    return phi_label(*p.h, all_elements(*p.h), p.phi, g);
  }

  std::vector<GroupPair> all_pairs(MonoidPtr const& t, MonoidPtr const& g) {
    std::vector<GroupPair> out;
    for (auto const& s : all_subgroups(*t)) {
      MonoidPtr hm = subgroup_monoid(*t, s);
      for (auto& phi : all_homomorphisms(*hm, *g)) {
        out.push_back({hm, std::move(phi)});
      }
    }
    return out;
  }

  CertificateTable g_global_we(Functor const&                f,
                               CatAction const&              a,
                               CatAction const&              b,
                               std::vector<GroupPair> const& pairs,
                               int                           cap,
                               Limits const&                 limits) {
    check_equivariant(f, a, b);
    CertificateTable t;
    t.scope = "homotopy fixed points for the supplied list of (H, phi) pairs only";
    for (auto const& p : pairs) {
      auto s    = homotopy_fixed_points(a, p.h, p.phi, limits);
      auto d    = homotopy_fixed_points(b, p.h, p.phi, limits);
      auto cert = homology_certificate(homotopy_fixed_functor(f, s, d), cap, limits);
      t.passed  = t.passed && cert.passed;
      t.rows.push_back({pair_label(p, *a.monoid), std::move(cert)});
    }
    return t;
  }

  ////////////////////////////////////////////////////////////////////////
  // Restriction comparison
  ////////////////////////////////////////////////////////////////////////

  RestrictionComparison restriction_comparison(CatAction const& c,
                                               MonoidPtr const& hprime,
                                               Subgroup const&  h,
                                               Limits const&    limits) {
    require_group(*hprime);
    require_subgroup(*hprime, h);
    MonoidPtr const& G   = c.monoid;
    MonoidPtr        hm  = subgroup_monoid(*hprime, h);
    CatPtr           ehp = chaotic_left_translation(hprime).carrier;
    CatPtr           eh  = chaotic_left_translation(hm).carrier;

    std::vector<std::vector<int>> right(hprime->size());
    for (std::size_t s = 0; s < hprime->size(); ++s) {
      for (int k : h) {
        right[s].push_back(hprime->mul(s, k));
      }
    }
    std::vector<int> r  = equivariant_retraction(*hm, right);
    Functor          ei = chaotic_functor(eh, ehp, h);
    Functor          er = chaotic_functor(ehp, eh, r);

    RestrictionComparison out;
    out.big   = functor_category(ehp, c.carrier, limits);
    out.small = functor_category(eh, c.carrier, limits);
    Functor F = precompose(out.big, out.small, ei);
    Functor Q = precompose(out.small, out.big, er);

    // id ⇒ E(i)E(r) on E(H′) and E(r)E(i) ⇒ id on E(H), both unique
    Functor  ir = compose(ei, er), ri = compose(er, ei);
    NatTrans theta{identity_functor(ehp), ir, {}};
    for (std::size_t s = 0; s < hprime->size(); ++s) {
      theta.components.push_back(ehp->hom(s, ir.obj(s))[0]);
    }
    NatTrans kappa{ri, identity_functor(eh), {}};
    for (std::size_t k = 0; k < hm->size(); ++k) {
      kappa.components.push_back(eh->hom(ri.obj(k), k)[0]);
    }
    out.witness = EquivalenceWitness{F, Q, precompose_transformation(out.big, out.big, theta),
                                     precompose_transformation(out.small, out.small, kappa)};
    out.witness.unit.source   = identity_functor(out.big.category);
    out.witness.unit.target   = compose(Q, F);
    out.witness.counit.source = compose(F, Q);
    out.witness.counit.target = identity_functor(out.small.category);
    out.valid                 = is_valid_equivalence(out.witness);

    out.acting = product_monoid(*G, *hm);
    auto rho_big   = chaotic_right_translations(hprime, ehp);
    auto rho_small = chaotic_right_translations(hm, eh);
    std::vector<Functor> dom_big, dom_small, cod;
    for (std::size_t g = 0; g < G->size(); ++g) {
      for (std::size_t k = 0; k < hm->size(); ++k) {
        dom_big.push_back(rho_big[h[k]]);
        dom_small.push_back(rho_small[k]);
        cod.push_back(c.act[g]);
      }
    }
    out.big_action   = functor_category_action(out.big, out.acting, dom_big, cod);
    out.small_action = functor_category_action(out.small, out.acting, dom_small, cod);
    out.equivariant =
        out.valid && is_equivariant_equivalence(out.witness, out.big_action, out.small_action);

    out.fixed.scope = "graph subgroups of every phi : H -> G";
    for (auto const& phi : all_homomorphisms(*hm, *G)) {
      Subgroup gamma;
      for (std::size_t k = 0; k < hm->size(); ++k) {
        gamma.push_back(phi[k] * static_cast<int>(hm->size()) + k);
      }
      std::sort(gamma.begin(), gamma.end());
      WeakEqCertificate cert;
      cert.kind = CertKind::equivalence;
      try {
        auto fb = fixed_category(out.big_action, gamma);
        auto fs = fixed_category(out.small_action, gamma);
        auto fw = fixed_witness(out.witness, fb, fs);
        cert.passed = is_valid_equivalence(fw);
        if (cert.passed && is_isomorphism(fw.functor)) {
          cert.kind = CertKind::isomorphism;
        }
        cert.detail = cert.passed ? "restricted witness is valid" : "restricted witness is invalid";
        cert.witness = std::move(fw);
      } catch (Error const& e) {
        cert.passed = false;
        cert.detail = e.what();
      }
      out.fixed.passed = out.fixed.passed && cert.passed;
      out.fixed.rows.push_back({phi_label(*hm, all_elements(*hm), phi, *G), std::move(cert)});
    }
    out.sufficient = out.valid && out.equivariant && out.fixed.passed;
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Cells and saturation
  ////////////////////////////////////////////////////////////////////////

  ChaoticCell chaotic_cell(MonoidPtr const&        hprime,
                           Subgroup const&         k,
                           std::vector<int> const& psi,
                           MonoidPtr const&        g,
                           Limits const&           limits) {
    require_group(*hprime);
    require_group(*g);
    require_subgroup(*hprime, k);
    MonoidPtr km = subgroup_monoid(*hprime, k);
    check_homomorphism(*km, *g, psi);
    CatAction left = chaotic_left_translation(hprime);
    CatPtr    ehp  = left.carrier;
    CatPtr    gd   = discrete_category(g->names());
    CatPtr    prod = product_category(ehp, gd, limits);
    auto      rho  = chaotic_right_translations(hprime, ehp);

    auto mult = [&](bool on_left, int x) {
      std::vector<ObjId> o;
      for (std::size_t y = 0; y < g->size(); ++y) {
        o.push_back(on_left ? g->mul(x, y) : g->mul(y, x));
      }
      return discrete_functor(gd, std::move(o));
    };

    CatAction kact{km, prod, {}};
    for (std::size_t i = 0; i < k.size(); ++i) {
      int kinv = hprime->inverse(k[i]);
      kact.act.push_back(
          product_functor(rho[kinv], mult(false, g->inverse(psi[i])), prod, prod));
    }
    check_action(kact);

    ChaoticCell out;
    out.hprime   = hprime;
    out.g        = g;
    out.ambient  = product_monoid(*hprime, *g);
    out.quotient = quotient_by_free_action(kact);
    CatAction amb{out.ambient, prod, {}};
    for (std::size_t h = 0; h < hprime->size(); ++h) {
      for (std::size_t x = 0; x < g->size(); ++x) {
        amb.act.push_back(product_functor(left.act[h], mult(true, x), prod, prod));
      }
    }
    out.action = descend_action(amb, out.quotient);
    std::vector<int> incl;
    for (std::size_t x = 0; x < g->size(); ++x) {
      incl.push_back(hprime->unit() * static_cast<int>(g->size()) + x);
    }
    out.g_action = restrict_action(out.action, g, incl);
    return out;
  }

  ChaoticActionAvatar trivial_avatar(CatPtr const& c, MonoidPtr const& hprime, MonoidPtr const& g) {
    ChaoticActionAvatar a;
    a.hprime  = hprime;
    a.g       = g;
    a.ambient = product_monoid(*hprime, *g);
    a.action  = trivial_action(a.ambient, c);
    std::vector<MorId> ids;
    for (std::size_t x = 0; x < c->num_objects(); ++x) {
      ids.push_back(c->identity(x));
    }
    a.shift.assign(hprime->size() * hprime->size(), ids);
    return a;
  }

  ChaoticActionAvatar cell_avatar(ChaoticCell const& cell) {
    ChaoticActionAvatar a;
    a.hprime  = cell.hprime;
    a.g       = cell.g;
    a.ambient = cell.ambient;
    a.action  = cell.action;
    Functor const& p    = cell.quotient.projection;
    FinCat const&  prod = *p.source;
    FinCat const&  q    = *cell.quotient.category;
    std::size_t    nh = cell.hprime->size(), ng = cell.g->size();
    CatPtr         ehp = chaotic_left_translation(cell.hprime).carrier;
    std::size_t    ngm = ng;  // the discrete factor has one morphism per object
    std::vector<ObjId> rep(q.num_objects(), kNone);
    for (std::size_t x = 0; x < prod.num_objects(); ++x) {
      if (rep[p.obj(x)] == kNone) {
        rep[p.obj(x)] = x;
      }
    }
    CatPtr gd = discrete_category(cell.g->names());
    a.shift.assign(nh * nh, std::vector<MorId>(q.num_objects(), kNone));
    for (std::size_t m1 = 0; m1 < nh; ++m1) {
      for (std::size_t m2 = 0; m2 < nh; ++m2) {
        for (std::size_t c = 0; c < q.num_objects(); ++c) {
          int   m = rep[c] / static_cast<int>(ng), x = rep[c] % static_cast<int>(ng);
          MorId e = ehp->hom(cell.hprime->mul(m1, m), cell.hprime->mul(m2, m))[0];
          a.shift[m2 * nh + m1][c] = p.mor(e * static_cast<int>(ngm) + gd->identity(x));
        }
      }
    }
    check_avatar(a);
    return a;
  }

  void check_avatar(ChaoticActionAvatar const& a) {
    check_action(a.action);
    FinCat const& c  = *a.action.carrier;
    FinMonoid const& H = *a.hprime;
    std::size_t   nh = H.size(), ng = a.g->size();
    auto bad = [](std::string const& why) {
      throw Error(ErrorKind::malformed_input, "invalid chaotic action: " + why);
    };
    auto act = [&](int h, int x) -> Functor const& {
      return a.action.act[h * ng + x];
    };
    int e = a.g->unit();
    if (a.shift.size() != nh * nh) {
      bad("wrong number of structure maps");
    }
    for (std::size_t m1 = 0; m1 < nh; ++m1) {
      for (std::size_t m2 = 0; m2 < nh; ++m2) {
        auto const& s = a.shift[m2 * nh + m1];
        for (std::size_t x = 0; x < c.num_objects(); ++x) {
          MorId f = s[x];
          if (f < 0 || static_cast<std::size_t>(f) >= c.num_morphisms()
              || c.source(f) != act(m1, e).obj(x) || c.target(f) != act(m2, e).obj(x)) {
            bad("structure map has the wrong endpoints");
          }
          if (m1 == m2 && !c.is_identity(f)) {
            bad("structure map on the diagonal is not an identity");
          }
          for (std::size_t m3 = 0; m3 < nh; ++m3) {
            if (c.compose(a.shift[m3 * nh + m2][x], f) != a.shift[m3 * nh + m1][x]) {
              bad("structure maps do not compose");
            }
          }
          for (std::size_t n = 0; n < nh; ++n) {
            if (act(n, e).mor(f) != a.shift[H.mul(n, m2) * nh + H.mul(n, m1)][x]) {
              bad("structure maps are not compatible with the left action");
            }
            ObjId nx = act(n, e).obj(x);
            if (a.shift[m2 * nh + m1][nx] != a.shift[H.mul(m2, n) * nh + H.mul(m1, n)][x]) {
              bad("structure maps are not compatible with composition of the action");
            }
          }
          for (std::size_t g = 0; g < ng; ++g) {
            if (act(H.unit(), g).mor(f) != s[act(H.unit(), g).obj(x)]) {
              bad("structure maps are not G-equivariant");
            }
          }
        }
        for (std::size_t u = 0; u < c.num_morphisms(); ++u) {
          if (c.compose(s[c.target(u)], act(m1, e).mor(u))
              != c.compose(act(m2, e).mor(u), s[c.source(u)])) {
            bad("structure maps are not natural");
          }
        }
      }
    }
  }

  std::vector<SubgroupPair> all_subgroup_pairs(FinMonoid const& hprime, FinMonoid const& g) {
    std::vector<SubgroupPair> out;
    for (auto const& s : all_subgroups(hprime)) {
      MonoidPtr hm = subgroup_monoid(hprime, s);
      for (auto& phi : all_homomorphisms(*hm, g)) {
        out.push_back({s, std::move(phi)});
      }
    }
    return out;
  }

  SaturationReport saturation_check(ChaoticActionAvatar const&       c,
                                    std::vector<SubgroupPair> const& pairs,
                                    int                              cap,
                                    Limits const&                    limits) {
    check_avatar(c);
    FinMonoid const& H  = *c.hprime;
    std::size_t      nh = H.size(), ng = c.g->size();
    CatPtr           C  = c.action.carrier;
    CatPtr           eh = chaotic_left_translation(c.hprime).carrier;
    auto             rho = chaotic_right_translations(c.hprime, eh);
    auto act = [&](int h, int x) -> Functor const& {
      return c.action.act[h * ng + x];
    };
    int e = c.g->unit();

    // η(x) = (m ↦ (m, e)·x) with the shifts as structure maps
    auto eta_object = [&](ObjId x) {
      Functor X{eh, C, {}, {}};
      for (std::size_t m = 0; m < nh; ++m) {
        X.objects.push_back(act(m, e).obj(x));
      }
      for (std::size_t u = 0; u < eh->num_morphisms(); ++u) {
        X.morphisms.push_back(c.shift[eh->target(u) * nh + eh->source(u)][x]);
      }
      if (!is_functor(X)) {
        throw Error(ErrorKind::not_a_functor, "the structure maps at an object do not form a functor");
      }
      return X;
    };

    SaturationReport out;
    out.table.scope = "E(H') in place of the universal chaotic monoid; supplied (H, phi) pairs only";
    for (auto const& p : pairs) {
      require_subgroup(H, p.h);
      // (h, g)·X = g·X∘ρ_h, forgetting the H′-part of the action on C
      std::vector<std::pair<Functor const*, Functor const*>> gamma;
      for (std::size_t k = 0; k < p.h.size(); ++k) {
        gamma.emplace_back(&rho[p.h[k]], &act(H.unit(), p.phi[k]));
      }
      auto fixed_functor_pred = [&](Functor const& X) {
        for (auto const& [dom, cod] : gamma) {
          if (!(compose(*cod, compose(X, *dom)) == X)) {
            return false;
          }
        }
        return true;
      };
      auto fixed_trans_pred = [&](Functor const&, Functor const&, std::vector<MorId> const& a) {
        for (auto const& [dom, cod] : gamma) {
          for (std::size_t t = 0; t < a.size(); ++t) {
            if (cod->mor(a[dom->obj(t)]) != a[t]) {
              return false;
            }
          }
        }
        return true;
      };
      FunctorCategory ff = functor_subcategory(eh, C, fixed_functor_pred, fixed_trans_pred, limits);
      auto            fc = fixed_category(c.action, graph_elements(p.h, p.phi, ng));

      Functor eta_p{fc.category, ff.category, {}, {}};
      for (std::size_t x = 0; x < fc.category->num_objects(); ++x) {
        auto id = ff.index_of(eta_object(fc.inclusion.obj(x)));
        if (!id) {
          throw Error(ErrorKind::equivariance_violation, "eta does not preserve fixed objects");
        }
        eta_p.objects.push_back(*id);
      }
      for (std::size_t u = 0; u < fc.category->num_morphisms(); ++u) {
        MorId              v = fc.inclusion.mor(u);
        std::vector<MorId> comps;
        for (std::size_t m = 0; m < nh; ++m) {
          comps.push_back(act(m, e).mor(v));
        }
        auto id = ff.index_of(eta_p.obj(fc.category->source(u)), eta_p.obj(fc.category->target(u)),
                              comps);
        if (!id) {
          throw Error(ErrorKind::not_natural, "the action on a morphism is not natural");
        }
        eta_p.morphisms.push_back(*id);
      }
      check_functor(eta_p);

      std::string label = phi_label(H, p.h, p.phi, *c.g);
      auto        cert  = equivalence_certificate(eta_p, std::nullopt, limits);
      if (!cert) {
        cert = failed_search(eta_p, cap, limits,
                             "no equivalence of fixed points: "
                                 + std::to_string(fc.category->num_objects()) + " vs "
                                 + std::to_string(ff.category->num_objects()) + " objects");
      }
      cert->cap        = cap;
      out.table.passed = out.table.passed && cert->passed;
      out.table.rows.push_back({label, std::move(*cert)});
      out.fixed_fun.push_back(std::move(ff));
      out.eta.push_back(std::move(eta_p));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Generators
  ////////////////////////////////////////////////////////////////////////

  namespace {
    constexpr std::pair<ModelTag, char const*> kModelNames[] = {
        {ModelTag::thomason, "thomason"},
        {ModelTag::global, "global"},
        {ModelTag::f_model, "f_model"},
        {ModelTag::g_global_thin, "g_global_thin"},
        {ModelTag::g_global_thick_avatar, "g_global_thick_avatar"},
        {ModelTag::g_homotopy_fp, "g_homotopy_fp"},
        {ModelTag::g_homotopy_fp_thick, "g_homotopy_fp_thick"},
    };

    void need(bool ok, std::string const& what) {
      if (!ok) {
        throw Error(ErrorKind::malformed_input, "generator parameters: " + what);
      }
    }

    std::pair<CatAction, std::string> generator_cell(GeneratorSpec const& s, Limits const& limits) {
      switch (s.model) {
        case ModelTag::thomason:
          return {trivial_action(trivial_group(), terminal_category()), "1"};
        case ModelTag::global:
          need(s.h != nullptr, "global needs h");
          require_group(*s.h);
          return {trivial_action(trivial_group(), delooping(*s.h)), "BH"};
        case ModelTag::f_model:
          need(s.g != nullptr, "f_model needs g and sub");
          require_group(*s.g);
          require_subgroup(*s.g, s.sub);
          return {coset_category(s.g, s.sub), "G/H"};
        case ModelTag::g_global_thin: {
          need(s.g && s.h, "g_global_thin needs h, g and phi");
          Subgroup all = all_elements(*s.h);
          return {chaotic_cell(s.h, all, s.phi, s.g, limits).g_action, "E(H)x_phi G"};
        }
        case ModelTag::g_global_thick_avatar:
          need(s.g && s.h, "g_global_thick_avatar needs h, sub, g and phi");
          return {chaotic_cell(s.h, s.sub, s.phi, s.g, limits).g_action, "E(H')x_phi G"};
        case ModelTag::g_homotopy_fp: {
          need(s.g != nullptr, "g_homotopy_fp needs g and sub");
          std::vector<int> incl = s.sub;
          return {chaotic_cell(s.g, s.sub, incl, s.g, limits).g_action, "E(G)x_H G"};
        }
        case ModelTag::g_homotopy_fp_thick: {
          need(s.g && s.h, "g_homotopy_fp_thick needs h, sub, g and phi");
          std::set<int> img(s.phi.begin(), s.phi.end());
          need(img.size() == s.phi.size(), "phi must be injective");
          return {chaotic_cell(s.h, s.sub, s.phi, s.g, limits).g_action, "E(H')x_H G"};
        }
      }
      throw Error(ErrorKind::malformed_input, "unknown model");
    }

  }  // namespace

  CatAction coset_category(MonoidPtr const& g, Subgroup const& h) {
    std::vector<Subgroup> cosets;
    std::map<int, int>    of;
    for (std::size_t x = 0; x < g->size(); ++x) {
      if (of.contains(x)) {
        continue;
      }
      Subgroup c;
      for (int k : h) {
        c.push_back(g->mul(x, k));
      }
      std::sort(c.begin(), c.end());
      for (int y : c) {
        of[y] = cosets.size();
      }
      cosets.push_back(std::move(c));
    }
    std::vector<std::string> names;
    for (auto const& c : cosets) {
      names.push_back(subgroup_label(*g, c));
    }
    CatPtr    d = discrete_category(names);
    CatAction a{g, d, {}};
    for (std::size_t x = 0; x < g->size(); ++x) {
      std::vector<ObjId> o;
      for (auto const& c : cosets) {
        o.push_back(of.at(g->mul(x, c[0])));
      }
      a.act.push_back(discrete_functor(d, std::move(o)));
    }
    check_action(a);
    return a;
  }

  char const* to_string(ModelTag t) noexcept {
    for (auto const& [tag, name] : kModelNames) {
      if (tag == t) {
        return name;
      }
    }
    return "?";
  }

  std::optional<ModelTag> model_from_string(std::string const& s) {
    for (auto const& [tag, name] : kModelNames) {
      if (s == name) {
        return tag;
      }
    }
    return std::nullopt;
  }

  std::vector<Generator> generating_maps(GeneratorSpec const& spec, Limits const& limits) {
    if (spec.n_min < 0 || spec.n_max > 3 || spec.n_min > spec.n_max) {
      throw Error(ErrorKind::bad_index, "dimension range must lie in 0..3");
    }
    auto [cell, cell_name] = generator_cell(spec, limits);
    CatPtr                 S = cell.carrier;
    std::vector<Generator> out;
    for (int n = spec.n_min; n <= spec.n_max; ++n) {
      std::vector<std::pair<OrderedComplex, int>> sources;
      if (!spec.acyclic) {
        sources.push_back({boundary_complex(n), -1});
      } else if (n >= 1) {
        for (int k = 0; k <= n; ++k) {
          sources.push_back({horn_complex(n, k), k});
        }
      }
      OrderedComplex simplex = simplex_complex(n);
      for (auto const& [k_complex, k] : sources) {
        Generator gen;
        gen.n            = n;
        gen.k            = k;
        gen.cell         = cell;
        gen.poset_source = h_sd2(k_complex);
        gen.poset_target = h_sd2(simplex);
        Functor inc      = h_sd2_map(k_complex, simplex);
        CatPtr  A        = product_category(S, gen.poset_source, limits);
        CatPtr  B        = product_category(S, gen.poset_target, limits);
        gen.map          = product_functor(identity_functor(S), inc, A, B);
        check_functor(gen.map);
        gen.source_action =
            product_action(cell, trivial_action(cell.monoid, gen.poset_source), A);
        gen.target_action =
            product_action(cell, trivial_action(cell.monoid, gen.poset_target), B);
        check_equivariant(gen.map, gen.source_action, gen.target_action);
        std::string K = k < 0 ? "bd D^" + std::to_string(n)
                              : "L^" + std::to_string(n) + "_" + std::to_string(k);
        gen.name = std::string(to_string(spec.model)) + ": " + cell_name + " x hSd2(" + K
                   + " -> D^" + std::to_string(n) + ")";
        out.push_back(std::move(gen));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Transfer hypotheses
  ////////////////////////////////////////////////////////////////////////

  namespace {

    struct UImage {
      CatPtr                                           base;
      std::optional<FunctorCategory>                   fun;
      std::vector<std::pair<std::string, Subcategory>> parts;
    };

    UImage u_image(RightAdjointAvatar const& u, CatAction const& x, Limits const& limits) {
      UImage out;
      switch (u.kind) {
        case RightAdjointAvatar::identity:
          out.base = x.carrier;
          out.parts.push_back({"underlying", Subcategory{x.carrier, identity_functor(x.carrier)}});
          break;
        case RightAdjointAvatar::fixed_points:
          out.base = x.carrier;
          out.parts.push_back({"fixed " + subgroup_label(*x.monoid, u.fixed),
                               fixed_category(x, u.fixed)});
          break;
        case RightAdjointAvatar::fun_chaotic: {
          CatPtr et = chaotic_left_translation(u.t).carrier;
          out.fun   = functor_category(et, x.carrier, limits);
          out.base  = out.fun->category;
          auto rho  = chaotic_right_translations(u.t, et);
          std::size_t ng = x.monoid->size();
          std::vector<Functor> dom, cod;
          for (std::size_t s = 0; s < u.t->size(); ++s) {
            for (std::size_t g = 0; g < ng; ++g) {
              dom.push_back(rho[s]);
              cod.push_back(x.act[g]);
            }
          }
          MonoidPtr amb = product_monoid(*u.t, *x.monoid);
          CatAction act = functor_category_action(*out.fun, amb, dom, cod);
          for (auto const& p : all_subgroup_pairs(*u.t, *x.monoid)) {
            out.parts.push_back({phi_label(*u.t, p.h, p.phi, *x.monoid),
                                 fixed_category(act, graph_elements(p.h, p.phi, ng))});
          }
          break;
        }
      }
      return out;
    }

    Functor u_ambient(Functor const& f, UImage const& a, UImage const& b) {
      if (a.fun) {
        return postcompose(*a.fun, *b.fun, f);
      }
      return f;
    }

    std::string verdict(bool ok) {
      return ok ? "pass" : "FAIL";
    }

    // G-stable full subcategories growing by one orbit of objects at a time.
    std::vector<std::vector<ObjId>> orbit_filtration(CatAction const& x) {
      FinCat const&      c = *x.carrier;
      std::vector<char>  seen(c.num_objects(), 0);
      std::vector<ObjId> cur;
      std::vector<std::vector<ObjId>> out;
      for (std::size_t y = 0; y < c.num_objects(); ++y) {
        if (seen[y]) {
          continue;
        }
        for (auto const& F : x.act) {
          if (!seen[F.obj(y)]) {
            seen[F.obj(y)] = 1;
            cur.push_back(F.obj(y));
          }
        }
        std::sort(cur.begin(), cur.end());
        out.push_back(cur);
      }
      return out;
    }

  }  // namespace

  TransferReport check_transfer_conditions(std::vector<Generator> const& i,
                                           std::vector<Generator> const& j,
                                           RightAdjointAvatar const&     u,
                                           int                           cap,
                                           Limits const&                 limits) {
    TransferReport out;
    auto note = [](ConditionReport& r, bool ok, std::string line) {
      r.passed = r.passed && ok;
      r.lines.push_back(verdict(ok) + " " + std::move(line));
    };

    // U F j is a weak equivalence
    for (auto const& gen : j) {
      UImage a = u_image(u, gen.source_action, limits);
      UImage b = u_image(u, gen.target_action, limits);
      Functor uj = u_ambient(gen.map, a, b);
      for (std::size_t p = 0; p < a.parts.size(); ++p) {
        auto cert = homology_certificate(fixed_functor(uj, a.parts[p].second, b.parts[p].second),
                                         cap, limits);
        note(out.acyclic_images, cert.passed,
             gen.name + " [" + a.parts[p].first + "]" + (cert.passed ? "" : ": " + cert.detail));
      }
    }

    // pushouts along F i go to homotopy pushouts
    for (auto const& gen : i) {
      DwyerEquivariance eq{gen.source_action, gen.target_action};
      auto              w = find_dwyer_witness(gen.map, eq, limits);
      if (!w) {
        note(out.homotopy_pushouts, false, gen.name + ": no equivariant Dwyer witness");
        continue;
      }
      CatPtr A = gen.map.source;
      std::vector<std::pair<std::string, std::pair<Functor, CatAction>>> legs;
      legs.push_back({"identity", {identity_functor(A), gen.source_action}});
      legs.push_back({"collapse",
                      {product_projection_first(A, gen.cell.carrier, gen.poset_source), gen.cell}});
      for (auto const& [leg_name, leg] : legs) {
        auto const& [c, cact] = leg;
        std::string tag       = gen.name + " along " + leg_name;
        auto        ep        = equivariant_dwyer_pushout(c, *w, eq, cact, limits);
        auto const& D         = ep.pushout;
        UImage ua = u_image(u, gen.source_action, limits);
        UImage ub = u_image(u, gen.target_action, limits);
        UImage uc = u_image(u, cact, limits);
        UImage ud = u_image(u, ep.action, limits);
        Functor Ui = u_ambient(gen.map, ua, ub), Uc = u_ambient(c, ua, uc);
        Functor Ud = u_ambient(D.from_b, ub, ud), Uj = u_ambient(D.from_c, uc, ud);

        if (u.kind == RightAdjointAvatar::fun_chaotic) {
          // the Dwyer-closure route: Fun(T, i) is a Dwyer map and its
          // pushout maps isomorphically to Fun(T, D)
          CatPtr et = chaotic_left_translation(u.t).carrier;
          auto   fw = fun_witness(et, *w, limits);
          auto   P  = dwyer_pushout(Uc, fw.witness, limits);
          auto   k  = dwyer_pushout_induced(P, Uc, fw.witness, Ud, Uj);
          bool   ok = is_isomorphism(k);
          note(out.homotopy_pushouts, ok,
               tag + " [underlying]: pushout of U-images " + (ok ? "is" : "is not")
                   + " isomorphic to U(pushout)");
        }
        for (std::size_t p = 0; p < ua.parts.size(); ++p) {
          auto const& sa = ua.parts[p].second;
          auto const& sb = ub.parts[p].second;
          auto const& sc = uc.parts[p].second;
          auto const& sd = ud.parts[p].second;
          auto na = nerve(sa.category, cap, limits), nb = nerve(sb.category, cap, limits);
          auto nc = nerve(sc.category, cap, limits), nd = nerve(sd.category, cap, limits);
          auto ni   = nerve_map(fixed_functor(Ui, sa, sb), na, nb);
          auto nci  = nerve_map(fixed_functor(Uc, sa, sc), na, nc);
          auto sp   = pushout(ni, nci);
          auto cmp  = pushout_induced(sp, ni, nerve_map(fixed_functor(Ud, sb, sd), nb, nd),
                                      nerve_map(fixed_functor(Uj, sc, sd), nc, nd));
          auto cert = homology_certificate(cmp);
          note(out.homotopy_pushouts, cert.passed,
               tag + " [" + ua.parts[p].first + "]: nerve pushout vs U(pushout)"
                   + (cert.passed ? "" : ": " + cert.detail));
        }
      }
    }

    // filtered colimits, on finite chains of G-stable full subcategories
    for (auto const& gen : i) {
      CatAction const& bact  = gen.target_action;
      UImage           ub    = u_image(u, bact, limits);
      auto             chain = orbit_filtration(bact);
      for (std::size_t p = 0; p < ub.parts.size(); ++p) {
        auto const& top = ub.parts[p].second;
        std::vector<char> obj(top.category->num_objects(), 0), mor(top.category->num_morphisms(), 0);
        bool              injective = true;
        for (auto const& stage : chain) {
          Subcategory sub  = full_subcategory(bact.carrier, stage);
          CatAction   sact = restrict_to_subcategory(bact, sub);
          UImage      us   = u_image(u, sact, limits);
          Functor     inc  = fixed_functor(u_ambient(sub.inclusion, us, ub), us.parts[p].second, top);
          injective = injective && is_injective_on_objects(inc);
          std::set<MorId> seen;
          for (MorId f : inc.morphisms) {
            injective = injective && seen.insert(f).second;
            mor[f]    = 1;
          }
          for (ObjId x : inc.objects) {
            obj[x] = 1;
          }
        }
        bool covered = std::all_of(obj.begin(), obj.end(), [](char c) { return c; })
                       && std::all_of(mor.begin(), mor.end(), [](char c) { return c; });
        bool ok = injective && covered;
        note(out.filtered_colimits, ok,
             gen.name + " [" + ub.parts[p].first + "]: colimit of " + std::to_string(chain.size())
                 + " stages" + (ok ? " is isomorphic to U(colimit)"
                                   : (injective ? " misses part of U(colimit)"
                                                : " has non-injective stage maps")));
      }
    }
    out.passed = out.acyclic_images.passed && out.homotopy_pushouts.passed
                 && out.filtered_colimits.passed;
    return out;
  }

}  // namespace gcat
