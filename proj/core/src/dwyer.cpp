//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/dwyer.hpp"

#include <algorithm>
#include <map>

namespace gcat {

  namespace {

    std::string q(std::string const& s) {
      return "'" + s + "'";
    }

    void require_inclusion(Functor const& i) {
      check_functor(i);
      if (!is_injective_on_objects(i) || !is_fully_faithful(i)) {
        throw Error(ErrorKind::not_a_subcategory_inclusion,
                    "functor is not injective on objects and fully faithful");
      }
    }

    std::vector<int> preimage_objects(Functor const& i) {
      std::vector<int> pre(i.target->num_objects(), kNone);
      for (std::size_t a = 0; a < i.objects.size(); ++a) {
        pre[i.objects[a]] = a;
      }
      return pre;
    }

    std::vector<int> preimage_morphisms(Functor const& i) {
      std::vector<int> pre(i.target->num_morphisms(), kNone);
      for (std::size_t a = 0; a < i.morphisms.size(); ++a) {
        pre[i.morphisms[a]] = a;
      }
      return pre;
    }

    bool same_shape(FinCat const& a, FinCat const& b) {
      if (&a == &b) {
        return true;
      }
      if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) {
        return false;
      }
      for (std::size_t x = 0; x < a.num_objects(); ++x) {
        if (a.object_name(x) != b.object_name(x)) {
          return false;
        }
      }
      for (std::size_t f = 0; f < a.num_morphisms(); ++f) {
        if (a.morphism_name(f) != b.morphism_name(f) || a.source(f) != b.source(f)
            || a.target(f) != b.target(f)) {
          return false;
        }
      }
      return true;
    }

    [[noreturn]] void bad_witness(std::string const& why) {
      throw Error(ErrorKind::malformed_input, "invalid Dwyer witness: " + why);
    }

    // Morphism of B carried by a morphism of the cosieve.
    MorId in_b(DwyerWitness const& w, MorId x) {
      return w.cosieve.inclusion.morphisms[x];
    }

  }  // namespace

  bool is_sieve(Functor const& i) {
    require_inclusion(i);
    auto          pre = preimage_objects(i);
    FinCat const& B   = *i.target;
    for (std::size_t m = 0; m < B.num_morphisms(); ++m) {
      if (pre[B.target(m)] != kNone && pre[B.source(m)] == kNone) {
        return false;
      }
    }
    return true;
  }

  bool is_cosieve(Functor const& j) {
    require_inclusion(j);
    auto          pre = preimage_objects(j);
    FinCat const& B   = *j.target;
    for (std::size_t m = 0; m < B.num_morphisms(); ++m) {
      if (pre[B.source(m)] != kNone && pre[B.target(m)] == kNone) {
        return false;
      }
    }
    return true;
  }

  void check_witness(DwyerWitness const&                     w,
                     std::optional<DwyerEquivariance> const& eq,
                     bool                                    normalized) {
    FinCat const& A = *w.i.source;
    FinCat const& B = *w.i.target;
    if (!is_sieve(w.i)) {
      throw Error(ErrorKind::not_a_subcategory_inclusion, "i is not a sieve");
    }
    if (!same_shape(*w.cosieve.inclusion.target, B)) {
      bad_witness("the cosieve lives in another category");
    }
    if (!is_cosieve(w.cosieve.inclusion)) {
      throw Error(ErrorKind::not_a_subcategory_inclusion, "X is not a cosieve");
    }
    FinCat const& X = *w.cosieve.category;
    check_functor(w.f);
    check_functor(w.r);
    if (!same_shape(*w.f.source, A) || !same_shape(*w.f.target, X)
        || !same_shape(*w.r.source, X) || !same_shape(*w.r.target, A)) {
      bad_witness("f or r has the wrong endpoints");
    }
    Functor kf = compose(w.cosieve.inclusion, w.f);
    if (kf.objects != w.i.objects || kf.morphisms != w.i.morphisms) {
      bad_witness("i does not factor through X");
    }
    check_natural(w.unit);
    check_natural(w.counit);
    Functor rf = compose(w.r, w.f);
    Functor fr = compose(w.f, w.r);
    if (w.unit.source.objects != identity_functor(w.i.source).objects
        || w.unit.source.morphisms != identity_functor(w.i.source).morphisms
        || w.unit.target.objects != rf.objects || w.unit.target.morphisms != rf.morphisms) {
      bad_witness("the unit is not a transformation id => r f");
    }
    if (w.counit.source.objects != fr.objects || w.counit.source.morphisms != fr.morphisms
        || w.counit.target.objects != identity_functor(w.cosieve.category).objects) {
      bad_witness("the counit is not a transformation f r => id");
    }
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      ObjId fa = w.f.obj(a);
      if (X.compose(w.counit.components[fa], w.f.mor(w.unit.components[a]))
          != X.identity(fa)) {
        bad_witness("triangle identity fails at " + q(A.object_name(a)));
      }
    }
    for (std::size_t y = 0; y < X.num_objects(); ++y) {
      ObjId ry = w.r.obj(y);
      if (A.compose(w.r.mor(w.counit.components[y]), w.unit.components[ry])
          != A.identity(ry)) {
        bad_witness("triangle identity fails at " + q(X.object_name(y)));
      }
    }
    if (normalized) {
      for (std::size_t a = 0; a < A.num_objects(); ++a) {
        if (!A.is_identity(w.unit.components[a])) {
          throw Error(ErrorKind::witness_not_normalized,
                      "unit component at " + q(A.object_name(a)) + " is not an identity");
        }
      }
    }
    if (!eq) {
      return;
    }
    check_equivariant(w.i, eq->a, eq->b);
    auto pre_x = preimage_objects(w.cosieve.inclusion);
    for (std::size_t g = 0; g < eq->b.act.size(); ++g) {
      Functor const& bg = eq->b.act[g];
      Functor const& ag = eq->a.act[g];
      std::string    el = q(eq->b.monoid->name(g));
      for (std::size_t y = 0; y < X.num_objects(); ++y) {
        ObjId gy = pre_x[bg.obj(w.cosieve.inclusion.obj(y))];
        if (gy == kNone) {
          throw Error(ErrorKind::equivariance_violation, "X is not stable under " + el);
        }
        if (w.r.obj(gy) != ag.obj(w.r.obj(y))) {
          throw Error(ErrorKind::equivariance_violation, "r is not equivariant for " + el);
        }
        if (in_b(w, w.counit.components[gy]) != bg.mor(in_b(w, w.counit.components[y]))) {
          throw Error(ErrorKind::equivariance_violation,
                      "the counit is not equivariant for " + el);
        }
      }
      auto pre_xm = preimage_morphisms(w.cosieve.inclusion);
      for (std::size_t u = 0; u < X.num_morphisms(); ++u) {
        MorId gu = pre_xm[bg.mor(in_b(w, u))];
        if (gu == kNone || w.r.mor(gu) != ag.mor(w.r.mor(u))) {
          throw Error(ErrorKind::equivariance_violation, "r is not equivariant for " + el);
        }
      }
      for (std::size_t a = 0; a < A.num_objects(); ++a) {
        if (w.unit.components[ag.obj(a)] != ag.mor(w.unit.components[a])) {
          throw Error(ErrorKind::equivariance_violation,
                      "the unit is not equivariant for " + el);
        }
      }
    }
  }

  bool is_valid_witness(DwyerWitness const&                     w,
                        std::optional<DwyerEquivariance> const& eq,
                        bool                                    normalized) {
    try {
      check_witness(w, eq, normalized);
      return true;
    } catch (Error const&) {
      return false;
    }
  }

  DwyerWitness assemble_witness(Functor const&            i,
                                std::vector<ObjId> const& cosieve_objects,
                                std::vector<ObjId> const& r_objects,
                                std::vector<MorId> const& counit_components) {
    FinCat const& A = *i.source;
    FinCat const& B = *i.target;
    DwyerWitness  w;
    w.i       = i;
    w.cosieve = full_subcategory(i.target, cosieve_objects);
    FinCat const& X     = *w.cosieve.category;
    auto          pre_x = preimage_objects(w.cosieve.inclusion);
    auto          pre_m = preimage_morphisms(w.cosieve.inclusion);
    // full_subcategory may reorder; index the inputs by B object
    std::vector<ObjId> r_of(B.num_objects(), kNone);
    std::vector<MorId> eps_of(B.num_objects(), kNone);
    for (std::size_t k = 0; k < cosieve_objects.size(); ++k) {
      r_of[cosieve_objects[k]]   = r_objects[k];
      eps_of[cosieve_objects[k]] = counit_components[k];
    }
    w.f = Functor{i.source, w.cosieve.category, {}, {}};
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      if (pre_x[i.obj(a)] == kNone) {
        bad_witness("X does not contain the image of " + q(A.object_name(a)));
      }
      w.f.objects.push_back(pre_x[i.obj(a)]);
    }
    for (std::size_t m = 0; m < A.num_morphisms(); ++m) {
      w.f.morphisms.push_back(pre_m[i.mor(m)]);
    }
    w.r = Functor{w.cosieve.category, i.source, {}, {}};
    std::vector<MorId> eps(X.num_objects());
    for (std::size_t y = 0; y < X.num_objects(); ++y) {
      ObjId yb = w.cosieve.inclusion.obj(y);
      w.r.objects.push_back(r_of[yb]);
      eps[y] = pre_m[eps_of[yb]];
      if (eps[y] == kNone || B.source(eps_of[yb]) != i.obj(r_of[yb])
          || B.target(eps_of[yb]) != yb) {
        bad_witness("counit component at " + q(B.object_name(yb)) + " has wrong endpoints");
      }
    }
    for (std::size_t u = 0; u < X.num_morphisms(); ++u) {
      MorId ub = w.cosieve.inclusion.mor(u);
      ObjId y = X.source(u), y2 = X.target(u);
      MorId want  = B.compose(ub, eps_of[w.cosieve.inclusion.obj(y)]);
      MorId found = kNone;
      for (MorId g : A.hom(w.r.obj(y), w.r.obj(y2))) {
        if (B.compose(eps_of[w.cosieve.inclusion.obj(y2)], i.mor(g)) == want) {
          if (found != kNone) {
            bad_witness("counit is not universal at " + q(B.morphism_name(ub)));
          }
          found = g;
        }
      }
      if (found == kNone) {
        bad_witness("counit is not universal at " + q(B.morphism_name(ub)));
      }
      w.r.morphisms.push_back(found);
    }
    check_functor(w.r);
    Functor id_a = identity_functor(i.source);
    w.unit       = NatTrans{id_a, compose(w.r, w.f), {}};
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      w.unit.components.push_back(A.identity(a));
    }
    w.counit = NatTrans{compose(w.f, w.r), identity_functor(w.cosieve.category), eps};
    return w;
  }

  namespace {

    // Whether e : i(a) → y is a coreflection of y into A.
    bool is_coreflection(Functor const& i, ObjId a, MorId e, std::size_t& work,
                         Limits const& limits) {
      FinCat const& A = *i.source;
      FinCat const& B = *i.target;
      ObjId         y = B.target(e);
      for (std::size_t a2 = 0; a2 < A.num_objects(); ++a2) {
        auto src = A.hom(a2, a);
        auto dst = B.hom(i.obj(a2), y);
        if (src.size() != dst.size()) {
          return false;
        }
        std::vector<MorId> seen;
        for (MorId g : src) {
          check_cap("coreflection candidates", ++work, limits.max_candidates);
          seen.push_back(B.compose(e, i.mor(g)));
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
          return false;
        }
      }
      return true;
    }

  }  // namespace

  std::optional<DwyerWitness>
  find_dwyer_witness(Functor const&                          i,
                     std::optional<DwyerEquivariance> const& eq,
                     Limits const&                           limits) {
    if (!is_sieve(i)) {
      return std::nullopt;
    }
    FinCat const& A   = *i.source;
    FinCat const& B   = *i.target;
    auto          pre = preimage_objects(i);
    std::size_t   work = 0;

    auto candidates = [&](ObjId y) {
      std::vector<std::pair<ObjId, MorId>> out;
      if (pre[y] != kNone) {
        out.emplace_back(pre[y], B.identity(y));
        return out;
      }
      for (std::size_t a = 0; a < A.num_objects(); ++a) {
        for (MorId e : B.hom(i.obj(a), y)) {
          if (is_coreflection(i, a, e, work, limits)) {
            out.emplace_back(a, e);
          }
        }
      }
      return out;
    };

    std::size_t        nb = B.num_objects();
    std::vector<char>  good(nb, 0);
    std::vector<ObjId> r_obj(nb, kNone);
    std::vector<MorId> eps(nb, kNone);
    if (!eq) {
      for (std::size_t y = 0; y < nb; ++y) {
        auto c = candidates(y);
        if (!c.empty()) {
          good[y]  = 1;
          r_obj[y] = c.front().first;
          eps[y]   = c.front().second;
        }
      }
    } else {
      require_group(*eq->b.monoid);
      check_equivariant(i, eq->a, eq->b);
      std::vector<char> done(nb, 0);
      std::size_t       ng = eq->b.act.size();
      for (std::size_t y = 0; y < nb; ++y) {
        if (done[y]) {
          continue;
        }
        std::vector<int> stab;
        for (std::size_t g = 0; g < ng; ++g) {
          if (eq->b.act[g].obj(y) == static_cast<ObjId>(y)) {
            stab.push_back(g);
          }
        }
        std::optional<std::pair<ObjId, MorId>> pick;
        for (auto [a, e] : candidates(y)) {
          bool fixed = true;
          for (int h : stab) {
            fixed = fixed && eq->a.act[h].obj(a) == a && eq->b.act[h].mor(e) == e;
          }
          if (fixed) {
            pick = std::pair(a, e);
            break;
          }
        }
        for (std::size_t g = 0; g < ng; ++g) {
          ObjId gy = eq->b.act[g].obj(y);
          done[gy] = 1;
          if (pick) {
            good[gy]  = 1;
            r_obj[gy] = eq->a.act[g].obj(pick->first);
            eps[gy]   = eq->b.act[g].mor(pick->second);
          }
        }
      }
    }
    // the largest cosieve inside the admissible objects
    std::vector<char> in_x = good;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t m = 0; m < B.num_morphisms(); ++m) {
        if (in_x[B.source(m)] && !in_x[B.target(m)]) {
          in_x[B.source(m)] = 0;
          changed           = true;
        }
      }
    }
    std::vector<ObjId> xs, rs;
    std::vector<MorId> es;
    for (std::size_t y = 0; y < nb; ++y) {
      if (pre[y] != kNone && !in_x[y]) {
        return std::nullopt;
      }
      if (in_x[y]) {
        xs.push_back(y);
        rs.push_back(r_obj[y]);
        es.push_back(eps[y]);
      }
    }
    DwyerWitness w = assemble_witness(i, xs, rs, es);
    check_witness(w, eq);
    return w;
  }

  DwyerWitness normalize_unit(DwyerWitness const& w) {
    check_witness(w, std::nullopt, false);
    FinCat const& A = *w.i.source;
    FinCat const& X = *w.cosieve.category;
    std::vector<MorId> inv(A.num_objects());
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      inv[a] = A.inverse(w.unit.components[a]);
      if (inv[a] == kNone) {
        throw Error(ErrorKind::unit_not_invertible,
                    "unit component at " + q(A.object_name(a)) + " is not invertible");
      }
    }
    // φ_y : r'(y) → r(y)
    std::vector<int>   from_a(X.num_objects(), kNone);
    std::vector<MorId> phi(X.num_objects()), phi_inv(X.num_objects());
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      from_a[w.f.obj(a)] = a;
    }
    DwyerWitness out = w;
    for (std::size_t y = 0; y < X.num_objects(); ++y) {
      if (from_a[y] != kNone) {
        out.r.objects[y] = from_a[y];
        phi[y]           = w.unit.components[from_a[y]];
        phi_inv[y]       = inv[from_a[y]];
      } else {
        phi[y] = phi_inv[y] = A.identity(w.r.obj(y));
      }
    }
    for (std::size_t u = 0; u < X.num_morphisms(); ++u) {
      out.r.morphisms[u] = A.compose(phi_inv[X.target(u)],
                                     A.compose(w.r.mor(u), phi[X.source(u)]));
    }
    for (std::size_t y = 0; y < X.num_objects(); ++y) {
      out.counit.components[y] = X.compose(w.counit.components[y], w.f.mor(phi[y]));
    }
    out.counit.source = compose(out.f, out.r);
    out.unit          = NatTrans{identity_functor(w.i.source), compose(out.r, out.f), {}};
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      out.unit.components.push_back(A.identity(a));
    }
    check_witness(out);
    return out;
  }

  namespace {

    // Where each morphism of D came from.
    struct Layout {
      enum Kind { from_c, mixed, from_v };
      std::vector<Kind>  kind;
      std::vector<MorId> alpha;  // C morphism (from_c, mixed)
      std::vector<ObjId> y;      // B object of a mixed morphism
      std::vector<MorId> beta;   // B morphism (from_v)
      std::vector<ObjId> v_obj;  // B object ↦ D object, for V
      std::map<std::pair<MorId, ObjId>, MorId> mixed_id;
      std::vector<MorId> v_mor;  // B morphism ↦ D morphism, for V
    };

    DwyerPushout build_pushout(Functor const& c, DwyerWitness const& w,
                               Limits const& limits, Layout& L) {
      check_witness(w);
      if (!same_shape(*c.source, *w.i.source)) {
        throw Error(ErrorKind::malformed_input, "the legs of the span have different sources");
      }
      check_functor(c);
      FinCat const& B     = *w.i.target;
      FinCat const& C     = *c.target;
      auto          pre   = preimage_objects(w.i);
      auto          pre_i = preimage_morphisms(w.i);
      auto          pre_x = preimage_objects(w.cosieve.inclusion);
      auto          pre_xm = preimage_morphisms(w.cosieve.inclusion);
      // c∘r on objects and morphisms of X (indexed by B ids)
      auto cr_obj = [&](ObjId yb) { return c.obj(w.r.obj(pre_x[yb])); };
      auto cr_mor = [&](MorId bb) { return c.mor(w.r.mor(pre_xm[bb])); };

      FinCat::Builder b;
      for (std::size_t x = 0; x < C.num_objects(); ++x) {
        b.add_object(C.object_name(x));
      }
      L.v_obj.assign(B.num_objects(), kNone);
      for (std::size_t y = 0; y < B.num_objects(); ++y) {
        if (pre[y] == kNone) {
          L.v_obj[y] = b.add_object("v:" + B.object_name(y));
        }
      }
      for (std::size_t m = 0; m < C.num_morphisms(); ++m) {
        b.add_morphism(C.morphism_name(m), C.source(m), C.target(m));
        L.kind.push_back(Layout::from_c);
        L.alpha.push_back(m);
        L.y.push_back(kNone);
        L.beta.push_back(kNone);
      }
      for (std::size_t x = 0; x < C.num_objects(); ++x) {
        b.set_identity(x, C.identity(x));
      }
      for (std::size_t y = 0; y < B.num_objects(); ++y) {
        if (pre[y] != kNone || pre_x[y] == kNone) {
          continue;
        }
        for (std::size_t x = 0; x < C.num_objects(); ++x) {
          for (MorId a : C.hom(x, cr_obj(y))) {
            MorId id = b.add_morphism("(" + C.morphism_name(a) + ";v:" + B.object_name(y) + ")",
                                      x, L.v_obj[y]);
            L.mixed_id[{a, static_cast<ObjId>(y)}] = id;
            L.kind.push_back(Layout::mixed);
            L.alpha.push_back(a);
            L.y.push_back(y);
            L.beta.push_back(kNone);
          }
        }
      }
      L.v_mor.assign(B.num_morphisms(), kNone);
      for (std::size_t m = 0; m < B.num_morphisms(); ++m) {
        if (pre[B.source(m)] == kNone && pre[B.target(m)] == kNone) {
          L.v_mor[m] = b.add_morphism("v:" + B.morphism_name(m), L.v_obj[B.source(m)],
                                      L.v_obj[B.target(m)]);
          L.kind.push_back(Layout::from_v);
          L.alpha.push_back(kNone);
          L.y.push_back(kNone);
          L.beta.push_back(m);
        }
      }
      for (std::size_t y = 0; y < B.num_objects(); ++y) {
        if (pre[y] == kNone) {
          b.set_identity(L.v_obj[y], L.v_mor[B.identity(y)]);
        }
      }
      b.compose_all([&](MorId g, MorId f) -> MorId {
        auto kg = L.kind[g], kf = L.kind[f];
        if (kg == Layout::from_c && kf == Layout::from_c) {
          return C.compose(g, f);
        }
        if (kg == Layout::mixed && kf == Layout::from_c) {
          return L.mixed_id.at({C.compose(L.alpha[g], L.alpha[f]), L.y[g]});
        }
        if (kg == Layout::from_v && kf == Layout::mixed) {
          MorId beta = L.beta[g];
          return L.mixed_id.at({C.compose(cr_mor(beta), L.alpha[f]), B.target(beta)});
        }
        if (kg == Layout::from_v && kf == Layout::from_v) {
          return L.v_mor[B.compose(L.beta[g], L.beta[f])];
        }
        throw Error(ErrorKind::malformed_input, "unexpected composable pair in the pushout");
      });
      Limits lim = limits;
      DwyerPushout out;
      out.category = std::move(b).build_shared(lim);
      out.from_c   = Functor{c.target, out.category, {}, {}};
      for (std::size_t x = 0; x < C.num_objects(); ++x) {
        out.from_c.objects.push_back(x);
      }
      for (std::size_t m = 0; m < C.num_morphisms(); ++m) {
        out.from_c.morphisms.push_back(m);
      }
      out.from_b = Functor{w.i.target, out.category, {}, {}};
      for (std::size_t y = 0; y < B.num_objects(); ++y) {
        out.from_b.objects.push_back(pre[y] != kNone ? c.obj(pre[y]) : L.v_obj[y]);
      }
      for (std::size_t m = 0; m < B.num_morphisms(); ++m) {
        ObjId s = B.source(m), t = B.target(m);
        if (pre[s] != kNone && pre[t] != kNone) {
          out.from_b.morphisms.push_back(c.mor(pre_i[m]));
        } else if (pre[s] == kNone && pre[t] == kNone) {
          out.from_b.morphisms.push_back(L.v_mor[m]);
        } else if (pre[s] != kNone) {
          out.from_b.morphisms.push_back(L.mixed_id.at({cr_mor(m), t}));
        } else {
          throw Error(ErrorKind::not_a_subcategory_inclusion, "i is not a sieve");
        }
      }
      check_functor(out.from_c);
      check_functor(out.from_b);
      return out;
    }

  }  // namespace

  DwyerPushout dwyer_pushout(Functor const& c, DwyerWitness const& w, Limits const& limits) {
    Layout L;
    return build_pushout(c, w, limits, L);
  }

  Functor dwyer_pushout_induced(DwyerPushout const& p,
                                Functor const&      c,
                                DwyerWitness const& w,
                                Functor const&      u,
                                Functor const&      v) {
    if (!(compose(u, w.i) == compose(v, c))) {
      throw Error(ErrorKind::malformed_input, "the cocone does not commute on A");
    }
    Layout       L;
    DwyerPushout again = build_pushout(c, w, Limits::sized(p.category->num_objects(),
                                                           p.category->num_morphisms()),
                                       L);
    FinCat const& C     = *c.target;
    FinCat const& B     = *w.i.target;
    auto          pre_x = preimage_objects(w.cosieve.inclusion);
    Functor       out{p.category, u.target, {}, {}};
    for (std::size_t x = 0; x < C.num_objects(); ++x) {
      out.objects.push_back(v.obj(x));
    }
    for (std::size_t y = 0; y < B.num_objects(); ++y) {
      if (L.v_obj[y] != kNone) {
        out.objects.push_back(u.obj(y));
      }
    }
    FinCat const& E = *u.target;
    for (std::size_t m = 0; m < again.category->num_morphisms(); ++m) {
      switch (L.kind[m]) {
        case Layout::from_c:
          out.morphisms.push_back(v.mor(L.alpha[m]));
          break;
        case Layout::mixed: {
          MorId eps = in_b(w, w.counit.components[pre_x[L.y[m]]]);
          out.morphisms.push_back(E.compose(u.mor(eps), v.mor(L.alpha[m])));
          break;
        }
        case Layout::from_v:
          out.morphisms.push_back(u.mor(L.beta[m]));
          break;
      }
    }
    check_functor(out);
    return out;
  }

  EquivariantDwyerPushout equivariant_dwyer_pushout(Functor const&           c,
                                                    DwyerWitness const&      w,
                                                    DwyerEquivariance const& eq,
                                                    CatAction const&         cact,
                                                    Limits const&            limits) {
    check_witness(w, eq);
    check_equivariant(c, eq.a, cact);
    Layout                  L;
    EquivariantDwyerPushout out{build_pushout(c, w, limits, L), {}};
    FinCat const&           D = *out.pushout.category;
    FinCat const&           C = *c.target;
    FinCat const&           B = *w.i.target;
    out.action.monoid         = cact.monoid;
    out.action.carrier        = out.pushout.category;
    for (std::size_t g = 0; g < cact.act.size(); ++g) {
      Functor const& cg = cact.act[g];
      Functor const& bg = eq.b.act[g];
      Functor        dg{out.pushout.category, out.pushout.category, {}, {}};
      for (std::size_t x = 0; x < C.num_objects(); ++x) {
        dg.objects.push_back(cg.obj(x));
      }
      for (std::size_t y = 0; y < B.num_objects(); ++y) {
        if (L.v_obj[y] != kNone) {
          dg.objects.push_back(L.v_obj[bg.obj(y)]);
        }
      }
      for (std::size_t m = 0; m < D.num_morphisms(); ++m) {
        switch (L.kind[m]) {
          case Layout::from_c:
            dg.morphisms.push_back(cg.mor(L.alpha[m]));
            break;
          case Layout::mixed:
            dg.morphisms.push_back(L.mixed_id.at({cg.mor(L.alpha[m]), bg.obj(L.y[m])}));
            break;
          case Layout::from_v:
            dg.morphisms.push_back(L.v_mor[bg.mor(L.beta[m])]);
            break;
        }
      }
      out.action.act.push_back(std::move(dg));
    }
    check_action(out.action);
    check_equivariant(out.pushout.from_c, cact, out.action);
    check_equivariant(out.pushout.from_b, eq.b, out.action);
    return out;
  }

  FixedWitness restrict_witness_to_fixed(DwyerWitness const&      w,
                                         DwyerEquivariance const& eq,
                                         Subgroup const&          h) {
    check_witness(w, eq);
    FixedWitness out;
    out.a_fixed = fixed_category(eq.a, h);
    out.b_fixed = fixed_category(eq.b, h);
    Functor ih  = fixed_functor(w.i, out.a_fixed, out.b_fixed);
    auto    pos_a  = preimage_objects(out.a_fixed.inclusion);
    auto    pos_bm = preimage_morphisms(out.b_fixed.inclusion);
    auto    pre_x  = preimage_objects(w.cosieve.inclusion);
    std::vector<ObjId> xs, rs;
    std::vector<MorId> es;
    FinCat const&      BH = *out.b_fixed.category;
    for (std::size_t y = 0; y < BH.num_objects(); ++y) {
      ObjId yb = out.b_fixed.inclusion.obj(y);
      if (pre_x[yb] == kNone) {
        continue;
      }
      ObjId yx = pre_x[yb];
      xs.push_back(y);
      rs.push_back(pos_a[w.r.obj(yx)]);
      es.push_back(pos_bm[in_b(w, w.counit.components[yx])]);
      if (rs.back() == kNone || es.back() == kNone) {
        throw Error(ErrorKind::equivariance_violation,
                    "witness data at a fixed object are not fixed");
      }
    }
    out.witness = assemble_witness(ih, xs, rs, es);
    check_witness(out.witness);
    return out;
  }

  DwyerWitness product_witness(CatPtr const& s, DwyerWitness const& w, Limits const& limits) {
    check_witness(w);
    CatPtr        sa = product_category(s, w.i.source, limits);
    CatPtr        sb = product_category(s, w.i.target, limits);
    Functor       si = product_functor(identity_functor(s), w.i, sa, sb);
    FinCat const& S  = *s;
    std::size_t   na = w.i.source->num_objects();
    std::size_t   nb = w.i.target->num_objects();
    std::size_t   mb = w.i.target->num_morphisms();
    std::vector<ObjId> xs, rs;
    std::vector<MorId> es;
    for (std::size_t t = 0; t < S.num_objects(); ++t) {
      for (std::size_t y = 0; y < w.cosieve.category->num_objects(); ++y) {
        xs.push_back(t * nb + w.cosieve.inclusion.obj(y));
        rs.push_back(t * na + w.r.obj(y));
        es.push_back(S.identity(t) * mb + in_b(w, w.counit.components[y]));
      }
    }
    DwyerWitness out = assemble_witness(si, xs, rs, es);
    check_witness(out);
    return out;
  }

  FunWitness fun_witness(CatPtr const& t, DwyerWitness const& w, Limits const& limits) {
    check_witness(w);
    FunWitness out{{}, functor_category(t, w.i.source, limits),
                   functor_category(t, w.i.target, limits)};
    Functor fi    = postcompose(out.source, out.target, w.i);
    auto    pre_x = preimage_objects(w.cosieve.inclusion);
    auto    pre_xm = preimage_morphisms(w.cosieve.inclusion);
    std::vector<ObjId> xs, rs;
    std::vector<MorId> es;
    for (std::size_t k = 0; k < out.target.functors.size(); ++k) {
      Functor const& F = out.target.functors[k];
      bool           inside = true;
      for (ObjId y : F.objects) {
        inside = inside && pre_x[y] != kNone;
      }
      if (!inside) {
        continue;
      }
      Functor rF{t, w.i.source, {}, {}};
      for (ObjId y : F.objects) {
        rF.objects.push_back(w.r.obj(pre_x[y]));
      }
      for (MorId m : F.morphisms) {
        rF.morphisms.push_back(w.r.mor(pre_xm[m]));
      }
      auto src = out.source.index_of(rF);
      auto irF = out.target.index_of(compose(w.i, rF));
      std::vector<MorId> comps;
      for (ObjId y : F.objects) {
        comps.push_back(in_b(w, w.counit.components[pre_x[y]]));
      }
      std::optional<MorId> eps;
      if (irF) {
        eps = out.target.index_of(*irF, k, comps);
      }
      if (!src || !eps) {
        bad_witness("transported data are missing from the functor categories");
      }
      xs.push_back(k);
      rs.push_back(*src);
      es.push_back(*eps);
    }
    out.witness = assemble_witness(fi, xs, rs, es);
    check_witness(out.witness);
    return out;
  }

  std::optional<DwyerWitness> monoid_dwyer_check(Functor const&   i,
                                                 CatAction const& a,
                                                 CatAction const& b,
                                                 Limits const&    limits) {
    Subgroup  u  = units_group(*a.monoid);
    MonoidPtr hu = subgroup_monoid(*a.monoid, u);
    return find_dwyer_witness(
        i, DwyerEquivariance{restrict_action(a, hu, u), restrict_action(b, hu, u)}, limits);
  }

}  // namespace gcat
