//
// gcat - exact computation with finite categories and group actions
//

#include "gcat/fincat.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <utility>

namespace gcat {

  namespace {
    std::string q(std::string const& s) {
      return "'" + s + "'";
    }

    std::string triple(FinCat const& c, MorId g, MorId f, MorId h) {
      return "(" + c.morphism_name(g) + ", " + c.morphism_name(f) + ", "
             + c.morphism_name(h) + ")";
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // FinCat
  ////////////////////////////////////////////////////////////////////////

  std::optional<ObjId> FinCat::find_object(std::string_view name) const {
    auto it = _obj_index.find(std::string(name));
    if (it == _obj_index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<MorId> FinCat::find_morphism(std::string_view name) const {
    auto it = _mor_index.find(std::string(name));
    if (it == _mor_index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  MorId FinCat::inverse(MorId f) const {
    for (MorId g : hom(target(f), source(f))) {
      if (compose(g, f) == identity(source(f))
          && compose(f, g) == identity(target(f))) {
        return g;
      }
    }
    return kNone;
  }

  bool FinCat::is_poset() const {
    std::size_t n = num_objects();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        if (hom(x, y).size() > 1) {
          return false;
        }
        if (x != y && !hom(x, y).empty() && !hom(y, x).empty()) {
          return false;
        }
      }
    }
    return true;
  }

  void FinCat::index() {
    std::size_t n = num_objects(), m = num_morphisms();
    _hom.assign(n * n, {});
    _out.assign(n, {});
    _in.assign(n, {});
    _out_pos.assign(m, 0);
    for (std::size_t f = 0; f < m; ++f) {
      _hom[_src[f] * n + _dst[f]].push_back(f);
      _out_pos[f] = static_cast<int>(_out[_src[f]].size());
      _out[_src[f]].push_back(f);
      _in[_dst[f]].push_back(f);
    }
    _comp_offset.assign(m, 0);
    std::size_t off = 0;
    for (std::size_t f = 0; f < m; ++f) {
      _comp_offset[f] = off;
      off += _out[_dst[f]].size();
    }
    _comp.assign(off, kNone);
    _obj_index.clear();
    _mor_index.clear();
    for (std::size_t x = 0; x < n; ++x) {
      _obj_index.emplace(_obj_names[x], x);
    }
    for (std::size_t f = 0; f < m; ++f) {
      _mor_index.emplace(_mor_names[f], f);
    }
  }

  FinCat FinCat::validate(RawCategory const& raw, Limits const& limits) {
    std::vector<std::string> objs = raw.objects;
    std::sort(objs.begin(), objs.end());
    for (std::size_t i = 1; i < objs.size(); ++i) {
      if (objs[i] == objs[i - 1]) {
        throw Error(ErrorKind::malformed_input,
                    "duplicate object id " + q(objs[i]));
      }
    }
    std::vector<RawMorphism> mors = raw.morphisms;
    std::sort(mors.begin(), mors.end(), [](auto const& a, auto const& b) {
      return a.id < b.id;
    });
    for (std::size_t i = 1; i < mors.size(); ++i) {
      if (mors[i].id == mors[i - 1].id) {
        throw Error(ErrorKind::malformed_input,
                    "duplicate morphism id " + q(mors[i].id));
      }
    }
    check_cap("objects", objs.size(), limits.max_objects);
    check_cap("morphisms", mors.size(), limits.max_morphisms);

    std::unordered_map<std::string, ObjId> oi;
    std::unordered_map<std::string, MorId> mi;
    Builder                                b;
    for (auto const& o : objs) {
      oi[o] = b.add_object(o);
    }
    auto obj = [&](std::string const& name, std::string const& ctx) {
      auto it = oi.find(name);
      if (it == oi.end()) {
        throw Error(ErrorKind::dangling_reference,
                    ctx + " refers to unknown object " + q(name));
      }
      return it->second;
    };
    auto mor = [&](std::string const& name, std::string const& ctx) {
      auto it = mi.find(name);
      if (it == mi.end()) {
        throw Error(ErrorKind::dangling_reference,
                    ctx + " refers to unknown morphism " + q(name));
      }
      return it->second;
    };
    for (auto const& m : mors) {
      mi[m.id] = b.add_morphism(m.id,
                                obj(m.source, "morphism " + q(m.id)),
                                obj(m.target, "morphism " + q(m.id)));
    }
    for (auto const& [o, m] : raw.identity) {
      ObjId x = obj(o, "identity entry");
      MorId f = mor(m, "identity of " + q(o));
      b.set_identity(x, f);
    }
    for (auto const& [g, f, gf] : raw.compose) {
      std::string ctx = "compose entry (" + g + ", " + f + ")";
      b.set_compose(mor(g, ctx), mor(f, ctx), mor(gf, ctx));
    }
    return std::move(b).build(limits);
  }

  RawCategory FinCat::to_raw() const {
    RawCategory r;
    r.objects = _obj_names;
    std::sort(r.objects.begin(), r.objects.end());
    for (std::size_t f = 0; f < num_morphisms(); ++f) {
      r.morphisms.push_back(
          {_mor_names[f], _obj_names[_src[f]], _obj_names[_dst[f]]});
    }
    std::sort(r.morphisms.begin(),
              r.morphisms.end(),
              [](auto const& a, auto const& b) { return a.id < b.id; });
    for (std::size_t x = 0; x < num_objects(); ++x) {
      r.identity.emplace_back(_obj_names[x], _mor_names[_id[x]]);
    }
    std::sort(r.identity.begin(), r.identity.end());
    for (std::size_t f = 0; f < num_morphisms(); ++f) {
      for (MorId g : out(_dst[f])) {
        r.compose.push_back(
            {_mor_names[g], _mor_names[f], _mor_names[compose(g, f)]});
      }
    }
    std::sort(r.compose.begin(), r.compose.end());
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Builder
  ////////////////////////////////////////////////////////////////////////

  ObjId FinCat::Builder::add_object(std::string name) {
    _obj_names.push_back(std::move(name));
    _id.push_back(kNone);
    return static_cast<ObjId>(_obj_names.size() - 1);
  }

  MorId FinCat::Builder::add_morphism(std::string name, ObjId s, ObjId t) {
    if (s < 0 || t < 0 || static_cast<std::size_t>(s) >= _obj_names.size()
        || static_cast<std::size_t>(t) >= _obj_names.size()) {
      throw Error(ErrorKind::dangling_reference,
                  "morphism " + q(name) + " has an endpoint out of range");
    }
    _mor_names.push_back(std::move(name));
    _src.push_back(s);
    _dst.push_back(t);
    return static_cast<MorId>(_mor_names.size() - 1);
  }

  MorId FinCat::Builder::add_identity(ObjId x, std::string name) {
    MorId f = add_morphism(std::move(name), x, x);
    set_identity(x, f);
    return f;
  }

  void FinCat::Builder::set_identity(ObjId x, MorId f) {
    if (_src[f] != x || _dst[f] != x) {
      throw Error(ErrorKind::identity_violation,
                  "identity " + q(_mor_names[f]) + " of " + q(_obj_names[x])
                      + " is not an endomorphism of that object");
    }
    if (_id[x] != kNone && _id[x] != f) {
      throw Error(ErrorKind::identity_violation,
                  "object " + q(_obj_names[x]) + " has two identities");
    }
    _id[x] = f;
  }

  void FinCat::Builder::set_compose(MorId g, MorId f, MorId gf) {
    _compose.push_back({g, f, gf});
  }

  void FinCat::Builder::compose_all(
      std::function<MorId(MorId, MorId)> const& fn) {
    std::vector<std::vector<MorId>> out(_obj_names.size());
    for (std::size_t g = 0; g < _mor_names.size(); ++g) {
      out[_src[g]].push_back(g);
    }
    for (std::size_t f = 0; f < _mor_names.size(); ++f) {
      if (_id[_src[f]] == static_cast<MorId>(f)) {
        continue;
      }
      for (MorId g : out[_dst[f]]) {
        if (_id[_src[g]] == g) {
          continue;
        }
        _compose.push_back({g, static_cast<MorId>(f), fn(g, f)});
      }
    }
  }

  FinCat FinCat::Builder::build(Limits const& limits) && {
    check_cap("objects", _obj_names.size(), limits.max_objects);
    check_cap("morphisms", _mor_names.size(), limits.max_morphisms);
    FinCat c;
    c._obj_names = std::move(_obj_names);
    c._mor_names = std::move(_mor_names);
    c._src       = std::move(_src);
    c._dst       = std::move(_dst);
    c._id        = std::move(_id);
    {
      std::set<std::string> seen;
      for (auto const& o : c._obj_names) {
        if (!seen.insert(o).second) {
          throw Error(ErrorKind::malformed_input,
                      "duplicate object id " + q(o));
        }
      }
      seen.clear();
      for (auto const& m : c._mor_names) {
        if (!seen.insert(m).second) {
          throw Error(ErrorKind::malformed_input,
                      "duplicate morphism id " + q(m));
        }
      }
    }
    for (std::size_t x = 0; x < c.num_objects(); ++x) {
      if (c._id[x] == kNone) {
        throw Error(ErrorKind::identity_violation,
                    "object " + q(c._obj_names[x]) + " has no identity");
      }
    }
    c.index();
    std::size_t m = c.num_morphisms();
    for (auto const& [g, f, gf] : _compose) {
      auto bad = [&](std::string const& what) {
        return Error(ErrorKind::malformed_input,
                     "compose entry (" + c._mor_names[g] + ", "
                         + c._mor_names[f] + "): " + what);
      };
      if (g < 0 || f < 0 || gf < 0 || static_cast<std::size_t>(g) >= m
          || static_cast<std::size_t>(f) >= m
          || static_cast<std::size_t>(gf) >= m) {
        throw Error(ErrorKind::dangling_reference,
                    "compose entry refers to a morphism out of range");
      }
      if (c._src[g] != c._dst[f]) {
        throw bad("pair is not composable");
      }
      if (c._src[gf] != c._src[f] || c._dst[gf] != c._dst[g]) {
        throw bad("composite " + q(c._mor_names[gf]) + " has wrong endpoints");
      }
      MorId& slot = c._comp[c._comp_offset[f] + c._out_pos[g]];
      if (slot != kNone && slot != gf) {
        throw bad("conflicting composites");
      }
      slot = gf;
    }
    for (std::size_t f = 0; f < m; ++f) {
      for (MorId g : c.out(c._dst[f])) {
        MorId& slot = c._comp[c._comp_offset[f] + c._out_pos[g]];
        if (slot != kNone) {
          continue;
        }
        if (c.is_identity(g)) {
          slot = f;
        } else if (c.is_identity(f)) {
          slot = g;
        } else {
          throw Error(ErrorKind::malformed_input,
                      "missing composite for (" + c._mor_names[g] + ", "
                          + c._mor_names[f] + ")");
        }
      }
    }
    check_category_axioms(c);
    return c;
  }

  CatPtr FinCat::Builder::build_shared(Limits const& limits) && {
    return std::make_shared<FinCat const>(std::move(*this).build(limits));
  }

  void check_category_axioms(FinCat const& c) {
    std::size_t m = c.num_morphisms();
    for (std::size_t f = 0; f < m; ++f) {
      if (c.compose(c.identity(c.target(f)), f) != static_cast<MorId>(f)
          || c.compose(f, c.identity(c.source(f))) != static_cast<MorId>(f)) {
        throw Error(ErrorKind::identity_violation,
                    "identity law fails for " + q(c.morphism_name(f)));
      }
    }
    for (std::size_t h = 0; h < m; ++h) {
      if (c.is_identity(h)) {
        continue;
      }
      for (MorId f : c.out(c.target(h))) {
        if (c.is_identity(f)) {
          continue;
        }
        MorId fh = c.compose(f, h);
        for (MorId g : c.out(c.target(f))) {
          if (c.is_identity(g)) {
            continue;
          }
          MorId lhs = c.compose(c.compose(g, f), h);
          MorId rhs = c.compose(g, fh);
          if (lhs != rhs) {
            throw Error(ErrorKind::associativity_violation,
                        triple(c, g, f, h) + ": (g∘f)∘h = "
                            + c.morphism_name(lhs) + " but g∘(f∘h) = "
                            + c.morphism_name(rhs));
          }
        }
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Functors
  ////////////////////////////////////////////////////////////////////////

  bool operator==(Functor const& a, Functor const& b) {
    return a.objects == b.objects && a.morphisms == b.morphisms
           && a.target->num_objects() == b.target->num_objects()
           && a.target->num_morphisms() == b.target->num_morphisms();
  }

  namespace {
    std::optional<std::string> functor_defect(Functor const& F) {
      FinCat const& S = *F.source;
      FinCat const& T = *F.target;
      if (F.objects.size() != S.num_objects()
          || F.morphisms.size() != S.num_morphisms()) {
        return "map sizes do not match the source category";
      }
      for (std::size_t x = 0; x < S.num_objects(); ++x) {
        if (F.objects[x] < 0
            || static_cast<std::size_t>(F.objects[x]) >= T.num_objects()) {
          return "object " + q(S.object_name(x)) + " maps out of range";
        }
      }
      for (std::size_t f = 0; f < S.num_morphisms(); ++f) {
        MorId g = F.morphisms[f];
        if (g < 0 || static_cast<std::size_t>(g) >= T.num_morphisms()) {
          return "morphism " + q(S.morphism_name(f)) + " maps out of range";
        }
        if (T.source(g) != F.objects[S.source(f)]
            || T.target(g) != F.objects[S.target(f)]) {
          return "morphism " + q(S.morphism_name(f))
                 + " is sent to a morphism with the wrong endpoints";
        }
      }
      for (std::size_t x = 0; x < S.num_objects(); ++x) {
        if (F.morphisms[S.identity(x)] != T.identity(F.objects[x])) {
          return "identity of " + q(S.object_name(x)) + " is not preserved";
        }
      }
      for (std::size_t f = 0; f < S.num_morphisms(); ++f) {
        for (MorId g : S.out(S.target(f))) {
          if (F.morphisms[S.compose(g, f)]
              != T.compose(F.morphisms[g], F.morphisms[f])) {
            return "composite (" + S.morphism_name(g) + ", "
                   + S.morphism_name(f) + ") is not preserved";
          }
        }
      }
      return std::nullopt;
    }
  }  // namespace

  bool is_functor(Functor const& f) {
    return !functor_defect(f).has_value();
  }

  void check_functor(Functor const& f) {
    if (auto d = functor_defect(f)) {
      throw Error(ErrorKind::not_a_functor, *d);
    }
  }

  Functor make_functor(CatPtr             source,
                       CatPtr             target,
                       std::vector<ObjId> objects,
                       std::vector<MorId> morphisms) {
    Functor f{std::move(source),
              std::move(target),
              std::move(objects),
              std::move(morphisms)};
    check_functor(f);
    return f;
  }

  Functor identity_functor(CatPtr c) {
    std::vector<ObjId> o(c->num_objects());
    std::vector<MorId> m(c->num_morphisms());
    std::iota(o.begin(), o.end(), 0);
    std::iota(m.begin(), m.end(), 0);
    return Functor{c, c, std::move(o), std::move(m)};
  }

  Functor compose(Functor const& g, Functor const& f) {
    Functor r{f.source, g.target, {}, {}};
    r.objects.reserve(f.objects.size());
    for (ObjId x : f.objects) {
      r.objects.push_back(g.objects[x]);
    }
    r.morphisms.reserve(f.morphisms.size());
    for (MorId m : f.morphisms) {
      r.morphisms.push_back(g.morphisms[m]);
    }
    return r;
  }

  bool is_injective_on_objects(Functor const& f) {
    std::vector<ObjId> o = f.objects;
    std::sort(o.begin(), o.end());
    return std::adjacent_find(o.begin(), o.end()) == o.end();
  }

  bool is_fully_faithful(Functor const& F) {
    FinCat const& S = *F.source;
    FinCat const& T = *F.target;
    for (std::size_t x = 0; x < S.num_objects(); ++x) {
      for (std::size_t y = 0; y < S.num_objects(); ++y) {
        auto h  = S.hom(x, y);
        auto th = T.hom(F.objects[x], F.objects[y]);
        if (h.size() != th.size()) {
          return false;
        }
        std::vector<MorId> img;
        for (MorId f : h) {
          img.push_back(F.morphisms[f]);
        }
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Natural transformations
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::optional<std::string> natural_defect(NatTrans const& a) {
      FinCat const& S = *a.source.source;
      FinCat const& T = *a.source.target;
      if (a.components.size() != S.num_objects()) {
        return "wrong number of components";
      }
      for (std::size_t x = 0; x < S.num_objects(); ++x) {
        MorId c = a.components[x];
        if (c < 0 || static_cast<std::size_t>(c) >= T.num_morphisms()
            || T.source(c) != a.source.objects[x]
            || T.target(c) != a.target.objects[x]) {
          return "component at " + q(S.object_name(x))
                 + " has the wrong endpoints";
        }
      }
      for (std::size_t f = 0; f < S.num_morphisms(); ++f) {
        ObjId x = S.source(f), y = S.target(f);
        if (T.compose(a.target.morphisms[f], a.components[x])
            != T.compose(a.components[y], a.source.morphisms[f])) {
          return "naturality square fails at " + q(S.morphism_name(f));
        }
      }
      return std::nullopt;
    }
  }  // namespace

  void check_natural(NatTrans const& a) {
    if (auto d = natural_defect(a)) {
      throw Error(ErrorKind::not_natural, *d);
    }
  }

  bool is_natural(NatTrans const& a) {
    return !natural_defect(a).has_value();
  }

  NatTrans identity_transformation(Functor const& f) {
    NatTrans a{f, f, {}};
    for (ObjId y : f.objects) {
      a.components.push_back(f.target->identity(y));
    }
    return a;
  }

  NatTrans vertical(NatTrans const& b, NatTrans const& a) {
    NatTrans r{a.source, b.target, {}};
    for (std::size_t x = 0; x < a.components.size(); ++x) {
      r.components.push_back(
          a.source.target->compose(b.components[x], a.components[x]));
    }
    return r;
  }

  NatTrans whisker_left(Functor const& h, NatTrans const& a) {
    NatTrans r{compose(h, a.source), compose(h, a.target), {}};
    for (MorId c : a.components) {
      r.components.push_back(h.morphisms[c]);
    }
    return r;
  }

  NatTrans whisker_right(NatTrans const& a, Functor const& k) {
    NatTrans r{compose(a.source, k), compose(a.target, k), {}};
    for (ObjId x : k.objects) {
      r.components.push_back(a.components[x]);
    }
    return r;
  }

  bool is_natural_isomorphism(NatTrans const& a) {
    if (!is_natural(a)) {
      return false;
    }
    for (MorId c : a.components) {
      if (a.source.target->inverse(c) == kNone) {
        return false;
      }
    }
    return true;
  }

  bool is_valid_equivalence(EquivalenceWitness const& w) {
    if (!is_functor(w.functor) || !is_functor(w.inverse)) {
      return false;
    }
    Functor id_s = identity_functor(w.functor.source);
    Functor id_t = identity_functor(w.functor.target);
    if (!(w.unit.source == id_s) || !(w.unit.target == compose(w.inverse, w.functor))) {
      return false;
    }
    if (!(w.counit.source == compose(w.functor, w.inverse))
        || !(w.counit.target == id_t)) {
      return false;
    }
    return is_natural_isomorphism(w.unit) && is_natural_isomorphism(w.counit);
  }

  ////////////////////////////////////////////////////////////////////////
  // Standard categories
  ////////////////////////////////////////////////////////////////////////

  CatPtr empty_category() {
    return FinCat::Builder().build_shared();
  }

  CatPtr terminal_category() {
    return poset_category({"*"}, [](int, int) { return true; });
  }

  CatPtr ordinal(int n) {
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) {
      names.push_back(std::to_string(i));
    }
    return poset_category(names, [](int a, int b) { return a <= b; });
  }

  CatPtr discrete_category(std::vector<std::string> const& names) {
    return poset_category(names, [](int a, int b) { return a == b; });
  }

  CatPtr poset_category(std::vector<std::string> const&     names,
                        std::function<bool(int, int)> const& leq,
                        Limits const&                        limits) {
    int n = static_cast<int>(names.size());
    check_cap("objects", names.size(), limits.max_objects);
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        le[a][b] = leq(a, b) ? 1 : 0;
      }
    }
    for (int a = 0; a < n; ++a) {
      if (!le[a][a]) {
        throw Error(ErrorKind::malformed_input,
                    "order is not reflexive at " + q(names[a]));
      }
      for (int b = 0; b < n; ++b) {
        if (a != b && le[a][b] && le[b][a]) {
          throw Error(ErrorKind::malformed_input,
                      "order is not antisymmetric at " + q(names[a]) + ", "
                          + q(names[b]));
        }
        for (int c = 0; c < n; ++c) {
          if (le[a][b] && le[b][c] && !le[a][c]) {
            throw Error(ErrorKind::malformed_input,
                        "order is not transitive at " + q(names[a]) + " <= "
                            + q(names[b]) + " <= " + q(names[c]));
          }
        }
      }
    }
    FinCat::Builder                b;
    std::vector<std::vector<int>> mor(n, std::vector<int>(n, kNone));
    for (int a = 0; a < n; ++a) {
      b.add_object(names[a]);
    }
    for (int a = 0; a < n; ++a) {
      for (int c = 0; c < n; ++c) {
        if (le[a][c]) {
          mor[a][c] = b.add_morphism(names[a] + "->" + names[c], a, c);
        }
      }
      b.set_identity(a, mor[a][a]);
    }
    b.compose_all([&](MorId g, MorId f) {
      return mor[b.source(f)][b.target(g)];
    });
    return std::move(b).build_shared(limits);
  }

  Subcategory full_subcategory(CatPtr const& c, std::vector<ObjId> objects) {
    std::vector<MorId> mors;
    std::sort(objects.begin(), objects.end());
    std::vector<char> in(c->num_objects(), 0);
    for (ObjId x : objects) {
      in[x] = 1;
    }
    for (std::size_t f = 0; f < c->num_morphisms(); ++f) {
      if (in[c->source(f)] && in[c->target(f)]) {
        mors.push_back(f);
      }
    }
    return subcategory(c, std::move(objects), std::move(mors));
  }

  Subcategory subcategory(CatPtr const&      c,
                          std::vector<ObjId> objects,
                          std::vector<MorId> morphisms) {
    std::sort(objects.begin(), objects.end());
    objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
    std::sort(morphisms.begin(), morphisms.end());
    morphisms.erase(std::unique(morphisms.begin(), morphisms.end()),
                    morphisms.end());
    std::vector<int> oi(c->num_objects(), kNone), mi(c->num_morphisms(), kNone);
    FinCat::Builder  b;
    for (ObjId x : objects) {
      oi[x] = b.add_object(c->object_name(x));
    }
    for (MorId f : morphisms) {
      if (oi[c->source(f)] == kNone || oi[c->target(f)] == kNone) {
        throw Error(ErrorKind::not_a_subcategory_inclusion,
                    "morphism " + q(c->morphism_name(f))
                        + " has an endpoint outside the object set");
      }
      mi[f] = b.add_morphism(
          c->morphism_name(f), oi[c->source(f)], oi[c->target(f)]);
    }
    for (ObjId x : objects) {
      if (mi[c->identity(x)] == kNone) {
        throw Error(ErrorKind::not_a_subcategory_inclusion,
                    "identity of " + q(c->object_name(x)) + " is missing");
      }
      b.set_identity(oi[x], mi[c->identity(x)]);
    }
    for (MorId f : morphisms) {
      for (MorId g : c->out(c->target(f))) {
        if (mi[g] == kNone) {
          continue;
        }
        MorId gf = c->compose(g, f);
        if (mi[gf] == kNone) {
          throw Error(ErrorKind::not_a_subcategory_inclusion,
                      "not closed under composition at ("
                          + c->morphism_name(g) + ", " + c->morphism_name(f)
                          + ")");
        }
        b.set_compose(mi[g], mi[f], mi[gf]);
      }
    }
    Limits lim = Limits::sized(c->num_objects(), c->num_morphisms());
    CatPtr sub = std::move(b).build_shared(lim);
    return Subcategory{sub, Functor{sub, c, objects, morphisms}};
  }

  CatPtr product_category(CatPtr const& s,
                          CatPtr const& c,
                          Limits const& limits) {
    std::size_t ns = s->num_objects(), nc = c->num_objects();
    std::size_t ms = s->num_morphisms(), mc = c->num_morphisms();
    check_cap("product objects", ns * nc, limits.max_objects);
    check_cap("product morphisms", ms * mc, limits.max_morphisms);
    FinCat::Builder b;
    for (std::size_t x = 0; x < ns; ++x) {
      for (std::size_t y = 0; y < nc; ++y) {
        b.add_object("(" + s->object_name(x) + "," + c->object_name(y) + ")");
      }
    }
    for (std::size_t f = 0; f < ms; ++f) {
      for (std::size_t g = 0; g < mc; ++g) {
        b.add_morphism(
            "(" + s->morphism_name(f) + "," + c->morphism_name(g) + ")",
            s->source(f) * nc + c->source(g),
            s->target(f) * nc + c->target(g));
      }
    }
    for (std::size_t x = 0; x < ns; ++x) {
      for (std::size_t y = 0; y < nc; ++y) {
        b.set_identity(x * nc + y, s->identity(x) * mc + c->identity(y));
      }
    }
    b.compose_all([&](MorId g, MorId f) {
      return s->compose(g / mc, f / mc) * mc + c->compose(g % mc, f % mc);
    });
    return std::move(b).build_shared(limits);
  }

  Functor product_projection_first(CatPtr const& prod,
                                   CatPtr const& s,
                                   CatPtr const& c) {
    Functor f{prod, s, {}, {}};
    for (std::size_t x = 0; x < prod->num_objects(); ++x) {
      f.objects.push_back(x / c->num_objects());
    }
    for (std::size_t m = 0; m < prod->num_morphisms(); ++m) {
      f.morphisms.push_back(m / c->num_morphisms());
    }
    return f;
  }

  Functor product_projection_second(CatPtr const& prod,
                                    CatPtr const& s,
                                    CatPtr const& c) {
    (void) s;
    Functor f{prod, c, {}, {}};
    for (std::size_t x = 0; x < prod->num_objects(); ++x) {
      f.objects.push_back(x % c->num_objects());
    }
    for (std::size_t m = 0; m < prod->num_morphisms(); ++m) {
      f.morphisms.push_back(m % c->num_morphisms());
    }
    return f;
  }

  Functor product_functor(Functor const& f,
                          Functor const& g,
                          CatPtr const&  source,
                          CatPtr const&  target) {
    std::size_t nc = g.source->num_objects(), mc = g.source->num_morphisms();
    std::size_t nd = g.target->num_objects(), md = g.target->num_morphisms();
    Functor     r{source, target, {}, {}};
    for (std::size_t x = 0; x < source->num_objects(); ++x) {
      r.objects.push_back(f.objects[x / nc] * nd + g.objects[x % nc]);
    }
    for (std::size_t m = 0; m < source->num_morphisms(); ++m) {
      r.morphisms.push_back(f.morphisms[m / mc] * md + g.morphisms[m % mc]);
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Functor categories
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::vector<int> functor_key(Functor const& f) {
      std::vector<int> k = f.objects;
      k.insert(k.end(), f.morphisms.begin(), f.morphisms.end());
      return k;
    }

    std::vector<int> trans_key(ObjId                     s,
                               ObjId                     t,
                               std::vector<MorId> const& comps) {
      std::vector<int> k{s, t};
      k.insert(k.end(), comps.begin(), comps.end());
      return k;
    }
  }  // namespace

  std::vector<Functor> all_functors(CatPtr const& t,
                                    CatPtr const& c,
                                    Limits const& limits) {
    FinCat const& T  = *t;
    FinCat const& C  = *c;
    int           nT = static_cast<int>(T.num_objects());

    // Steps: object x, then every non-identity morphism whose later
    // endpoint is x. Composition constraints are checked at the step of the
    // last of the three morphisms to be assigned.
    struct Step {
      bool  object;
      int   id;
    };
    std::vector<Step> steps;
    std::vector<int>  pos(T.num_morphisms(), -1);
    for (int x = 0; x < nT; ++x) {
      steps.push_back({true, x});
      for (std::size_t f = 0; f < T.num_morphisms(); ++f) {
        if (!T.is_identity(f) && std::max(T.source(f), T.target(f)) == x) {
          pos[f] = static_cast<int>(steps.size());
          steps.push_back({false, static_cast<int>(f)});
        }
      }
    }
    std::vector<std::vector<std::array<MorId, 3>>> checks(steps.size());
    for (std::size_t h = 0; h < T.num_morphisms(); ++h) {
      if (T.is_identity(h)) {
        continue;
      }
      for (MorId g : T.out(T.target(h))) {
        if (T.is_identity(g)) {
          continue;
        }
        MorId k    = T.compose(g, h);
        int   last = std::max({pos[g], pos[h], pos[k]});
        checks[last].push_back({g, static_cast<MorId>(h), k});
      }
    }

    std::vector<Functor> result;
    std::vector<ObjId>   om(nT, kNone);
    std::vector<MorId>   mm(T.num_morphisms(), kNone);
    std::size_t          nodes = 0;

    auto image = [&](MorId f) {
      return T.is_identity(f) ? C.identity(om[T.source(f)]) : mm[f];
    };

    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == steps.size()) {
        result.push_back(Functor{t, c, om, {}});
        auto& F = result.back();
        F.morphisms.resize(T.num_morphisms());
        for (std::size_t f = 0; f < T.num_morphisms(); ++f) {
          F.morphisms[f] = image(f);
        }
        return;
      }
      Step const& s = steps[i];
      auto        try_one = [&]() {
        if (++nodes > limits.max_candidates) {
          throw_size_cap("functor enumeration candidates",
                         nodes,
                         limits.max_candidates);
        }
        for (auto const& [g, h, k] : checks[i]) {
          if (C.compose(image(g), image(h)) != image(k)) {
            return;
          }
        }
        go(i + 1);
      };
      if (s.object) {
        for (std::size_t y = 0; y < C.num_objects(); ++y) {
          om[s.id] = y;
          try_one();
        }
        om[s.id] = kNone;
      } else {
        for (MorId g : C.hom(om[T.source(s.id)], om[T.target(s.id)])) {
          mm[s.id] = g;
          try_one();
        }
        mm[s.id] = kNone;
      }
    };
    go(0);
    return result;
  }

  std::vector<std::vector<MorId>> all_transformations(Functor const& F,
                                                      Functor const& G,
                                                      Limits const& limits) {
    FinCat const& T  = *F.source;
    FinCat const& C  = *F.target;
    int           nT = static_cast<int>(T.num_objects());
    std::vector<std::vector<MorId>> at(nT);
    for (std::size_t f = 0; f < T.num_morphisms(); ++f) {
      if (!T.is_identity(f)) {
        at[std::max(T.source(f), T.target(f))].push_back(f);
      }
    }
    std::vector<std::vector<MorId>> result;
    std::vector<MorId>              comp(nT, kNone);
    std::size_t                     nodes = 0;
    std::function<void(int)>        go    = [&](int x) {
      if (x == nT) {
        result.push_back(comp);
        return;
      }
      for (MorId a : C.hom(F.objects[x], G.objects[x])) {
        if (++nodes > limits.max_candidates) {
          throw_size_cap("transformation enumeration candidates",
                         nodes,
                         limits.max_candidates);
        }
        comp[x] = a;
        bool ok = true;
        for (MorId f : at[x]) {
          ObjId s = T.source(f), d = T.target(f);
          if (C.compose(G.morphisms[f], comp[s])
              != C.compose(comp[d], F.morphisms[f])) {
            ok = false;
            break;
          }
        }
        if (ok) {
          go(x + 1);
        }
      }
      comp[x] = kNone;
    };
    go(0);
    return result;
  }

  std::optional<ObjId> FunctorCategory::index_of(Functor const& f) const {
    auto it = functor_lookup.find(functor_key(f));
    if (it == functor_lookup.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<MorId>
  FunctorCategory::index_of(ObjId                     source,
                            ObjId                     target,
                            std::vector<MorId> const& comps) const {
    auto it = transformation_lookup.find(trans_key(source, target, comps));
    if (it == transformation_lookup.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  NatTrans FunctorCategory::transformation(MorId m) const {
    return NatTrans{functors[category->source(m)],
                    functors[category->target(m)],
                    components[m]};
  }

  FunctorCategory functor_category(CatPtr const& t,
                                   CatPtr const& c,
                                   Limits const& limits) {
    return functor_subcategory(
        t, c, [](Functor const&) { return true; },
        [](Functor const&, Functor const&, std::vector<MorId> const&) { return true; }, limits);
  }

  FunctorCategory functor_subcategory(CatPtr const&                               t,
                                      CatPtr const&                               c,
                                      std::function<bool(Functor const&)> const& keep_functor,
                                      TransformationFilter const&                 keep_transformation,
                                      Limits const&                               limits) {
    FunctorCategory fc;
    fc.domain   = t;
    fc.codomain = c;
    for (auto& f : all_functors(t, c, limits)) {
      if (keep_functor(f)) {
        fc.functors.push_back(std::move(f));
      }
    }
    check_cap("functor category objects", fc.functors.size(), limits.max_objects);
    FinCat::Builder b;
    for (std::size_t i = 0; i < fc.functors.size(); ++i) {
      b.add_object("F" + std::to_string(i));
      fc.functor_lookup.emplace(functor_key(fc.functors[i]), i);
    }
    std::vector<MorId> ident(fc.functors.size(), kNone);
    for (std::size_t i = 0; i < fc.functors.size(); ++i) {
      for (std::size_t j = 0; j < fc.functors.size(); ++j) {
        auto        ts = all_transformations(fc.functors[i], fc.functors[j], limits);
        std::size_t r  = 0;
        for (auto& comps : ts) {
          if (!keep_transformation(fc.functors[i], fc.functors[j], comps)) {
            continue;
          }
          MorId m = b.add_morphism("F" + std::to_string(i) + "=>F" + std::to_string(j) + "#"
                                       + std::to_string(r++),
                                   i,
                                   j);
          check_cap("functor category morphisms", b.num_morphisms(), limits.max_morphisms);
          fc.transformation_lookup.emplace(trans_key(i, j, comps), m);
          if (i == j) {
            bool is_id = true;
            for (std::size_t x = 0; x < comps.size(); ++x) {
              if (comps[x] != c->identity(fc.functors[i].objects[x])) {
                is_id = false;
              }
            }
            if (is_id) {
              ident[i] = m;
            }
          }
          fc.components.push_back(std::move(comps));
        }
      }
      if (ident[i] == kNone) {
        throw Error(ErrorKind::not_a_subcategory_inclusion,
                    "the kept transformations miss an identity");
      }
      b.set_identity(i, ident[i]);
    }
    b.compose_all([&](MorId g, MorId f) {
      std::vector<MorId> comps(t->num_objects());
      for (std::size_t x = 0; x < comps.size(); ++x) {
        comps[x] = c->compose(fc.components[g][x], fc.components[f][x]);
      }
      auto m = fc.index_of(b.source(f), b.target(g), comps);
      if (!m) {
        throw Error(ErrorKind::not_a_subcategory_inclusion,
                    "the kept transformations are not closed under composition");
      }
      return *m;
    });
    fc.category = std::move(b).build_shared(limits);
    return fc;
  }

  Functor postcompose(FunctorCategory const& from,
                      FunctorCategory const& to,
                      Functor const&         g) {
    Functor r{from.category, to.category, {}, {}};
    for (auto const& F : from.functors) {
      auto idx = to.index_of(compose(g, F));
      if (!idx) {
        throw Error(ErrorKind::malformed_input,
                    "postcomposite is not an object of the target category");
      }
      r.objects.push_back(*idx);
    }
    for (std::size_t m = 0; m < from.components.size(); ++m) {
      std::vector<MorId> comps;
      for (MorId a : from.components[m]) {
        comps.push_back(g.morphisms[a]);
      }
      r.morphisms.push_back(
          *to.index_of(r.objects[from.category->source(m)],
                       r.objects[from.category->target(m)],
                       comps));
    }
    return r;
  }

  Functor precompose(FunctorCategory const& from,
                     FunctorCategory const& to,
                     Functor const&         h) {
    Functor r{from.category, to.category, {}, {}};
    for (auto const& F : from.functors) {
      auto idx = to.index_of(compose(F, h));
      if (!idx) {
        throw Error(ErrorKind::malformed_input,
                    "precomposite is not an object of the target category");
      }
      r.objects.push_back(*idx);
    }
    for (std::size_t m = 0; m < from.components.size(); ++m) {
      std::vector<MorId> comps;
      for (ObjId s : h.objects) {
        comps.push_back(from.components[m][s]);
      }
      r.morphisms.push_back(
          *to.index_of(r.objects[from.category->source(m)],
                       r.objects[from.category->target(m)],
                       comps));
    }
    return r;
  }

  NatTrans precompose_transformation(FunctorCategory const& from,
                                     FunctorCategory const& to,
                                     NatTrans const&        a) {
    Functor  hs = precompose(from, to, a.source);
    Functor  ks = precompose(from, to, a.target);
    NatTrans r{hs, ks, {}};
    for (std::size_t i = 0; i < from.functors.size(); ++i) {
      auto const&        F = from.functors[i];
      std::vector<MorId> comps;
      for (MorId c : a.components) {
        comps.push_back(F.morphisms[c]);
      }
      r.components.push_back(*to.index_of(hs.objects[i], ks.objects[i], comps));
    }
    return r;
  }

  NatTrans postcompose_transformation(FunctorCategory const& from,
                                      FunctorCategory const& to,
                                      NatTrans const&        a) {
    Functor  gs = postcompose(from, to, a.source);
    Functor  ks = postcompose(from, to, a.target);
    NatTrans r{gs, ks, {}};
    for (std::size_t i = 0; i < from.functors.size(); ++i) {
      auto const&        F = from.functors[i];
      std::vector<MorId> comps;
      for (ObjId x : F.objects) {
        comps.push_back(a.components[x]);
      }
      r.components.push_back(*to.index_of(gs.objects[i], ks.objects[i], comps));
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Isomorphism and equivalence search
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Joint colour refinement of the objects of two categories by their
    // hom-set sizes; isomorphisms preserve colours.
    std::pair<std::vector<int>, std::vector<int>> refine(FinCat const& C,
                                                         FinCat const& D) {
      auto initial = [](FinCat const& X) {
        std::vector<std::vector<int>> sig(X.num_objects());
        for (std::size_t x = 0; x < X.num_objects(); ++x) {
          int isos = 0;
          for (MorId f : X.out(x)) {
            if (X.inverse(f) != kNone) {
              ++isos;
            }
          }
          sig[x] = {static_cast<int>(X.hom(x, x).size()),
                    static_cast<int>(X.out(x).size()),
                    static_cast<int>(X.in(x).size()),
                    isos};
        }
        return sig;
      };
      auto sc = initial(C), sd = initial(D);
      std::vector<int> cc, cd;
      std::size_t      classes = 0;
      for (std::size_t round = 0;; ++round) {
        std::map<std::vector<int>, int> ids;
        for (auto const& s : sc) {
          ids.emplace(s, 0);
        }
        for (auto const& s : sd) {
          ids.emplace(s, 0);
        }
        int k = 0;
        for (auto& [s, v] : ids) {
          v = k++;
        }
        cc.clear();
        cd.clear();
        for (auto const& s : sc) {
          cc.push_back(ids[s]);
        }
        for (auto const& s : sd) {
          cd.push_back(ids[s]);
        }
        if (ids.size() == classes || round > C.num_objects() + 1) {
          break;
        }
        classes   = ids.size();
        auto next = [](FinCat const& X, std::vector<int> const& col) {
          std::vector<std::vector<int>> sig(X.num_objects());
          for (std::size_t x = 0; x < X.num_objects(); ++x) {
            std::vector<std::array<int, 3>> nb;
            for (std::size_t y = 0; y < X.num_objects(); ++y) {
              nb.push_back({col[y],
                            static_cast<int>(X.hom(x, y).size()),
                            static_cast<int>(X.hom(y, x).size())});
            }
            std::sort(nb.begin(), nb.end());
            sig[x] = {col[x]};
            for (auto const& a : nb) {
              sig[x].insert(sig[x].end(), a.begin(), a.end());
            }
          }
          return sig;
        };
        sc = next(C, cc);
        sd = next(D, cd);
      }
      return {cc, cd};
    }

    class IsoSearch {
     public:
      IsoSearch(FinCat const& C, FinCat const& D, Limits const& limits)
          : _C(C), _D(D), _limits(limits) {}

      std::optional<std::pair<std::vector<ObjId>, std::vector<MorId>>> run() {
        if (_C.num_objects() != _D.num_objects()
            || _C.num_morphisms() != _D.num_morphisms()) {
          return std::nullopt;
        }
        std::tie(_cc, _cd) = refine(_C, _D);
        {
          auto a = _cc, b = _cd;
          std::sort(a.begin(), a.end());
          std::sort(b.begin(), b.end());
          if (a != b) {
            return std::nullopt;
          }
        }
        std::size_t n = _C.num_objects();
        // most constrained colour classes first, then by index
        std::map<int, int> class_size;
        for (int c : _cc) {
          class_size[c]++;
        }
        _order.resize(n);
        std::iota(_order.begin(), _order.end(), 0);
        std::stable_sort(_order.begin(), _order.end(), [&](int a, int b) {
          return std::pair(class_size[_cc[a]], _cc[a])
                 < std::pair(class_size[_cc[b]], _cc[b]);
        });
        _om.assign(n, kNone);
        _used_obj.assign(n, 0);
        if (objects(0)) {
          return std::make_pair(_om, _mm);
        }
        return std::nullopt;
      }

     private:
      void tick() {
        if (++_nodes > _limits.max_candidates) {
          throw_size_cap("isomorphism search candidates",
                         _nodes,
                         _limits.max_candidates);
        }
      }

      bool objects(std::size_t i) {
        if (i == _order.size()) {
          return morphisms();
        }
        ObjId x = _order[i];
        for (std::size_t y = 0; y < _D.num_objects(); ++y) {
          if (_used_obj[y] || _cd[y] != _cc[x]) {
            continue;
          }
          tick();
          bool ok = true;
          for (std::size_t j = 0; j <= i && ok; ++j) {
            ObjId x2 = j == i ? x : _order[j];
            ObjId y2 = j == i ? static_cast<ObjId>(y) : _om[x2];
            if (_C.hom(x, x2).size() != _D.hom(y, y2).size()
                || _C.hom(x2, x).size() != _D.hom(y2, y).size()) {
              ok = false;
            }
          }
          if (!ok) {
            continue;
          }
          _om[x]       = y;
          _used_obj[y] = 1;
          if (objects(i + 1)) {
            return true;
          }
          _om[x]       = kNone;
          _used_obj[y] = 0;
        }
        return false;
      }

      bool morphisms() {
        std::size_t m = _C.num_morphisms();
        _mm.assign(m, kNone);
        _used_mor.assign(m, 0);
        _seq.clear();
        for (std::size_t x = 0; x < _C.num_objects(); ++x) {
          _mm[_C.identity(x)] = _D.identity(_om[x]);
        }
        // non-identity morphisms grouped by hom-set, in search order of
        // their endpoints
        std::vector<int> rank(_C.num_objects());
        for (std::size_t i = 0; i < _order.size(); ++i) {
          rank[_order[i]] = i;
        }
        for (std::size_t f = 0; f < m; ++f) {
          if (!_C.is_identity(f)) {
            _seq.push_back(f);
          }
        }
        std::stable_sort(_seq.begin(), _seq.end(), [&](MorId a, MorId b) {
          auto ka = std::pair(std::max(rank[_C.source(a)], rank[_C.target(a)]),
                              std::min(rank[_C.source(a)], rank[_C.target(a)]));
          auto kb = std::pair(std::max(rank[_C.source(b)], rank[_C.target(b)]),
                              std::min(rank[_C.source(b)], rank[_C.target(b)]));
          return ka < kb;
        });
        std::vector<int> pos(m, -1);
        for (std::size_t i = 0; i < _seq.size(); ++i) {
          pos[_seq[i]] = i;
        }
        _checks.assign(_seq.size(), {});
        for (std::size_t h = 0; h < m; ++h) {
          if (_C.is_identity(h)) {
            continue;
          }
          for (MorId g : _C.out(_C.target(h))) {
            if (_C.is_identity(g)) {
              continue;
            }
            MorId k    = _C.compose(g, h);
            int   last = std::max({pos[g], pos[h], pos[k]});
            _checks[last].push_back({g, static_cast<MorId>(h), k});
          }
        }
        return assign(0);
      }

      bool assign(std::size_t i) {
        if (i == _seq.size()) {
          return true;
        }
        MorId f = _seq[i];
        for (MorId g : _D.hom(_om[_C.source(f)], _om[_C.target(f)])) {
          if (_used_mor[g] || _D.is_identity(g)) {
            continue;
          }
          tick();
          _mm[f]       = g;
          bool ok      = true;
          for (auto const& [a, b, k] : _checks[i]) {
            if (_D.compose(_mm[a], _mm[b]) != _mm[k]) {
              ok = false;
              break;
            }
          }
          if (ok) {
            _used_mor[g] = 1;
            if (assign(i + 1)) {
              return true;
            }
            _used_mor[g] = 0;
          }
          _mm[f] = kNone;
        }
        return false;
      }

      FinCat const&                           _C;
      FinCat const&                           _D;
      Limits                                  _limits;
      std::size_t                             _nodes = 0;
      std::vector<int>                        _cc, _cd;
      std::vector<int>                        _order;
      std::vector<ObjId>                      _om;
      std::vector<char>                       _used_obj;
      std::vector<MorId>                      _mm;
      std::vector<char>                       _used_mor;
      std::vector<MorId>                      _seq;
      std::vector<std::vector<std::array<MorId, 3>>> _checks;
    };
  }  // namespace

  std::optional<Functor> find_isomorphism(CatPtr const& c,
                                          CatPtr const& d,
                                          Limits const& limits) {
    IsoSearch s(*c, *d, limits);
    auto      r = s.run();
    if (!r) {
      return std::nullopt;
    }
    return Functor{c, d, std::move(r->first), std::move(r->second)};
  }

  bool is_isomorphism(Functor const& f) {
    if (!is_functor(f)) {
      return false;
    }
    auto bij = [](std::vector<int> v, std::size_t n) {
      if (v.size() != n) {
        return false;
      }
      std::sort(v.begin(), v.end());
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] != static_cast<int>(i)) {
          return false;
        }
      }
      return true;
    };
    return bij(f.objects, f.target->num_objects())
           && bij(f.morphisms, f.target->num_morphisms());
  }

  std::optional<EquivalenceWitness> find_equivalence(Functor const& F,
                                                     Limits const&  limits) {
    FinCat const& S = *F.source;
    FinCat const& T = *F.target;
    check_cap("equivalence search objects", S.num_objects(), limits.max_objects);
    check_cap("equivalence search objects", T.num_objects(), limits.max_objects);
    if (!is_fully_faithful(F)) {
      return std::nullopt;
    }
    // Choose for every d a pair (x, u : F x ≅ d), preferring identities.
    std::size_t        nT = T.num_objects();
    std::vector<ObjId> qx(nT, kNone);
    std::vector<MorId> u(nT, kNone);
    for (std::size_t x = 0; x < S.num_objects(); ++x) {
      ObjId d = F.objects[x];
      if (qx[d] == kNone) {
        qx[d] = x;
        u[d]  = T.identity(d);
      }
    }
    for (std::size_t d = 0; d < nT; ++d) {
      if (qx[d] != kNone) {
        continue;
      }
      for (std::size_t x = 0; x < S.num_objects() && qx[d] == kNone; ++x) {
        for (MorId m : T.hom(F.objects[x], d)) {
          if (T.inverse(m) != kNone) {
            qx[d] = x;
            u[d]  = m;
            break;
          }
        }
      }
      if (qx[d] == kNone) {
        return std::nullopt;
      }
    }
    // the unique preimage of a morphism between images
    auto lift = [&](ObjId x, ObjId y, MorId m) {
      for (MorId f : S.hom(x, y)) {
        if (F.morphisms[f] == m) {
          return f;
        }
      }
      return kNone;
    };
    Functor Q{F.target, F.source, qx, {}};
    for (std::size_t g = 0; g < T.num_morphisms(); ++g) {
      ObjId d = T.source(g), e = T.target(g);
      MorId m = T.compose(T.inverse(u[e]), T.compose(g, u[d]));
      Q.morphisms.push_back(lift(qx[d], qx[e], m));
    }
    NatTrans counit{compose(F, Q), identity_functor(F.target), u};
    NatTrans unit{identity_functor(F.source), compose(Q, F), {}};
    for (std::size_t x = 0; x < S.num_objects(); ++x) {
      ObjId d = F.objects[x];
      unit.components.push_back(lift(x, qx[d], T.inverse(u[d])));
    }
    EquivalenceWitness w{F, Q, unit, counit};
    if (!is_valid_equivalence(w)) {
      throw Error(ErrorKind::not_a_functor,
                  "internal: constructed quasi-inverse failed validation");
    }
    return w;
  }

  ////////////////////////////////////////////////////////////////////////
  // Presented pushout
  ////////////////////////////////////////////////////////////////////////

  std::variant<PresentedPushout, Inconclusive>
  presented_pushout(Functor const& i,
                    Functor const& c,
                    int            word_cap,
                    Limits const&  limits) {
    if (word_cap < 1) {
      throw Error(ErrorKind::malformed_input, "word_cap must be at least 1");
    }
    if (i.source->num_objects() != c.source->num_objects()
        || i.source->num_morphisms() != c.source->num_morphisms()) {
      throw Error(ErrorKind::malformed_input,
                  "the two legs of the span have different sources");
    }
    if (!is_injective_on_objects(i)) {
      throw Error(ErrorKind::malformed_input,
                  "the first leg is not injective on objects");
    }
    FinCat const& A  = *i.source;
    FinCat const& B  = *i.target;
    FinCat const& C  = *c.target;
    int           nC = static_cast<int>(C.num_objects());

    // objects: Ob C ⊔ V with V = Ob B \ i(Ob A)
    std::vector<ObjId> ob_b(B.num_objects(), kNone);
    for (std::size_t a = 0; a < A.num_objects(); ++a) {
      ob_b[i.objects[a]] = c.objects[a];
    }
    std::vector<std::string> names;
    for (int x = 0; x < nC; ++x) {
      names.push_back(C.object_name(x));
    }
    for (std::size_t b = 0; b < B.num_objects(); ++b) {
      if (ob_b[b] == kNone) {
        ob_b[b] = static_cast<ObjId>(names.size());
        names.push_back("v:" + B.object_name(b));
      }
    }
    int nD = static_cast<int>(names.size());

    // generators, sorted by name
    struct Gen {
      std::string name;
      int         src, dst;
    };
    std::vector<Gen> raw;
    std::vector<int> gen_c(C.num_morphisms(), kNone), gen_b(B.num_morphisms(), kNone);
    for (std::size_t f = 0; f < C.num_morphisms(); ++f) {
      if (!C.is_identity(f)) {
        gen_c[f] = raw.size();
        raw.push_back({"c:" + C.morphism_name(f), C.source(f), C.target(f)});
      }
    }
    for (std::size_t f = 0; f < B.num_morphisms(); ++f) {
      if (!B.is_identity(f)) {
        gen_b[f] = raw.size();
        raw.push_back({"b:" + B.morphism_name(f), ob_b[B.source(f)], ob_b[B.target(f)]});
      }
    }
    std::vector<int> perm(raw.size()), rank(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
      return raw[a].name < raw[b].name;
    });
    std::vector<Gen> gens;
    for (std::size_t k = 0; k < perm.size(); ++k) {
      rank[perm[k]] = k;
      gens.push_back(raw[perm[k]]);
    }
    for (auto& g : gen_c) {
      g = g == kNone ? kNone : rank[g];
    }
    for (auto& g : gen_b) {
      g = g == kNone ? kNone : rank[g];
    }
    std::vector<std::vector<int>> gens_at(nD);
    std::vector<int>              local(gens.size());
    for (std::size_t g = 0; g < gens.size(); ++g) {
      local[g] = gens_at[gens[g].src].size();
      gens_at[gens[g].src].push_back(g);
    }

    // relations u = v, words in path order, indexed by source object
    using Word = std::vector<int>;
    std::vector<std::vector<std::pair<Word, Word>>> rels(nD);
    auto wc = [&](MorId f) { return gen_c[f] == kNone ? Word{} : Word{gen_c[f]}; };
    auto wb = [&](MorId f) { return gen_b[f] == kNone ? Word{} : Word{gen_b[f]}; };
    for (std::size_t f = 0; f < C.num_morphisms(); ++f) {
      if (C.is_identity(f)) {
        continue;
      }
      for (MorId g : C.out(C.target(f))) {
        if (!C.is_identity(g)) {
          rels[C.source(f)].emplace_back(Word{gen_c[f], gen_c[g]},
                                         wc(C.compose(g, f)));
        }
      }
    }
    for (std::size_t f = 0; f < B.num_morphisms(); ++f) {
      if (B.is_identity(f)) {
        continue;
      }
      for (MorId g : B.out(B.target(f))) {
        if (!B.is_identity(g)) {
          rels[ob_b[B.source(f)]].emplace_back(Word{gen_b[f], gen_b[g]},
                                               wb(B.compose(g, f)));
        }
      }
    }
    for (std::size_t a = 0; a < A.num_morphisms(); ++a) {
      Word u = wb(i.morphisms[a]), v = wc(c.morphisms[a]);
      if (u != v) {
        rels[c.objects[A.source(a)]].emplace_back(u, v);
      }
    }

    // Coset enumeration on the right Cayley graph of each source object.
    struct Node {
      int              obj;
      int              depth;
      int              parent;
      int              gen;
      std::vector<int> edge;
    };
    std::vector<Node> nodes;
    std::vector<int>  uf;
    auto find = [&](int x) {
      while (uf[x] != x) {
        uf[x] = uf[uf[x]];
        x     = uf[x];
      }
      return x;
    };
    auto new_node = [&](int obj, int depth, int parent, int gen) {
      nodes.push_back({obj, depth, parent, gen,
                       std::vector<int>(gens_at[obj].size(), kNone)});
      uf.push_back(nodes.size() - 1);
      if (nodes.size() > limits.max_candidates) {
        throw_size_cap("pushout presentation nodes",
                       nodes.size(),
                       limits.max_candidates);
      }
      return static_cast<int>(nodes.size() - 1);
    };
    auto word_of = [&](int n) {
      std::vector<int> w;
      while (nodes[n].parent != kNone) {
        w.push_back(nodes[n].gen);
        n = nodes[n].parent;
      }
      std::reverse(w.begin(), w.end());
      return w;
    };
    auto render = [&](int root_obj, Word const& w) {
      if (w.empty()) {
        return "1_" + names[root_obj];
      }
      std::string s;
      for (std::size_t k = 0; k < w.size(); ++k) {
        s += (k ? "|" : "") + gens[w[k]].name;
      }
      return s;
    };
    std::optional<Inconclusive> stop;
    // Only edges defined when a node is scanned count against word_cap;
    // relation tracing may briefly create deeper nodes that coincide at once.
    auto define = [&](int n, int g, bool capped) {
      n    = find(n);
      int& e = nodes[n].edge[local[g]];
      if (e != kNone) {
        return find(e);
      }
      if (capped && nodes[n].depth + 1 > word_cap) {
        if (!stop) {
          Word w = word_of(n);
          w.push_back(g);
          stop = Inconclusive{render(gens[w[0]].src, w),
                              "saturation did not close within word length "
                                  + std::to_string(word_cap)};
        }
        return kNone;
      }
      int m                       = new_node(gens[g].dst, nodes[n].depth + 1, n, g);
      nodes[n].edge[local[g]]     = m;
      return m;
    };
    auto merge = [&](int a, int b) {
      std::vector<std::pair<int, int>> todo{{a, b}};
      while (!todo.empty()) {
        auto [x, y] = todo.back();
        todo.pop_back();
        x = find(x);
        y = find(y);
        if (x == y) {
          continue;
        }
        if (y < x) {
          std::swap(x, y);
        }
        uf[y] = x;
        for (std::size_t k = 0; k < nodes[y].edge.size(); ++k) {
          int ey = nodes[y].edge[k];
          if (ey == kNone) {
            continue;
          }
          int& ex = nodes[x].edge[k];
          if (ex == kNone) {
            ex = ey;
          } else {
            todo.emplace_back(ex, ey);
          }
        }
      }
    };
    std::vector<int> roots(nD);
    for (int o = 0; o < nD; ++o) {
      roots[o] = new_node(o, 0, kNone, kNone);
    }
    for (std::size_t k = 0; k < nodes.size() && !stop; ++k) {
      if (find(k) != static_cast<int>(k)) {
        continue;
      }
      int obj = nodes[k].obj;
      for (int g : gens_at[obj]) {
        if (define(k, g, true) == kNone) {
          break;
        }
      }
      if (stop) {
        break;
      }
      for (auto const& [u, v] : rels[obj]) {
        auto trace = [&](Word const& w) {
          int cur = find(k);
          for (int g : w) {
            cur = define(cur, g, false);
          }
          return find(cur);
        };
        merge(trace(u), trace(v));
      }
    }
    if (stop) {
      return *stop;
    }

    // Shortlex-least words by breadth-first search in generator order.
    FinCat::Builder          bld;
    std::vector<int>         mor_of(nodes.size(), kNone);
    std::vector<Word>        words;
    std::vector<int>         word_root;
    std::vector<char>        seen(nodes.size(), 0);
    for (int o = 0; o < nD; ++o) {
      bld.add_object(names[o]);
    }
    for (int o = 0; o < nD; ++o) {
      std::vector<int>  queue{find(roots[o])};
      std::vector<Word> qw{{}};
      seen[queue[0]] = 1;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        int  n = queue[h];
        Word w = qw[h];
        int  id = bld.add_morphism(render(o, w), o, nodes[n].obj);
        mor_of[n] = id;
        words.push_back(w);
        word_root.push_back(o);
        if (h == 0) {
          bld.set_identity(o, id);
        }
        for (int g : gens_at[nodes[n].obj]) {
          int m = find(nodes[n].edge[local[g]]);
          if (!seen[m]) {
            seen[m] = 1;
            queue.push_back(m);
            Word w2 = w;
            w2.push_back(g);
            qw.push_back(std::move(w2));
          }
        }
      }
      check_cap("pushout morphisms", bld.num_morphisms(), limits.max_morphisms);
    }
    // node for each morphism, for composition by tracing
    std::vector<int> node_of(words.size());
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (find(n) == static_cast<int>(n) && mor_of[n] != kNone) {
        node_of[mor_of[n]] = n;
      }
    }
    auto follow = [&](int n, Word const& w) {
      for (int g : w) {
        n = find(nodes[n].edge[local[g]]);
      }
      return n;
    };
    bld.compose_all([&](MorId g, MorId f) {
      return mor_of[follow(node_of[f], words[g])];
    });
    CatPtr D = std::move(bld).build_shared(limits);

    PresentedPushout out{D, Functor{c.target, D, {}, {}}, Functor{i.target, D, {}, {}}};
    for (int x = 0; x < nC; ++x) {
      out.from_c.objects.push_back(x);
    }
    for (std::size_t f = 0; f < C.num_morphisms(); ++f) {
      out.from_c.morphisms.push_back(
          mor_of[follow(find(roots[C.source(f)]), wc(f))]);
    }
    for (std::size_t b = 0; b < B.num_objects(); ++b) {
      out.from_b.objects.push_back(ob_b[b]);
    }
    for (std::size_t f = 0; f < B.num_morphisms(); ++f) {
      out.from_b.morphisms.push_back(
          mor_of[follow(find(roots[ob_b[B.source(f)]]), wb(f))]);
    }
    check_functor(out.from_c);
    check_functor(out.from_b);
    return out;
  }

}  // namespace gcat
