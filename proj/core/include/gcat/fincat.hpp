//
// gcat - exact computation with finite categories and group actions
//

// Finite categories stored as explicit composition tables, together with
// functors, natural transformations, products, functor categories, an
// exhaustive isomorphism/equivalence search, and the presentation-based
// pushout used as an independent oracle for explicit pushout formulas.

#ifndef GCAT_FINCAT_HPP_
#define GCAT_FINCAT_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gcat/error.hpp"

namespace gcat {

  using ObjId = int;
  using MorId = int;

  inline constexpr int kNone = -1;

  struct RawMorphism {
    std::string id;
    std::string source;
    std::string target;
  };

  // Unvalidated tables, as read from a category document.
  struct RawCategory {
    std::vector<std::string>                         objects;
    std::vector<RawMorphism>                         morphisms;
    std::vector<std::pair<std::string, std::string>> identity;
    std::vector<std::array<std::string, 3>>          compose;  // g, f, g∘f
  };

  class FinCat {
   public:
    class Builder;

    FinCat() = default;

    // Validates raw tables and sorts all ids lexicographically.
    static FinCat validate(RawCategory const& raw, Limits const& limits = {});

    [[nodiscard]] std::size_t num_objects() const noexcept {
      return _obj_names.size();
    }
    [[nodiscard]] std::size_t num_morphisms() const noexcept {
      return _mor_names.size();
    }
    [[nodiscard]] std::string const& object_name(ObjId x) const {
      return _obj_names[x];
    }
    [[nodiscard]] std::string const& morphism_name(MorId f) const {
      return _mor_names[f];
    }
    [[nodiscard]] ObjId source(MorId f) const {
      return _src[f];
    }
    [[nodiscard]] ObjId target(MorId f) const {
      return _dst[f];
    }
    [[nodiscard]] MorId identity(ObjId x) const {
      return _id[x];
    }
    [[nodiscard]] bool is_identity(MorId f) const {
      return _id[_src[f]] == f;
    }

    // g∘f, or kNone when target(f) != source(g).
    [[nodiscard]] MorId compose(MorId g, MorId f) const {
      if (_src[g] != _dst[f]) {
        return kNone;
      }
      return _comp[_comp_offset[f] + _out_pos[g]];
    }

    [[nodiscard]] std::span<MorId const> hom(ObjId x, ObjId y) const {
      return _hom[static_cast<std::size_t>(x) * num_objects() + y];
    }
    [[nodiscard]] std::span<MorId const> out(ObjId x) const {
      return _out[x];
    }
    [[nodiscard]] std::span<MorId const> in(ObjId x) const {
      return _in[x];
    }

    [[nodiscard]] std::optional<ObjId> find_object(std::string_view) const;
    [[nodiscard]] std::optional<MorId> find_morphism(std::string_view) const;

    // The inverse of f, or kNone if f is not an isomorphism.
    [[nodiscard]] MorId inverse(MorId f) const;

    // At most one morphism between any two objects and no non-identity
    // isomorphisms.
    [[nodiscard]] bool is_poset() const;

    [[nodiscard]] RawCategory to_raw() const;

   private:
    friend class Builder;

    void index();

    std::vector<std::string>           _obj_names;
    std::vector<std::string>           _mor_names;
    std::vector<ObjId>                 _src;
    std::vector<ObjId>                 _dst;
    std::vector<MorId>                 _id;
    std::vector<std::size_t>           _comp_offset;
    std::vector<int>                   _out_pos;
    std::vector<MorId>                 _comp;
    std::vector<std::vector<MorId>>    _hom;
    std::vector<std::vector<MorId>>    _out;
    std::vector<std::vector<MorId>>    _in;
    std::unordered_map<std::string, ObjId> _obj_index;
    std::unordered_map<std::string, MorId> _mor_index;
  };

  using CatPtr = std::shared_ptr<FinCat const>;

  struct IntVecHash {
    std::size_t operator()(std::vector<int> const& v) const noexcept {
      std::size_t h = v.size();
      for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6)
             + (h >> 2);
      }
      return h;
    }
  };

  // Programmatic construction. Indices are assigned in insertion order and
  // preserved by build(); validation is the same as for raw documents.
  class FinCat::Builder {
   public:
    ObjId add_object(std::string name);
    MorId add_morphism(std::string name, ObjId source, ObjId target);
    // Adds the identity of x under the given name.
    MorId add_identity(ObjId x, std::string name);
    // Declares an existing endomorphism of x to be its identity.
    void  set_identity(ObjId x, MorId f);
    void  set_compose(MorId g, MorId f, MorId gf);

    // Fills every composable pair (g, f) with fn(g, f). Identity pairs are
    // filled automatically.
    void compose_all(std::function<MorId(MorId, MorId)> const& fn);

    [[nodiscard]] std::size_t num_objects() const noexcept {
      return _obj_names.size();
    }
    [[nodiscard]] std::size_t num_morphisms() const noexcept {
      return _mor_names.size();
    }
    [[nodiscard]] ObjId source(MorId f) const {
      return _src[f];
    }
    [[nodiscard]] ObjId target(MorId f) const {
      return _dst[f];
    }

    FinCat    build(Limits const& limits = {}) &&;
    CatPtr    build_shared(Limits const& limits = {}) &&;

   private:
    std::vector<std::string>                       _obj_names;
    std::vector<std::string>                       _mor_names;
    std::vector<ObjId>                             _src;
    std::vector<ObjId>                             _dst;
    std::vector<MorId>                             _id;
    std::vector<std::array<MorId, 3>>              _compose;
  };

  // Exhaustive validation of the category axioms; throws gcat::Error naming
  // the offending morphisms.
  void check_category_axioms(FinCat const& c);

  ////////////////////////////////////////////////////////////////////////
  // Functors and natural transformations
  ////////////////////////////////////////////////////////////////////////

  struct Functor {
    CatPtr             source;
    CatPtr             target;
    std::vector<ObjId> objects;
    std::vector<MorId> morphisms;

    [[nodiscard]] ObjId obj(ObjId x) const {
      return objects[x];
    }
    [[nodiscard]] MorId mor(MorId f) const {
      return morphisms[f];
    }
  };

  bool operator==(Functor const& a, Functor const& b);

  // Throws ErrorKind::not_a_functor if the maps do not preserve sources,
  // targets, identities, and composites.
  Functor make_functor(CatPtr             source,
                       CatPtr             target,
                       std::vector<ObjId> objects,
                       std::vector<MorId> morphisms);
  [[nodiscard]] bool is_functor(Functor const& f);
  void               check_functor(Functor const& f);

  Functor identity_functor(CatPtr c);
  // g∘f
  Functor compose(Functor const& g, Functor const& f);

  [[nodiscard]] bool is_injective_on_objects(Functor const& f);
  [[nodiscard]] bool is_fully_faithful(Functor const& f);

  struct NatTrans {
    Functor            source;
    Functor            target;
    std::vector<MorId> components;
  };

  void               check_natural(NatTrans const& a);
  [[nodiscard]] bool is_natural(NatTrans const& a);
  NatTrans           identity_transformation(Functor const& f);
  // b∘a (vertical)
  NatTrans vertical(NatTrans const& b, NatTrans const& a);
  // a whiskered by a functor on the left: (h a)_x = h(a_x)
  NatTrans whisker_left(Functor const& h, NatTrans const& a);
  // a whiskered by a functor on the right: (a k)_x = a_{k x}
  NatTrans whisker_right(NatTrans const& a, Functor const& k);
  [[nodiscard]] bool is_natural_isomorphism(NatTrans const& a);

  struct EquivalenceWitness {
    Functor  functor;
    Functor  inverse;
    NatTrans unit;    // id ⇒ inverse∘functor
    NatTrans counit;  // functor∘inverse ⇒ id
  };

  // Exhaustive re-validation of a witness.
  [[nodiscard]] bool is_valid_equivalence(EquivalenceWitness const& w);

  ////////////////////////////////////////////////////////////////////////
  // Standard categories and constructions
  ////////////////////////////////////////////////////////////////////////

  CatPtr empty_category();
  CatPtr terminal_category();
  // The poset [n] = {0 < 1 < ... < n}.
  CatPtr ordinal(int n);
  CatPtr discrete_category(std::vector<std::string> const& names);
  // leq(i, j) must be a partial order on the given names.
  CatPtr poset_category(std::vector<std::string> const&         names,
                        std::function<bool(int, int)> const&     leq,
                        Limits const&                            limits = {});

  struct Subcategory {
    CatPtr  category;
    Functor inclusion;
  };

  Subcategory full_subcategory(CatPtr const& c, std::vector<ObjId> objects);
  // The subcategory on the given objects and morphisms; the morphism set
  // must contain identities and be closed under composition.
  Subcategory subcategory(CatPtr const&      c,
                          std::vector<ObjId> objects,
                          std::vector<MorId> morphisms);

  // S × C. Object (s, c) has index s * |Ob C| + c, morphism (f, g) has index
  // f * |Mor C| + g.
  CatPtr product_category(CatPtr const& s,
                          CatPtr const& c,
                          Limits const& limits = {});
  Functor product_projection_first(CatPtr const& prod,
                                   CatPtr const& s,
                                   CatPtr const& c);
  Functor product_projection_second(CatPtr const& prod,
                                    CatPtr const& s,
                                    CatPtr const& c);
  // f × g between the given products.
  Functor product_functor(Functor const& f,
                          Functor const& g,
                          CatPtr const&  source,
                          CatPtr const&  target);

  struct FunctorCategory {
    CatPtr                          category;
    CatPtr                          domain;
    CatPtr                          codomain;
    std::vector<Functor>            functors;     // one per object
    std::vector<std::vector<MorId>> components;   // one per morphism

    [[nodiscard]] std::optional<ObjId> index_of(Functor const& f) const;
    [[nodiscard]] std::optional<MorId>
    index_of(ObjId source, ObjId target, std::vector<MorId> const& comps) const;
    [[nodiscard]] NatTrans transformation(MorId m) const;

    std::unordered_map<std::vector<int>, ObjId, IntVecHash> functor_lookup;
    std::unordered_map<std::vector<int>, MorId, IntVecHash> transformation_lookup;
  };

  std::vector<Functor> all_functors(CatPtr const& t,
                                    CatPtr const& c,
                                    Limits const& limits = {});
  std::vector<std::vector<MorId>> all_transformations(Functor const& f,
                                                      Functor const& g,
                                                      Limits const&  limits = {});

  FunctorCategory functor_category(CatPtr const& t,
                                   CatPtr const& c,
                                   Limits const& limits = {});

  // (source functor, target functor, components)
  using TransformationFilter =
      std::function<bool(Functor const&, Functor const&, std::vector<MorId> const&)>;

  // The subcategory of Fun(T, C) on the kept functors and transformations,
  // built without the rest. The kept transformations must contain the
  // identities and be closed under composition.
  FunctorCategory functor_subcategory(CatPtr const&                               t,
                                      CatPtr const&                               c,
                                      std::function<bool(Functor const&)> const& keep_functor,
                                      TransformationFilter const&                 keep_transformation,
                                      Limits const&                               limits = {});

  // Fun(T, g) : Fun(T, C) → Fun(T, D).
  Functor postcompose(FunctorCategory const& from,
                      FunctorCategory const& to,
                      Functor const&         g);
  // Fun(h, C) : Fun(T, C) → Fun(S, C) for h : S → T.
  Functor precompose(FunctorCategory const& from,
                     FunctorCategory const& to,
                     Functor const&         h);
  // Evaluation of a transformation component, for a natural transformation
  // a : h ⇒ k between functors S → T, gives Fun(h, C) ⇒ Fun(k, C).
  NatTrans precompose_transformation(FunctorCategory const& from,
                                     FunctorCategory const& to,
                                     NatTrans const&        a);
  // Fun(T, a) : Fun(T, g) ⇒ Fun(T, g') for a : g ⇒ g' between functors C → D.
  NatTrans postcompose_transformation(FunctorCategory const& from,
                                      FunctorCategory const& to,
                                      NatTrans const&        a);

  ////////////////////////////////////////////////////////////////////////
  // Searches
  ////////////////////////////////////////////////////////////////////////

  // An isomorphism C → D, if one exists (exhaustive).
  std::optional<Functor> find_isomorphism(CatPtr const& c,
                                          CatPtr const& d,
                                          Limits const& limits = {});
  [[nodiscard]] bool is_isomorphism(Functor const& f);

  // A witness iff f is fully faithful and essentially surjective.
  std::optional<EquivalenceWitness> find_equivalence(Functor const& f,
                                                     Limits const& limits = {});

  ////////////////////////////////////////////////////////////////////////
  // Presentation-based pushout oracle
  ////////////////////////////////////////////////////////////////////////

  struct PresentedPushout {
    CatPtr  category;
    Functor from_c;  // j : C → D
    Functor from_b;  // d : B → D
  };

  struct Inconclusive {
    std::string word;
    std::string reason;
  };

  // Pushout of B ← A → C (i : A → B injective on objects) presented by the
  // morphisms of B and C modulo their composition tables and the
  // identifications along A, computed by coset-enumeration style congruence
  // closure on words of length at most word_cap.
  std::variant<PresentedPushout, Inconclusive>
  presented_pushout(Functor const& i,
                    Functor const& c,
                    int            word_cap = 16,
                    Limits const&  limits   = {});

}  // namespace gcat

#endif  // GCAT_FINCAT_HPP_
