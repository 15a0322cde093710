//
// gcat - exact computation with finite categories and group actions
//

// Strict monoid actions on finite categories: fixed points, chaotic
// categories, deloopings, free quotients, functor-category actions, and the
// equivariant equivalence search.

#ifndef GCAT_ACTIONS_HPP_
#define GCAT_ACTIONS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "gcat/fincat.hpp"
#include "gcat/monoid.hpp"

namespace gcat {

  // act[m] is the endofunctor by which the element m acts.
  struct CatAction {
    MonoidPtr            monoid;
    CatPtr               carrier;
    std::vector<Functor> act;
  };

  // Throws not_a_homomorphism if act(unit) is not the identity or
  // act(mn) != act(m)∘act(n); not_a_functor for invalid endofunctors.
  void      check_action(CatAction const& a);
  CatAction make_action(MonoidPtr m, CatPtr c, std::vector<Functor> act);
  CatAction trivial_action(MonoidPtr m, CatPtr c);

  // f∘a(m) = b(m)∘f for every m; both actions by the same monoid.
  [[nodiscard]] bool is_equivariant(Functor const&   f,
                                    CatAction const& a,
                                    CatAction const& b);
  // Throws equivariance_violation naming the element.
  void check_equivariant(Functor const& f, CatAction const& a, CatAction const& b);
  // b(m)(α_x) = α_{m·x}, for α between equivariant functors.
  [[nodiscard]] bool is_equivariant(NatTrans const&  alpha,
                                    CatAction const& a,
                                    CatAction const& b);

  // Elements of h must be units of the acting monoid.
  void require_in_units(CatAction const& a, Subgroup const& h);

  // Objects and morphisms fixed by every element of h.
  Subcategory fixed_category(CatAction const& a, Subgroup const& h);
  // Restriction of an equivariant functor to fixed subcategories.
  Functor fixed_functor(Functor const&     f,
                        Subcategory const& source_fixed,
                        Subcategory const& target_fixed);
  // The action of a submonoid that is central enough to preserve the
  // subcategory (e.g. the whole acting group on a stable full subcategory).
  CatAction restrict_to_subcategory(CatAction const& a, Subcategory const& s);

  // φ*A for a homomorphism φ : H → M.
  CatAction restrict_action(CatAction const&        a,
                            MonoidPtr const&        h,
                            std::vector<int> const& phi);

  // Diagonal action on S × C (both by the same monoid).
  CatAction product_action(CatAction const& s,
                           CatAction const& c,
                           CatPtr const&    prod);

  // The action of the product monoid M × N on S × C.
  CatAction external_product_action(CatAction const& s,
                                    CatAction const& c,
                                    CatPtr const&    prod);

  // E(X): exactly one morphism x → y, named "x->y".
  CatPtr chaotic_category(std::vector<std::string> const& names,
                          Limits const&                   limits = {});
  // Extends a left action on the object set (perm[m][x]) to E(X).
  CatAction chaotic_action(MonoidPtr const&                     m,
                           CatPtr const&                        e,
                           std::vector<std::vector<int>> const& perm);
  // E(G) with left translation g·k = gk.
  CatAction chaotic_left_translation(MonoidPtr const& g);
  // The right translations ρ_h(k) = kh of E(G), as endofunctors with
  // ρ_{hh'} = ρ_{h'}∘ρ_h.
  std::vector<Functor> chaotic_right_translations(MonoidPtr const& g,
                                                  CatPtr const&    e);

  // BG: one object, morphisms the elements, g∘f = gf.
  CatPtr delooping(FinMonoid const& g);

  // A map r : S → H with r(s·h) = r(s)h for a free right H-set given by
  // right[s][h]. Least orbit members are sent to the unit.
  std::vector<int> equivariant_retraction(FinGroup const&                      h,
                                          std::vector<std::vector<int>> const& right);

  struct Quotient {
    CatPtr  category;
    Functor projection;
  };

  // Quotient by a group action that is free on objects and morphisms.
  // Orbits are represented by their least member.
  Quotient quotient_by_free_action(CatAction const& a);
  // The action induced on the quotient by an action commuting with the
  // quotiented one.
  CatAction descend_action(CatAction const& k, Quotient const& q);

  // The action (m·X) = cod[m] ∘ X ∘ dom[m] on Fun(T, C), where dom is a
  // right action (dom[mn] = dom[n]∘dom[m]) and cod a left action.
  CatAction functor_category_action(FunctorCategory const&      fc,
                                    MonoidPtr const&            m,
                                    std::vector<Functor> const& dom,
                                    std::vector<Functor> const& cod);

  // An equivalence whose quasi-inverse, unit and counit are equivariant for
  // the action of a group; exhaustive, so nullopt is a proof of absence.
  std::optional<EquivalenceWitness>
  find_equivariant_equivalence(Functor const&   f,
                               CatAction const& a,
                               CatAction const& b,
                               Limits const&    limits = {});
  [[nodiscard]] bool is_equivariant_equivalence(EquivalenceWitness const& w,
                                                CatAction const&          a,
                                                CatAction const&          b);

}  // namespace gcat

#endif  // GCAT_ACTIONS_HPP_
