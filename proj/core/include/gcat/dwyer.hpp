//
// gcat - exact computation with finite categories and group actions
//

// Sieves, Dwyer witnesses and the explicit pushout along a Dwyer map.
//
// A witness for i : A → B consists of a cosieve X ⊆ B containing the image,
// the corestriction f : A → X, a right adjoint r : X → A, and unit and
// counit. It is normalized when the unit is the identity, which forces
// r∘f = id and ε∘f = id.

#ifndef GCAT_DWYER_HPP_
#define GCAT_DWYER_HPP_

#include <optional>
#include <vector>

#include "gcat/actions.hpp"
#include "gcat/fincat.hpp"

namespace gcat {

  // Both throw not_a_subcategory_inclusion unless j is injective on objects
  // and fully faithful.
  [[nodiscard]] bool is_sieve(Functor const& i);
  [[nodiscard]] bool is_cosieve(Functor const& j);

  struct DwyerWitness {
    Functor     i;        // A → B
    Subcategory cosieve;  // X ↪ B, full
    Functor     f;        // A → X
    Functor     r;        // X → A
    NatTrans    unit;     // id_A ⇒ r∘f
    NatTrans    counit;   // f∘r ⇒ id_X
  };

  // Group actions on A and B making i equivariant.
  struct DwyerEquivariance {
    CatAction a;
    CatAction b;
  };

  // Revalidates everything from the raw data. With normalized set, also
  // requires unit = identity. Throws with the failing condition.
  void check_witness(DwyerWitness const&                     w,
                     std::optional<DwyerEquivariance> const& eq         = std::nullopt,
                     bool                                    normalized = true);
  [[nodiscard]] bool is_valid_witness(DwyerWitness const&                     w,
                                      std::optional<DwyerEquivariance> const& eq = std::nullopt,
                                      bool normalized = true);

  // Builds a normalized witness from the cosieve objects, the object part
  // of r and the counit components (morphisms of B); r on morphisms is
  // forced by the universal property. Throws if the data do not determine
  // an adjunction.
  DwyerWitness assemble_witness(Functor const&            i,
                                std::vector<ObjId> const& cosieve_objects,
                                std::vector<ObjId> const& r_objects,
                                std::vector<MorId> const& counit_components);

  // Exhaustive: an object y admits a counit component iff it has a
  // coreflection into A, and the largest admissible cosieve is the set of
  // objects all of whose successors have one. In equivariant mode the
  // coreflections are chosen stabilizer-fixed on orbit representatives.
  // nullopt proves no witness exists.
  std::optional<DwyerWitness>
  find_dwyer_witness(Functor const&                          i,
                     std::optional<DwyerEquivariance> const& eq     = std::nullopt,
                     Limits const&                           limits = {});

  // Makes the unit the identity by moving r on the image and conjugating
  // with the unit. Throws unit_not_invertible.
  DwyerWitness normalize_unit(DwyerWitness const& w);

  struct DwyerPushout {
    CatPtr  category;
    Functor from_c;  // j : C → D
    Functor from_b;  // d : B → D
  };

  // Objects Ob C ⊔ V with V = Ob B \ Ob A named "v:<name>". Throws
  // witness_not_normalized.
  DwyerPushout dwyer_pushout(Functor const&      c,
                             DwyerWitness const& w,
                             Limits const&       limits = {});

  // The functor D → E out of a pushout built by dwyer_pushout(c, w),
  // given u : B → E and v : C → E with u∘i = v∘c.
  Functor dwyer_pushout_induced(DwyerPushout const& p,
                                Functor const&      c,
                                DwyerWitness const& w,
                                Functor const&      u,
                                Functor const&      v);

  struct EquivariantDwyerPushout {
    DwyerPushout pushout;
    CatAction    action;
  };

  // c equivariant from eq.a to cact; throws equivariance_violation naming
  // the element.
  EquivariantDwyerPushout equivariant_dwyer_pushout(Functor const&           c,
                                                    DwyerWitness const&      w,
                                                    DwyerEquivariance const& eq,
                                                    CatAction const&         cact,
                                                    Limits const&            limits = {});

  // i^H : A^H → B^H with (X^H, f^H, r^H, ε^H).
  struct FixedWitness {
    DwyerWitness witness;
    Subcategory  a_fixed;
    Subcategory  b_fixed;
  };
  FixedWitness restrict_witness_to_fixed(DwyerWitness const&      w,
                                         DwyerEquivariance const& eq,
                                         Subgroup const&          h);

  // S × i with (S × X, S × f, S × r, S × ε).
  DwyerWitness product_witness(CatPtr const&       s,
                               DwyerWitness const& w,
                               Limits const&       limits = {});

  // Fun(T, i) with (Fun(T, X), Fun(T, f), Fun(T, r), Fun(T, ε)).
  struct FunWitness {
    DwyerWitness    witness;
    FunctorCategory source;
    FunctorCategory target;
  };
  FunWitness fun_witness(CatPtr const&       t,
                         DwyerWitness const& w,
                         Limits const&       limits = {});

  // Restricts the monoid actions to the units and searches equivariantly.
  std::optional<DwyerWitness> monoid_dwyer_check(Functor const&   i,
                                                 CatAction const& a,
                                                 CatAction const& b,
                                                 Limits const&    limits = {});

}  // namespace gcat

#endif  // GCAT_DWYER_HPP_
