//
// gcat - exact computation with finite categories and group actions
//

// Certificates for weak equivalences, homotopy fixed points, saturation and
// the generating cofibrations of the equivariant and global models.
//
// Weak homotopy equivalence is certified, never decided. A certificate is
// either sufficient (it carries a validated equivalence or isomorphism of
// categories) or records the necessary conditions it checked: π₀ and
// homology up to the cap.

#ifndef GCAT_WEQ_HPP_
#define GCAT_WEQ_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcat/actions.hpp"
#include "gcat/dwyer.hpp"
#include "gcat/fincat.hpp"
#include "gcat/homology.hpp"
#include "gcat/monoid.hpp"
#include "gcat/sset.hpp"

namespace gcat {

  enum class CertKind { isomorphism, equivalence, necessary };

  char const* to_string(CertKind k) noexcept;

  struct WeakEqCertificate {
    CertKind                          kind   = CertKind::necessary;
    bool                              passed = false;
    int                               cap    = 0;
    std::optional<EquivalenceWitness> witness;
    bool                              pi0_bijective = false;
    std::vector<HomologyGroup>        source_homology;
    std::vector<HomologyGroup>        target_homology;
    int                               failed_degree = -1;
    std::string                       detail;
  };

  // π₀ bijectivity and homology in degrees 0..cap-1 (cap of the source).
  WeakEqCertificate homology_certificate(SSetMap const& f);
  // Nerves both sides at the given cap first.
  WeakEqCertificate homology_certificate(Functor const& f, int cap, Limits const& limits = {});

  using ActionPair = std::pair<CatAction, CatAction>;

  // Isomorphism kind when f is an isomorphism, otherwise an equivalence
  // (equivariant when actions are given). nullopt when none exists.
  std::optional<WeakEqCertificate>
  equivalence_certificate(Functor const&                   f,
                          std::optional<ActionPair> const& actions = std::nullopt,
                          Limits const&                    limits  = {});

  // Restricts an equivalence witness along fixed subcategories. The witness
  // must be equivariant for the actions the fixed subcategories come from.
  EquivalenceWitness fixed_witness(EquivalenceWitness const& w,
                                   Subcategory const&        source_fixed,
                                   Subcategory const&        target_fixed);

  ////////////////////////////////////////////////////////////////////////
  // Per-subgroup and per-pair tables
  ////////////////////////////////////////////////////////////////////////

  struct TableRow {
    std::string       label;
    WeakEqCertificate cert;
  };

  struct CertificateTable {
    bool                  passed = true;
    std::vector<TableRow> rows;
    std::string           scope;
  };

  std::string subgroup_label(FinMonoid const& g, Subgroup const& h);

  // homology_certificate of f^H for every H in the family.
  CertificateTable f_weak_equivalence(Functor const&               f,
                                      CatAction const&             a,
                                      CatAction const&             b,
                                      std::vector<Subgroup> const& family,
                                      int                          cap,
                                      Limits const&                limits = {});
  CertificateTable f_weak_equivalence(SSetMap const&               f,
                                      SSetAction const&            a,
                                      SSetAction const&            b,
                                      std::vector<Subgroup> const& family);

  // Fun(E(H), φ*C)^H with (h·X)(k) = φ(h)·X(k·h).
  struct HomotopyFixedPoints {
    FunctorCategory fun;
    CatAction       action;  // of H on the functor category
    Subcategory     fixed;
  };

  HomotopyFixedPoints homotopy_fixed_points(CatAction const&        c,
                                            MonoidPtr const&        h,
                                            std::vector<int> const& phi,
                                            Limits const&           limits = {});
  // f^{hφ} between homotopy fixed points built for the same (H, φ).
  Functor homotopy_fixed_functor(Functor const&             f,
                                 HomotopyFixedPoints const& source,
                                 HomotopyFixedPoints const& target);

  // A group H with a homomorphism φ : H → G.
  struct GroupPair {
    MonoidPtr        h;
    std::vector<int> phi;
  };

  std::string pair_label(GroupPair const& p, FinMonoid const& g);

  // All (H, φ) with H a subgroup of t (as a group in its own right) and
  // φ : H → G.
  std::vector<GroupPair> all_pairs(MonoidPtr const& t, MonoidPtr const& g);

  // homology_certificate of f^{hφ} for each supplied pair.
  CertificateTable g_global_we(Functor const&                f,
                               CatAction const&              a,
                               CatAction const&              b,
                               std::vector<GroupPair> const& pairs,
                               int                           cap,
                               Limits const&                 limits = {});

  ////////////////////////////////////////////////////////////////////////
  // Restriction along E(H) → E(H′)
  ////////////////////////////////////////////////////////////////////////

  struct RestrictionComparison {
    FunctorCategory    big;           // Fun(E(H′), C)
    FunctorCategory    small;         // Fun(E(H), C)
    MonoidPtr          acting;        // G × H
    CatAction          big_action;
    CatAction          small_action;
    EquivalenceWitness witness;       // restriction with quasi-inverse Fun(E(r), C)
    bool               valid       = false;
    bool               equivariant = false;
    // Fixed points of the graph subgroup of each φ : H → G.
    CertificateTable   fixed;
    bool               sufficient = false;
  };

  // H is a subgroup of H′; C carries a G-action.
  RestrictionComparison restriction_comparison(CatAction const& c,
                                               MonoidPtr const& hprime,
                                               Subgroup const&  h,
                                               Limits const&    limits = {});

  ////////////////////////////////////////////////////////////////////////
  // Chaotic cells and saturation
  ////////////////////////////////////////////////////////////////////////

  // (E(H′) × G)/K where K ⊆ H′ acts by (m, g)·k = (mk, gψ(k)), with the
  // left action of H′ × G; element (h, g) has index h·|G| + g.
  struct ChaoticCell {
    MonoidPtr hprime;
    MonoidPtr g;
    MonoidPtr ambient;
    Quotient  quotient;
    CatAction action;    // H′ × G
    CatAction g_action;  // G alone
  };

  ChaoticCell chaotic_cell(MonoidPtr const&        hprime,
                           Subgroup const&         k,
                           std::vector<int> const& psi,
                           MonoidPtr const&        g,
                           Limits const&           limits = {});

  // G/H as a discrete category with left translation; objects are the
  // cosets gH in order of their least member.
  CatAction coset_category(MonoidPtr const& g, Subgroup const& h);

  // Finite stand-in for a category with an action of E(H′) and a commuting
  // G-action: an (H′ × G)-action together with the structure isomorphisms
  // shift[m2·|H′| + m1][c] : (m1, 1)·c → (m2, 1)·c.
  struct ChaoticActionAvatar {
    MonoidPtr                       hprime;
    MonoidPtr                       g;
    MonoidPtr                       ambient;
    CatAction                       action;
    std::vector<std::vector<MorId>> shift;
  };

  // Trivial actions and identity shifts.
  ChaoticActionAvatar trivial_avatar(CatPtr const& c, MonoidPtr const& hprime, MonoidPtr const& g);
  // The cell with its translation structure.
  ChaoticActionAvatar cell_avatar(ChaoticCell const& cell);
  // Throws malformed_input if the shifts are not functorial, natural and
  // compatible with the action.
  void check_avatar(ChaoticActionAvatar const& a);

  // H ⊆ H′ given by its elements, φ indexed like the subgroup.
  struct SubgroupPair {
    Subgroup         h;
    std::vector<int> phi;
  };

  std::vector<SubgroupPair> all_subgroup_pairs(FinMonoid const& hprime, FinMonoid const& g);

  struct SaturationReport {
    // Per pair: Fun(E(H′), forget C)^Γ and η^Γ : C^Γ → Fun(E(H′), forget C)^Γ,
    // aligned with the table rows.
    std::vector<FunctorCategory> fixed_fun;
    std::vector<Functor>         eta;
    CertificateTable             table;
  };

  // η : C → Fun(E(H′), forget C) and an equivalence certificate of η on the
  // fixed points of each graph subgroup Γ. Only the fixed parts of the
  // functor category are built.
  SaturationReport saturation_check(ChaoticActionAvatar const&       c,
                                    std::vector<SubgroupPair> const& pairs,
                                    int                              cap,
                                    Limits const&                    limits = {});

  ////////////////////////////////////////////////////////////////////////
  // Generating cofibrations
  ////////////////////////////////////////////////////////////////////////

  enum class ModelTag {
    thomason,
    global,
    f_model,
    g_global_thin,
    g_global_thick_avatar,
    g_homotopy_fp,
    g_homotopy_fp_thick
  };

  char const*             to_string(ModelTag t) noexcept;
  std::optional<ModelTag> model_from_string(std::string const& s);

  // thomason: no groups. global: h. f_model: g and sub ⊆ g.
  // g_global_thin: h, g, phi : h → g. g_global_thick_avatar: h (as H′),
  // sub ⊆ h, phi : sub → g. g_homotopy_fp: g and sub ⊆ g (cell E(G) ×_H G).
  // g_homotopy_fp_thick: h (as H′), sub ⊆ h, phi : sub → g injective.
  struct GeneratorSpec {
    ModelTag         model = ModelTag::thomason;
    MonoidPtr        g;
    MonoidPtr        h;
    Subgroup         sub;
    std::vector<int> phi;
    int              n_min   = 0;
    int              n_max   = 1;
    bool             acyclic = false;
  };

  struct Generator {
    std::string name;
    int         n = 0;
    int         k = -1;  // horn index for acyclic generators
    CatAction   cell;    // the equivariant factor S
    CatPtr      poset_source;  // hSd² of the boundary or horn
    CatPtr      poset_target;  // hSd² of the simplex
    Functor     map;
    CatAction   source_action;
    CatAction   target_action;
  };

  std::vector<Generator> generating_maps(GeneratorSpec const& spec, Limits const& limits = {});

  ////////////////////////////////////////////////////////////////////////
  // Transfer hypotheses
  ////////////////////////////////////////////////////////////////////////

  // The right adjoint U, applied to G-categories. For fun_chaotic, U(C) is
  // Fun(E(T), C) and its weak equivalences are tested on the fixed points
  // of the graph subgroups of T × G.
  struct RightAdjointAvatar {
    enum Kind { identity, fixed_points, fun_chaotic };
    Kind      kind = identity;
    Subgroup  fixed;  // fixed_points
    MonoidPtr t;      // fun_chaotic
  };

  struct ConditionReport {
    bool                     passed = true;
    std::vector<std::string> lines;
  };

  struct TransferReport {
    bool            passed = true;
    ConditionReport acyclic_images;     // U F j are weak equivalences
    ConditionReport homotopy_pushouts;  // pushouts along F i
    ConditionReport filtered_colimits;  // finite chains
  };

  TransferReport check_transfer_conditions(std::vector<Generator> const& i,
                                           std::vector<Generator> const& j,
                                           RightAdjointAvatar const&     u,
                                           int                           cap,
                                           Limits const&                 limits = {});

}  // namespace gcat

#endif  // GCAT_WEQ_HPP_
