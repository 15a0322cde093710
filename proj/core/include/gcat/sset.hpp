//
// gcat - exact computation with finite categories and group actions
//

// Dimension-capped finite simplicial sets in Eilenberg-Zilber normal form:
// every simplex is a degeneracy of a unique nondegenerate core. Includes
// nerves, ordered simplicial complexes and their subdivisions, Kan's Ex with
// its last-vertex map, pushouts along injections, fixed points, and horn
// filling checks.

#ifndef GCAT_SSET_HPP_
#define GCAT_SSET_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gcat/actions.hpp"
#include "gcat/fincat.hpp"
#include "gcat/monoid.hpp"

namespace gcat {

  // σ*(core) for a surjection σ : [dim] → [core_dim]. Bit j of degen is set
  // iff σ(j) = σ(j + 1).
  struct Simplex {
    std::int32_t  core     = 0;
    std::uint8_t  dim      = 0;
    std::uint8_t  core_dim = 0;
    std::uint16_t degen    = 0;

    [[nodiscard]] bool nondegenerate() const noexcept {
      return degen == 0;
    }
    [[nodiscard]] std::uint64_t code() const noexcept {
      return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(core)) << 32)
             | (static_cast<std::uint64_t>(dim) << 24)
             | (static_cast<std::uint64_t>(core_dim) << 16) | degen;
    }
    static Simplex from_code(std::uint64_t c) noexcept {
      return Simplex{static_cast<std::int32_t>(c >> 32),
                     static_cast<std::uint8_t>((c >> 24) & 0xff),
                     static_cast<std::uint8_t>((c >> 16) & 0xff),
                     static_cast<std::uint16_t>(c & 0xffff)};
    }
    friend bool operator==(Simplex const& a, Simplex const& b) noexcept {
      return a.code() == b.code();
    }
    friend bool operator<(Simplex const& a, Simplex const& b) noexcept {
      return a.code() < b.code();
    }
  };

  // Monotone maps [m] → [n] as value lists.
  using Operator = std::vector<int>;

  std::vector<int> surjection_of(int dim, std::uint16_t degen);
  std::uint16_t    degen_of(std::vector<int> const& surjection);

  class FinSSet {
   public:
    class Builder;

    [[nodiscard]] int cap() const noexcept {
      return _cap;
    }
    [[nodiscard]] std::size_t count(int n) const {
      return n < static_cast<int>(_labels.size()) ? _labels[n].size() : 0;
    }
    [[nodiscard]] std::string const& label(int n, int id) const {
      return _labels[n][id];
    }
    // Data attached by the constructing operation (chains for nerves,
    // vertex lists for complexes, map tables for Ex).
    [[nodiscard]] std::vector<int> const& key(int n, int id) const {
      return _keys[n][id];
    }
    [[nodiscard]] std::optional<int> find_key(int n, std::vector<int> const& k) const;

    [[nodiscard]] static Simplex nondeg(int n, int id) {
      return Simplex{id, static_cast<std::uint8_t>(n), static_cast<std::uint8_t>(n), 0};
    }

    // d_i of a stored nondegenerate simplex.
    [[nodiscard]] Simplex stored_face(int n, int id, int i) const {
      return _faces[n][static_cast<std::size_t>(id) * (n + 1) + i];
    }

    [[nodiscard]] Simplex face(Simplex x, int i) const;
    [[nodiscard]] Simplex degeneracy(Simplex x, int j) const;
    // θ*(x) for a monotone θ : [m] → [x.dim].
    [[nodiscard]] Simplex apply(Simplex x, Operator const& theta) const;

    // Every simplex (degenerate ones included) of dimension n ≤ cap.
    [[nodiscard]] std::vector<Simplex> all_simplices(int n) const;
    [[nodiscard]] std::size_t          total_count(int n) const;

    // vertex i of a simplex
    [[nodiscard]] int vertex(Simplex x, int i) const;

    [[nodiscard]] std::size_t size() const;

   private:
    Simplex restrict_core(int n, int id, std::vector<int> const& image) const;

    int                                            _cap = 0;
    std::vector<std::vector<std::string>>          _labels;
    std::vector<std::vector<Simplex>>              _faces;
    std::vector<std::vector<std::vector<int>>>     _keys;
    std::vector<std::unordered_map<std::vector<int>, int, IntVecHash>> _key_index;
  };

  using SSetPtr = std::shared_ptr<FinSSet const>;

  class FinSSet::Builder {
   public:
    explicit Builder(int cap);
    // Faces must already be present; returns the new id in dimension n.
    int add(int n, std::vector<Simplex> faces, std::string label, std::vector<int> key = {});
    [[nodiscard]] std::optional<int> find_key(int n, std::vector<int> const& k) const {
      return _s.find_key(n, k);
    }
    [[nodiscard]] FinSSet const& partial() const noexcept {
      return _s;
    }
    // Verifies the simplicial identities and returns the set.
    SSetPtr build() &&;

   private:
    FinSSet _s;
  };

  // Exhaustive check d_i d_j = d_{j-1} d_i on every stored simplex.
  void check_simplicial_identities(FinSSet const& x);

  struct SSetMap {
    SSetPtr                           source;
    SSetPtr                           target;
    std::vector<std::vector<Simplex>> image;  // per nondegenerate simplex

    [[nodiscard]] Simplex operator()(Simplex x) const;
  };

  void               check_map(SSetMap const& f);
  SSetMap            identity_map(SSetPtr const& x);
  SSetMap            compose(SSetMap const& g, SSetMap const& f);
  [[nodiscard]] bool operator==(SSetMap const& a, SSetMap const& b);
  // Bijective on nondegenerate simplices, preserving nondegeneracy.
  [[nodiscard]] bool is_isomorphism(SSetMap const& f);
  [[nodiscard]] bool is_injective(SSetMap const& f);

  struct SSetAction {
    MonoidPtr            monoid;
    SSetPtr              carrier;
    std::vector<SSetMap> act;
  };

  void check_action(SSetAction const& a);
  [[nodiscard]] bool is_equivariant(SSetMap const& f, SSetAction const& a, SSetAction const& b);

  struct SubSSet {
    SSetPtr set;
    SSetMap inclusion;
  };

  // The simplicial subset generated by keep[n][id] = true on nondegenerate
  // simplices; throws if not closed under faces.
  SubSSet sub_sset(SSetPtr const& x, std::vector<std::vector<char>> const& keep);
  SubSSet fixed_points(SSetAction const& a, Subgroup const& h);
  SSetMap fixed_map(SSetMap const& f, SubSSet const& src, SubSSet const& dst);
  SSetAction restrict_to_sub(SSetAction const& a, SubSSet const& s);

  // π₀ as a component label per vertex.
  std::vector<int> components(FinSSet const& x);

  ////////////////////////////////////////////////////////////////////////
  // Nerves
  ////////////////////////////////////////////////////////////////////////

  SSetPtr    nerve(CatPtr const& c, int cap, Limits const& limits = {});
  // N(f) between nerves built by nerve().
  SSetMap    nerve_map(Functor const& f, SSetPtr const& source, SSetPtr const& target);
  SSetAction equivariant_nerve(CatAction const& a, SSetPtr const& n);

  // h of the nerve of a poset; refuses anything else with not_a_poset_nerve.
  CatPtr homotopy_category_of_poset_nerve(FinSSet const& x);

  SSetPtr product(SSetPtr const& x, SSetPtr const& y, Limits const& limits = {});
  SSetMap product_projection(SSetPtr const& prod, SSetPtr const& x, SSetPtr const& y, int which);
  // ⟨f, g⟩ : Z → X × Y.
  SSetMap pairing(SSetMap const& f, SSetMap const& g, SSetPtr const& prod);

  ////////////////////////////////////////////////////////////////////////
  // Ordered simplicial complexes
  ////////////////////////////////////////////////////////////////////////

  struct OrderedComplex {
    int                           num_vertices = 0;
    std::vector<std::vector<int>> faces;  // nonempty, sorted, by (size, lex)
    std::vector<std::string>      vertex_names;  // optional
  };

  // Downward closure of the given faces on vertices 0..n-1.
  OrderedComplex make_complex(int num_vertices, std::vector<std::vector<int>> const& generators);
  OrderedComplex simplex_complex(int n);
  OrderedComplex boundary_complex(int n);
  OrderedComplex horn_complex(int n, int k);
  [[nodiscard]] bool is_subcomplex(OrderedComplex const& k, OrderedComplex const& l);

  std::string face_name(OrderedComplex const& k, std::vector<int> const& face);

  // sd(K): inclusion poset of nonempty faces.
  CatPtr face_poset(OrderedComplex const& k);
  // The order complex of sd(K); vertex i is faces[i] of K.
  OrderedComplex sd_complex(OrderedComplex const& k);
  // Inclusion of face posets for K ⊆ L.
  Functor face_poset_map(OrderedComplex const& k, OrderedComplex const& l,
                         CatPtr const& pk, CatPtr const& pl);
  // hSd²K and hSd²(K ⊆ L).
  CatPtr  h_sd2(OrderedComplex const& k);
  Functor h_sd2_map(OrderedComplex const& k, OrderedComplex const& l);

  // The complex as a simplicial set; keys are vertex lists.
  SSetPtr complex_sset(OrderedComplex const& k, int cap);
  // Inclusion K ⊆ L of complex simplicial sets.
  SSetMap complex_inclusion(SSetPtr const& k, SSetPtr const& l);

  // Δⁿ, ∂Δⁿ, Λⁿ_k as simplicial sets; bad_index when out of range.
  SSetPtr standard_simplex(int n, int cap);
  SSetPtr standard_boundary(int n, int cap);
  SSetPtr standard_horn(int n, int k, int cap);

  // G/H × X with left translation on the cosets, as |G/H| disjoint copies.
  struct InducedCell {
    SSetAction             action;
    std::vector<Subgroup>  cosets;  // left cosets gH, sorted by least member
  };
  InducedCell induced_cell(MonoidPtr const& g, Subgroup const& h, SSetPtr const& x);
  // G/H × f for an ordinary map f.
  SSetMap induced_map(InducedCell const& a, InducedCell const& b, SSetMap const& f);

  // The last-vertex map sd K → K.
  SSetMap last_vertex_map(SSetPtr const& sdk, OrderedComplex const& k, SSetPtr const& kset);

  struct InducedCellSd {
    InducedCell sd_cell;
    InducedCell cell;
    SSetMap     comparison;
  };
  InducedCellSd induced_cell_sd(MonoidPtr const& g, Subgroup const& h,
                                OrderedComplex const& k, int cap);

  ////////////////////////////////////////////////////////////////////////
  // Ex
  ////////////////////////////////////////////////////////////////////////

  // Chains of nonempty faces of Δⁿ as bitmasks, in canonical order.
  std::vector<std::vector<std::uint16_t>> const& sd_simplex_chains(int n);

  // Ex(X)_n = maps Sd Δⁿ → X for n ≤ cap; keys are the images of the chains
  // of Sd Δⁿ (Simplex codes split into two ints each).
  SSetPtr    ex(SSetPtr const& x, int cap, Limits const& limits = {});
  SSetMap    ex_map(SSetMap const& f, SSetPtr const& ex_source, SSetPtr const& ex_target);
  SSetAction ex_action(SSetAction const& a, SSetPtr const& ex_carrier);
  // The last-vertex map e : X → Ex X.
  SSetMap    e_map(SSetPtr const& x, SSetPtr const& ex_x);

  // Number of maps Sd Δⁿ → X (all, degenerate included).
  std::size_t count_ex_simplices(FinSSet const& x, int n, Limits const& limits = {});

  ////////////////////////////////////////////////////////////////////////
  // Kan fibrations
  ////////////////////////////////////////////////////////////////////////

  struct KanVerdict {
    bool        passed = true;
    int         cap    = 0;
    int         horn_n = -1;  // first failing horn, if any
    int         horn_k = -1;
    std::string detail;
  };

  // The unique map to Δ⁰.
  SSetMap to_point(SSetPtr const& x);

  // Every lifting problem Λⁿ_k → X over Δⁿ → Y for 1 ≤ n ≤ cap.
  KanVerdict is_kan_fibration(SSetMap const& f, int cap, Limits const& limits = {});
  // The same for Ex(f), with horns and fillers enumerated as maps out of
  // Sd Λⁿ_k and Sd Δⁿ; Ex(X) is never materialised in the top dimension.
  KanVerdict is_kan_fibration_ex(SSetMap const& f, int cap, Limits const& limits = {});

  ////////////////////////////////////////////////////////////////////////
  // Pushouts along injections
  ////////////////////////////////////////////////////////////////////////

  struct SSetPushout {
    SSetPtr set;
    SSetMap from_b;
    SSetMap from_c;
  };

  // B ⊔_A C for i : A → B injective.
  SSetPushout pushout(SSetMap const& i, SSetMap const& c);
  // The map out of the pushout induced by u : B → D and v : C → D.
  SSetMap pushout_induced(SSetPushout const& p, SSetMap const& i,
                          SSetMap const& u, SSetMap const& v);
  SSetAction pushout_action(SSetPushout const& p, SSetMap const& i,
                            SSetAction const& b, SSetAction const& c);

}  // namespace gcat

#endif  // GCAT_SSET_HPP_
