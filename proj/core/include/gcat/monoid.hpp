//
// gcat - exact computation with finite categories and group actions
//

// Finite monoids and groups given by multiplication tables.

#ifndef GCAT_MONOID_HPP_
#define GCAT_MONOID_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gcat/error.hpp"

namespace gcat {

  class FinMonoid {
   public:
    FinMonoid() = default;

    // Throws associativity_violation / identity_violation / malformed_input.
    // Elements keep the given order; documents are sorted by the reader.
    static FinMonoid make(std::vector<std::string> elements,
                          std::vector<int>         table,
                          int                      unit);

    [[nodiscard]] std::size_t size() const noexcept {
      return _names.size();
    }
    [[nodiscard]] std::string const& name(int a) const {
      return _names[a];
    }
    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    [[nodiscard]] int mul(int a, int b) const {
      return _table[static_cast<std::size_t>(a) * size() + b];
    }
    [[nodiscard]] int unit() const noexcept {
      return _unit;
    }
    [[nodiscard]] std::optional<int> find(std::string_view name) const;

    // Two-sided inverse, or -1.
    [[nodiscard]] int  inverse(int a) const;
    [[nodiscard]] bool is_group() const;

    [[nodiscard]] std::vector<int> const& table() const noexcept {
      return _table;
    }

   private:
    std::vector<std::string> _names;
    std::vector<int>         _table;
    int                      _unit = 0;
  };

  // A group is a monoid in which every element is invertible; the alias
  // marks parameters that are checked with require_group.
  using FinGroup = FinMonoid;
  using MonoidPtr = std::shared_ptr<FinMonoid const>;

  void require_group(FinMonoid const& g);

  MonoidPtr trivial_group();
  MonoidPtr cyclic_group(int n);
  // Permutations of {0, ..., n-1} written as images, (σ·τ)(i) = σ(τ(i)).
  MonoidPtr symmetric_group(int n);
  // Element (m, n) has index m * |N| + n.
  MonoidPtr product_monoid(FinMonoid const& m, FinMonoid const& n);

  // Sorted element indices of a subgroup of an ambient monoid.
  using Subgroup = std::vector<int>;

  [[nodiscard]] bool is_subgroup(FinMonoid const& m, Subgroup const& h);
  void               require_subgroup(FinMonoid const& m, Subgroup const& h);
  // The smallest submonoid containing the elements; a subgroup when they
  // are units.
  Subgroup generated(FinMonoid const& m, std::vector<int> const& gens);
  // All subgroups of a group, ordered by (size, elements).
  std::vector<Subgroup> all_subgroups(FinGroup const& g);
  // The subgroup as a group in its own right; element k is h[k].
  MonoidPtr subgroup_monoid(FinMonoid const& m, Subgroup const& h);

  // Throws not_a_homomorphism naming a failing pair.
  void check_homomorphism(FinMonoid const&        h,
                          FinMonoid const&        g,
                          std::vector<int> const& phi);
  std::vector<std::vector<int>> all_homomorphisms(FinMonoid const& h,
                                                  FinMonoid const& g);

  // The maximal subgroup of invertible elements.
  Subgroup units_group(FinMonoid const& m);

  // m·h = m implies h = unit, for all m ∈ M, h ∈ H.
  [[nodiscard]] bool is_good_subgroup(FinMonoid const& m, Subgroup const& h);

  struct GraphSubgroup {
    MonoidPtr        h;
    MonoidPtr        g;
    std::vector<int> phi;
    MonoidPtr        ambient;   // H × G
    Subgroup         elements;  // {(k, φ(k))}
  };

  GraphSubgroup graph_subgroup(MonoidPtr const&        h,
                               std::vector<int> const& phi,
                               MonoidPtr const&        g);

  // Conjugate subgroup g H g⁻¹.
  Subgroup conjugate(FinGroup const& g, Subgroup const& h, int by);

}  // namespace gcat

#endif  // GCAT_MONOID_HPP_
