//
// gcat - exact computation with finite categories and group actions
//

// Integral homology of normalized chain complexes via Smith normal form.

#ifndef GCAT_HOMOLOGY_HPP_
#define GCAT_HOMOLOGY_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gcat/sset.hpp"

namespace gcat {

  using SparseColumn = std::vector<std::pair<int, std::int64_t>>;

  struct SparseMatrix {
    std::size_t               rows = 0;
    std::vector<SparseColumn> cols;
  };

  // Rank and the invariant factors greater than one, ascending.
  struct SmithResult {
    std::size_t               rank = 0;
    std::vector<std::int64_t> invariants;
  };

  // Throws size_cap_exceeded if an intermediate entry overflows 64 bits.
  SmithResult smith(SparseMatrix const& m);

  struct HomologyGroup {
    std::size_t               betti = 0;
    std::vector<std::int64_t> torsion;

    bool operator==(HomologyGroup const&) const = default;
  };

  // "0", "Z", "Z^2 + Z/2", ...
  std::string to_string(HomologyGroup const& h);

  // boundary[n] : C_n → C_{n-1}; boundary[0] has no columns' entries.
  struct ChainComplex {
    std::vector<std::size_t>  dims;
    std::vector<SparseMatrix> boundary;
  };

  ChainComplex normalized_chains(FinSSet const& x);
  // Cone(f)_n = X_{n-1} ⊕ Y_n with d(x, y) = (-∂x, f(x) + ∂y).
  ChainComplex mapping_cone(SSetMap const& f);

  // Degrees 0..top; needs boundary maps up to top + 1.
  std::vector<HomologyGroup> homology(ChainComplex const& c, int top);
  // Degrees 0..cap-1.
  std::vector<HomologyGroup> homology(FinSSet const& x);

  struct MapHomologyVerdict {
    bool                       iso    = true;
    int                        degree = -1;  // first failing degree
    std::vector<HomologyGroup> source;
    std::vector<HomologyGroup> target;
    std::string                detail;
  };

  // Whether f_* is an isomorphism in degrees 0..cap-1: the cone is acyclic
  // through cap-1 (isomorphisms below, a surjection on top), and the top
  // groups have equal invariants, so the surjection is an isomorphism.
  MapHomologyVerdict homology_isomorphism(SSetMap const& f);

}  // namespace gcat

#endif  // GCAT_HOMOLOGY_HPP_
